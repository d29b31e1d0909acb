#include "plateig/ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "plateig/errors.hpp"
#include "plateig/roots.hpp"

namespace plateig::ball {

using specfun::BesselOrder;

namespace {

constexpr double kPhaseStep = std::numbers::pi / 16.0;

// (J_nu(z), J_{nu+1}(z)) / sqrt(J_nu^2 + J_{nu+1}^2), safe below the turning point.
struct UnitPair {
    double j0, j1;
};

UnitPair unit_pair(BesselOrder nu, double z) {
    if (z == 0.0) return {1.0, 0.0};
    if (z < nu.value()) {
        const double q = specfun::bessel_j_ratio(nu, z);
        const double n = std::sqrt(1.0 + q * q);
        return {1.0 / n, q / n};
    }
    const double j0 = specfun::bessel_j(nu, z);
    const double j1 = specfun::bessel_j(nu.next(), z);
    const double n = std::hypot(j0, j1);
    return {j0 / n, j1 / n};
}

double zero_snap(double alpha) { return 1e-10 * std::max(1.0, alpha * alpha); }

struct RootP {
    double p;
    double residual;
};

// Roots in p of the degree-k determinant on (alpha/2, p_max].
std::vector<RootP> scan_degree(const BallProblem& pb, int k, double p_max) {
    const double alpha = pb.alpha, R = pb.R;
    std::vector<double> ps;
    if (alpha > 0.0) {
        // Negative regime, uniform in theta = R (a - c) with a^2 + c^2 = alpha.
        const double p_lo = 0.5 * alpha + std::sqrt(discriminant_guard(alpha));
        if (p_lo < alpha) {
            auto theta_of = [&](double p) { return R * (std::sqrt(p) - std::sqrt(alpha - p)); };
            const double t0 = theta_of(p_lo), t1 = R * std::sqrt(alpha);
            const int n = std::max(2, static_cast<int>(std::ceil((t1 - t0) / kPhaseStep)));
            for (int i = 0; i < n; ++i) {
                const double d = (t0 + (t1 - t0) * i / n) / R;
                const double a = 0.5 * (d + std::sqrt(2.0 * alpha - d * d));
                ps.push_back(std::max(p_lo, std::min(alpha, a * a)));
            }
        }
        ps.push_back(alpha);
    }
    // Positive regime, uniform in theta = R sqrt(p).
    const double p_start = std::max(alpha, 0.0);
    if (p_max > p_start) {
        const double t0 = alpha > 0.0 ? R * std::sqrt(alpha) : R * std::sqrt(1e-12 * std::max(1.0, p_max));
        const double t1 = R * std::sqrt(p_max);
        const int n = std::max(2, static_cast<int>(std::ceil((t1 - t0) / kPhaseStep)));
        for (int i = (alpha > 0.0 ? 1 : 0); i <= n; ++i) {
            const double t = t0 + (t1 - t0) * i / n;
            ps.push_back(t * t / (R * R));
        }
    }
    std::vector<RootP> roots;
    if (ps.empty()) return roots;
    auto f = [&](double p) { return clamped_det_p(pb, k, p); };
    double prev_p = ps[0], prev_f = f(prev_p);
    if (prev_f == 0.0) roots.push_back({prev_p, 0.0});
    for (std::size_t i = 1; i < ps.size(); ++i) {
        const double p = ps[i];
        if (p <= prev_p) continue;
        const double fp = f(p);
        if (fp == 0.0) {
            roots.push_back({p, 0.0});
        } else if (prev_f != 0.0 && (fp > 0) != (prev_f > 0)) {
            const double root = numerics::brent_root(f, prev_p, p, prev_f, fp, 1e-15 * p);
            roots.push_back({root, std::abs(f(root))});
        }
        prev_p = p;
        prev_f = fp;
    }
    return roots;
}

BallEigenvalue make_eigenvalue(const BallProblem& pb, int k, const RootP& root) {
    const double alpha = pb.alpha;
    double p = root.p;
    double lambda = p * (p - alpha);
    Regime regime = lambda > 0 ? Regime::positive : Regime::negative;
    if (alpha > 0.0 && std::abs(lambda) <= zero_snap(alpha)) {
        p = alpha;
        lambda = 0.0;
        regime = Regime::zero;
    }
    const double s = p - 0.5 * alpha;
    const int mult = harmonic_dimension(k, pb.N);
    return {lambda, s * s, k, mult, regime, root.residual, {k}};
}

int default_k_max(const BallProblem& pb, double p_max) {
    return 1 + static_cast<int>(std::ceil(pb.R * std::sqrt(std::max(p_max, 0.0))));
}

std::vector<BallEigenvalue> merge_sorted(std::vector<BallEigenvalue> all) {
    std::sort(all.begin(), all.end(), [](const BallEigenvalue& a, const BallEigenvalue& b) {
        return a.lambda != b.lambda ? a.lambda < b.lambda : a.k < b.k;
    });
    std::vector<BallEigenvalue> out;
    for (auto& e : all) {
        if (!out.empty()) {
            auto& last = out.back();
            const bool close = std::abs(e.lambda - last.lambda) <= 1e-8 * std::max(1.0, std::abs(last.lambda));
            if (close && std::find(last.degrees.begin(), last.degrees.end(), e.k) == last.degrees.end()) {
                last.multiplicity += e.multiplicity;
                last.degrees.push_back(e.k);
                last.residual = std::max(last.residual, e.residual);
                continue;
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

void BallProblem::validate() const {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("BallProblem: radius must be positive");
    if (N < 2) throw DomainError("BallProblem: dimension must be at least 2");
    if (!std::isfinite(alpha)) throw DomainError("BallProblem: alpha must be finite");
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::positive: return "positive";
        case Regime::negative: return "negative";
        case Regime::zero: return "zero";
    }
    return "?";
}

SplitPair split(double alpha, double lambda) {
    const double quarter = 0.25 * alpha * alpha;
    const double disc = quarter + lambda;
    if (disc < -1e-12 * std::max(1.0, quarter))
        throw DiscriminantError("split: lambda < -alpha^2/4, the factors are complex");
    const double d = std::sqrt(std::max(disc, 0.0));
    if (alpha > 0.0) {
        const double plus = 0.5 * alpha + d;
        return {plus, -lambda / plus};
    }
    if (alpha < 0.0) {
        const double minus = 0.5 * alpha - d;
        return {-lambda / minus, minus};
    }
    return {d, -d};
}

int harmonic_dimension(int k, int N) {
    if (k < 0 || N < 2) throw DomainError("harmonic_dimension: k >= 0 and N >= 2 required");
    auto binom = [](int n, int r) -> long long {
        if (r < 0 || n < r) return 0;
        long long v = 1;
        for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return v;
    };
    return static_cast<int>(binom(k + N - 1, N - 1) - binom(k + N - 3, N - 1));
}

double discriminant_guard(double alpha) { return 1e-9 * std::max(1.0, alpha * alpha); }

double clamped_det_p(const BallProblem& pb, int k, double p) {
    const BesselOrder nu = BesselOrder::from_degree(k, pb.N);
    const double alpha = pb.alpha, R = pb.R;
    const double a = std::sqrt(p);
    const auto ua = unit_pair(nu, R * a);
    if (p >= alpha) {
        // lambda >= 0: J_nu(a r) with I_nu(b r).
        const double b = std::sqrt(p - alpha);
        const double rho = b > 0.0 ? specfun::bessel_i_ratio(nu, R * b) : 0.0;
        const double num = b * rho * ua.j0 + a * ua.j1;
        const double den = std::hypot(a, b * rho);
        return num / den;
    }
    // -alpha^2/4 < lambda < 0: J_nu(a r) with J_nu(c r), a > c.
    const double c = std::sqrt(alpha - p);
    const auto uc = unit_pair(nu, R * c);
    return (a * uc.j0 * ua.j1 - c * ua.j0 * uc.j1) / std::max(a, c);
}

double clamped_det(const BallProblem& pb, int k, double lambda) {
    pb.validate();
    const auto sp = split(pb.alpha, lambda);
    if (lambda + 0.25 * pb.alpha * pb.alpha < discriminant_guard(pb.alpha))
        throw DiscriminantError("clamped_det: lambda inside the guard band at -alpha^2/4");
    return clamped_det_p(pb, k, sp.alpha_plus);
}

std::vector<BallEigenvalue> clamped_eigs_degree(const BallProblem& pb, int k, double lambda_max) {
    pb.validate();
    if (lambda_max + 0.25 * pb.alpha * pb.alpha <= 0.0) return {};
    const double p_max = split(pb.alpha, lambda_max).alpha_plus;
    std::vector<BallEigenvalue> out;
    for (const auto& r : scan_degree(pb, k, p_max)) out.push_back(make_eigenvalue(pb, k, r));
    return out;
}

BallSpectrum clamped_eigs(const BallProblem& pb, int count, const BallScanOptions& opts) {
    pb.validate();
    if (count < 0 || count > 200) throw DomainError("clamped_eigs: count must be in [0, 200]");
    BallSpectrum result;
    if (count == 0) return result;
    const double alpha = pb.alpha;
    double p_max = std::max(alpha, 0.0) + std::pow(8.0 / pb.R, 2);
    for (;;) {
        const int k_natural = default_k_max(pb, p_max);
        const int k_top = opts.k_max ? *opts.k_max : k_natural;
        std::vector<BallEigenvalue> all;
        double first_of_top = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= k_top; ++k) {
            const auto roots = scan_degree(pb, k, p_max);
            for (const auto& r : roots) all.push_back(make_eigenvalue(pb, k, r));
            if (k == k_top && !roots.empty()) first_of_top = make_eigenvalue(pb, k, roots.front()).lambda;
        }
        auto merged = merge_sorted(std::move(all));
        if (static_cast<int>(merged.size()) >= count || p_max > 1e12) {
            if (static_cast<int>(merged.size()) > count) merged.resize(static_cast<std::size_t>(count));
            result.eigenvalues = std::move(merged);
            result.k_scanned = k_top;
            if (static_cast<int>(result.eigenvalues.size()) < count)
                result.warnings.push_back("clamped_eigs: fewer eigenvalues found than requested");
            if (opts.k_max && k_top < k_natural && !result.eigenvalues.empty() &&
                first_of_top <= result.eigenvalues.back().lambda)
                result.warnings.push_back("clamped_eigs: incomplete scan, degree bound " +
                                          std::to_string(k_top) + " may truncate the spectrum");
            return result;
        }
        p_max = 2.0 * p_max + std::pow(4.0 / pb.R, 2);
    }
}

std::vector<BucklingEigenvalue> buckling_eigs(double R, int N, int count) {
    BallProblem{R, N, 0.0}.validate();
    if (count < 0 || count > 100) throw DomainError("buckling_eigs: count must be in [0, 100]");
    std::vector<BucklingEigenvalue> all;
    for (int k = 0;; ++k) {
        const BesselOrder order = BesselOrder::from_degree(k, N).next();
        const auto zeros = specfun::bessel_zeros(order, count);
        if (static_cast<int>(all.size()) >= count) {
            std::sort(all.begin(), all.end(),
                      [](const auto& a, const auto& b) { return a.Lambda < b.Lambda; });
            if (zeros.empty() || zeros[0] * zeros[0] / (R * R) > all[static_cast<std::size_t>(count) - 1].Lambda)
                break;
        }
        for (double z : zeros) all.push_back({z * z / (R * R), k, harmonic_dimension(k, N)});
        if (count == 0) break;
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.Lambda < b.Lambda; });
    if (static_cast<int>(all.size()) > count) all.resize(static_cast<std::size_t>(count));
    return all;
}

RadialFunction radial_profile(const BallProblem& pb, int k, double lambda) {
    pb.validate();
    const BesselOrder nu = BesselOrder::from_degree(k, pb.N);
    const double alpha = pb.alpha, R = pb.R;
    const auto sp = split(alpha, lambda);
    const double a = std::sqrt(std::max(sp.alpha_plus, 0.0));
    auto j_scale = [&](double z) {
        const double m = std::hypot(specfun::bessel_j(nu, z), specfun::bessel_j(nu.next(), z));
        return 1.0 / std::max(m, 1e-300);
    };

    RadialFunction f(k, pb.N, R), g(k, pb.N, R);
    f.add_j(j_scale(R * a), a);
    const bool zero = alpha > 0.0 && std::abs(lambda) <= zero_snap(alpha);
    if (zero) {
        g.add_power(std::pow(R, -k));
    } else if (lambda > 0.0) {
        const double b = std::sqrt(-sp.alpha_minus);
        g.add_i(1.0 / std::max(specfun::bessel_i_scaled(nu, R * b), 1e-300), b);
    } else {
        const double c = std::sqrt(sp.alpha_minus);
        g.add_j(j_scale(R * c), c);
    }

    const double m11 = f.value(R), m12 = g.value(R);
    const double m21 = R * f.derivative(R), m22 = R * g.derivative(R);
    const double n1 = std::hypot(m11, m12), n2 = std::hypot(m21, m22);
    if (n1 == 0.0 && n2 == 0.0) throw NotAnEigenvalue("radial_profile: degenerate boundary system");
    // A vanishing row is compatible with any kernel, so measure against the larger row.
    const double nmax = std::max(n1, n2);
    const double sine = std::abs(m11 * m22 - m12 * m21) / (nmax * nmax);
    if (!(sine <= 1e-6)) throw NotAnEigenvalue("radial_profile: lambda is not an eigenvalue of this degree");
    double A, B;
    if (n1 >= n2) {
        A = m12;
        B = -m11;
    } else {
        A = m22;
        B = -m21;
    }
    RadialFunction u = f.combine(A, g, B);
    // Normalize and fix the sign at the point of largest modulus.
    const double peak = u.max_abs();
    double r_peak = 0.0, best = -1.0;
    for (int i = 0; i <= 2000; ++i) {
        const double r = R * i / 2000.0;
        const double v = std::abs(u.value(r));
        if (v > best) {
            best = v;
            r_peak = r;
        }
    }
    u.scale((u.value(r_peak) < 0 ? -1.0 : 1.0) / peak);
    return u;
}

}  // namespace plateig::ball
