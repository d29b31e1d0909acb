#include "plateig/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "plateig/errors.hpp"
#include "plateig/roots.hpp"

namespace plateig::bridge {

using specfun::BesselOrder;

namespace {

constexpr double kPi = std::numbers::pi;

bool is_dirichlet(double beta) { return std::isinf(beta) && beta > 0; }

bool harmonic_case(double c, int k) { return std::abs(c) <= 1e-12 * std::max(1.0, static_cast<double>(k)); }

// (c J_nu(z) - z J_{nu+1}(z)) / ((|c| + z) M(z)), M = hypot(J_nu, J_{nu+1}).
double robin_oscillatory(BesselOrder nu, double c, double z) {
    double u0, u1;
    if (z < nu.value()) {
        const double q = specfun::bessel_j_ratio(nu, z);
        const double n = std::sqrt(1.0 + q * q);
        u0 = 1.0 / n;
        u1 = q / n;
    } else {
        const double j0 = specfun::bessel_j(nu, z), j1 = specfun::bessel_j(nu.next(), z);
        const double n = std::hypot(j0, j1);
        u0 = j0 / n;
        u1 = j1 / n;
    }
    return (c * u0 - z * u1) / (std::abs(c) + z);
}

void check_ball(double R, int N, int k) {
    if (!(R > 0.0)) throw DomainError("bridge: radius must be positive");
    if (N < 2) throw DomainError("bridge: dimension must be at least 2");
    if (k < 0) throw DomainError("bridge: degree must be non-negative");
}

}  // namespace

const char* category_name(RobinCategory c) {
    switch (c) {
        case RobinCategory::oscillatory: return "oscillatory";
        case RobinCategory::exponential: return "exponential";
        case RobinCategory::harmonic: return "harmonic";
    }
    return "?";
}

std::vector<RobinEigenvalue> robin_eigs_ball(double R, int N, int k, double beta, int count) {
    check_ball(R, N, k);
    if (count < 0 || count > 100) throw DomainError("robin_eigs_ball: count must be in [0, 100]");
    if (std::isnan(beta) || (std::isinf(beta) && beta < 0))
        throw DomainError("robin_eigs_ball: beta must be finite or +infinity");
    const BesselOrder nu = BesselOrder::from_degree(k, N);
    std::vector<RobinEigenvalue> out;
    if (count == 0) return out;
    if (is_dirichlet(beta)) {
        for (double z : specfun::bessel_zeros(nu, count))
            out.push_back({z * z / (R * R), k, RobinCategory::oscillatory, beta});
        return out;
    }
    const double c = k + beta * R;
    if (harmonic_case(c, k)) {
        out.push_back({0.0, k, RobinCategory::harmonic, beta});
    } else if (c < 0.0) {
        // z I_{nu+1}(z) / I_nu(z) increases from 0 to infinity and is below z.
        auto g = [&](double z) { return z * specfun::bessel_i_ratio(nu, z) + c; };
        const double hi = std::abs(c) + nu.value() + 2.0;
        const double z = numerics::brent_root(g, 1e-300, hi, c, g(hi), 1e-15 * hi);
        out.push_back({-(z * z) / (R * R), k, RobinCategory::exponential, beta});
    }
    // Oscillatory roots of c J_nu(z) = z J_{nu+1}(z).
    auto f = [&](double z) { return robin_oscillatory(nu, harmonic_case(c, k) ? 0.0 : c, z); };
    const double step = 0.25;
    double lo = 1e-8, flo = f(lo);
    while (static_cast<int>(out.size()) < count) {
        const double hi = lo + step;
        const double fhi = f(hi);
        if (fhi == 0.0 || (flo > 0) != (fhi > 0)) {
            const double z = fhi == 0.0 ? hi : numerics::brent_root(f, lo, hi, flo, fhi, 1e-15 * hi);
            out.push_back({z * z / (R * R), k, RobinCategory::oscillatory, beta});
        }
        lo = hi;
        flo = fhi;
    }
    return out;
}

RadialFunction robin_profile(double R, int N, const RobinEigenvalue& e) {
    check_ball(R, N, e.k);
    const BesselOrder nu = BesselOrder::from_degree(e.k, N);
    RadialFunction v(e.k, N, R);
    switch (e.category) {
        case RobinCategory::harmonic:
            v.add_power(std::pow(R, -e.k));
            break;
        case RobinCategory::exponential: {
            const double b = std::sqrt(-e.sigma);
            v.add_i(1.0 / specfun::bessel_i_scaled(nu, b * R), b);
            break;
        }
        case RobinCategory::oscillatory: {
            const double a = std::sqrt(e.sigma);
            const double m = std::hypot(specfun::bessel_j(nu, a * R), specfun::bessel_j(nu.next(), a * R));
            v.add_j(1.0 / std::max(m, 1e-300), a);
            break;
        }
    }
    return v;
}

double robin_beta_slope(double R, int N, const RobinEigenvalue& e) {
    check_ball(R, N, e.k);
    if (is_dirichlet(e.beta)) return 0.0;
    const BesselOrder nu = BesselOrder::from_degree(e.k, N);
    const double v = nu.value();
    switch (e.category) {
        case RobinCategory::harmonic:
            return (2.0 * e.k + N) / R;
        case RobinCategory::exponential: {
            // int_0^R r I_nu(b r)^2 dr = (R^2/2) [(1 + nu^2/z^2) I^2 - I'^2], z = bR.
            const double z = std::sqrt(-e.sigma) * R;
            const double rho = specfun::bessel_i_ratio(nu, z);
            const double ip = v / z + rho;  // I'/I
            return 2.0 / (R * ((1.0 + v * v / (z * z)) - ip * ip));
        }
        case RobinCategory::oscillatory: {
            // int_0^R r J_nu(a r)^2 dr = (R^2/2) [J'^2 + (1 - nu^2/z^2) J^2], z = aR.
            const double z = std::sqrt(e.sigma) * R;
            const double j = specfun::bessel_j(nu, z);
            const double jp = specfun::bessel_j_prime(nu, z);
            return 2.0 * j * j / (R * (jp * jp + (1.0 - v * v / (z * z)) * j * j));
        }
    }
    return 0.0;
}

ClampedPair pair_to_clamped(double sigma1, double sigma2) { return {sigma1 + sigma2, -sigma1 * sigma2}; }

RadialFunction clamped_eigenfunction_from_pair(double R, int N, const RobinEigenvalue& e1,
                                               const RobinEigenvalue& e2) {
    if (e1.k != e2.k) throw DegeneratePair("clamped_eigenfunction_from_pair: degrees differ");
    if (e1.beta != e2.beta) throw DegeneratePair("clamped_eigenfunction_from_pair: Robin parameters differ");
    if (e1.sigma == e2.sigma) throw DegeneratePair("clamped_eigenfunction_from_pair: sigma1 == sigma2");
    const auto v1 = robin_profile(R, N, e1);
    const auto v2 = robin_profile(R, N, e2);
    auto trace = [&](const RadialFunction& v) {
        if (is_dirichlet(e1.beta)) return -v.derivative(R);
        return (v.value(R) - e1.beta * v.derivative(R)) / std::sqrt(1.0 + e1.beta * e1.beta);
    };
    auto u = v2.combine(trace(v1), v1, -trace(v2));
    u.scale(1.0 / u.max_abs());
    return u;
}

std::vector<BranchPoint> trace_branch(double R, int N, BranchId branch, const std::vector<double>& beta_grid,
                                      int first_index) {
    check_ball(R, N, branch.k);
    if (branch.t < 1) throw DomainError("trace_branch: t must be >= 1");
    if (first_index < 1) throw DomainError("trace_branch: first_index must be >= 1");
    if (!std::is_sorted(beta_grid.begin(), beta_grid.end()))
        throw DomainError("trace_branch: beta grid must be ascending");
    std::vector<BranchPoint> out;
    const int count = first_index + branch.t;
    for (double beta : beta_grid) {
        const auto eig = robin_eigs_ball(R, N, branch.k, beta, count);
        const auto& e1 = eig[static_cast<std::size_t>(first_index - 1)];
        const auto& e2 = eig[static_cast<std::size_t>(count - 1)];
        const auto cp = pair_to_clamped(e1.sigma, e2.sigma);
        const double s1 = robin_beta_slope(R, N, e1), s2 = robin_beta_slope(R, N, e2);
        out.push_back({beta, cp.alpha, cp.lambda, e1.sigma, e2.sigma, -(s1 * e2.sigma + e1.sigma * s2)});
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
        const double db = out[i].beta - out[i - 1].beta;
        if (std::isinf(db)) continue;
        const double slope = std::max(std::abs(out[i].slope), std::abs(out[i - 1].slope));
        const double dl = std::abs(out[i].lambda - out[i - 1].lambda);
        if (dl > 10.0 * db * slope + 1e-9 * std::max(1.0, std::abs(out[i].lambda)))
            throw BranchJump("trace_branch: lambda jumps between beta = " + std::to_string(out[i - 1].beta) +
                             " and " + std::to_string(out[i].beta) + "; refine the grid");
    }
    return out;
}

ClampedPair dirichlet_endpoint(double R, int N, BranchId branch, int m) {
    check_ball(R, N, branch.k);
    if (m < 1 || branch.t < 1) throw DomainError("dirichlet_endpoint: m >= 1 and t >= 1 required");
    const auto zeros = specfun::bessel_zeros(BesselOrder::from_degree(branch.k, N), m + branch.t);
    const double g1 = std::pow(zeros[static_cast<std::size_t>(m - 1)] / R, 2);
    const double g2 = std::pow(zeros.back() / R, 2);
    return pair_to_clamped(g1, g2);
}

double branch_asymptote_constant(double R, int N, BranchId branch) {
    const double nu = branch.nu(N);
    const double tp2 = branch.t * branch.t * kPi * kPi;
    return tp2 * (4.0 * nu * nu - 1.0 - tp2) / (4.0 * std::pow(R, 4));
}

std::function<double(double)> branch_asymptote(double R, int N, BranchId branch) {
    const double c = branch_asymptote_constant(R, N, branch);
    const double lin = branch.t * branch.t * kPi * kPi / (2.0 * R * R);
    return [c, lin](double alpha) { return -0.25 * alpha * alpha + alpha * lin + c; };
}

namespace {

struct DiskMode {
    double gamma;
    int n;  // angular order
    double zero;
};

// Dirichlet disk eigenvalues with multiplicity, ascending, at least `count` entries.
std::vector<DiskMode> disk_modes(double R, int count) {
    std::vector<DiskMode> all;
    for (int n = 0;; ++n) {
        const auto zeros = specfun::bessel_zeros(BesselOrder(n), count);
        if (static_cast<int>(all.size()) >= count) {
            std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.gamma < b.gamma; });
            if (zeros[0] * zeros[0] / (R * R) > all[static_cast<std::size_t>(count) - 1].gamma) break;
        }
        for (double z : zeros) {
            const DiskMode mode{z * z / (R * R), n, z};
            all.push_back(mode);
            if (n > 0) all.push_back(mode);
        }
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.gamma < b.gamma; });
    return all;
}

}  // namespace

double frank_boundary_integral(double R, int k) {
    if (!(R > 0.0) || k < 1) throw DomainError("frank_boundary_integral: R > 0 and k >= 1 required");
    const auto mode = disk_modes(R, k)[static_cast<std::size_t>(k - 1)];
    // u = c J_n(j r / R) Theta(theta), int Theta^2 = 2 pi (n = 0) or pi.
    const double theta_norm = mode.n == 0 ? 2.0 * kPi : kPi;
    const double jn1 = specfun::bessel_j(BesselOrder(mode.n + 1.0), mode.zero);
    const double norm2 = theta_norm * 0.5 * R * R * jn1 * jn1;  // J_n'(j) = -J_{n+1}(j)
    const double djdr = (mode.zero / R) * specfun::bessel_j_prime(BesselOrder(mode.n), mode.zero);
    return theta_norm * R * djdr * djdr / norm2;
}

double frank_asymptote_disk(double R, int k, double alpha) {
    if (!(alpha < 0.0)) throw DomainError("frank_asymptote_disk: alpha must be negative");
    const double gamma = disk_modes(R, k)[static_cast<std::size_t>(k - 1)].gamma;
    return -alpha * gamma + std::sqrt(-alpha) * frank_boundary_integral(R, k);
}

}  // namespace plateig::bridge
