#include "plateig/navier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "plateig/errors.hpp"
#include "plateig/specfun.hpp"

namespace plateig::navier {

void DirichletSpectrum::validate() const {
    if (gammas.empty()) throw DomainError("DirichletSpectrum: no eigenvalues");
    if (!(gammas.front() > 0.0)) throw DomainError("DirichletSpectrum: eigenvalues must be positive");
    if (!std::is_sorted(gammas.begin(), gammas.end()))
        throw DomainError("DirichletSpectrum: eigenvalues must be ascending");
    if (!(area > 0.0)) throw DomainError("DirichletSpectrum: area must be positive");
}

DirichletSpectrum dirichlet_disk_spectrum(double R, int count) {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("dirichlet_disk_spectrum: R must be positive");
    if (count < 1 || count > 500) throw DomainError("dirichlet_disk_spectrum: count must be in [1, 500]");
    // Weyl: the n-th zero lies near sqrt(4n); collect every zero below a bound and grow it.
    double zmax = 2.0 * std::sqrt(static_cast<double>(count)) + 8.0;
    std::vector<double> z;
    for (;;) {
        z.clear();
        for (int k = 0; k < zmax; ++k) {
            const int guess = static_cast<int>((zmax - k) / std::numbers::pi) + 2;
            for (double j : specfun::bessel_zeros(specfun::BesselOrder(k), guess)) {
                if (j > zmax) break;
                z.push_back(j);
                if (k > 0) z.push_back(j);
            }
        }
        if (static_cast<int>(z.size()) >= count) break;
        zmax *= 1.25;
    }
    std::sort(z.begin(), z.end());
    z.resize(static_cast<std::size_t>(count));
    DirichletSpectrum s;
    s.N = 2;
    s.area = std::numbers::pi * R * R;
    s.domain_label = "disk";
    for (double j : z) s.gammas.push_back(j * j / (R * R));
    return s;
}

namespace {

void require_vertex(const DirichletSpectrum& spec, double alpha) {
    if (spec.gammas.back() < 0.5 * alpha)
        throw InsufficientSpectrum("navier: largest gamma lies below the parabola vertex alpha/2");
}

}  // namespace

std::vector<double> navier_spectrum(const DirichletSpectrum& spec, double alpha, int count) {
    spec.validate();
    if (count < 1) throw DomainError("navier_spectrum: count must be positive");
    if (count > static_cast<int>(spec.gammas.size()))
        throw InsufficientSpectrum("navier_spectrum: fewer gammas than requested values");
    require_vertex(spec, alpha);
    std::vector<double> v;
    v.reserve(spec.gammas.size());
    for (double g : spec.gammas) v.push_back(g * g - alpha * g);
    std::sort(v.begin(), v.end());
    v.resize(static_cast<std::size_t>(count));
    const double g = spec.gammas.back();
    const double tail = g * g - alpha * g;
    // Unseen gammas exceed the top one and, past the vertex, map to values >= tail.
    if (!(tail >= v.back()))
        throw InsufficientSpectrum("navier_spectrum: unseen gammas could undercut the returned values");
    return v;
}

std::vector<NavierCurvePoint> navier_lambda1_curve(const DirichletSpectrum& spec, double alpha_lo, double alpha_hi,
                                                   int samples) {
    spec.validate();
    if (!(alpha_lo <= alpha_hi)) throw DomainError("navier_lambda1_curve: empty alpha range");
    if (samples < 1 || (samples == 1 && alpha_lo != alpha_hi))
        throw DomainError("navier_lambda1_curve: need at least two samples for a range");
    require_vertex(spec, alpha_hi);
    std::vector<NavierCurvePoint> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double a = samples == 1 ? alpha_lo : alpha_lo + (alpha_hi - alpha_lo) * i / (samples - 1);
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t k = 0; k < spec.gammas.size(); ++k) {
            const double g = spec.gammas[k];
            const double v = g * g - a * g;
            if (v < best) {
                best = v;
                arg = static_cast<int>(k) + 1;
            }
        }
        out.push_back({a, best, arg});
    }
    return out;
}

std::vector<double> navier_breakpoints(const DirichletSpectrum& spec, double alpha_lo, double alpha_hi) {
    spec.validate();
    std::vector<double> distinct;
    for (double g : spec.gammas)
        if (distinct.empty() || g > distinct.back() * (1.0 + 1e-13)) distinct.push_back(g);
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        const double b = distinct[i] + distinct[i + 1];
        if (b >= alpha_lo && b <= alpha_hi) out.push_back(b);
    }
    return out;
}

double weyl_gap_ratio(const DirichletSpectrum& spec, int k) {
    if (k < 1 || k + 1 > static_cast<int>(spec.gammas.size()))
        throw InsufficientSpectrum("weyl_gap_ratio: k + 1 exceeds the spectrum");
    const double a = spec.gammas[static_cast<std::size_t>(k - 1)], b = spec.gammas[static_cast<std::size_t>(k)];
    return (b - a) * (b - a) / (b + a);
}

std::vector<double> weyl_gap_cesaro(const DirichletSpectrum& spec, int kmax) {
    std::vector<double> out;
    double sum = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        sum += weyl_gap_ratio(spec, k);
        out.push_back(sum / k);
    }
    return out;
}

}  // namespace plateig::navier
