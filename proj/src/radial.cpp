#include "plateig/radial.hpp"

#include <cmath>
#include <stdexcept>

#include "plateig/roots.hpp"

namespace plateig {

using specfun::BesselOrder;

namespace {

// Limit of r^{1-N/2} F_nu(f r) / r^k as r -> 0 for F in {J, I}: (f/2)^nu / Gamma(nu+1).
double small_r_coefficient(double nu, double f) {
    return std::exp(nu * std::log(0.5 * f) - std::lgamma(nu + 1.0));
}

}  // namespace

double RadialFunction::term_value(const Term& t, double r) const {
    const BesselOrder nu = BesselOrder::from_degree(k_, dim_);
    const double s = 1.0 - 0.5 * dim_;
    switch (t.kind) {
        case Kind::power:
            return t.coef * (k_ == 0 ? 1.0 : std::pow(r, k_));
        case Kind::bessel_j:
            if (r == 0.0) return k_ == 0 ? t.coef * small_r_coefficient(nu.value(), t.freq) : 0.0;
            return t.coef * std::pow(r, s) * specfun::bessel_j(nu, t.freq * r);
        case Kind::bessel_i:
            if (r == 0.0)
                return k_ == 0 ? t.coef * small_r_coefficient(nu.value(), t.freq) * std::exp(-t.freq * radius_)
                               : 0.0;
            return t.coef * std::pow(r, s) * specfun::bessel_i_scaled(nu, t.freq * r) *
                   std::exp(t.freq * (r - radius_));
    }
    return 0.0;
}

// d/dr [r^{1-N/2} J_nu(a r)] = r^{1-N/2} [(k/r) J_nu - a J_{nu+1}],
// d/dr [r^{1-N/2} I_nu(b r)] = r^{1-N/2} [(k/r) I_nu + b I_{nu+1}].
double RadialFunction::term_derivative(const Term& t, double r) const {
    const BesselOrder nu = BesselOrder::from_degree(k_, dim_);
    const double s = 1.0 - 0.5 * dim_;
    if (t.kind == Kind::power) {
        if (k_ == 0) return 0.0;
        return t.coef * k_ * (k_ == 1 ? 1.0 : std::pow(r, k_ - 1));
    }
    if (r == 0.0) {
        if (k_ != 1) return 0.0;
        const double c = t.coef * small_r_coefficient(nu.value(), t.freq);
        return t.kind == Kind::bessel_j ? c : c * std::exp(-t.freq * radius_);
    }
    const double z = t.freq * r;
    const double pre = t.coef * std::pow(r, s);
    if (t.kind == Kind::bessel_j) {
        return pre * (k_ / r * specfun::bessel_j(nu, z) - t.freq * specfun::bessel_j(nu.next(), z));
    }
    const double e = std::exp(t.freq * (r - radius_));
    return pre * e * (k_ / r * specfun::bessel_i_scaled(nu, z) + t.freq * specfun::bessel_i_scaled(nu.next(), z));
}

double RadialFunction::value(double r) const {
    double v = 0.0;
    for (const auto& t : terms_) v += term_value(t, r);
    return v;
}

double RadialFunction::derivative(double r) const {
    double v = 0.0;
    for (const auto& t : terms_) v += term_derivative(t, r);
    return v;
}

RadialFunction RadialFunction::combine(double s, const RadialFunction& other, double t) const {
    if (other.k_ != k_ || other.dim_ != dim_ || other.radius_ != radius_)
        throw std::invalid_argument("RadialFunction::combine: incompatible factors");
    RadialFunction out(k_, dim_, radius_);
    for (auto term : terms_) {
        term.coef *= s;
        out.terms_.push_back(term);
    }
    for (auto term : other.terms_) {
        term.coef *= t;
        out.terms_.push_back(term);
    }
    return out;
}

double RadialFunction::max_abs(int samples) const {
    double best_r = 0.0, best = -1.0;
    const double h = radius_ / (samples - 1);
    for (int i = 0; i < samples; ++i) {
        const double r = i * h;
        const double v = std::abs(value(r));
        if (v > best) {
            best = v;
            best_r = r;
        }
    }
    const double lo = std::max(0.0, best_r - h), hi = std::min(radius_, best_r + h);
    const auto m = numerics::brent_minimize([&](double r) { return -std::abs(value(r)); }, lo, hi, best_r,
                                            -best, 1e-10 * radius_);
    return std::max(best, -m.fx);
}

}  // namespace plateig
