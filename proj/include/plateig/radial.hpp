#pragma once

// Radial factors of separated solutions on B_R in R^N.  A RadialFunction is a
// finite sum of
//   c r^{1-N/2} J_nu(a r),   c r^{1-N/2} I_nu(b r) e^{-b R},   c r^k
// with nu = k + N/2 - 1, evaluated together with its r-derivative.  The e^{-bR}
// factor keeps coefficients O(1) when b R is large.

#include <vector>

#include "plateig/specfun.hpp"

namespace plateig {

class RadialFunction {
public:
    enum class Kind { bessel_j, bessel_i, power };

    struct Term {
        Kind kind;
        double coef;
        double freq;  // a or b; unused for power terms
    };

    RadialFunction(int k, int dim, double radius) : k_(k), dim_(dim), radius_(radius) {}

    int degree() const { return k_; }
    int dim() const { return dim_; }
    double radius() const { return radius_; }
    const std::vector<Term>& terms() const { return terms_; }

    void add_j(double coef, double a) { terms_.push_back({Kind::bessel_j, coef, a}); }
    void add_i(double coef, double b) { terms_.push_back({Kind::bessel_i, coef, b}); }
    void add_power(double coef) { terms_.push_back({Kind::power, coef, 0.0}); }

    void scale(double s) {
        for (auto& t : terms_) t.coef *= s;
    }

    double value(double r) const;
    double derivative(double r) const;
    double operator()(double r) const { return value(r); }

    /// Linear combination s*this + t*other (same degree, dimension and radius).
    RadialFunction combine(double s, const RadialFunction& other, double t) const;

    /// Maximum of |value| on [0, R], located by sampling and local refinement.
    double max_abs(int samples = 2001) const;

private:
    double term_value(const Term& t, double r) const;
    double term_derivative(const Term& t, double r) const;

    int k_;
    int dim_;
    double radius_;
    std::vector<Term> terms_;
};

}  // namespace plateig
