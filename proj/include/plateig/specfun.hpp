#pragma once

// Bessel-family functions of real argument and their zeros.
//
// Orders are restricted to non-negative integers and half-integers, which is
// everything the radial problems on balls in R^N produce (nu = k + N/2 - 1).
// All functions are pure and thread-safe; lookup tables used by the fast
// Y/K paths are built once on first use.

#include <vector>

namespace plateig::specfun {

/// Non-negative order nu = p/2.
class BesselOrder {
public:
    /// Throws DomainError unless nu >= 0 and 2*nu is an integer.
    explicit BesselOrder(double nu);

    /// nu = k + dim/2 - 1, the order attached to spherical degree k in R^dim.
    static BesselOrder from_degree(int k, int dim);

    double value() const { return static_cast<double>(twice_) / 2.0; }
    int twice() const { return twice_; }
    bool is_integer() const { return twice_ % 2 == 0; }
    BesselOrder next() const { return BesselOrder(twice_ + 2, Tag{}); }

    friend bool operator==(BesselOrder a, BesselOrder b) { return a.twice_ == b.twice_; }

private:
    struct Tag {};
    BesselOrder(int twice, Tag) : twice_(twice) {}
    int twice_;
};

/// J_nu(x), x >= 0.
double bessel_j(BesselOrder nu, double x);

/// d/dx J_nu(x).
double bessel_j_prime(BesselOrder nu, double x);

/// Y_nu(x) for nu in {0, 1}, x > 0.
double bessel_y(BesselOrder nu, double x);

/// I_nu(x), x >= 0.  Overflows to +inf beyond x ~ 700; use the scaled form there.
double bessel_i(BesselOrder nu, double x);

/// e^{-x} I_nu(x), valid for 0 <= x <= 1e6 (and beyond).
double bessel_i_scaled(BesselOrder nu, double x);

/// K_nu(x) for nu in {0, 1}, x > 0.
double bessel_k(BesselOrder nu, double x);

/// e^{x} K_nu(x) for nu in {0, 1}, x > 0.
double bessel_k_scaled(BesselOrder nu, double x);

struct BesselPair {
    double order0;
    double order1;
};

/// (Y_0(x), Y_1(x)) in one call; the hot path of the MFS kernels.
BesselPair bessel_y01(double x);

/// (e^x K_0(x), e^x K_1(x)) in one call.
BesselPair bessel_k01_scaled(double x);

/// J_{nu+1}(x) / J_nu(x) for 0 < x < j_{nu,1} without under/overflow at large nu.
double bessel_j_ratio(BesselOrder nu, double x);

/// I_{nu+1}(x) / I_nu(x) for x > 0; lies in (0, 1).
double bessel_i_ratio(BesselOrder nu, double x);

/// m-th positive zero j_{nu,m} of J_nu, m >= 1.
double bessel_zero(BesselOrder nu, int m);

/// The first `count` positive zeros of J_nu, ascending.
std::vector<double> bessel_zeros(BesselOrder nu, int count);

/// Two-term McMahon expansion (m + nu/2 - 1/4) pi - (4 nu^2 - 1) / (8 (m + nu/2 - 1/4) pi).
double bessel_zero_asymptotic(BesselOrder nu, int m);

}  // namespace plateig::specfun
