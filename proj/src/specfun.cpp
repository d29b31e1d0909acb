#include "plateig/specfun.hpp"

#include <quadmath.h>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "plateig/errors.hpp"
#include "plateig/roots.hpp"

namespace plateig::specfun {

namespace {

using f128 = __float128;

constexpr double kPi = std::numbers::pi;
constexpr long double kEulerL = 0.577215664901532860606512090082402431L;
const f128 kEulerQ = 0.5772156649015328606065120900824024310422Q;
const f128 kPiQ = 3.1415926535897932384626433832795028841972Q;

// Switch points between the evaluation regimes.
constexpr double kSeriesLd = 8.0;      // long double ascending series for J below this
constexpr double kHankelMin = 25.0;    // large-argument expansions of J/Y from here
constexpr double kKAsymptMin = 20.0;   // large-argument expansion of K from here
constexpr double kSmallArg = 2.0;      // direct double series for Y/K below this

// ---------------------------------------------------------------------------
// Ascending series

long double j_series_ld(double nu, double x) {
    const long double h = 0.5L * x;
    const long double z = -h * h;
    long double lead = std::exp(nu * std::log(h) - std::lgamma(static_cast<long double>(nu) + 1));
    if (nu == 0.0) lead = 1.0L;
    long double term = 1.0L, sum = 1.0L, big = 1.0L;
    for (int k = 1; k < 500; ++k) {
        term *= z / (static_cast<long double>(k) * (nu + k));
        sum += term;
        big = std::max(big, std::abs(term));
        if (k > h && std::abs(term) < 1e-21L * big) break;
    }
    return lead * sum;
}

f128 j_series_q(double nu, double x) {
    const f128 h = static_cast<f128>(x) / 2;
    const f128 z = -h * h;
    f128 lead = nu == 0.0 ? f128(1) : expq(static_cast<f128>(nu) * logq(h) - lgammaq(static_cast<f128>(nu) + 1));
    f128 term = 1, sum = 1, big = 1;
    for (int k = 1; k < 1000; ++k) {
        term *= z / (static_cast<f128>(k) * (static_cast<f128>(nu) + k));
        sum += term;
        if (fabsq(term) > big) big = fabsq(term);
        if (k > h && fabsq(term) < 1e-36Q * big) break;
    }
    return lead * sum;
}

// J0, J1, Y0, Y1 (oscillatory, sign = -1) or I0, I1, K0, K1 (sign = +1) from
// the ascending series; generic over the floating type so the same code gives
// the fast double path and the float128 reference used to build tables.
template <class T>
struct SeriesFour {
    T f0, f1, s0, s1;
};

template <class T, class LogFn>
SeriesFour<T> series_four(T x, int sign, T euler, T pi, LogFn log_fn, T eps) {
    const T h = x / 2;
    const T z = sign * h * h;
    // J/I parts.
    T t0 = 1, t1 = 1;  // z^k/(k!)^2 and z^k/(k!(k+1)!)
    T sum0 = 1, sum1 = 1;
    T harm = 0;        // H_k
    T hsum0 = 0;       // sum H_k z^k/(k!)^2
    T hsum1 = 1;       // sum (H_k + H_{k+1}) z^k/(k!(k+1)!), k=0 term is H_1 = 1
    T big = 1;
    for (int k = 1; k < 2000; ++k) {
        const T kk = static_cast<T>(k);
        t0 *= z / (kk * kk);
        t1 *= z / (kk * (kk + 1));
        const T harm_next = harm + 1 / kk;
        harm = harm_next;
        sum0 += t0;
        sum1 += t1;
        hsum0 += harm * t0;
        hsum1 += (2 * harm + 1 / (kk + 1)) * t1;
        T mag = t0 < 0 ? -t0 : t0;
        if (mag * harm > big) big = mag * harm;
        if (kk > h && mag * (harm + 1) < eps * big) break;
    }
    SeriesFour<T> out;
    out.f0 = sum0;
    out.f1 = h * sum1;
    const T lg = log_fn(h) + euler;
    if (sign < 0) {
        out.s0 = (2 / pi) * (lg * out.f0 - hsum0);
        out.s1 = -2 / (pi * x) + (2 / pi) * lg * out.f1 - (h / pi) * hsum1;
    } else {
        out.s0 = -lg * out.f0 + hsum0;
        out.s1 = 1 / x + lg * out.f1 - (h / 2) * hsum1;
    }
    return out;
}

SeriesFour<long double> series_four_ld(double x, int sign) {
    return series_four<long double>(x, sign, kEulerL, std::numbers::pi_v<long double>,
                                    [](long double v) { return std::log(v); }, 1e-21L);
}

SeriesFour<f128> series_four_q(double x, int sign) {
    return series_four<f128>(x, sign, kEulerQ, kPiQ, [](f128 v) { return logq(v); }, 1e-36Q);
}

// ---------------------------------------------------------------------------
// Large-argument (Hankel) expansion: P, Q such that
//   J = sqrt(2/(pi x)) (P cos w - Q sin w),  Y = sqrt(2/(pi x)) (P sin w + Q cos w),
//   w = x - (nu/2 + 1/4) pi.
struct HankelPQ {
    double p, q;
};

HankelPQ hankel_pq(double nu, double x) {
    const long double mu = 4.0L * nu * nu;
    long double term = 1.0L, p = 1.0L, q = 0.0L;
    long double prev = 1.0L;
    for (int k = 1; k < 200; ++k) {
        const long double odd = 2.0L * k - 1.0L;
        term *= (mu - odd * odd) / (8.0L * k * x);
        const long double mag = std::abs(term);
        if (mag > prev && k > 2) break;  // asymptotic series started to diverge
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            default: p += term; break;
        }
        if (mag < 1e-19L) break;
        prev = mag;
    }
    return {static_cast<double>(p), static_cast<double>(q)};
}

struct JY {
    double j, y;
};

JY hankel_jy(double nu, double x) {
    const auto [p, q] = hankel_pq(nu, x);
    const double phi = (0.5 * nu + 0.25) * kPi;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double cw = cx * cp + sx * sp;
    const double sw = sx * cp - cx * sp;
    const double amp = std::sqrt(2.0 / (kPi * x));
    return {amp * (p * cw - q * sw), amp * (p * sw + q * cw)};
}

// e^{x} K_nu(x) ~ sqrt(pi/(2x)) sum a_k(nu)/x^k ;  e^{-x} I_nu(x) ~ 1/sqrt(2 pi x) sum (-1)^k a_k/x^k
double exp_asymptotic(double nu, double x, int sign) {
    const long double mu = 4.0L * nu * nu;
    long double term = 1.0L, sum = 1.0L, prev = 1.0L;
    for (int k = 1; k < 300; ++k) {
        const long double odd = 2.0L * k - 1.0L;
        term *= (mu - odd * odd) / (8.0L * k * x);
        const long double mag = std::abs(term);
        if (mag > prev && k > 2) break;
        sum += (sign < 0 && (k % 2 == 1)) ? -term : term;
        if (mag < 1e-19L) break;
        prev = mag;
    }
    return static_cast<double>(sum);
}

// ---------------------------------------------------------------------------
// Piecewise Chebyshev tables for the fast Y0/Y1 and scaled K0/K1 paths.

constexpr int kChebDegree = 24;

struct ChebPiece {
    std::array<double, kChebDegree + 1> c0{}, c1{};
};

class PairTable {
public:
    template <class Fn>
    PairTable(double lo, double hi, Fn&& reference) : lo_(lo), hi_(hi) {
        const int n = static_cast<int>(std::round(hi - lo));
        pieces_.resize(static_cast<std::size_t>(n));
        constexpr int npts = kChebDegree + 1;
        for (int piece = 0; piece < n; ++piece) {
            const double a = lo + piece, b = a + 1.0;
            std::array<double, npts> v0{}, v1{};
            for (int j = 0; j < npts; ++j) {
                const double t = std::cos(kPi * (j + 0.5) / npts);
                const auto [f0, f1] = reference(0.5 * (a + b) + 0.5 * (b - a) * t);
                v0[j] = f0;
                v1[j] = f1;
            }
            auto& pc = pieces_[static_cast<std::size_t>(piece)];
            for (int k = 0; k < npts; ++k) {
                long double s0 = 0, s1 = 0;
                for (int j = 0; j < npts; ++j) {
                    const long double w = std::cos(std::numbers::pi_v<long double> * k * (j + 0.5L) / npts);
                    s0 += v0[j] * w;
                    s1 += v1[j] * w;
                }
                const double scale = (k == 0 ? 1.0 : 2.0) / npts;
                pc.c0[k] = static_cast<double>(s0) * scale;
                pc.c1[k] = static_cast<double>(s1) * scale;
            }
        }
    }

    BesselPair operator()(double x) const {
        int piece = static_cast<int>(x - lo_);
        piece = std::clamp(piece, 0, static_cast<int>(pieces_.size()) - 1);
        const double a = lo_ + piece;
        const double t = 2.0 * (x - a) - 1.0;
        const auto& pc = pieces_[static_cast<std::size_t>(piece)];
        return {clenshaw(pc.c0, t), clenshaw(pc.c1, t)};
    }

private:
    static double clenshaw(const std::array<double, kChebDegree + 1>& c, double t) {
        double b1 = 0.0, b2 = 0.0;
        const double t2 = 2.0 * t;
        for (int k = kChebDegree; k >= 1; --k) {
            const double b0 = t2 * b1 - b2 + c[k];
            b2 = b1;
            b1 = b0;
        }
        return t * b1 - b2 + c[0];
    }

    double lo_, hi_;
    std::vector<ChebPiece> pieces_;
};

const PairTable& y01_table() {
    static const PairTable table(kSmallArg, kHankelMin, [](double x) {
        const auto s = series_four_q(x, -1);
        return std::pair<double, double>(static_cast<double>(s.s0), static_cast<double>(s.s1));
    });
    return table;
}

const PairTable& k01_scaled_table() {
    static const PairTable table(kSmallArg, kKAsymptMin, [](double x) {
        const auto s = series_four_q(x, +1);
        const f128 e = expq(static_cast<f128>(x));
        return std::pair<double, double>(static_cast<double>(s.s0 * e), static_cast<double>(s.s1 * e));
    });
    return table;
}

void require_nonnegative(double x, const char* fn) {
    if (!(x >= 0.0)) throw DomainError(std::string(fn) + ": argument must be >= 0");
}

void require_positive(double x, const char* fn) {
    if (!(x > 0.0)) throw DomainError(std::string(fn) + ": argument must be > 0");
}

int order01(BesselOrder nu, const char* fn) {
    if (nu.twice() == 0) return 0;
    if (nu.twice() == 2) return 1;
    throw UnsupportedOrder(std::string(fn) + ": only orders 0 and 1 are implemented");
}

// Backward (Miller) recurrence for J_{mu+n}, normalized against the large-argument
// values of J_mu and J_{mu+1}.  Used for x >= kHankelMin and nu >= 2.
double j_miller(double nu, double x) {
    const double mu = nu - std::floor(nu);
    const int target = static_cast<int>(std::lround(nu - mu));
    const int start = std::max(target, static_cast<int>(std::ceil(x))) + 30 +
                      static_cast<int>(std::ceil(8.0 * std::cbrt(x)));
    double next = 0.0, cur = 1e-100;
    double at_target = 0.0, at1 = 0.0, at0 = 0.0;
    for (int n = start; n >= 1; --n) {
        // cur = J_{mu+n}, next = J_{mu+n+1}
        if (n == target) at_target = cur;
        if (n == 1) at1 = cur;
        const double prev = 2.0 * (mu + n) / x * cur - next;
        next = cur;
        cur = prev;
        if (std::abs(cur) > 1e100) {
            cur *= 1e-100;
            next *= 1e-100;
            at_target *= 1e-100;
            at1 *= 1e-100;
        }
    }
    at0 = cur;
    if (target == 0) at_target = at0;
    const double true0 = hankel_jy(mu, x).j;
    const double true1 = hankel_jy(mu + 1.0, x).j;
    const double norm = std::hypot(at0, at1);
    const double u0 = at0 / norm, u1 = at1 / norm;
    return (at_target / norm) * (true0 * u0 + true1 * u1);
}

}  // namespace

// ---------------------------------------------------------------------------

BesselOrder::BesselOrder(double nu) {
    const double twice = 2.0 * nu;
    if (!(nu >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12 || nu > 1e6)
        throw DomainError("BesselOrder: order must be a non-negative multiple of 1/2");
    twice_ = static_cast<int>(std::lround(twice));
}

BesselOrder BesselOrder::from_degree(int k, int dim) {
    if (k < 0 || dim < 1) throw DomainError("BesselOrder::from_degree: k >= 0 and dim >= 1 required");
    const int twice = 2 * k + dim - 2;
    if (twice < 0) throw DomainError("BesselOrder::from_degree: negative order");
    return BesselOrder(twice, Tag{});
}

double bessel_j(BesselOrder order, double x) {
    require_nonnegative(x, "bessel_j");
    const double nu = order.value();
    if (x == 0.0) return order.twice() == 0 ? 1.0 : 0.0;
    if (x <= kSeriesLd) return static_cast<double>(j_series_ld(nu, x));
    if (x < kHankelMin) return static_cast<double>(j_series_q(nu, x));
    if (nu < 2.0) return hankel_jy(nu, x).j;
    // Far below the turning point the backward recurrence underflows its start
    // value; the ascending series has no cancellation there.
    if (nu > 2.0 * x) return static_cast<double>(j_series_q(nu, x));
    return j_miller(nu, x);
}

double bessel_j_prime(BesselOrder order, double x) {
    require_nonnegative(x, "bessel_j_prime");
    const double nu = order.value();
    if (x == 0.0) {
        if (order.twice() == 2) return 0.5;
        if (order.twice() == 0 || nu > 1.0) return 0.0;
        throw DomainError("bessel_j_prime: derivative unbounded at 0 for nu < 1");
    }
    return nu / x * bessel_j(order, x) - bessel_j(order.next(), x);
}

BesselPair bessel_y01(double x) {
    require_positive(x, "bessel_y");
    if (x <= kSmallArg) {
        const auto s = series_four_ld(x, -1);
        return {static_cast<double>(s.s0), static_cast<double>(s.s1)};
    }
    if (x < kHankelMin) return y01_table()(x);
    return {hankel_jy(0.0, x).y, hankel_jy(1.0, x).y};
}

double bessel_y(BesselOrder nu, double x) {
    const int n = order01(nu, "bessel_y");
    require_positive(x, "bessel_y");
    if (x >= kHankelMin) return hankel_jy(n, x).y;
    const auto v = bessel_y01(x);
    return n == 0 ? v.order0 : v.order1;
}

BesselPair bessel_k01_scaled(double x) {
    require_positive(x, "bessel_k");
    if (x <= kSmallArg) {
        const auto s = series_four_ld(x, +1);
        const long double e = std::exp(static_cast<long double>(x));
        return {static_cast<double>(s.s0 * e), static_cast<double>(s.s1 * e)};
    }
    if (x < kKAsymptMin) return k01_scaled_table()(x);
    const double lead = std::sqrt(kPi / (2.0 * x));
    return {lead * exp_asymptotic(0.0, x, +1), lead * exp_asymptotic(1.0, x, +1)};
}

double bessel_k_scaled(BesselOrder nu, double x) {
    const int n = order01(nu, "bessel_k");
    const auto v = bessel_k01_scaled(x);
    return n == 0 ? v.order0 : v.order1;
}

double bessel_k(BesselOrder nu, double x) {
    const int n = order01(nu, "bessel_k");
    require_positive(x, "bessel_k");
    if (x <= kSmallArg) {
        const auto s = series_four_ld(x, +1);
        return static_cast<double>(n == 0 ? s.s0 : s.s1);
    }
    return bessel_k_scaled(nu, x) * std::exp(-x);
}

double bessel_i_scaled(BesselOrder order, double x) {
    require_nonnegative(x, "bessel_i");
    const double nu = order.value();
    if (x == 0.0) return order.twice() == 0 ? 1.0 : 0.0;
    if (x >= std::max(40.0, 2.0 * nu * nu + 20.0))
        return exp_asymptotic(nu, x, -1) / std::sqrt(2.0 * kPi * x);
    // Positive-term series summed outward from its largest term.
    const double h = 0.5 * x;
    const double disc = std::sqrt(nu * nu + x * x);
    const int kpeak = std::max(0, static_cast<int>(std::floor(0.5 * (disc - nu) - 1.0)));
    auto log_term = [&](int k) {
        return (nu + 2.0 * k) * std::log(h) - std::lgamma(k + 1.0) - std::lgamma(nu + k + 1.0);
    };
    const long double h2 = static_cast<long double>(h) * h;
    long double sum = 1.0L;
    long double t = 1.0L;
    for (int k = kpeak + 1; k < kpeak + 100000; ++k) {
        t *= h2 / (static_cast<long double>(k) * (nu + k));
        sum += t;
        if (t < 1e-20L * sum) break;
    }
    t = 1.0L;
    for (int k = kpeak; k >= 1; --k) {
        t *= static_cast<long double>(k) * (nu + k) / h2;
        sum += t;
        if (t < 1e-20L * sum) break;
    }
    return static_cast<double>(std::exp(static_cast<long double>(log_term(kpeak)) - x) * sum);
}

double bessel_i(BesselOrder nu, double x) {
    require_nonnegative(x, "bessel_i");
    if (x > 709.0) return bessel_i_scaled(nu, x) * std::exp(x);
    return static_cast<double>(bessel_i_scaled(nu, x) * std::exp(static_cast<long double>(x)));
}

// Continued fractions for the ratios, evaluated with the modified Lentz method:
//   J_{nu+1}/J_nu = 1/(2(nu+1)/x - 1/(2(nu+2)/x - ...)),
//   I_{nu+1}/I_nu = 1/(2(nu+1)/x + 1/(2(nu+2)/x + ...)).
namespace {

double lentz_ratio(double nu, double x, double sign) {
    constexpr double tiny = 1e-300;
    double f = tiny, c = f, d = 0.0;
    for (int j = 1; j < 100000; ++j) {
        const double b = 2.0 * (nu + j) / x;
        const double a = (j == 1) ? 1.0 : sign;
        d = b + a * d;
        if (d == 0.0) d = tiny;
        c = b + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return f;
    }
    throw ConvergenceError("bessel ratio: continued fraction did not converge");
}

}  // namespace

double bessel_j_ratio(BesselOrder order, double x) {
    require_positive(x, "bessel_j_ratio");
    const double nu = order.value();
    if (x < nu) return lentz_ratio(nu, x, -1.0);
    return bessel_j(order.next(), x) / bessel_j(order, x);
}

double bessel_i_ratio(BesselOrder order, double x) {
    require_positive(x, "bessel_i_ratio");
    const double nu = order.value();
    if (x <= nu + 100.0) return lentz_ratio(nu, x, 1.0);
    return bessel_i_scaled(order.next(), x) / bessel_i_scaled(order, x);
}

// ---------------------------------------------------------------------------
// Zeros

double bessel_zero_asymptotic(BesselOrder order, int m) {
    if (m < 1) throw DomainError("bessel_zero_asymptotic: m must be >= 1");
    const double nu = order.value();
    const double b = (m + 0.5 * nu - 0.25) * kPi;
    return b - (4.0 * nu * nu - 1.0) / (8.0 * b);
}

std::vector<double> bessel_zeros(BesselOrder order, int count) {
    if (count < 0) throw DomainError("bessel_zeros: count must be >= 0");
    std::vector<double> zeros;
    zeros.reserve(static_cast<std::size_t>(count));
    const double nu = order.value();
    auto f = [&](double x) { return bessel_j(order, x); };
    // j_{nu,1} > nu, consecutive zeros are more than 2.9 apart.
    double lo = std::max(nu, 0.5);
    constexpr double step = 0.5;
    double flo = f(lo);
    while (static_cast<int>(zeros.size()) < count) {
        const double hi = lo + step;
        const double fhi = f(hi);
        if ((flo > 0) != (fhi > 0) || fhi == 0.0) {
            const double root = numerics::brent_root(f, lo, hi, flo, fhi, 1e-15 * hi);
            zeros.push_back(root);
            lo = root + 2.5;
            flo = f(lo);
            continue;
        }
        lo = hi;
        flo = fhi;
    }
    return zeros;
}

double bessel_zero(BesselOrder nu, int m) {
    if (m < 1) throw DomainError("bessel_zero: m must be >= 1");
    return bessel_zeros(nu, m).back();
}

}  // namespace plateig::specfun
