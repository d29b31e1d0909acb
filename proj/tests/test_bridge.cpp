#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "plateig/ball.hpp"
#include "plateig/bridge.hpp"
#include "plateig/errors.hpp"
#include "plateig/specfun.hpp"

using namespace plateig;
using namespace plateig::bridge;
using specfun::BesselOrder;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();

double zero(double nu, int m) { return specfun::bessel_zero(BesselOrder(nu), m); }

// Residual of (k/R + beta) J_nu(R sqrt(sigma)) = sqrt(sigma) J_{nu+1}(R sqrt(sigma)), scaled.
double robin_residual(double R, int N, const RobinEigenvalue& e) {
    const BesselOrder nu = BesselOrder::from_degree(e.k, N);
    if (e.category == RobinCategory::harmonic) return std::abs(e.k / R + e.beta);
    if (e.category == RobinCategory::exponential) {
        const double b = std::sqrt(-e.sigma);
        const double lhs = (e.k / R + e.beta) * specfun::bessel_i_scaled(nu, R * b);
        const double rhs = -b * specfun::bessel_i_scaled(nu.next(), R * b);
        return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
    }
    const double a = std::sqrt(e.sigma);
    const double lhs = (e.k / R + e.beta) * specfun::bessel_j(nu, R * a);
    const double rhs = a * specfun::bessel_j(nu.next(), R * a);
    const double m = std::hypot(specfun::bessel_j(nu, R * a), specfun::bessel_j(nu.next(), R * a));
    return std::abs(lhs - rhs) / ((std::abs(e.k / R + e.beta) + a) * m);
}

}  // namespace

TEST(RobinEigs, DirichletAndNeumannLimits) {
    const auto dir = robin_eigs_ball(1.0, 2, 0, 1e8, 1);
    EXPECT_NEAR(dir[0].sigma, std::pow(zero(0, 1), 2), 1e-4 * dir[0].sigma);
    const auto neu = robin_eigs_ball(1.0, 2, 0, 0.0, 3);
    EXPECT_EQ(neu[0].sigma, 0.0);
    EXPECT_EQ(neu[0].category, RobinCategory::harmonic);
    // Neumann k = 0: J_0'(z) = -J_1(z) = 0.
    EXPECT_NEAR(std::sqrt(neu[1].sigma), zero(1, 1), 1e-12);
    const auto exact = robin_eigs_ball(2.0, 3, 1, kInf, 4);
    for (int m = 1; m <= 4; ++m) EXPECT_NEAR(exact[m - 1].sigma, std::pow(zero(1.5, m) / 2.0, 2), 1e-11);
}

TEST(RobinEigs, HarmonicCaseAtBetaMinusKOverR) {
    const auto e = robin_eigs_ball(1.0, 2, 1, -1.0, 3);
    EXPECT_EQ(e[0].sigma, 0.0);
    EXPECT_EQ(e[0].category, RobinCategory::harmonic);
    EXPECT_GT(e[1].sigma, 0.0);
}

TEST(RobinEigs, CategoriesAndResiduals) {
    for (int N : {2, 3}) {
        for (int k : {0, 1, 2, 5}) {
            for (double beta : {-7.0, -2.0, -0.3, 0.0, 0.7, 1.0, 10.0, 1e3}) {
                const auto eig = robin_eigs_ball(1.3, N, k, beta, 12);
                ASSERT_EQ(eig.size(), 12u);
                int nonpositive = 0;
                for (std::size_t i = 0; i < eig.size(); ++i) {
                    const auto& e = eig[i];
                    if (i > 0) EXPECT_LT(eig[i - 1].sigma, e.sigma);
                    if (e.sigma <= 0) ++nonpositive;
                    EXPECT_EQ(e.category == RobinCategory::oscillatory, e.sigma > 0);
                    EXPECT_EQ(e.category == RobinCategory::exponential, e.sigma < 0);
                    EXPECT_LE(robin_residual(1.3, N, e), 1e-10) << "N=" << N << " k=" << k << " beta=" << beta;
                }
                EXPECT_LE(nonpositive, 1);
                EXPECT_EQ(nonpositive == 1, k + beta * 1.3 <= 0.0);
            }
        }
    }
}

TEST(RobinEigs, DirichletLimitConsistency) {
    for (int k : {0, 1, 3}) {
        const auto robin = robin_eigs_ball(1.0, 2, k, 1e8, 10);
        for (int m = 1; m <= 10; ++m) {
            const double gamma = std::pow(zero(k, m), 2);
            EXPECT_NEAR(robin[m - 1].sigma, gamma, 1e-4 * gamma);
        }
    }
}

TEST(RobinEigs, SlopeMatchesFiniteDifference) {
    for (double beta : {-3.0, -0.5, 0.0, 2.0, 25.0}) {
        for (int k : {0, 2}) {
            const auto base = robin_eigs_ball(1.0, 2, k, beta, 4);
            const double h = 1e-6;
            const auto up = robin_eigs_ball(1.0, 2, k, beta + h, 4);
            const auto dn = robin_eigs_ball(1.0, 2, k, beta - h, 4);
            for (int i = 0; i < 4; ++i) {
                const double fd = (up[i].sigma - dn[i].sigma) / (2 * h);
                EXPECT_NEAR(robin_beta_slope(1.0, 2, base[i]), fd, 1e-5 * std::max(1.0, std::abs(fd)))
                    << "beta=" << beta << " k=" << k << " i=" << i;
            }
        }
    }
}

TEST(PairToClamped, Arithmetic) {
    const auto d = pair_to_clamped(5.0, 5.0);
    EXPECT_EQ(d.alpha, 10.0);
    EXPECT_EQ(d.lambda, -25.0);
    const auto b = pair_to_clamped(7.0, 0.0);
    EXPECT_EQ(b.alpha, 7.0);
    EXPECT_EQ(b.lambda, 0.0);
    const double g1 = std::pow(zero(0, 1), 2), g2 = std::pow(zero(0, 2), 2);
    const auto p = pair_to_clamped(g1, g2);
    EXPECT_NEAR(p.alpha, 36.2544, 1e-4);
    EXPECT_NEAR(p.lambda, -176.2210, 1e-4);
}

TEST(PairToClamped, PairsAreClampedEigenvalues) {
    for (int N : {2, 3}) {
        for (double beta : {-2.0, 0.0, 1.0, 10.0, kInf}) {
            for (int k = 0; k <= 3; ++k) {
                const auto eig = robin_eigs_ball(1.0, N, k, beta, 7);
                for (int j = 0; j < 5; ++j) {
                    for (int t : {1, 2}) {
                        const auto& e1 = eig[j];
                        const auto& e2 = eig[j + t];
                        const auto cp = pair_to_clamped(e1.sigma, e2.sigma);
                        const double det = ball::clamped_det(ball::BallProblem{1.0, N, cp.alpha}, k, cp.lambda);
                        EXPECT_LE(std::abs(det), 1e-8) << "N=" << N << " beta=" << beta << " k=" << k;
                        const double shift = cp.lambda + 0.25 * cp.alpha * cp.alpha;
                        const double half = 0.5 * (e1.sigma - e2.sigma);
                        EXPECT_NEAR(shift, half * half, 1e-10 * half * half);
                    }
                }
            }
        }
    }
}

TEST(PairEigenfunction, ClampedAtBoundary) {
    for (double beta : {-2.0, 0.5, 10.0, kInf}) {
        for (int k : {0, 1, 4}) {
            const auto eig = robin_eigs_ball(0.8, 2, k, beta, 4);
            const auto u = clamped_eigenfunction_from_pair(0.8, 2, eig[0], eig[2]);
            EXPECT_NEAR(u.value(0.8), 0.0, 1e-8);
            EXPECT_NEAR(u.derivative(0.8) * 0.8, 0.0, 1e-8);
            EXPECT_NEAR(u.max_abs(), 1.0, 1e-9);
        }
    }
    const auto eig = robin_eigs_ball(1.0, 2, 0, 1.0, 2);
    EXPECT_THROW(clamped_eigenfunction_from_pair(1.0, 2, eig[0], eig[0]), DegeneratePair);
}

TEST(PairEigenfunction, DirichletPairMatchesBallProfile) {
    const double j1 = zero(0, 1), j2 = zero(0, 2);
    const auto eig = robin_eigs_ball(1.0, 2, 0, kInf, 2);
    const auto u = clamped_eigenfunction_from_pair(1.0, 2, eig[0], eig[1]);
    const ball::BallProblem pb{1.0, 2, j1 * j1 + j2 * j2};
    const auto v = ball::radial_profile(pb, 0, -j1 * j1 * j2 * j2);
    const double sign = u.value(0.0) * v.value(0.0) > 0 ? 1.0 : -1.0;
    for (double r : {0.0, 0.3, 0.6, 0.9}) EXPECT_NEAR(u.value(r), sign * v.value(r), 1e-8);
}

TEST(TraceBranch, DirichletEndpointAndIdentity) {
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(-1.0 + 0.25 * i);
    grid.push_back(1e8);
    grid.push_back(kInf);
    const auto pts = trace_branch(1.0, 2, {0, 1}, grid);
    ASSERT_EQ(pts.size(), grid.size());
    const double g1 = std::pow(zero(0, 1), 2), g2 = std::pow(zero(0, 2), 2);
    EXPECT_NEAR(pts.back().alpha, g1 + g2, 1e-6);
    EXPECT_NEAR(pts.back().lambda, -g1 * g2, 1e-6);
    EXPECT_NEAR(pts[pts.size() - 2].alpha, g1 + g2, 1e-4);
    EXPECT_NEAR(pts[pts.size() - 2].lambda, -g1 * g2, 1e-4 * g1 * g2);
    for (const auto& p : pts) {
        EXPECT_GE(p.lambda, -0.25 * p.alpha * p.alpha);
        const double half = 0.5 * (p.sigma1 - p.sigma2);
        EXPECT_NEAR(p.lambda + 0.25 * p.alpha * p.alpha, half * half, 1e-10 * half * half);
    }
    // Remainder identity at the Dirichlet end.
    const double shift = pts.back().lambda + 0.25 * pts.back().alpha * pts.back().alpha;
    EXPECT_NEAR(shift, std::pow(0.5 * (g1 - g2), 2), 1e-9 * shift);
}

TEST(TraceBranch, RejectsUnsortedGrid) {
    EXPECT_THROW(trace_branch(1.0, 2, {0, 1}, {1.0, 0.0}), DomainError);
}

TEST(TraceBranch, SlopeMatchesFiniteDifference) {
    const double h = 1e-6;
    for (double beta : {-1.5, 0.3, 4.0}) {
        const auto p = trace_branch(1.0, 2, {1, 2}, {beta - h, beta, beta + h});
        EXPECT_NEAR(p[1].slope, (p[2].lambda - p[0].lambda) / (2 * h), 1e-4 * std::abs(p[1].slope));
    }
}

TEST(BranchAsymptote, ClosedFormConstant) {
    // nu = 0: pi^2 (-1 - pi^2) / 4.
    EXPECT_NEAR(branch_asymptote_constant(1.0, 2, {0, 1}), -(kPi * kPi + std::pow(kPi, 4)) / 4.0, 1e-12);
    EXPECT_NEAR(branch_asymptote_constant(1.0, 2, {0, 1}), -26.8197, 1e-4);
    const auto f = branch_asymptote(2.0, 3, {1, 2});
    const double nu = 1.5, t2p2 = 4.0 * kPi * kPi;
    EXPECT_NEAR(f(100.0), -2500.0 + 100.0 * t2p2 / 8.0 + t2p2 * (4 * nu * nu - 1 - t2p2) / 64.0, 1e-9);
}

TEST(BranchAsymptote, VanishingConstant) {
    // 4 nu^2 = 1 + pi^2 has no half-integer solution; check the formula's root numerically instead.
    const double nu_root = 0.5 * std::sqrt(1.0 + kPi * kPi);
    const double c = kPi * kPi * (4 * nu_root * nu_root - 1 - kPi * kPi) / 4.0;
    EXPECT_NEAR(c, 0.0, 1e-12);
}

TEST(BranchAsymptote, DirichletEndpointsConverge) {
    for (int t : {1, 2}) {
        const BranchId id{0, t};
        const double c = branch_asymptote_constant(1.0, 2, id);
        double prev_gap = kInf;
        for (int m : {5, 10, 20, 40}) {
            const auto e = dirichlet_endpoint(1.0, 2, id, m);
            const double gap = std::abs(e.lambda - branch_asymptote(1.0, 2, id)(e.alpha));
            EXPECT_LT(gap, prev_gap);
            prev_gap = gap;
            if (e.alpha >= 1e4) EXPECT_LE(gap, 0.01 * std::abs(c));
        }
    }
}

TEST(BranchAsymptote, HigherBranchesLieAbove) {
    for (int k : {0, 1, 2}) {
        const double alpha = 2e3;
        const auto f1 = branch_asymptote(1.0, 2, {k, 1});
        const auto f2 = branch_asymptote(1.0, 2, {k, 2});
        const auto f3 = branch_asymptote(1.0, 2, {k, 3});
        EXPECT_LT(f1(alpha), f2(alpha));
        EXPECT_LT(f2(alpha), f3(alpha));
    }
}

TEST(Frank, BoundaryIntegralMatchesRellich) {
    // Rellich: int (d_nu u)^2 (x . nu) = 2 gamma for L2-normalized Dirichlet modes.
    for (double R : {1.0, 0.5641895835477563}) {
        for (int k = 1; k <= 6; ++k) {
            const double bi = frank_boundary_integral(R, k);
            const double gamma = frank_asymptote_disk(R, k, -1.0) - bi;  // alpha = -1
            EXPECT_NEAR(bi * R, 2.0 * gamma, 1e-10 * gamma);
        }
    }
    const double j = zero(0, 1);
    // R = 1, k = 1: 2 pi (c J_0'(j))^2 j^2, c^2 = 1 / (pi J_1(j)^2).
    EXPECT_NEAR(frank_boundary_integral(1.0, 1), 2.0 * j * j, 1e-10);
}

TEST(Frank, LeadingTermAndBoundedRemainder) {
    double prev = 0.0;
    for (double alpha : {-1e2, -1e3, -1e4}) {
        const double f = frank_asymptote_disk(1.0, 1, alpha);
        const double gamma = std::pow(zero(0, 1), 2);
        const double ratio = f / (-alpha * gamma);
        if (alpha < -1e3) EXPECT_NEAR(ratio, 1.0, 0.05);
        const auto spec = ball::clamped_eigs(ball::BallProblem{1.0, 2, alpha}, 1);
        const double rem = std::abs(spec.eigenvalues[0].lambda - f);
        EXPECT_LT(rem, 80.0) << "alpha=" << alpha;
        if (prev > 0) EXPECT_LT(rem, prev);
        prev = rem;
    }
    EXPECT_THROW(frank_asymptote_disk(1.0, 1, 1.0), DomainError);
}
