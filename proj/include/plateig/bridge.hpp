#pragma once

// Robin eigenvalues of the Laplacian on balls and their pairing into clamped
// plate eigenpairs.  Two Robin eigenfunctions v1, v2 of the same degree k and
// parameter beta combine into u = t1 v2 - t2 v1, which is clamped and solves
// the plate equation with alpha = sigma1 + sigma2, lambda = -sigma1 sigma2.

#include <functional>
#include <vector>

#include "plateig/radial.hpp"

namespace plateig::bridge {

enum class RobinCategory { oscillatory, exponential, harmonic };

const char* category_name(RobinCategory c);

struct RobinEigenvalue {
    double sigma;
    int k;
    RobinCategory category;
    double beta;  // +infinity denotes the Dirichlet problem
};

struct BranchId {
    int k;
    int t;

    /// nu = k + N/2 - 1.
    double nu(int N) const { return k + 0.5 * N - 1.0; }
};

/// The `count` smallest degree-k Robin eigenvalues on B_R (count <= 100).
/// beta = +infinity gives the Dirichlet values j_{nu,m}^2 / R^2.
std::vector<RobinEigenvalue> robin_eigs_ball(double R, int N, int k, double beta, int count);

/// Radial factor of a Robin eigenfunction (J, I or r^k according to the category).
RadialFunction robin_profile(double R, int N, const RobinEigenvalue& e);

/// d sigma / d beta = R^{N-1} v(R)^2 / int_0^R v^2 r^{N-1} dr, from closed-form norms.
double robin_beta_slope(double R, int N, const RobinEigenvalue& e);

struct ClampedPair {
    double alpha;
    double lambda;
};

/// (sigma1 + sigma2, -sigma1 sigma2).
ClampedPair pair_to_clamped(double sigma1, double sigma2);

/// u = t1 v2 - t2 v1 with t_i the component of (v_i(R), v_i'(R)) along (1, -beta);
/// normalized to max |u| = 1.  Throws DegeneratePair when the eigenvalues coincide
/// or the two eigenfunctions do not share degree and beta.
RadialFunction clamped_eigenfunction_from_pair(double R, int N, const RobinEigenvalue& e1,
                                               const RobinEigenvalue& e2);

struct BranchPoint {
    double beta;
    double alpha;
    double lambda;
    double sigma1;
    double sigma2;
    double slope;  // d lambda / d beta
};

/// Pairs the j-th and (j+t)-th degree-k Robin eigenvalues along beta_grid
/// (ascending; +infinity allowed as the last entry).  Throws BranchJump when
/// |d lambda| > 10 |d beta| max(|slope|) between neighbouring grid points.
std::vector<BranchPoint> trace_branch(double R, int N, BranchId branch, const std::vector<double>& beta_grid,
                                      int first_index = 1);

/// Dirichlet endpoint of a branch: gamma_m = j_{nu,m}^2/R^2 paired with gamma_{m+t}.
ClampedPair dirichlet_endpoint(double R, int N, BranchId branch, int m);

/// Constant term t^2 pi^2 (4 nu^2 - 1 - t^2 pi^2) / (4 R^4).
double branch_asymptote_constant(double R, int N, BranchId branch);

/// alpha -> -alpha^2/4 + alpha t^2 pi^2 / (2 R^2) + constant.
std::function<double(double)> branch_asymptote(double R, int N, BranchId branch);

/// Disk (N = 2) expansion for alpha -> -infinity:
///   -alpha gamma_k + sqrt(-alpha) int_{boundary} |grad u_k|^2,
/// gamma_k the k-th Dirichlet eigenvalue counted with multiplicity and u_k
/// L^2-normalized.  Throws DomainError unless alpha < 0 and k >= 1.
double frank_asymptote_disk(double R, int k, double alpha);

/// The boundary integral above, from the radial Bessel profile.
double frank_boundary_integral(double R, int k);

}  // namespace plateig::bridge
