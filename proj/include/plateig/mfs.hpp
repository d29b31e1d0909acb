#pragma once

// Method of fundamental solutions for the clamped plate on Fourier domains, with the
// subspace-angle eigenvalue scan: the stacked boundary/interior matrix is
// orthonormalized and sigma_1(lambda) is the smallest singular value of its boundary rows.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "plateig/shape.hpp"

namespace plateig::mfs {

struct MfsConfig {
    int m = 300;                // collocation points = sources
    int p = 0;                  // interior points; 0 selects m / 4
    double offset_factor = 1.0; // source distance = offset_factor * perimeter / 80
    std::uint64_t rng_seed = 0;
    double sigma_tol = 1e-2;
    double scan_step = 0.0;     // 0 selects a step from the window width
    double residual_tol = 5e-2; // located minima with a larger boundary residual are rejected

    int interior_count() const { return p > 0 ? p : m / 4; }
    /// Throws DomainError unless m >= 32, p >= m/10 and offset_factor in (0, 2].
    void validate() const;
};

/// Radial profile g(r) with its first two derivatives.
struct Radial {
    double v, d1, d2;
};

/// Phi = (Phi_{a+} - Phi_{a-}) / (a+ - a-), Phi_mu = -Y_0(sqrt(mu) r)/4 for mu > 0 and
/// K_0(sqrt(-mu) r)/(2 pi) for mu < 0.  Throws RegimeError inside the guard bands
/// |lambda| < 1e-6 max(1, alpha^2) and lambda < -alpha^2/4 + 1e-6 max(1, alpha^2).
class FundamentalSolution {
public:
    FundamentalSolution(double alpha, double lambda);

    double alpha_plus() const { return ap_; }
    double alpha_minus() const { return am_; }

    /// Phi_{a+} / (a+ - a-) (which = 0) or -Phi_{a-} / (a+ - a-) (which = 1).
    Radial part(int which, double r) const;
    /// Phi and its radial derivatives.
    Radial operator()(double r) const;
    /// Delta Phi = -(a+ part + a- part weighted by a-).
    double laplacian(double r) const;

private:
    double alpha_, lambda_, ap_, am_, inv_gap_;
};

/// True when lambda lies outside both guard bands.
bool lambda_admissible(double alpha, double lambda);

struct MfsModel {
    FourierShape shape;
    double alpha = 0.0;
    std::vector<Vec2> collocation, normals;  // x_i and outward nu_i
    std::vector<Vec2> sources;               // y_j = x_j + delta nu_j, normal nu_j
    std::vector<Vec2> interior;              // z_i
    double offset = 0.0;                     // delta actually used
    std::vector<Vec2> outline;               // fine boundary polygon for inside tests
    std::vector<std::string> warnings;

    int m() const { return static_cast<int>(collocation.size()); }
};

/// Collocation points equally spaced in arclength, sources offset along the outward
/// normal, interior points drawn by rejection from the seeded generator.  Halves the
/// offset (up to 6 times) when a source falls inside or too close to the domain.
MfsModel place_points(const FourierShape& shape, double alpha, const MfsConfig& config);

/// [[A, B], [C, D], [E, F]] of size (2m + p) x 2m.
Eigen::MatrixXd assemble(const MfsModel& model, double lambda);

struct SigmaValues {
    double sigma1;
    double sigma2;
    bool rank_deficient;
};

/// Two smallest singular values of the boundary rows of the orthonormal factor.
SigmaValues sigma_values(const MfsModel& model, double lambda);
double sigma1(const MfsModel& model, double lambda);

struct EigenLocation {
    double lambda = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    std::pair<double, double> bracket;
    Eigen::VectorXd coefficients;  // (monopole densities, dipole densities), unit norm
    int multiplicity = 1;
};

/// Density vector realizing sigma_1 at lambda.
EigenLocation eigenfunction_at(const MfsModel& model, double lambda);

/// Minimizes sigma_1 over [lo, hi] (bracketing a single valley).
EigenLocation refine_minimum(const MfsModel& model, double lo, double hi);

/// Scan, valley detection and refinement on [lo, hi]; guard bands are cut out.
std::vector<EigenLocation> locate_eigenvalues(const MfsModel& model, double lo, double hi, const MfsConfig& config);

struct FieldValue {
    double u;
    Vec2 grad;
    double lap;
    // u = u_plus + u_minus with (Delta + a+) u_plus = 0 = (Delta + a-) u_minus.
    double u_plus, u_minus;
    Vec2 grad_plus, grad_minus;
};

/// u, grad u and Delta u.  Throws GeometryError for points outside the closed domain
/// unless check_inside is false.
std::vector<FieldValue> evaluate(const MfsModel& model, const EigenLocation& loc, const std::vector<Vec2>& points,
                                 bool check_inside = true);

struct Integrals {
    double u2;     // int u^2
    double grad2;  // int |grad u|^2
    double lap2;   // int (Delta u)^2
};

/// Domain integrals reduced to boundary integrals through Green's and Rellich's
/// identities for the two Helmholtz components (trapezoid on n points).
Integrals boundary_integrals(const MfsModel& model, const EigenLocation& loc, int n = 0);

/// Domain integrals from polygon triangulation plus curved boundary slivers.
Integrals quadrature_integrals(const MfsModel& model, const EigenLocation& loc, int boundary_samples = 0);

/// max over n fresh boundary points of |u| + |du/dnu|, divided by max |u| over the interior points.
double boundary_residual(const MfsModel& model, const EigenLocation& loc, int n = 0);

}  // namespace plateig::mfs
