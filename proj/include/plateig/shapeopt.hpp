#pragma once

// Minimization of the first clamped-plate eigenvalue over Fourier domains of unit
// area: eigenvalue search, Hadamard gradient, descent, nodal domains, and the
// compression threshold beyond which the disk stops winning.

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "plateig/mfs.hpp"
#include "plateig/shape.hpp"

namespace plateig::shapeopt {

struct Lambda1 {
    double lambda1 = 0.0;
    double lambda2 = 0.0;  // +infinity when none was found in the window
    double gap = 0.0;
    mfs::MfsModel model;
    mfs::EigenLocation location;
    std::vector<std::string> warnings;
};

/// Smallest eigenvalue in [-alpha^2/4 + guard, disk value + margin] (the window is
/// extended until a second eigenvalue is seen, for the gap).
Lambda1 lambda1_with_eigenfunction(const FourierShape& shape, double alpha, const mfs::MfsConfig& config);

/// Re-solves near a known eigenvalue, e.g. at a finer m, by minimizing sigma_1 over
/// [center - width, center + width].
Lambda1 lambda1_near(const FourierShape& shape, double alpha, double center, double width,
                     const mfs::MfsConfig& config);

struct Polished {
    Lambda1 eig;
    double offset_factor;
    double residual;  // fresh-boundary residual of eig
};

/// lambda1_near at config.m for each source offset factor, keeping the solve with the
/// smallest fresh-boundary residual.  Concave stretches of boundary need sources closer
/// than the default offset.
Polished polish(const FourierShape& shape, double alpha, double center, double width, const mfs::MfsConfig& config,
                const std::vector<double>& offset_factors = {1.0, 0.5, 0.25});

/// Hadamard derivative -oint (Delta u)^2 V_c . nu ds for every Fourier coefficient c,
/// u L2-normalized.  Throws DegenerateEigenvalue when the gap is below 1e-3 |lambda1|.
Eigen::VectorXd shape_gradient(const Lambda1& eig, int quad_points = 0);
Eigen::VectorXd shape_gradient(const FourierShape& shape, double alpha, const mfs::MfsConfig& config);

/// d area / d c.
Eigen::VectorXd area_gradient(const FourierShape& shape);

/// g minus its component along the area gradient.
Eigen::VectorXd project_area(const Eigen::VectorXd& g, const Eigen::VectorXd& area_grad);

struct OptOptions {
    int max_iter = 60;
    double gtol = 1e-4;       // on |projected gradient| / max(1, |lambda1|)
    double step = 0.02;       // initial coefficient step length
    double smoothing = 2.0;   // step direction weights frequency j by (1 + j)^-smoothing
    int max_halvings = 20;
    int order = 16;           // P of the optimized shape
    mfs::MfsConfig mfs{160};
    // m grows by half, up to max_m, when no trial step is accepted or the boundary
    // residual of the current iterate exceeds refine_residual.
    double refine_residual = 2.5e-2;
    int max_m = 640;
    // Stop as soon as lambda1 drops below this value.
    double stop_below = -std::numeric_limits<double>::infinity();
};

struct OptState {
    FourierShape shape;
    double alpha = 0.0;
    double lambda1 = 0.0;
    double gap = 0.0;
    int m = 0;  // collocation points in use
    Eigen::VectorXd gradient;  // area-projected
    double grad_norm = 0.0;
    double step = 0.0;
    double area = 0.0;
    int iteration = 0;
    std::string note;
};

using OptCallback = std::function<void(const OptState&)>;

/// Projected-gradient descent with step halving; returns the accepted iterates.
std::vector<OptState> optimize(double alpha, const FourierShape& init, const OptOptions& opts,
                               const OptCallback& callback = {});

/// Unit-area disk plus 0.05 cos(j t) radial perturbations, j = 2..5, and an
/// elongated 0.15 cos(2t) start.
std::vector<FourierShape> standard_seeds(int order);

struct SeedResult {
    int seed_index;
    std::vector<OptState> trajectory;
};

/// Runs every seed and returns them, best final lambda1 first.
std::vector<SeedResult> optimize_seeds(double alpha, const std::vector<FourierShape>& seeds, const OptOptions& opts,
                                       const OptCallback& callback = {});

/// First eigenvalue of the unit-area disk.
double unit_disk_lambda1(double alpha);

struct CriticalStep {
    double alpha;
    double disk;
    double best;
    bool beats_disk;
};

struct CriticalResult {
    double alpha_star;
    double lo, hi;
    std::vector<CriticalStep> log;
};

/// Bisection on "descent from the elongated standard seed beats the disk by more than
/// tol_rel"; each descent stops once it does.
/// Throws NoSignChange unless the indicator is false at lo and true at hi.
CriticalResult critical_alpha(double lo, double hi, const OptOptions& opts, double resolution = 2.0,
                              double tol_rel = 1e-5, const std::function<void(const CriticalStep&)>& log = {});

struct NodalResult {
    int count;
    int smallest_component;
    std::vector<std::string> warnings;
};

/// Connected components of {u > tau} and {u < -tau}, tau = 1e-6 max |u|, on a grid.
NodalResult nodal_count(const mfs::MfsModel& model, const mfs::EigenLocation& loc, int resolution = 120);

/// Relative standard deviation of Delta u over the boundary (arclength weighted).
double serrin_defect(const mfs::MfsModel& model, const mfs::EigenLocation& loc, int n = 0);

/// Max of |u(x) + u(reflect(x))| / max |u| over interior samples, reflection across the
/// line through the centroid with direction angle theta.
double antisymmetry_defect(const mfs::MfsModel& model, const mfs::EigenLocation& loc, double theta, int n = 400);

}  // namespace plateig::shapeopt
