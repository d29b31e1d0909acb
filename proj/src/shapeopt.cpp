#include "plateig/shapeopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>

#include "plateig/ball.hpp"
#include "plateig/errors.hpp"

namespace plateig::shapeopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();

double disk_lambda1(double area, double alpha) {
    const double R = std::sqrt(area / std::numbers::pi);
    return ball::clamped_eigs(ball::BallProblem{R, 2, alpha}, 1).eigenvalues.front().lambda;
}

void fill_gap(Lambda1& r, const std::vector<mfs::EigenLocation>& found) {
    r.location = found.front();
    r.lambda1 = found.front().lambda;
    if (found.front().multiplicity > 1) {
        r.lambda2 = r.lambda1;
    } else {
        r.lambda2 = found.size() > 1 ? found[1].lambda : kInf;
    }
    r.gap = r.lambda2 - r.lambda1;
    if (r.gap <= 1e-3 * std::abs(r.lambda1))
        r.warnings.push_back("lambda1 is nearly degenerate (gap " + std::to_string(r.gap) + ")");
}

}  // namespace

double unit_disk_lambda1(double alpha) { return disk_lambda1(1.0, alpha); }

namespace {

// Eigenvalues in [lo, hi], widening upwards by `extensions` steps until lambda1 shows up
// and then once more for lambda2.
Lambda1 search(const FourierShape& shape, double alpha, const mfs::MfsConfig& config, double lo, double hi,
               double margin, int extensions) {
    Lambda1 r;
    r.model = mfs::place_points(shape, alpha, config);
    r.warnings = r.model.warnings;
    std::vector<mfs::EigenLocation> found;
    for (int extension = 0, after_first = 0; extension <= extensions && after_first < 2; ++extension) {
        mfs::MfsConfig c = config;
        if (c.scan_step <= 0.0) c.scan_step = (hi - lo) / 60.0;
        auto more = mfs::locate_eigenvalues(r.model, lo, hi, c);
        found.insert(found.end(), more.begin(), more.end());
        const int count = found.empty() ? 0 : (found.front().multiplicity > 1 ? 2 : static_cast<int>(found.size()));
        if (count >= 2) break;
        if (count == 1) ++after_first;
        lo = hi;
        hi += margin;
        margin *= 2.0;
    }
    if (found.empty()) throw ConvergenceError("lambda1_with_eigenfunction: no eigenvalue found in the search window");
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
    fill_gap(r, found);
    return r;
}

double window_floor(double alpha) { return alpha > 0 ? -0.25 * alpha * alpha : 0.0; }

}  // namespace

Lambda1 lambda1_with_eigenfunction(const FourierShape& shape, double alpha, const mfs::MfsConfig& config) {
    const double disk = disk_lambda1(shape.area(), alpha);
    const double margin = std::max(0.5 * std::abs(disk), 50.0);
    return search(shape, alpha, config, window_floor(alpha), disk + margin, margin, 7);
}

Lambda1 lambda1_near(const FourierShape& shape, double alpha, double center, double width,
                     const mfs::MfsConfig& config) {
    Lambda1 r;
    r.model = mfs::place_points(shape, alpha, config);
    r.warnings = r.model.warnings;
    auto loc = mfs::refine_minimum(r.model, center - width, center + width);
    if (loc.sigma1 > config.sigma_tol) throw ConvergenceError("lambda1_near: no eigenvalue near the given center");
    loc.multiplicity = loc.sigma2 <= config.sigma_tol ? 2 : 1;
    fill_gap(r, {loc});
    return r;
}

Polished polish(const FourierShape& shape, double alpha, double center, double width, const mfs::MfsConfig& config,
                const std::vector<double>& offset_factors) {
    if (offset_factors.empty()) throw DomainError("polish: no offset factors given");
    std::optional<Polished> best;
    for (double f : offset_factors) {
        mfs::MfsConfig c = config;
        c.offset_factor = f;
        c.validate();
        Lambda1 r;
        try {
            r = lambda1_near(shape, alpha, center, width, c);
        } catch (const ConvergenceError&) {
            continue;
        }
        const double res = mfs::boundary_residual(r.model, r.location);
        if (!best || res < best->residual) best = Polished{std::move(r), f, res};
    }
    if (!best) throw ConvergenceError("polish: no eigenvalue near the given center for any offset");
    return std::move(*best);
}

Eigen::VectorXd area_gradient(const FourierShape& shape) {
    const int n = 4 * shape.order() + 4;
    Eigen::VectorXd a = Eigen::VectorXd::Zero(shape.coefficient_count());
    for (int k = 0; k < n; ++k) {
        const double t = kTwoPi * k / n;
        const Vec2 d = shape.derivative(t);
        const Vec2 nu_speed(d.y(), -d.x());
        for (int i = 0; i < a.size(); ++i) a[i] += shape.coefficient_field(i, t).dot(nu_speed);
    }
    return a * (kTwoPi / n);
}

Eigen::VectorXd project_area(const Eigen::VectorXd& g, const Eigen::VectorXd& a) {
    return g - (g.dot(a) / a.squaredNorm()) * a;
}

namespace {

Eigen::VectorXd hadamard(const Lambda1& eig, int n) {
    const auto& shape = eig.model.shape;
    if (n <= 0) n = std::max(8 * shape.order() + 16, 256);
    std::vector<Vec2> pts;
    std::vector<Vec2> nu_speed;
    for (int k = 0; k < n; ++k) {
        const double t = kTwoPi * k / n;
        pts.push_back(shape.point(t));
        const Vec2 d = shape.derivative(t);
        nu_speed.emplace_back(d.y(), -d.x());
    }
    const auto vals = mfs::evaluate(eig.model, eig.location, pts, false);
    const double u2 = mfs::boundary_integrals(eig.model, eig.location).u2;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(shape.coefficient_count());
    for (int k = 0; k < n; ++k) {
        const double t = kTwoPi * k / n;
        const double w = -vals[k].lap * vals[k].lap / u2 * (kTwoPi / n);
        for (int i = 0; i < g.size(); ++i) g[i] += w * shape.coefficient_field(i, t).dot(nu_speed[k]);
    }
    return g;
}

}  // namespace

Eigen::VectorXd shape_gradient(const Lambda1& eig, int quad_points) {
    if (!(eig.gap > 1e-3 * std::abs(eig.lambda1)))
        throw DegenerateEigenvalue("shape_gradient: lambda1 is not simple enough for the Hadamard formula");
    return hadamard(eig, quad_points);
}

Eigen::VectorXd shape_gradient(const FourierShape& shape, double alpha, const mfs::MfsConfig& config) {
    return shape_gradient(lambda1_with_eigenfunction(shape, alpha, config));
}

std::vector<FourierShape> standard_seeds(int order) {
    std::vector<FourierShape> seeds;
    const double R = 1.0 / std::sqrt(std::numbers::pi);
    for (int j = 2; j <= 5; ++j)
        seeds.push_back(FourierShape::perturbed_circle(R, j, 0.05, std::max(order, j + 1)).rescale_to_unit_area());
    // Small perturbations stay in the basin of the disk; an elongated start reaches
    // minimisers whose first eigenfunction changes sign.
    seeds.push_back(FourierShape::perturbed_circle(R, 2, 0.15, std::max(order, 3)).rescale_to_unit_area());
    return seeds;
}

std::vector<OptState> optimize(double alpha, const FourierShape& init, const OptOptions& opts,
                               const OptCallback& callback) {
    FourierShape shape = init.order() < opts.order ? init.with_order(opts.order) : init;
    shape.validate();
    if (std::abs(shape.area() - 1.0) > 1e-10) shape = shape.rescale_to_unit_area();
    mfs::MfsConfig config = opts.mfs;
    Lambda1 cur = lambda1_with_eigenfunction(shape, alpha, config);
    std::vector<OptState> traj;
    double step = opts.step;
    for (int iter = 0;; ++iter) {
        while (config.m < opts.max_m && mfs::boundary_residual(cur.model, cur.location) > opts.refine_residual) {
            config.m = std::min(opts.max_m, config.m + config.m / 2);
            const double margin = std::max(0.3 * std::abs(cur.lambda1), 50.0);
            cur = search(shape, alpha, config, window_floor(alpha), cur.lambda1 + margin, margin, 2);
        }
        OptState st;
        st.m = config.m;
        st.shape = shape;
        st.alpha = alpha;
        st.lambda1 = cur.lambda1;
        st.gap = cur.gap;
        st.area = shape.area();
        st.iteration = iter;
        st.step = step;
        if (cur.gap <= 1e-3 * std::abs(cur.lambda1)) st.note = "near-degenerate lambda1";
        const Eigen::VectorXd g = hadamard(cur, 0);
        st.gradient = project_area(g, area_gradient(shape));
        st.grad_norm = st.gradient.norm();
        const bool reached = cur.lambda1 < opts.stop_below;
        const bool converged = reached || st.grad_norm <= opts.gtol * std::max(1.0, std::abs(cur.lambda1));
        if (converged) st.note = reached ? "target reached" : "converged";
        if (iter >= opts.max_iter && !converged) st.note = "iteration limit";
        traj.push_back(st);
        if (callback) callback(traj.back());
        if (converged || iter >= opts.max_iter) break;

        // Steepest descent in a smoother metric: high frequencies are stiff and
        // would otherwise dominate the step.  The area projection uses the same metric.
        Eigen::VectorXd w(g.size());
        for (int i = 0; i < w.size(); ++i) w[i] = std::pow(1.0 + shape.coefficient_frequency(i), -opts.smoothing);
        const Eigen::VectorXd a = area_gradient(shape);
        const Eigen::VectorXd wg = w.cwiseProduct(g), wa = w.cwiseProduct(a);
        Eigen::VectorXd dir = -(wg - (a.dot(wg) / a.dot(wa)) * wa);
        dir /= dir.norm();
        const Eigen::VectorXd c0 = shape.coefficients();
        bool accepted = false;
        for (int h = 0; h <= opts.max_halvings; ++h, step *= 0.5) {
            FourierShape trial = shape;
            trial.set_coefficients(c0 + step * dir);
            try {
                trial.validate();
                trial = trial.rescale_to_unit_area();
                // Acceptance only needs an eigenvalue below the current one, so the
                // window stops a margin above it and is never widened.
                const double margin = std::max(0.3 * std::abs(cur.lambda1), 50.0);
                Lambda1 next = search(trial, alpha, config, window_floor(alpha), cur.lambda1 + margin, margin, 0);
                if (next.lambda1 < cur.lambda1) {
                    shape = trial;
                    cur = std::move(next);
                    accepted = true;
                    break;
                }
            } catch (const GeometryError&) {
            } catch (const ConvergenceError&) {
            }
        }
        if (!accepted) {
            if (config.m < opts.max_m) {
                // Trial shapes may fail only because the current m cannot resolve them.
                config.m = std::min(opts.max_m, config.m + config.m / 2);
                const double margin = std::max(0.3 * std::abs(cur.lambda1), 50.0);
                cur = search(shape, alpha, config, window_floor(alpha), cur.lambda1 + margin, margin, 2);
                step = opts.step;
                continue;
            }
            traj.back().note = "stalled: no descent step found";
            break;
        }
        step = std::min(2.0 * step, 0.2);
    }
    return traj;
}

std::vector<SeedResult> optimize_seeds(double alpha, const std::vector<FourierShape>& seeds, const OptOptions& opts,
                                       const OptCallback& callback) {
    std::vector<SeedResult> out;
    for (std::size_t i = 0; i < seeds.size(); ++i)
        out.push_back({static_cast<int>(i), optimize(alpha, seeds[i], opts, callback)});
    std::stable_sort(out.begin(), out.end(), [](const SeedResult& a, const SeedResult& b) {
        return a.trajectory.back().lambda1 < b.trajectory.back().lambda1;
    });
    return out;
}

CriticalResult critical_alpha(double lo, double hi, const OptOptions& opts, double resolution, double tol_rel,
                              const std::function<void(const CriticalStep&)>& log) {
    if (!(lo <= hi)) throw DomainError("critical_alpha: empty interval");
    CriticalResult res{0.5 * (lo + hi), lo, hi, {}};
    // The elongated seed is the one that reaches the sign-changing branch; the
    // small perturbations stay in the basin of the disk on either side of the threshold.
    const FourierShape seed = standard_seeds(opts.order).back();
    auto indicator = [&](double alpha) {
        const double disk = unit_disk_lambda1(alpha);
        OptOptions o = opts;
        o.stop_below = disk - tol_rel * std::abs(disk);
        const auto traj = optimize(alpha, seed, o);
        CriticalStep s{alpha, disk, traj.back().lambda1, false};
        s.beats_disk = s.best < o.stop_below;
        res.log.push_back(s);
        if (log) log(s);
        return s.beats_disk;
    };
    const bool at_lo = indicator(lo);
    if (lo == hi) {
        res.alpha_star = lo;
        return res;
    }
    const bool at_hi = indicator(hi);
    if (at_lo || !at_hi)
        throw NoSignChange("critical_alpha: the disk must win at lo and lose at hi");
    while (hi - lo > 2.0 * resolution) {
        const double mid = 0.5 * (lo + hi);
        if (indicator(mid)) hi = mid;
        else lo = mid;
    }
    res.lo = lo;
    res.hi = hi;
    res.alpha_star = 0.5 * (lo + hi);
    return res;
}

NodalResult nodal_count(const mfs::MfsModel& model, const mfs::EigenLocation& loc, int resolution) {
    if (resolution < 8) throw DomainError("nodal_count: resolution too small");
    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    for (const auto& p : model.outline) {
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
        ymin = std::min(ymin, p.y());
        ymax = std::max(ymax, p.y());
    }
    const int n = resolution;
    std::vector<int> inside(static_cast<std::size_t>(n * n), 0);
    std::vector<Vec2> pts;
    std::vector<int> where;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Vec2 z(xmin + (xmax - xmin) * (i + 0.5) / n, ymin + (ymax - ymin) * (j + 0.5) / n);
            if (winding_number(model.outline, z) != 0) {
                inside[static_cast<std::size_t>(i * n + j)] = 1;
                pts.push_back(z);
                where.push_back(i * n + j);
            }
        }
    const auto vals = mfs::evaluate(model, loc, pts, false);
    double umax = 0.0;
    for (const auto& v : vals) umax = std::max(umax, std::abs(v.u));
    const double tau = 1e-6 * umax;
    std::vector<int> sign(static_cast<std::size_t>(n * n), 0);
    for (std::size_t k = 0; k < vals.size(); ++k)
        sign[static_cast<std::size_t>(where[k])] = vals[k].u > tau ? 1 : (vals[k].u < -tau ? -1 : 0);
    std::vector<int> label(static_cast<std::size_t>(n * n), -1);
    NodalResult r{0, std::numeric_limits<int>::max(), {}};
    for (int start = 0; start < n * n; ++start) {
        if (sign[start] == 0 || label[start] >= 0) continue;
        int size = 0;
        std::queue<int> q;
        q.push(start);
        label[start] = r.count;
        while (!q.empty()) {
            const int c = q.front();
            q.pop();
            ++size;
            const int i = c / n, j = c % n;
            const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
            for (const auto& e : nb) {
                if (e[0] < 0 || e[0] >= n || e[1] < 0 || e[1] >= n) continue;
                const int d = e[0] * n + e[1];
                if (label[d] < 0 && sign[d] == sign[start]) {
                    label[d] = r.count;
                    q.push(d);
                }
            }
        }
        r.smallest_component = std::min(r.smallest_component, size);
        ++r.count;
    }
    if (r.count > 0 && r.smallest_component < 10)
        r.warnings.push_back("resolution too coarse: a nodal domain covers fewer than 10 cells");
    return r;
}

double serrin_defect(const mfs::MfsModel& model, const mfs::EigenLocation& loc, int n) {
    const auto& shape = model.shape;
    if (n <= 0) n = std::max(8 * shape.order() + 16, 256);
    std::vector<Vec2> pts;
    std::vector<double> w;
    for (int k = 0; k < n; ++k) {
        const double t = kTwoPi * k / n;
        pts.push_back(shape.point(t));
        w.push_back(shape.derivative(t).norm());
    }
    const auto vals = mfs::evaluate(model, loc, pts, false);
    double sw = 0.0, mean = 0.0;
    for (int k = 0; k < n; ++k) {
        sw += w[k];
        mean += w[k] * vals[k].lap;
    }
    mean /= sw;
    double var = 0.0;
    for (int k = 0; k < n; ++k) var += w[k] * (vals[k].lap - mean) * (vals[k].lap - mean);
    return std::sqrt(var / sw) / std::abs(mean);
}

double antisymmetry_defect(const mfs::MfsModel& model, const mfs::EigenLocation& loc, double theta, int n) {
    const Vec2 c = model.shape.centroid();
    const Vec2 e(std::cos(theta), std::sin(theta));
    std::vector<Vec2> a, b;
    const auto& pool = model.interior;
    for (std::size_t i = 0; i < pool.size() && static_cast<int>(a.size()) < n; ++i) {
        const Vec2 d = pool[i] - c;
        const Vec2 r = c + 2.0 * d.dot(e) * e - d;
        if (winding_number(model.outline, r) == 0) continue;
        a.push_back(pool[i]);
        b.push_back(r);
    }
    if (a.empty()) throw GeometryError("antisymmetry_defect: the reflection maps no sample inside the domain");
    const auto ua = mfs::evaluate(model, loc, a, false);
    const auto ub = mfs::evaluate(model, loc, b, false);
    double num = 0.0, umax = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(ua[i].u + ub[i].u));
        umax = std::max({umax, std::abs(ua[i].u), std::abs(ub[i].u)});
    }
    return num / umax;
}

}  // namespace plateig::shapeopt
