// Acceptance run: one PASS/FAIL line per criterion.  Arguments select criteria by
// number (default: all).  Exits 1 when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plateig/ball.hpp"
#include "plateig/bridge.hpp"
#include "plateig/navier.hpp"
#include "plateig/shapeopt.hpp"
#include "plateig/specfun.hpp"

using namespace plateig;

namespace {

constexpr double pi = std::numbers::pi;
const double unit_area_radius = 1.0 / std::sqrt(pi);

// Tolerances.
constexpr double kDiskReference = -1622.16613;
constexpr double kBallTol = 1e-3;
constexpr double kMfsRelTol = 1e-6;
constexpr double kTableReference = -1786.3537774;
constexpr double kTableTarget = -1786.0;
constexpr double kPolishRelTol = 1e-5;
constexpr double kTimeBudget = 3600.0;
constexpr int kOptIterations = 30;
constexpr double kCriticalLo = 95.0, kCriticalHi = 110.0;
constexpr double kBranchRelTol = 1e-2;
constexpr double kTangencyRelTol = 1e-12;
constexpr double kPairDetTol = 1e-8;
constexpr double kPairShiftTol = 1e-10;
constexpr double kGradientRelTol = 1e-3;
constexpr double kAntisymmetryTol = 1e-4;
constexpr double kWronskianTol = 1e-11;
constexpr double kResidualTol = 1e-6;
constexpr double kRayleighTol = 1e-4;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

mfs::MfsConfig with_m(int m) {
    mfs::MfsConfig c;
    c.m = m;
    return c;
}

void progress(const std::string& s) {
    std::fprintf(stderr, "  .. %s\n", s.c_str());
}

// ---------------------------------------------------------------------------

Outcome disk_at_compression() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const double ball = ball::clamped_eigs(ball::BallProblem{unit_area_radius, 2, 110.0}, 1).eigenvalues[0].lambda;
    const double t_ball = seconds_since(t0);
    const auto t1 = std::chrono::steady_clock::now();
    const auto model = mfs::place_points(FourierShape::circle(unit_area_radius), 110.0, with_m(300));
    const auto found = mfs::locate_eigenvalues(model, ball - 50.0, ball + 50.0, with_m(300));
    const double t_mfs = seconds_since(t1);
    const double mfs_rel = found.empty() ? INFINITY : std::abs(found.front().lambda - ball) / std::abs(ball);
    o.pass = std::abs(ball - kDiskReference) <= kBallTol && mfs_rel <= kMfsRelTol && t_mfs < 60.0;
    o.detail = fmt("ball %.8f (|d| %.1e, %.2fs); mfs m=300 %.8f (rel %.1e, %.1fs)", ball,
                   std::abs(ball - kDiskReference), t_ball, found.empty() ? NAN : found.front().lambda, mfs_rel, t_mfs);
    return o;
}

struct Optimum {
    shapeopt::Lambda1 polished;  // m = 1000
    double offset_factor = 1.0;
    double residual = 0.0;
    double lambda_1500 = 0.0;
    double optimizer_lambda = 0.0;
    double seconds = 0.0;
    int best_seed = -1;
    double worst_area_error = 0.0;
};

std::optional<Optimum> g_optimum;

const Optimum& optimum() {
    if (g_optimum) return *g_optimum;
    const auto t0 = std::chrono::steady_clock::now();
    shapeopt::OptOptions opts;
    opts.max_iter = kOptIterations;
    Optimum r;
    const auto runs = shapeopt::optimize_seeds(110.0, shapeopt::standard_seeds(opts.order), opts,
                                               [&](const shapeopt::OptState& s) {
                                                   r.worst_area_error = std::max(r.worst_area_error, std::abs(s.area - 1.0));
                                                   if (s.iteration % 5 == 0 || !s.note.empty())
                                                       progress(fmt("it %d lambda1 %.6f m %d %s (%.0fs)", s.iteration,
                                                                    s.lambda1, s.m, s.note.c_str(), seconds_since(t0)));
                                               });
    const auto& best = runs.front().trajectory.back();
    r.best_seed = runs.front().seed_index;
    r.optimizer_lambda = best.lambda1;
    auto p = shapeopt::polish(best.shape, 110.0, best.lambda1, 0.5, with_m(1000));
    r.polished = std::move(p.eig);
    r.offset_factor = p.offset_factor;
    r.residual = p.residual;
    progress(fmt("polished m=1000 %.10f offset %.2f residual %.1e (%.0fs)", r.polished.lambda1, r.offset_factor,
                 r.residual, seconds_since(t0)));
    mfs::MfsConfig fine = with_m(1500);
    fine.offset_factor = r.offset_factor;
    r.lambda_1500 = shapeopt::lambda1_near(best.shape, 110.0, r.polished.lambda1, 0.05, fine).lambda1;
    r.seconds = seconds_since(t0);
    g_optimum = std::move(r);
    return *g_optimum;
}

Outcome table_reproduction() {
    const auto& r = optimum();
    const double l = r.polished.lambda1;
    const double rel = std::abs(l - r.lambda_1500) / std::abs(r.lambda_1500);
    Outcome o;
    o.pass = l <= kTableTarget && rel <= kPolishRelTol && r.seconds <= kTimeBudget;
    o.detail = fmt("seed %d: optimizer %.7f, m=1000 %.7f (offset %.2f, residual %.1e), m=1500 %.7f (rel %.1e), "
                   "reference %.7f (d %.4f), %.0fs",
                   r.best_seed, r.optimizer_lambda, l, r.offset_factor, r.residual, r.lambda_1500, rel, kTableReference,
                   l - kTableReference, r.seconds);
    return o;
}

Outcome critical_compression() {
    shapeopt::OptOptions opts;
    opts.max_iter = 30;
    const double resolution = 2.0;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        const auto r = shapeopt::critical_alpha(90.0, 115.0, opts, resolution, 1e-5, [&](const shapeopt::CriticalStep& s) {
            progress(fmt("alpha %.4f disk %.4f best %.4f beats %d (%.0fs)", s.alpha, s.disk, s.best, s.beats_disk,
                         seconds_since(t0)));
        });
        o.pass = r.alpha_star >= kCriticalLo && r.alpha_star <= kCriticalHi;
        o.detail = fmt("alpha* = %.2f +- %.2f (bracket [%.3f, %.3f]), %.0fs", r.alpha_star, 0.5 * (r.hi - r.lo), r.lo,
                       r.hi, seconds_since(t0));
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("threw: ") + e.what();
    }
    return o;
}

Outcome branch_asymptotics() {
    Outcome o;
    double first_constant = 0.0;
    for (int t : {1, 2}) {
        const double tp2 = t * t * pi * pi;
        const double expected = tp2 * (-1.0 - tp2) / 4.0;  // nu = 0
        double alpha = 0.0, rel = INFINITY, measured = 0.0;
        for (int m = 5; alpha < 1e4; m *= 2) {
            const auto e = bridge::dirichlet_endpoint(1.0, 2, bridge::BranchId{0, t}, m);
            alpha = e.alpha;
            measured = e.lambda - (-0.25 * alpha * alpha + 0.5 * alpha * tp2);
            rel = std::abs(measured - expected) / std::abs(expected);
        }
        if (t == 1) first_constant = measured;
        o.pass = o.pass && rel <= kBranchRelTol;
        o.detail += fmt("t=%d: alpha %.0f constant %.4f vs %.4f (rel %.1e); ", t, alpha, measured, expected, rel);
    }
    // Two printed forms of the first-branch constant for N = 2.
    const double c_n2m1 = pi * pi * (4.0 - 1.0 - pi * pi) / 4.0;
    const double c_n2m4n3 = pi * pi * (4.0 - 8.0 + 3.0 - pi * pi) / 4.0;
    const bool second = std::abs(first_constant - c_n2m4n3) < std::abs(first_constant - c_n2m1);
    o.detail += fmt("first branch matches %s (%.4f; other form %.4f)", second ? "N^2-4N+3" : "N^2-1",
                    second ? c_n2m4n3 : c_n2m1, second ? c_n2m1 : c_n2m4n3);
    return o;
}

Outcome navier_identities() {
    Outcome o;
    const auto spec = navier::dirichlet_disk_spectrum(1.0, 300);
    std::vector<double> distinct;
    for (double g : spec.gammas)
        if (distinct.empty() || g != distinct.back()) distinct.push_back(g);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double g = distinct[k];
        const double l = navier::navier_spectrum(spec, 2.0 * g, 1).front();
        worst = std::max(worst, std::abs(l + g * g) / (g * g));
    }
    double min_margin = INFINITY;
    for (int i = 0; i < 50; ++i) {
        const double alpha = -100.0 + 600.0 * i / 49.0;
        const double clamped = ball::clamped_eigs(ball::BallProblem{1.0, 2, alpha}, 1).eigenvalues[0].lambda;
        const double hinged = navier::navier_spectrum(spec, alpha, 1).front();
        min_margin = std::min(min_margin, clamped - hinged);
    }
    o.pass = worst <= kTangencyRelTol && min_margin >= 0.0;
    o.detail = fmt("tangency worst rel %.1e over 20 values; min clamped - hinged %.4f over 50 alphas", worst, min_margin);
    return o;
}

Outcome robin_pairs() {
    Outcome o;
    double worst_det = 0.0, worst_shift = 0.0;
    int pairs = 0;
    for (int N : {2, 3}) {
        for (double beta : {-2.0, 0.0, 1.0, 10.0}) {
            for (int k = 0; k <= 3; ++k) {
                const auto eig = bridge::robin_eigs_ball(1.0, N, k, beta, 7);
                for (int j = 0; j < 5; ++j) {
                    for (int t : {1, 2}) {
                        const double s1 = eig[j].sigma, s2 = eig[j + t].sigma;
                        const auto cp = bridge::pair_to_clamped(s1, s2);
                        worst_det = std::max(
                            worst_det, std::abs(ball::clamped_det(ball::BallProblem{1.0, N, cp.alpha}, k, cp.lambda)));
                        const double half = 0.5 * (s1 - s2);
                        const double shift = cp.lambda + 0.25 * cp.alpha * cp.alpha;
                        worst_shift = std::max(worst_shift, std::abs(shift - half * half) / (half * half));
                        ++pairs;
                    }
                }
            }
        }
    }
    o.pass = worst_det <= kPairDetTol && worst_shift <= kPairShiftTol;
    o.detail = fmt("%d pairs: max |det| %.1e, max shift identity rel %.1e", pairs, worst_det, worst_shift);
    return o;
}

FourierShape with_coefficients(const FourierShape& s, const Eigen::VectorXd& c) {
    FourierShape t(s.order());
    t.set_coefficients(c);
    return t;
}

Outcome gradient_check() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    // Aspect 1.5: at aspect 2 the first two eigenvalues at alpha = 110 are 3 apart.  The
    // rotation keeps the selected components away from zeros forced by symmetry.
    const double a = std::sqrt(1.5 / pi);
    const std::vector<std::pair<std::string, FourierShape>> shapes{
        {"perturbed disk", FourierShape::perturbed_circle(unit_area_radius, 3, 0.05, 4).rescale_to_unit_area()},
        {"ellipse", FourierShape::ellipse(a, a / 1.5).rotated(0.4).with_order(4)},
    };
    const auto cfg = with_m(240);
    const double h = 1e-4;
    double worst = 0.0;
    std::string where;
    int checks = 0;
    for (const auto& [name, s] : shapes) {
        for (double alpha : {0.0, 50.0, 110.0}) {
            const auto eig = shapeopt::lambda1_with_eigenfunction(s, alpha, cfg);
            const Eigen::VectorXd g = shapeopt::shape_gradient(eig);
            const Eigen::VectorXd ag = shapeopt::area_gradient(s);
            const Eigen::VectorXd c = s.coefficients();
            // Derivative along c + h e_i followed by rescaling to unit area.
            Eigen::VectorXd pred = g - ag * (g.dot(c) / (2.0 * s.area()));
            std::vector<int> idx(static_cast<std::size_t>(pred.size()));
            for (int i = 0; i < pred.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](int x, int y) { return std::abs(pred[x]) > std::abs(pred[y]); });
            for (int n = 0; n < 5; ++n) {
                const int i = idx[n];
                auto at = [&](double e) {
                    Eigen::VectorXd p = c;
                    p[i] += e;
                    return shapeopt::lambda1_near(with_coefficients(s, p).rescale_to_unit_area(), alpha, eig.lambda1, 2.0,
                                                  cfg)
                        .lambda1;
                };
                const double fd = (at(h) - at(-h)) / (2.0 * h);
                const double rel = std::abs(pred[i] - fd) / std::abs(fd);
                ++checks;
                if (rel > worst) {
                    worst = rel;
                    where = fmt("%s alpha %.0f %s (%.6g vs %.6g)", name.c_str(), alpha, s.coefficient_name(i).c_str(),
                                pred[i], fd);
                }
            }
            progress(fmt("%s alpha %.0f done (%.0fs)", name.c_str(), alpha, seconds_since(t0)));
        }
    }
    o.pass = worst <= kGradientRelTol;
    o.detail = fmt("%d checks, worst rel %.1e at %s, %.0fs", checks, worst, where.c_str(), seconds_since(t0));
    return o;
}

Outcome nodal_structure() {
    Outcome o;
    const auto& r = optimum();
    const auto& p = r.polished;
    const int count = shapeopt::nodal_count(p.model, p.location, 160).count;
    const double d0 = shapeopt::antisymmetry_defect(p.model, p.location, 0.0);
    const double d90 = shapeopt::antisymmetry_defect(p.model, p.location, 0.5 * pi);
    const double defect = std::min(d0, d90);
    const auto disk = shapeopt::lambda1_with_eigenfunction(FourierShape::circle(unit_area_radius), 0.0, with_m(300));
    const int disk_count = shapeopt::nodal_count(disk.model, disk.location, 160).count;
    o.pass = count == 2 && defect <= kAntisymmetryTol && disk_count == 1;
    o.detail = fmt("optimum: %d nodal domains, antisymmetry defect %.1e (axis %s; other axis %.2f); disk at rest: %d",
                   count, defect, d90 <= d0 ? "pi/2" : "0", std::max(d0, d90), disk_count);
    return o;
}

Outcome property_suites() {
    using namespace plateig::specfun;
    Outcome o;
    std::vector<std::string> failed;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) failed.push_back(what);
    };

    // J_{n+1} Y_n - J_n Y_{n+1} = 2 / (pi x) and I_0 K_1 + I_1 K_0 = 1 / x; Y_2 by recurrence.
    double w_jy = 0.0, w_ik = 0.0;
    for (int i = 0; i < 400; ++i) {
        const double x = 0.05 + 60.0 * i / 399.0;
        const double j0 = bessel_j(BesselOrder(0), x), j1 = bessel_j(BesselOrder(1), x), j2 = bessel_j(BesselOrder(2), x);
        const double y0 = bessel_y(BesselOrder(0), x), y1 = bessel_y(BesselOrder(1), x), y2 = 2.0 / x * y1 - y0;
        w_jy = std::max({w_jy, std::abs((j1 * y0 - j0 * y1) * pi * x / 2.0 - 1.0),
                         std::abs((j2 * y1 - j1 * y2) * pi * x / 2.0 - 1.0)});
        const double ik = bessel_i_scaled(BesselOrder(0), x) * bessel_k_scaled(BesselOrder(1), x) +
                          bessel_i_scaled(BesselOrder(1), x) * bessel_k_scaled(BesselOrder(0), x);
        w_ik = std::max(w_ik, std::abs(ik * x - 1.0));
    }
    check(w_jy <= kWronskianTol && w_ik <= kWronskianTol, "wronskian");

    bool interlaced = true;
    for (int twice = 0; twice <= 20; ++twice) {
        const auto a = bessel_zeros(BesselOrder(twice / 2.0), 21);
        const auto b = bessel_zeros(BesselOrder(twice / 2.0 + 1.0), 20);
        for (int m = 0; m < 20; ++m) interlaced = interlaced && a[m] < b[m] && b[m] < a[m + 1];
    }
    check(interlaced, "interlacing");

    const double ea = std::sqrt(2.0 / pi);
    const auto ellipse = mfs::place_points(FourierShape::ellipse(ea, ea / 2), 50.0, with_m(160));
    bool sigma_ok = true;
    for (int i = 0; i < 100; ++i) {
        const double l = -600.0 + 3000.0 * i / 99.0;
        if (!mfs::lambda_admissible(50.0, l)) continue;
        const auto s = mfs::sigma_values(ellipse, l);
        sigma_ok = sigma_ok && s.sigma1 >= 0.0 && s.sigma1 <= 1.0 && s.sigma2 >= s.sigma1;
    }
    check(sigma_ok, "sigma range");

    double area_err = g_optimum ? g_optimum->worst_area_error : 0.0;
    shapeopt::OptOptions opts;
    opts.order = 8;
    opts.max_iter = 3;
    const auto seed = shapeopt::standard_seeds(8).back();
    const auto a = shapeopt::optimize(110.0, seed, opts);
    const auto b = shapeopt::optimize(110.0, seed, opts);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
        same = a[i].lambda1 == b[i].lambda1 && a[i].shape.coefficients() == b[i].shape.coefficients();
    for (const auto& s : a) area_err = std::max(area_err, std::abs(s.area - 1.0));
    const auto p1 = mfs::place_points(seed, 110.0, with_m(200)), p2 = mfs::place_points(seed, 110.0, with_m(200));
    same = same && p1.interior == p2.interior;
    check(area_err <= 1e-12, "unit area");
    check(same, "determinism");

    double residual = 0.0, rayleigh = 0.0;
    for (const auto& [shape, alpha] : std::vector<std::pair<FourierShape, double>>{
             {FourierShape::circle(unit_area_radius), 110.0},
             {FourierShape::perturbed_circle(unit_area_radius, 3, 0.05, 4).rescale_to_unit_area(), 25.0}}) {
        const auto eig = shapeopt::lambda1_with_eigenfunction(shape, alpha, with_m(300));
        residual = std::max(residual, mfs::boundary_residual(eig.model, eig.location));
        const auto q = mfs::quadrature_integrals(eig.model, eig.location);
        const double rq = (q.lap2 - alpha * q.grad2) / q.u2;
        rayleigh = std::max(rayleigh, std::abs(rq - eig.lambda1) / std::abs(eig.lambda1));
    }
    check(residual <= kResidualTol, "boundary residual");
    check(rayleigh <= kRayleighTol, "rayleigh");

    o.pass = failed.empty();
    o.detail = fmt("wronskian J/Y %.1e I/K %.1e; interlacing %s; sigma in [0,1] %s; area err %.1e; deterministic %s; "
                   "residual %.1e; rayleigh %.1e",
                   w_jy, w_ik, interlaced ? "ok" : "broken", sigma_ok ? "ok" : "broken", area_err, same ? "yes" : "no",
                   residual, rayleigh);
    for (const auto& f : failed) o.detail += "; failed: " + f;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria{
        {1, {"disk eigenvalue at compression", disk_at_compression}},
        {2, {"optimized lambda1 at alpha 110", table_reproduction}},
        {3, {"critical compression", critical_compression}},
        {4, {"branch asymptotics", branch_asymptotics}},
        {5, {"navier identities", navier_identities}},
        {6, {"robin pair equivalence", robin_pairs}},
        {7, {"shape gradient vs finite differences", gradient_check}},
        {8, {"nodal structure", nodal_structure}},
        {9, {"property suites", property_suites}},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
    if (selected.empty())
        for (const auto& [n, c] : criteria) selected.insert(n);

    int failures = 0;
    for (int n : selected) {
        const auto it = criteria.find(n);
        if (it == criteria.end()) {
            std::fprintf(stderr, "unknown criterion %d\n", n);
            return 2;
        }
        Outcome r;
        try {
            r = it->second.second();
        } catch (const std::exception& e) {
            r = {false, std::string("threw: ") + e.what()};
        }
        failures += r.pass ? 0 : 1;
        std::printf("criterion %d %s  %s: %s\n", n, r.pass ? "PASS" : "FAIL", it->second.first, r.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(selected.size()) - failures, selected.size());
    return failures == 0 ? 0 : 1;
}
