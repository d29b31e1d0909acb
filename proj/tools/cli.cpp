#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "plateig/ball.hpp"
#include "plateig/errors.hpp"
#include "plateig/mfs.hpp"
#include "plateig/navier.hpp"
#include "plateig/shapeopt.hpp"

namespace plateig::cli {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";
const double kUnitAreaRadius = 1.0 / std::sqrt(std::numbers::pi);

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Range {
    double lo, hi;
    int n;
};

// "lo:hi" or "lo:hi:n".
Range parse_range(const std::string& text, int default_n) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw CLI::ValidationError("range", "expected lo:hi or lo:hi:n, got " + text);
    try {
        Range r{std::stod(parts[0]), std::stod(parts[1]), default_n};
        if (parts.size() == 3) r.n = std::stoi(parts[2]);
        if (r.n < 1 || !(r.lo <= r.hi)) throw CLI::ValidationError("range", "need lo <= hi and n >= 1: " + text);
        return r;
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("range", "not a number in " + text);
    }
}

std::vector<double> grid(const Range& r) {
    std::vector<double> g;
    if (r.n == 1 || r.lo == r.hi) return {r.lo};
    for (int i = 0; i < r.n; ++i) g.push_back(r.lo + (r.hi - r.lo) * i / (r.n - 1));
    return g;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
        try {
            v.push_back(std::stoi(p));
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("list", "not an integer list: " + text);
        }
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("file", "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// disk, disk:R, ellipse (unit area, eccentricity sqrt(3)/2), ellipse:a:b, or a shape file.
FourierShape parse_shape(const std::string& text) {
    if (text == "disk") return FourierShape::circle(kUnitAreaRadius);
    if (text == "ellipse") {
        const double a = std::sqrt(2.0 / std::numbers::pi);
        return FourierShape::ellipse(a, a / 2);
    }
    auto numbers_after = [&](std::size_t skip) {
        std::vector<double> v;
        std::stringstream ss(text.substr(skip));
        for (std::string p; std::getline(ss, p, ':');) v.push_back(std::stod(p));
        return v;
    };
    try {
        if (text.rfind("disk:", 0) == 0) {
            const auto v = numbers_after(5);
            if (v.size() == 1) return FourierShape::circle(v[0]);
        }
        if (text.rfind("ellipse:", 0) == 0) {
            const auto v = numbers_after(8);
            if (v.size() == 2) return FourierShape::ellipse(v[0], v[1]);
        }
    } catch (const std::logic_error&) {
    }
    if (text.rfind("disk", 0) == 0 || text.rfind("ellipse", 0) == 0)
        throw CLI::ValidationError("--shape", "malformed shape " + text);
    return shape_from_json(read_file(text));
}

// CSV sink with a '#' manifest block ahead of the header row.
class Csv {
public:
    Csv(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw CLI::ValidationError("--out", "cannot write " + path);
        }
        os_ = file_ ? file_.get() : &fallback;
    }

    void manifest(const std::string& command, const json& params, std::uint64_t seed, const std::string& units) {
        *os_ << "# command: " << command << "\n"
             << "# parameters: " << params.dump() << "\n"
             << "# seed: " << seed << "\n"
             << "# tool_version: " << kToolVersion << "\n"
             << "# timestamp: " << utc_now() << "\n"
             << "# units: " << units << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) *os_ << (i ? "," : "") << cells[i];
        *os_ << "\n";
    }

    void comment(const std::string& text) { *os_ << "# " << text << "\n"; }
    void flush() { os_->flush(); }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

json parameters_of(const CLI::App* sub) {
    json p = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt == sub->get_help_ptr()) continue;
        const std::string name = opt->get_single_name();
        if (name.empty()) continue;
        const auto& res = opt->results();
        std::string v;
        if (res.empty()) {
            v = opt->get_default_str();
        } else {
            for (std::size_t i = 0; i < res.size(); ++i) v += (i ? "," : "") + res[i];
        }
        p[name] = v;
    }
    return p;
}

// Minimal line plot: polylines in data coordinates mapped to an 800 x 500 canvas.
struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;
};

void write_svg_plot(const std::string& path, const std::vector<Series>& series, const std::string& xlabel,
                    const std::string& ylabel) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (auto [x, y] : s.pts) {
            if (!std::isfinite(y)) continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!(x1 > x0)) x1 = x0 + 1;
    if (!(y1 > y0)) y1 = y0 + 1;
    const double W = 800, H = 500, M = 60;
    auto X = [&](double x) { return M + (W - 2 * M) * (x - x0) / (x1 - x0); };
    auto Y = [&](double y) { return H - M - (H - 2 * M) * (y - y0) / (y1 - y0); };
    std::ofstream f(path);
    if (!f) throw CLI::ValidationError("--svg", "cannot write " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\">" << xlabel << " [" << num(x0) << ", " << num(x1)
      << "]</text>\n"
      << "<text x=\"5\" y=\"" << M - 20 << "\">" << ylabel << " [" << num(y0) << ", " << num(y1) << "]</text>\n";
    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    for (std::size_t i = 0; i < series.size(); ++i) {
        f << "<polyline fill=\"none\" stroke=\"" << colors[i % 10] << "\" points=\"";
        for (auto [x, y] : series[i].pts)
            if (std::isfinite(y)) f << num(X(x)) << "," << num(Y(y)) << " ";
        f << "\"><title>" << series[i].label << "</title></polyline>\n";
    }
    f << "</svg>\n";
}

void write_svg_shape(const std::string& path, const FourierShape& s, const std::string& title) {
    const auto poly = s.polygon(512);
    double r = 0.0;
    const Vec2 c = s.centroid();
    for (const auto& p : poly) r = std::max(r, (p - c).norm());
    const double S = 500, scale = 0.45 * S / r;
    std::ofstream f(path);
    if (!f) throw CLI::ValidationError("--svg", "cannot write " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << S << "\" height=\"" << S << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<polygon fill=\"#dde8f4\" stroke=\"black\" points=\"";
    for (const auto& p : poly) f << num(S / 2 + scale * (p.x() - c.x())) << "," << num(S / 2 - scale * (p.y() - c.y())) << " ";
    f << "\"/>\n<text x=\"10\" y=\"20\">" << title << "</text>\n</svg>\n";
}

// Eigenfunction raster: red for u > 0, blue for u < 0, white near the nodal set.
void write_svg_contour(const std::string& path, const mfs::MfsModel& model, const mfs::EigenLocation& loc,
                       int resolution) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& p : model.outline) {
        x0 = std::min(x0, p.x());
        x1 = std::max(x1, p.x());
        y0 = std::min(y0, p.y());
        y1 = std::max(y1, p.y());
    }
    const double side = std::max(x1 - x0, y1 - y0), cell = side / resolution;
    std::vector<Vec2> pts;
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j) {
            const Vec2 z(x0 + (i + 0.5) * cell, y0 + (j + 0.5) * cell);
            if (winding_number(model.outline, z) != 0) pts.push_back(z);
        }
    const auto vals = mfs::evaluate(model, loc, pts, false);
    double umax = 0.0;
    for (const auto& v : vals) umax = std::max(umax, std::abs(v.u));
    const double S = 500, px = S / resolution;
    std::ofstream f(path);
    if (!f) throw CLI::ValidationError("--contour", "cannot write " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << S << "\" height=\"" << S << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double t = vals[k].u / umax;
        const int shade = static_cast<int>(255 * (1 - std::abs(t)));
        char col[16];
        std::snprintf(col, sizeof col, t > 0 ? "#ff%02x%02x" : "#%02x%02xff", shade, shade);
        const double gx = (pts[k].x() - x0) / cell - 0.5, gy = (pts[k].y() - y0) / cell - 0.5;
        f << "<rect x=\"" << num(gx * px) << "\" y=\"" << num(S - (gy + 1) * px) << "\" width=\"" << num(px)
          << "\" height=\"" << num(px) << "\" fill=\"" << col << "\"/>\n";
    }
    f << "</svg>\n";
}

// Sub-command state; options bind into these before the callbacks run.
struct BallArgs {
    double radius = 1.0, alpha = 0.0;
    int dim = 2, count = 10;
    std::string out;
};

struct BranchArgs {
    double radius = kUnitAreaRadius;
    int dim = 2, count = 10, k_max = -1;
    std::string alpha_range = "-200:1000:121";
    bool shifted = false;
    std::string out, svg;
};

struct NavierArgs {
    std::string gammas_from = "disk";
    double radius = kUnitAreaRadius, area = 1.0;
    int gamma_count = 300;
    std::string alpha_range = "0:500:501";
    std::string out;
};

struct MfsArgs {
    std::string shape = "disk", window, refine, trace;
    double alpha = 0.0, offset = 1.0, scan_step = 0.0;
    int m = 300, p = 0, trace_points = 400;
    std::uint64_t seed = 0;
    std::string out;
};

struct OptimizeArgs {
    double alpha = 0.0;
    std::string seeds = "auto";
    int P = 16, m = 160, max_m = 640, iters = 60, contour_resolution = 120;
    std::uint64_t seed = 0;
    std::string out, shape_out, svg, contour;
};

struct CriticalArgs {
    double lo = 90.0, hi = 115.0, resolution = 2.0, tol = 1e-5;
    int P = 16, m = 160, iters = 30;
    std::uint64_t seed = 0;
    std::string out;
};

shapeopt::OptOptions opt_options(int P, int m, int max_m, int iters, std::uint64_t seed) {
    shapeopt::OptOptions o;
    o.order = P;
    o.max_iter = iters;
    o.mfs.m = m;
    o.mfs.rng_seed = seed;
    o.max_m = std::max(m, max_m);
    return o;
}

void cmd_ball_spectrum(const BallArgs& a, const json& params, std::ostream& out) {
    ball::BallProblem prob{a.radius, a.dim, a.alpha};
    prob.validate();
    if (a.count < 0) throw CLI::ValidationError("--count", "must be >= 0");
    Csv csv(a.out, out);
    csv.manifest("ball-spectrum", params, 0, "lambda in length^-4; residual is the normalized determinant");
    csv.row({"index", "lambda", "k", "multiplicity", "regime", "residual"});
    if (a.count == 0) return;
    const auto spec = ball::clamped_eigs(prob, a.count);
    int index = 1;
    for (const auto& e : spec.eigenvalues) {
        csv.row({std::to_string(index), num(e.lambda), std::to_string(e.k), std::to_string(e.multiplicity),
                 ball::regime_name(e.regime), num(e.residual)});
        index += e.multiplicity;
    }
    for (const auto& w : spec.warnings) csv.comment("warning: " + w);
}

void cmd_branches(const BranchArgs& a, const json& params, std::ostream& out) {
    const Range r = parse_range(a.alpha_range, 121);
    if (a.count < 0) throw CLI::ValidationError("--count", "must be >= 0");
    ball::BallScanOptions so;
    if (a.k_max >= 0) so.k_max = a.k_max;
    Csv csv(a.out, out);
    csv.manifest("branches", params, 0, "alpha in length^-2, lambda in length^-4");
    csv.row({"alpha", "k_index", "lambda", "shifted_lambda"});
    std::vector<Series> series(static_cast<std::size_t>(a.count));
    for (int k = 0; k < a.count; ++k) series[k].label = "lambda_" + std::to_string(k + 1);
    for (double alpha : grid(r)) {
        if (a.count == 0) break;
        const auto spec = ball::clamped_eigs(ball::BallProblem{a.radius, a.dim, alpha}, a.count, so);
        int k = 0;
        for (const auto& e : spec.eigenvalues)
            for (int rep = 0; rep < e.multiplicity && k < a.count; ++rep, ++k) {
                const double shifted = e.shifted;
                csv.row({num(alpha), std::to_string(k + 1), num(e.lambda), num(shifted)});
                series[k].pts.push_back({alpha, a.shifted ? shifted : e.lambda});
            }
    }
    if (!a.svg.empty())
        write_svg_plot(a.svg, series, "alpha", a.shifted ? "lambda_k + alpha^2/4" : "lambda_k");
}

navier::DirichletSpectrum load_gammas(const NavierArgs& a) {
    if (a.gammas_from == "disk") return navier::dirichlet_disk_spectrum(a.radius, a.gamma_count);
    navier::DirichletSpectrum s;
    s.domain_label = a.gammas_from;
    s.area = a.area;
    std::stringstream ss(read_file(a.gammas_from));
    for (std::string line; std::getline(ss, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::stringstream ls(line);
        for (double g; ls >> g;) s.gammas.push_back(g);
    }
    s.validate();
    return s;
}

void cmd_navier(const NavierArgs& a, const json& params, std::ostream& out) {
    const Range r = parse_range(a.alpha_range, 501);
    const auto spec = load_gammas(a);
    Csv csv(a.out, out);
    csv.manifest("navier", params, 0, "alpha in length^-2, lambda in length^-4; index is 1-based into the gammas");
    csv.row({"kind", "alpha", "lambda", "index"});
    for (const auto& p : navier::navier_lambda1_curve(spec, r.lo, r.hi, r.n))
        csv.row({"curve", num(p.alpha), num(p.lambda1), std::to_string(p.active_k)});
    for (double alpha : navier::navier_breakpoints(spec, r.lo, r.hi)) {
        // Between gamma_k and gamma_{k+1}: the two parabolas cross at -gamma_k gamma_{k+1}.
        std::size_t k = 0;
        while (k + 1 < spec.gammas.size() && spec.gammas[k] + spec.gammas[k + 1] != alpha) ++k;
        csv.row({"breakpoint", num(alpha), num(-spec.gammas[k] * spec.gammas[k + 1]), std::to_string(k + 1)});
    }
    for (std::size_t k = 0; k < spec.gammas.size(); ++k) {
        if (k > 0 && spec.gammas[k] == spec.gammas[k - 1]) continue;
        const double g = spec.gammas[k], alpha = 2.0 * g;
        if (alpha < r.lo || alpha > r.hi) continue;
        csv.row({"tangency", num(alpha), num(-g * g), std::to_string(k + 1)});
    }
}

void cmd_mfs_solve(const MfsArgs& a, const json& params, std::ostream& out) {
    const auto shape = parse_shape(a.shape);
    shape.validate();
    const Range w = parse_range(a.window, 1);
    mfs::MfsConfig cfg;
    cfg.m = a.m;
    cfg.p = a.p;
    cfg.rng_seed = a.seed;
    cfg.offset_factor = a.offset;
    cfg.scan_step = a.scan_step;
    cfg.validate();
    const auto refine = a.refine.empty() ? std::vector<int>{} : parse_int_list(a.refine);
    Csv csv(a.out, out);
    csv.manifest("mfs-solve", params, a.seed, "lambda in length^-4; sigma and residual dimensionless");
    csv.row({"m", "index", "lambda", "sigma1", "sigma2", "multiplicity", "boundary_residual"});
    const auto model = mfs::place_points(shape, a.alpha, cfg);
    for (const auto& msg : model.warnings) csv.comment("warning: " + msg);
    const auto found = w.lo < w.hi ? mfs::locate_eigenvalues(model, w.lo, w.hi, cfg) : std::vector<mfs::EigenLocation>{};
    int index = 1;
    for (const auto& e : found) {
        csv.row({std::to_string(a.m), std::to_string(index++), num(e.lambda), num(e.sigma1), num(e.sigma2),
                 std::to_string(e.multiplicity), num(mfs::boundary_residual(model, e))});
    }
    for (int m : refine) {
        mfs::MfsConfig c = cfg;
        c.m = m;
        c.validate();
        const auto fine = mfs::place_points(shape, a.alpha, c);
        index = 1;
        for (std::size_t i = 0; i < found.size(); ++i) {
            double half = 1e-3 * std::max(1.0, std::abs(found[i].lambda));
            if (i > 0) half = std::min(half, 0.5 * (found[i].lambda - found[i - 1].lambda));
            if (i + 1 < found.size()) half = std::min(half, 0.5 * (found[i + 1].lambda - found[i].lambda));
            auto e = mfs::refine_minimum(fine, found[i].lambda - half, found[i].lambda + half);
            e.multiplicity = e.sigma2 <= c.sigma_tol ? 2 : 1;
            csv.row({std::to_string(m), std::to_string(index++), num(e.lambda), num(e.sigma1), num(e.sigma2),
                     std::to_string(e.multiplicity), num(mfs::boundary_residual(fine, e))});
        }
    }
    if (!a.trace.empty()) {
        Csv tr(a.trace, out);
        tr.manifest("mfs-solve --trace", params, a.seed, "lambda in length^-4");
        tr.row({"lambda", "sigma1", "sigma2"});
        for (double l : grid(Range{w.lo, w.hi, a.trace_points})) {
            if (!mfs::lambda_admissible(a.alpha, l)) continue;
            const auto s = mfs::sigma_values(model, l);
            tr.row({num(l), num(s.sigma1), num(s.sigma2)});
        }
    }
}

void cmd_optimize(const OptimizeArgs& a, const json& params, std::ostream& out, std::ostream& err) {
    const auto opts = opt_options(a.P, a.m, a.max_m, a.iters, a.seed);
    std::vector<FourierShape> seeds;
    if (a.seeds == "auto") {
        seeds = shapeopt::standard_seeds(a.P);
    } else {
        seeds.push_back(parse_shape(a.seeds));
    }
    Csv csv(a.out, out);
    csv.manifest("optimize", params, a.seed, "lambda1 in length^-4 on unit-area domains");
    csv.row({"seed_index", "iteration", "lambda1", "grad_norm", "area", "step", "m", "gap", "note"});
    int best_seed = -1;
    shapeopt::OptState best;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto traj = shapeopt::optimize(a.alpha, seeds[i], opts, [&](const shapeopt::OptState& s) {
            err << "seed " << i << " iteration " << s.iteration << " lambda1 " << num(s.lambda1) << "\n";
        });
        for (const auto& s : traj)
            csv.row({std::to_string(i), std::to_string(s.iteration), num(s.lambda1), num(s.grad_norm), num(s.area),
                     num(s.step), std::to_string(s.m), num(s.gap), s.note});
        csv.flush();
        if (best_seed < 0 || traj.back().lambda1 < best.lambda1) {
            best = traj.back();
            best_seed = static_cast<int>(i);
        }
    }
    csv.comment("best: seed " + std::to_string(best_seed) + " lambda1 " + num(best.lambda1));
    if (!a.shape_out.empty()) {
        auto doc = json::parse(shape_to_json(best.shape));
        doc["alpha"] = a.alpha;
        doc["lambda1"] = best.lambda1;
        std::ofstream f(a.shape_out);
        if (!f) throw CLI::ValidationError("--shape-out", "cannot write " + a.shape_out);
        f << doc.dump(2) << "\n";
    }
    if (!a.svg.empty()) write_svg_shape(a.svg, best.shape, "alpha = " + num(a.alpha) + ", lambda1 = " + num(best.lambda1));
    if (!a.contour.empty()) {
        mfs::MfsConfig c = opts.mfs;
        c.m = best.m;
        const auto eig = shapeopt::lambda1_near(best.shape, a.alpha, best.lambda1, 1e-3 * std::abs(best.lambda1) + 1e-3, c);
        write_svg_contour(a.contour, eig.model, eig.location, a.contour_resolution);
    }
}

void cmd_critical_alpha(const CriticalArgs& a, const json& params, std::ostream& out, std::ostream& err) {
    if (!(a.lo <= a.hi)) throw CLI::ValidationError("--lo", "need lo <= hi");
    const auto opts = opt_options(a.P, a.m, 640, a.iters, a.seed);
    Csv csv(a.out, out);
    csv.manifest("critical-alpha", params, a.seed, "alpha in length^-2, lambda1 in length^-4 on unit-area domains");
    csv.row({"kind", "alpha", "disk_lambda1", "best_lambda1", "beats_disk"});
    const auto res = shapeopt::critical_alpha(a.lo, a.hi, opts, a.resolution, a.tol, [&](const shapeopt::CriticalStep& s) {
        csv.row({"indicator", num(s.alpha), num(s.disk), num(s.best), s.beats_disk ? "true" : "false"});
        csv.flush();
        err << "alpha " << num(s.alpha) << (s.beats_disk ? " beats the disk" : " disk wins") << "\n";
    });
    csv.row({"estimate", num(res.alpha_star), "", "", ""});
    csv.comment("bracket: " + num(res.lo) + " " + num(res.hi));
}

}  // namespace

std::string shape_to_json(const FourierShape& s) {
    json doc;
    doc["P"] = s.order();
    doc["a1"] = s.a1;
    doc["b1"] = s.b1;
    doc["a2"] = s.a2;
    doc["b2"] = s.b2;
    return doc.dump(2);
}

FourierShape shape_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
        const int P = doc.at("P").get<int>();
        FourierShape s(P);
        s.a1 = doc.at("a1").get<std::vector<double>>();
        s.b1 = doc.at("b1").get<std::vector<double>>();
        s.a2 = doc.at("a2").get<std::vector<double>>();
        s.b2 = doc.at("b2").get<std::vector<double>>();
        for (const auto* v : {&s.a1, &s.b1, &s.a2, &s.b2})
            if (static_cast<int>(v->size()) != P + 1) throw GeometryError("shape file: arrays must have P + 1 entries");
        return s;
    } catch (const json::exception& e) {
        throw GeometryError(std::string("shape file: ") + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Clamped plate eigenvalues under compression: ball spectra, MFS solves and shape optimization"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    BallArgs ba;
    auto* ball = app.add_subcommand("ball-spectrum", "Clamped eigenvalues of a ball");
    ball->add_option("--radius", ba.radius, "Ball radius");
    ball->add_option("--dim", ba.dim, "Dimension N");
    ball->add_option("--alpha", ba.alpha, "Compression parameter");
    ball->add_option("--count", ba.count, "Number of eigenvalues with multiplicity");
    ball->add_option("--out", ba.out, "CSV output (stdout when absent)");

    BranchArgs br;
    auto* branches = app.add_subcommand("branches", "lambda_k(alpha) curves of a ball");
    branches->add_option("--radius", br.radius, "Ball radius (default: unit area disk)");
    branches->add_option("--dim", br.dim, "Dimension N");
    branches->add_option("--alpha-range", br.alpha_range, "lo:hi[:n]");
    branches->add_option("--k-max", br.k_max, "Highest spherical degree scanned (default: automatic)");
    branches->add_option("--count", br.count, "Curves per alpha");
    branches->add_flag("--shifted", br.shifted, "Plot lambda + alpha^2/4");
    branches->add_option("--out", br.out, "CSV output");
    branches->add_option("--svg", br.svg, "SVG line plot");

    NavierArgs na;
    auto* navier = app.add_subcommand("navier", "Polygonal first Navier eigenvalue curve");
    navier->add_option("--gammas-from", na.gammas_from, "disk or a file of Dirichlet eigenvalues");
    navier->add_option("--radius", na.radius, "Disk radius for --gammas-from disk");
    navier->add_option("--area", na.area, "Domain area for a gammas file")->check(CLI::PositiveNumber);
    navier->add_option("--gamma-count", na.gamma_count, "Dirichlet eigenvalues generated for the disk");
    navier->add_option("--alpha-range", na.alpha_range, "lo:hi[:n]");
    navier->add_option("--out", na.out, "CSV output");

    MfsArgs ma;
    auto* mfs_cmd = app.add_subcommand("mfs-solve", "Eigenvalues of a Fourier domain by fundamental solutions");
    mfs_cmd->add_option("--shape", ma.shape, "disk, disk:R, ellipse, ellipse:a:b or a shape file");
    mfs_cmd->add_option("--alpha", ma.alpha, "Compression parameter");
    mfs_cmd->add_option("--window", ma.window, "lo:hi search window")->required();
    mfs_cmd->add_option("--m", ma.m, "Collocation points");
    mfs_cmd->add_option("--p", ma.p, "Interior points (0: m/4)");
    mfs_cmd->add_option("--seed", ma.seed, "Interior point generator seed");
    mfs_cmd->add_option("--offset", ma.offset, "Source offset in units of perimeter/80");
    mfs_cmd->add_option("--scan-step", ma.scan_step, "Scan step (0: automatic)");
    mfs_cmd->add_option("--refine", ma.refine, "Comma-separated m values re-solving each eigenvalue");
    mfs_cmd->add_option("--trace", ma.trace, "CSV of sigma_1, sigma_2 over the window");
    mfs_cmd->add_option("--trace-points", ma.trace_points, "Samples in the trace");
    mfs_cmd->add_option("--out", ma.out, "CSV output");

    OptimizeArgs oa;
    auto* optimize = app.add_subcommand("optimize", "Minimize lambda_1 over unit-area Fourier domains");
    optimize->add_option("--alpha", oa.alpha, "Compression parameter")->required();
    optimize->add_option("--seeds", oa.seeds, "auto (standard family) or a shape file");
    optimize->add_option("--P", oa.P, "Fourier order");
    optimize->add_option("--m", oa.m, "Initial collocation points");
    optimize->add_option("--max-m", oa.max_m, "Largest m used when residuals grow");
    optimize->add_option("--iters", oa.iters, "Iterations per seed");
    optimize->add_option("--seed", oa.seed, "Interior point generator seed");
    optimize->add_option("--out", oa.out, "Trajectory CSV");
    optimize->add_option("--shape-out", oa.shape_out, "Best shape file");
    optimize->add_option("--svg", oa.svg, "SVG of the best boundary");
    optimize->add_option("--contour", oa.contour, "SVG raster of the best eigenfunction");
    optimize->add_option("--contour-resolution", oa.contour_resolution, "Raster cells per side");

    CriticalArgs ca;
    auto* critical = app.add_subcommand("critical-alpha", "Bisection for the compression where the disk stops winning");
    critical->add_option("--lo", ca.lo, "Lower end (disk must win)");
    critical->add_option("--hi", ca.hi, "Upper end (disk must lose)");
    critical->add_option("--resolution", ca.resolution, "Half-width of the final bracket");
    critical->add_option("--tol", ca.tol, "Relative margin for beating the disk");
    critical->add_option("--P", ca.P, "Fourier order");
    critical->add_option("--m", ca.m, "Collocation points");
    critical->add_option("--iters", ca.iters, "Iterations per descent");
    critical->add_option("--seed", ca.seed, "Interior point generator seed");
    critical->add_option("--out", ca.out, "CSV output");

    std::vector<const char*> argv{"plateig"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*ball) cmd_ball_spectrum(ba, parameters_of(ball), out);
        else if (*branches) cmd_branches(br, parameters_of(branches), out);
        else if (*navier) cmd_navier(na, parameters_of(navier), out);
        else if (*mfs_cmd) cmd_mfs_solve(ma, parameters_of(mfs_cmd), out);
        else if (*optimize) cmd_optimize(oa, parameters_of(optimize), out, err);
        else if (*critical) cmd_critical_alpha(ca, parameters_of(critical), out, err);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NoSignChange& e) {
        err << "error: " << e.what() << "\n";
        return kSearchContract;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kSolverFailure;
    }
    return kOk;
}

}  // namespace plateig::cli
