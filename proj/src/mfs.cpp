#include "plateig/mfs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "plateig/errors.hpp"
#include "plateig/quadrature.hpp"
#include "plateig/roots.hpp"
#include "plateig/specfun.hpp"

namespace plateig::mfs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double guard(double alpha) { return 1e-6 * std::max(1.0, alpha * alpha); }

}  // namespace

void MfsConfig::validate() const {
    if (m < 32) throw DomainError("MfsConfig: m must be at least 32");
    if (interior_count() * 10 < m) throw DomainError("MfsConfig: p must be at least m/10");
    if (!(offset_factor > 0.0 && offset_factor <= 2.0)) throw DomainError("MfsConfig: offset_factor must lie in (0, 2]");
    if (!(residual_tol > 0.0)) throw DomainError("MfsConfig: residual_tol must be positive");
    if (!(sigma_tol > 0.0)) throw DomainError("MfsConfig: sigma_tol must be positive");
    if (scan_step < 0.0) throw DomainError("MfsConfig: scan_step must be nonnegative");
}

bool lambda_admissible(double alpha, double lambda) {
    const double g = guard(alpha);
    return std::abs(lambda) >= g && lambda >= -0.25 * alpha * alpha + g;
}

FundamentalSolution::FundamentalSolution(double alpha, double lambda) : alpha_(alpha), lambda_(lambda) {
    if (!lambda_admissible(alpha, lambda))
        throw RegimeError("FundamentalSolution: lambda inside a guard band (lambda near 0 or -alpha^2/4)");
    const double s = std::sqrt(0.25 * alpha * alpha + lambda);
    ap_ = 0.5 * alpha + s;
    am_ = 0.5 * alpha - s;
    // Cancellation-free smaller root.
    if (alpha > 0) am_ = -lambda / ap_;
    else ap_ = -lambda / am_;
    inv_gap_ = 1.0 / (2.0 * s);
}

namespace {

Radial helmholtz(double mu, double r) {
    if (mu > 0) {
        const double k = std::sqrt(mu), x = k * r;
        const auto y = specfun::bessel_y01(x);
        return {-0.25 * y.order0, 0.25 * k * y.order1, 0.25 * k * k * (y.order0 - y.order1 / x)};
    }
    const double k = std::sqrt(-mu), x = k * r;
    const auto ks = specfun::bessel_k01_scaled(x);
    const double e = std::exp(-x) / kTwoPi;
    return {e * ks.order0, -e * k * ks.order1, e * k * k * (ks.order0 + ks.order1 / x)};
}

}  // namespace

Radial FundamentalSolution::part(int which, double r) const {
    Radial g = helmholtz(which == 0 ? ap_ : am_, r);
    const double f = which == 0 ? inv_gap_ : -inv_gap_;
    return {f * g.v, f * g.d1, f * g.d2};
}

Radial FundamentalSolution::operator()(double r) const {
    const Radial a = part(0, r), b = part(1, r);
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

double FundamentalSolution::laplacian(double r) const {
    return -ap_ * part(0, r).v - am_ * part(1, r).v;
}

MfsModel place_points(const FourierShape& shape, double alpha, const MfsConfig& config) {
    config.validate();
    shape.validate(std::max(1024, 4 * config.m));
    MfsModel model;
    model.shape = shape;
    model.alpha = alpha;
    const int m = config.m;

    // Arclength table on a fine grid, inverted by linear interpolation and Newton polish.
    const int nf = 32 * m;
    std::vector<double> cum(static_cast<std::size_t>(nf) + 1, 0.0);
    double prev = shape.derivative(0.0).norm();
    for (int i = 1; i <= nf; ++i) {
        const double sp = shape.derivative(kTwoPi * i / nf).norm();
        cum[static_cast<std::size_t>(i)] = cum[static_cast<std::size_t>(i - 1)] + 0.5 * (prev + sp) * kTwoPi / nf;
        prev = sp;
    }
    const double L = cum.back();
    for (int i = 0; i < m; ++i) {
        const double s = L * i / m;
        const auto it = std::upper_bound(cum.begin(), cum.end(), s);
        const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), cum.size() - 1);
        const double s0 = cum[k - 1], s1 = cum[k];
        double t = kTwoPi * ((k - 1) + (s1 > s0 ? (s - s0) / (s1 - s0) : 0.0)) / nf;
        const BoundaryPoint b = shape.boundary(t);
        model.collocation.push_back(b.point);
        model.normals.push_back(b.normal);
    }

    model.outline = shape.polygon(std::max(2048, 8 * m));
    const double diam_scale = std::sqrt(shape.area());
    double delta = config.offset_factor * L / 80.0;
    bool ok = false;
    for (int attempt = 0; attempt <= 6 && !ok; ++attempt) {
        model.sources.clear();
        ok = true;
        for (int j = 0; j < m; ++j) {
            const Vec2 y = model.collocation[j] + delta * model.normals[j];
            if (winding_number(model.outline, y) != 0 || polygon_distance(model.outline, y) < 0.5 * delta) {
                ok = false;
                break;
            }
            model.sources.push_back(y);
        }
        if (!ok) {
            model.warnings.push_back("source offset halved: a source fell inside or near the domain");
            delta *= 0.5;
        }
    }
    if (!ok) throw GeometryError("place_points: could not place sources outside the domain");
    model.offset = delta;

    std::mt19937_64 rng(config.rng_seed);
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : model.outline) {
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
        ymin = std::min(ymin, p.y());
        ymax = std::max(ymax, p.y());
    }
    std::uniform_real_distribution<double> ux(xmin, xmax), uy(ymin, ymax);
    const int p = config.interior_count();
    const double margin = 1e-3 * diam_scale;
    while (static_cast<int>(model.interior.size()) < p) {
        const double x = ux(rng), y = uy(rng);
        const Vec2 z(x, y);
        if (winding_number(model.outline, z) != 0 && polygon_distance(model.outline, z) > margin)
            model.interior.push_back(z);
    }
    return model;
}

Eigen::MatrixXd assemble(const MfsModel& model, double lambda) {
    const FundamentalSolution phi(model.alpha, lambda);
    const int m = model.m(), p = static_cast<int>(model.interior.size());
    Eigen::MatrixXd M(2 * m + p, 2 * m);
    auto fill = [&](int row, const Vec2& x, const Vec2* nx) {
        for (int j = 0; j < m; ++j) {
            const Vec2 d = x - model.sources[j];
            const double r = d.norm();
            const Vec2 dh = d / r;
            const Radial f = phi(r);
            const double nj = model.normals[j].dot(dh);
            M(row, j) = f.v;
            M(row, m + j) = f.d1 * nj;
            if (nx) {
                const double ni = nx->dot(dh);
                M(row + m, j) = f.d1 * ni;
                M(row + m, m + j) = f.d2 * ni * nj + f.d1 / r * (nx->dot(model.normals[j]) - ni * nj);
            }
        }
    };
    for (int i = 0; i < m; ++i) fill(i, model.collocation[i], &model.normals[i]);
    for (int i = 0; i < p; ++i) fill(2 * m + i, model.interior[i], nullptr);
    return M;
}

namespace {

struct Factorization {
    Eigen::VectorXd colnorm;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
    Eigen::Index rank = 0;
    Eigen::Index boundary_rows = 0;
    Eigen::MatrixXd q2t;  // rank x p: interior rows of the orthonormal factor, transposed
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
};

// Columns of the orthonormal factor beyond the numerical rank carry no information.
constexpr double kRankTol = 1e-14;

Factorization factor(const MfsModel& model, double lambda) {
    Factorization f;
    Eigen::MatrixXd M = assemble(model, lambda);
    const Eigen::Index n = M.cols(), rows = M.rows(), p = rows - n;
    f.boundary_rows = n;
    f.colnorm = M.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < n; ++j) M.col(j) /= f.colnorm[j];
    f.qr.setThreshold(kRankTol);
    f.qr.compute(M);
    f.rank = f.qr.rank();
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(rows, p);
    E.bottomRows(p).setIdentity();
    const Eigen::MatrixXd T = f.qr.householderQ().adjoint() * E;
    f.q2t = T.topRows(f.rank);
    // Q1^T Q1 = I - Q2^T Q2, so the smallest singular directions of Q1 are the top
    // eigenvectors of Q2^T Q2, found from the small p x p problem.
    f.eig.compute(f.q2t.transpose() * f.q2t);
    return f;
}

// Right singular vector of Q1 (length rank) belonging to the i-th largest eigenvalue of Q2 Q2^T.
Eigen::VectorXd direction(const Factorization& f, Eigen::Index i) {
    const Eigen::Index p = f.eig.eigenvalues().size();
    Eigen::VectorXd v = f.q2t * f.eig.eigenvectors().col(p - 1 - i);
    return v / v.norm();
}

// |Q1 v| evaluated directly: 1 - |Q2 v|^2 would lose everything below 1e-8.
double boundary_norm(const Factorization& f, const Eigen::VectorXd& v) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(f.qr.rows());
    y.head(f.rank) = v;
    y = f.qr.householderQ() * y;
    return y.head(f.boundary_rows).norm();
}

SigmaValues sigmas_of(const Factorization& f) {
    const Eigen::Index p = f.eig.eigenvalues().size();
    SigmaValues s;
    s.sigma1 = boundary_norm(f, direction(f, 0));
    s.sigma2 = p >= 2 ? boundary_norm(f, direction(f, 1)) : 1.0;
    s.rank_deficient = f.rank < f.boundary_rows;
    return s;
}

}  // namespace

SigmaValues sigma_values(const MfsModel& model, double lambda) { return sigmas_of(factor(model, lambda)); }

double sigma1(const MfsModel& model, double lambda) {
    const Factorization f = factor(model, lambda);
    return boundary_norm(f, direction(f, 0));
}

EigenLocation eigenfunction_at(const MfsModel& model, double lambda) {
    const Factorization f = factor(model, lambda);
    const auto s = sigmas_of(f);
    const Eigen::VectorXd v = direction(f, 0);
    const Eigen::Index r = f.rank, n = f.boundary_rows;
    Eigen::VectorXd cp = Eigen::VectorXd::Zero(n);
    cp.head(r) = f.qr.matrixQR().topLeftCorner(r, r).triangularView<Eigen::Upper>().solve(v);
    Eigen::VectorXd c = f.qr.colsPermutation() * cp;
    c = c.cwiseQuotient(f.colnorm);
    c.normalize();
    EigenLocation loc;
    loc.lambda = lambda;
    loc.sigma1 = s.sigma1;
    loc.sigma2 = s.sigma2;
    loc.bracket = {lambda, lambda};
    loc.coefficients = c;
    return loc;
}

EigenLocation refine_minimum(const MfsModel& model, double lo, double hi) {
    auto f2 = [&](double l) {
        const double s = sigma1(model, l);
        return s * s;
    };
    const double x0 = 0.5 * (lo + hi);
    const auto mn = numerics::brent_minimize(f2, lo, hi, x0, f2(x0), 1e-9 * std::max(1.0, std::abs(x0)));
    EigenLocation loc = eigenfunction_at(model, mn.x);
    loc.bracket = {lo, hi};
    return loc;
}

std::vector<EigenLocation> locate_eigenvalues(const MfsModel& model, double lo, double hi,
                                              const MfsConfig& config) {
    std::vector<EigenLocation> out;
    if (!(lo < hi)) return out;
    // Twice the guard so rounding at the piece ends stays admissible.
    const double g = 2.0 * guard(model.alpha);
    std::vector<std::pair<double, double>> pieces;
    const double floor_l = -0.25 * model.alpha * model.alpha + g;
    lo = std::max(lo, floor_l);
    if (lo < -g && hi > g) {
        pieces.push_back({lo, -g});
        pieces.push_back({g, hi});
    } else if (hi <= -g || lo >= g) {
        pieces.push_back({lo, hi});
    } else if (hi > g) {
        pieces.push_back({g, hi});
    } else if (lo < -g) {
        pieces.push_back({lo, -g});
    }
    for (const auto& [a, b] : pieces) {
        if (!(a < b)) continue;
        const double step = config.scan_step > 0 ? config.scan_step : (b - a) / 200.0;
        const int n = std::max(3, static_cast<int>(std::ceil((b - a) / step)) + 1);
        std::vector<double> ls(static_cast<std::size_t>(n)), ss(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            ls[i] = a + (b - a) * i / (n - 1);
            ss[i] = sigma1(model, ls[i]);
        }
        std::vector<std::pair<double, double>> brackets;
        for (int i = 1; i + 1 < n; ++i) {
            if (!(ss[i] <= ss[i - 1] && ss[i] < ss[i + 1])) continue;
            if (ss[i] > 10.0 * config.sigma_tol) continue;
            brackets.push_back({ls[i - 1], ls[i + 1]});
            // A small second singular value means another eigenvalue close by, possibly
            // inside the same grid cell; resolve the neighbourhood on a finer grid.
            const auto at = sigma_values(model, ls[i]);
            if (at.sigma2 > 0.25) continue;
            const double fa = ls[std::max(0, i - 2)], fb = ls[std::min(n - 1, i + 2)];
            const int fn = 8 * (std::min(n - 1, i + 2) - std::max(0, i - 2)) + 1;
            std::vector<double> fl(static_cast<std::size_t>(fn)), fs(static_cast<std::size_t>(fn));
            for (int j = 0; j < fn; ++j) {
                fl[j] = fa + (fb - fa) * j / (fn - 1);
                fs[j] = sigma1(model, fl[j]);
            }
            for (int j = 1; j + 1 < fn; ++j)
                if (fs[j] <= fs[j - 1] && fs[j] < fs[j + 1] && fs[j] <= 10.0 * config.sigma_tol)
                    brackets.push_back({fl[j - 1], fl[j + 1]});
        }
        for (const auto& [ba, bb] : brackets) {
            EigenLocation loc = refine_minimum(model, ba, bb);
            if (loc.sigma1 > config.sigma_tol) continue;
            const double tol = 1e-6 * std::max(1.0, std::abs(loc.lambda));
            const bool seen = std::any_of(out.begin(), out.end(),
                                          [&](const EigenLocation& e) { return std::abs(e.lambda - loc.lambda) < tol; });
            if (seen) continue;
            // Spurious valleys (basis failure rather than an eigenvalue) leave the boundary unsatisfied.
            if (!(boundary_residual(model, loc) <= config.residual_tol)) continue;
            loc.multiplicity = loc.sigma2 <= config.sigma_tol ? 2 : 1;
            out.push_back(std::move(loc));
        }
    }
    std::sort(out.begin(), out.end(), [](const EigenLocation& x, const EigenLocation& y) { return x.lambda < y.lambda; });
    return out;
}

std::vector<FieldValue> evaluate(const MfsModel& model, const EigenLocation& loc, const std::vector<Vec2>& points,
                                 bool check_inside) {
    const FundamentalSolution phi(model.alpha, loc.lambda);
    const int m = model.m();
    if (loc.coefficients.size() != 2 * m) throw DomainError("evaluate: coefficient vector size mismatch");
    const double tol = 1e-4 * std::sqrt(model.shape.area());
    std::vector<FieldValue> out;
    out.reserve(points.size());
    for (const auto& z : points) {
        if (check_inside && winding_number(model.outline, z) == 0 && polygon_distance(model.outline, z) > tol)
            throw GeometryError("evaluate: point outside the domain");
        double u[2] = {0.0, 0.0};
        Vec2 g[2] = {Vec2::Zero(), Vec2::Zero()};
        for (int j = 0; j < m; ++j) {
            const Vec2 d = z - model.sources[j];
            const double r = d.norm();
            const Vec2 dh = d / r;
            const Vec2& nj = model.normals[j];
            const double a = loc.coefficients[j], b = loc.coefficients[m + j];
            const double ndh = nj.dot(dh);
            for (int w = 0; w < 2; ++w) {
                const Radial f = phi.part(w, r);
                u[w] += a * f.v + b * f.d1 * ndh;
                g[w] += a * f.d1 * dh + b * (f.d2 * ndh * dh + f.d1 / r * (nj - ndh * dh));
            }
        }
        FieldValue v;
        v.u_plus = u[0];
        v.u_minus = u[1];
        v.grad_plus = g[0];
        v.grad_minus = g[1];
        v.u = u[0] + u[1];
        v.grad = g[0] + g[1];
        v.lap = -phi.alpha_plus() * u[0] - phi.alpha_minus() * u[1];
        out.push_back(v);
    }
    return out;
}

Integrals boundary_integrals(const MfsModel& model, const EigenLocation& loc, int n) {
    if (n <= 0) n = std::max(4 * model.m(), 8 * model.shape.order() + 16);
    const FundamentalSolution phi(model.alpha, loc.lambda);
    const double ap = phi.alpha_plus(), am = phi.alpha_minus();
    const Vec2 c = model.shape.centroid();
    std::vector<Vec2> pts;
    std::vector<BoundaryPoint> bp;
    for (int k = 0; k < n; ++k) {
        bp.push_back(model.shape.boundary(kTwoPi * k / n));
        pts.push_back(bp.back().point);
    }
    const auto vals = evaluate(model, loc, pts, false);
    double ip = 0.0, im = 0.0, cross_term = 0.0, bnd = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto& v = vals[k];
        const Vec2 x = bp[k].point - c;
        const Vec2& nu = bp[k].normal;
        const double ds = bp[k].speed * kTwoPi / n;
        const double xn = x.dot(nu);
        // Rellich: mu int w^2 = oint (x.grad w) dw/dnu - |grad w|^2 (x.nu)/2 + mu w^2 (x.nu)/2.
        auto rellich = [&](double w, const Vec2& gw, double mu) {
            return (x.dot(gw) * gw.dot(nu) - 0.5 * gw.squaredNorm() * xn + 0.5 * mu * w * w * xn) / mu;
        };
        ip += rellich(v.u_plus, v.grad_plus, ap) * ds;
        im += rellich(v.u_minus, v.grad_minus, am) * ds;
        cross_term += (v.u_plus * v.grad_minus.dot(nu) - v.u_minus * v.grad_plus.dot(nu)) * ds;
        bnd += v.u * v.grad.dot(nu) * ds;
    }
    cross_term /= (ap - am);
    Integrals r;
    r.u2 = ip + im + 2.0 * cross_term;
    r.grad2 = bnd + ap * ip + am * im + (ap + am) * cross_term;
    r.lap2 = ap * ap * ip + am * am * im + 2.0 * ap * am * cross_term;
    return r;
}

Integrals quadrature_integrals(const MfsModel& model, const EigenLocation& loc, int samples) {
    if (samples <= 0) samples = std::max(256, 8 * model.shape.order() + 16);
    const auto nodes = domain_quadrature(model.shape, samples);
    std::vector<Vec2> pts;
    pts.reserve(nodes.size());
    for (const auto& q : nodes) pts.push_back(q.x);
    const auto vals = evaluate(model, loc, pts, false);
    Integrals r{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        r.u2 += nodes[i].w * vals[i].u * vals[i].u;
        r.grad2 += nodes[i].w * vals[i].grad.squaredNorm();
        r.lap2 += nodes[i].w * vals[i].lap * vals[i].lap;
    }
    return r;
}

double boundary_residual(const MfsModel& model, const EigenLocation& loc, int n) {
    if (n <= 0) n = 3 * model.m() + 1;
    std::vector<Vec2> pts;
    std::vector<Vec2> normals;
    for (int k = 0; k < n; ++k) {
        const auto b = model.shape.boundary(kTwoPi * (k + 0.5) / n);
        pts.push_back(b.point);
        normals.push_back(b.normal);
    }
    const auto vb = evaluate(model, loc, pts, false);
    const auto vi = evaluate(model, loc, model.interior, false);
    double bmax = 0.0, imax = 0.0;
    for (int k = 0; k < n; ++k) bmax = std::max(bmax, std::abs(vb[k].u) + std::abs(vb[k].grad.dot(normals[k])));
    for (const auto& v : vi) imax = std::max(imax, std::abs(v.u));
    return bmax / imax;
}

}  // namespace plateig::mfs
