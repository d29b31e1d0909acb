#include "plateig/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "plateig/errors.hpp"

namespace plateig {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

FourierShape::FourierShape(int P) : a1(P + 1, 0.0), b1(P + 1, 0.0), a2(P + 1, 0.0), b2(P + 1, 0.0), P_(P) {
    if (P < 1 || P > kMaxOrder) throw DomainError("FourierShape: order must be in [1, 64]");
}

FourierShape FourierShape::circle(double R, Vec2 center) {
    FourierShape s(1);
    s.a1[0] = center.x();
    s.a2[0] = center.y();
    s.a1[1] = R;
    s.b2[1] = R;
    return s;
}

FourierShape FourierShape::ellipse(double a, double b) {
    FourierShape s(1);
    s.a1[1] = a;
    s.b2[1] = b;
    return s;
}

FourierShape FourierShape::perturbed_circle(double R, int mode, double amp, int P) {
    if (mode + 1 > P) throw DomainError("perturbed_circle: order too small for the mode");
    // (1 + amp cos(mt)) (cos t, sin t) expanded with product-to-sum.
    FourierShape s(P);
    s.a1[1] = R;
    s.b2[1] = R;
    const double h = 0.5 * amp * R;
    if (mode == 0) {
        s.a1[1] += 2 * h;
        s.b2[1] += 2 * h;
        return s;
    }
    // cos(mt) cos t = (cos((m+1)t) + cos((m-1)t)) / 2, cos(mt) sin t = (sin((m+1)t) - sin((m-1)t)) / 2.
    s.a1[static_cast<std::size_t>(mode + 1)] += h;
    s.b2[static_cast<std::size_t>(mode + 1)] += h;
    if (mode == 1) {
        s.a1[0] += h;
    } else {
        s.a1[static_cast<std::size_t>(mode - 1)] += h;
        s.b2[static_cast<std::size_t>(mode - 1)] -= h;
    }
    return s;
}

FourierShape FourierShape::with_order(int P) const {
    if (P < P_) throw DomainError("with_order: cannot lower the order");
    FourierShape s(P);
    for (int j = 0; j <= P_; ++j) {
        s.a1[j] = a1[j];
        s.b1[j] = b1[j];
        s.a2[j] = a2[j];
        s.b2[j] = b2[j];
    }
    return s;
}

Vec2 FourierShape::point(double t) const {
    double x = a1[0], y = a2[0];
    for (int j = 1; j <= P_; ++j) {
        const double c = std::cos(j * t), s = std::sin(j * t);
        x += a1[j] * c + b1[j] * s;
        y += a2[j] * c + b2[j] * s;
    }
    return {x, y};
}

Vec2 FourierShape::derivative(double t) const {
    double x = 0, y = 0;
    for (int j = 1; j <= P_; ++j) {
        const double c = std::cos(j * t), s = std::sin(j * t);
        x += j * (b1[j] * c - a1[j] * s);
        y += j * (b2[j] * c - a2[j] * s);
    }
    return {x, y};
}

Vec2 FourierShape::second_derivative(double t) const {
    double x = 0, y = 0;
    for (int j = 1; j <= P_; ++j) {
        const double c = std::cos(j * t), s = std::sin(j * t);
        x -= j * j * (a1[j] * c + b1[j] * s);
        y -= j * j * (a2[j] * c + b2[j] * s);
    }
    return {x, y};
}

BoundaryPoint FourierShape::boundary(double t) const {
    const Vec2 d = derivative(t);
    const double speed = d.norm();
    if (!(speed > 1e-8)) throw GeometryError("FourierShape: degenerate parameterization");
    const Vec2 tan = d / speed;
    return {point(t), tan, Vec2(tan.y(), -tan.x()), speed};
}

double FourierShape::signed_area() const {
    const int n = 4 * P_ + 4;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        s += point(t).x() * derivative(t).y();
    }
    return s * kTwoPi / n;
}

double FourierShape::area() const {
    const double a = signed_area();
    if (!(a > 0.0)) throw GeometryError("FourierShape: nonpositive area (reverse the orientation)");
    return a;
}

Vec2 FourierShape::centroid() const {
    // int x dA = 1/2 oint x^2 dy, int y dA = -1/2 oint y^2 dx; cubic trigonometric integrands.
    const int n = 4 * P_ + 4;
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        const Vec2 p = point(t), d = derivative(t);
        sx += 0.5 * p.x() * p.x() * d.y();
        sy -= 0.5 * p.y() * p.y() * d.x();
    }
    const double a = signed_area();
    return Vec2(sx, sy) * (kTwoPi / n) / a;
}

double FourierShape::perimeter(int samples) const {
    const int n = samples > 0 ? samples : std::max(512, 32 * P_);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += derivative(kTwoPi * i / n).norm();
    return s * kTwoPi / n;
}

FourierShape FourierShape::scaled(double factor) const {
    FourierShape s = *this;
    for (int j = 0; j <= P_; ++j) {
        s.a1[j] *= factor;
        s.b1[j] *= factor;
        s.a2[j] *= factor;
        s.b2[j] *= factor;
    }
    return s;
}

FourierShape FourierShape::translated(Vec2 shift) const {
    FourierShape s = *this;
    s.a1[0] += shift.x();
    s.a2[0] += shift.y();
    return s;
}

FourierShape FourierShape::rotated(double angle) const {
    const double c = std::cos(angle), sn = std::sin(angle);
    FourierShape s = *this;
    for (int j = 0; j <= P_; ++j) {
        s.a1[j] = c * a1[j] - sn * a2[j];
        s.a2[j] = sn * a1[j] + c * a2[j];
        s.b1[j] = c * b1[j] - sn * b2[j];
        s.b2[j] = sn * b1[j] + c * b2[j];
    }
    return s;
}

FourierShape FourierShape::rescale_to_unit_area() const {
    const Vec2 c = centroid();
    const double f = 1.0 / std::sqrt(area());
    return translated(-c).scaled(f).translated(c);
}

void FourierShape::validate(int samples) const {
    if (P_ < 1 || P_ > kMaxOrder) throw GeometryError("FourierShape: order must be in [1, 64]");
    for (const auto* v : {&a1, &b1, &a2, &b2}) {
        if (static_cast<int>(v->size()) != P_ + 1) throw GeometryError("FourierShape: coefficient size mismatch");
        for (double x : *v)
            if (!std::isfinite(x)) throw GeometryError("FourierShape: non-finite coefficient");
    }
    for (int i = 0; i < 4096; ++i)
        if (!(derivative(kTwoPi * i / 4096).norm() > 1e-8))
            throw GeometryError("FourierShape: degenerate parameterization");
    area();
    if (polygon_self_intersects(polygon(samples))) throw GeometryError("FourierShape: self-intersecting boundary");
}

std::vector<Vec2> FourierShape::polygon(int n) const {
    std::vector<Vec2> p;
    p.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.push_back(point(kTwoPi * i / n));
    return p;
}

Eigen::VectorXd FourierShape::coefficients() const {
    Eigen::VectorXd c(coefficient_count());
    int k = 0;
    for (int j = 0; j <= P_; ++j) c[k++] = a1[j];
    for (int j = 1; j <= P_; ++j) c[k++] = b1[j];
    for (int j = 0; j <= P_; ++j) c[k++] = a2[j];
    for (int j = 1; j <= P_; ++j) c[k++] = b2[j];
    return c;
}

void FourierShape::set_coefficients(const Eigen::VectorXd& c) {
    if (c.size() != coefficient_count()) throw DomainError("set_coefficients: size mismatch");
    int k = 0;
    for (int j = 0; j <= P_; ++j) a1[j] = c[k++];
    for (int j = 1; j <= P_; ++j) b1[j] = c[k++];
    for (int j = 0; j <= P_; ++j) a2[j] = c[k++];
    for (int j = 1; j <= P_; ++j) b2[j] = c[k++];
}

namespace {

struct CoefficientRef {
    int comp;  // 0: x, 1: y
    bool sine;
    int j;
};

CoefficientRef locate(int i, int P) {
    const int block = 2 * P + 1;
    const int comp = i / block;
    const int r = i % block;
    if (r <= P) return {comp, false, r};
    return {comp, true, r - P};
}

}  // namespace

std::string FourierShape::coefficient_name(int i) const {
    const auto c = locate(i, P_);
    return std::string(c.sine ? "b" : "a") + (c.comp == 0 ? "1" : "2") + "[" + std::to_string(c.j) + "]";
}

int FourierShape::coefficient_frequency(int i) const {
    if (i < 0 || i >= coefficient_count()) throw DomainError("coefficient_frequency: index out of range");
    return locate(i, P_).j;
}

Vec2 FourierShape::coefficient_field(int i, double t) const {
    if (i < 0 || i >= coefficient_count()) throw DomainError("coefficient_field: index out of range");
    const auto c = locate(i, P_);
    const double v = c.sine ? std::sin(c.j * t) : std::cos(c.j * t);
    return c.comp == 0 ? Vec2(v, 0.0) : Vec2(0.0, v);
}

int winding_number(const std::vector<Vec2>& poly, const Vec2& q) {
    int w = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        if (a.y() <= q.y()) {
            if (b.y() > q.y() && cross(b - a, q - a) > 0) ++w;
        } else if (b.y() <= q.y() && cross(b - a, q - a) < 0) {
            --w;
        }
    }
    return w;
}

double polygon_distance(const std::vector<Vec2>& poly, const Vec2& q) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2 e = poly[(i + 1) % n] - a;
        const double s = std::clamp((q - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
        best = std::min(best, (a + s * e - q).norm());
    }
    return best;
}

bool polygon_self_intersects(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    auto segs_cross = [](const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
        const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
        const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
        return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
    };
    // Bounding-box sweep keeps this near-linear for well-separated edges.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    auto lo = [&](std::size_t i) { return std::min(poly[i].x(), poly[(i + 1) % n].x()); };
    auto hi = [&](std::size_t i) { return std::max(poly[i].x(), poly[(i + 1) % n].x()); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo(a) < lo(b); });
    for (std::size_t ai = 0; ai < n; ++ai) {
        const std::size_t i = order[ai];
        for (std::size_t bi = ai + 1; bi < n && lo(order[bi]) <= hi(i); ++bi) {
            const std::size_t j = order[bi];
            if (j == (i + 1) % n || i == (j + 1) % n) continue;
            if (segs_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return true;
        }
    }
    return false;
}

}  // namespace plateig
