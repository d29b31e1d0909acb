#include "plateig/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "plateig/errors.hpp"

namespace plateig {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool inside_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    return cross(b - a, p - a) >= 0 && cross(c - b, p - b) >= 0 && cross(a - c, p - c) >= 0;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[static_cast<std::size_t>(i)] = -z;
        x[static_cast<std::size_t>(n - 1 - i)] = z;
        w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& poly) {
    std::vector<int> idx(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) idx[i] = static_cast<int>(i);
    std::vector<std::array<int, 3>> tris;
    while (idx.size() > 3) {
        const std::size_t n = idx.size();
        // Prefer the ear with the largest minimum angle proxy to avoid slivers.
        double best_quality = -1.0;
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = poly[idx[(i + n - 1) % n]];
            const Vec2& b = poly[idx[i]];
            const Vec2& c = poly[idx[(i + 1) % n]];
            const double area2 = cross(b - a, c - b);
            if (area2 <= 0) continue;
            bool ear = true;
            for (std::size_t j = 0; j < n && ear; ++j) {
                if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
                const Vec2& p = poly[idx[j]];
                if (p == a || p == b || p == c) continue;
                if (inside_triangle(p, a, b, c)) ear = false;
            }
            if (!ear) continue;
            const double e = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
            const double q = area2 / e;
            if (q > best_quality) {
                best_quality = q;
                best = i;
            }
        }
        if (best == n) throw GeometryError("ear_clip: polygon is not simple");
        tris.push_back({idx[(best + n - 1) % n], idx[best], idx[(best + 1) % n]});
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(best));
    }
    tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

std::vector<QuadNode> domain_quadrature(const FourierShape& shape, int samples, int n, double h_max) {
    if (samples < 8) throw DomainError("domain_quadrature: need at least 8 boundary samples");
    const auto poly = shape.polygon(samples);
    if (h_max <= 0.0) h_max = 0.25 * std::sqrt(std::abs(shape.signed_area()));
    std::vector<double> gx, gw;
    gauss_legendre(n, gx, gw);
    std::vector<QuadNode> out;

    // Collapsed (Duffy) product rule on the reference triangle.
    auto add_triangle = [&](const Vec2& a, const Vec2& b, const Vec2& c) {
        const double jac = cross(b - a, c - a);  // twice the signed area
        for (int i = 0; i < n; ++i) {
            const double s = 0.5 * (gx[i] + 1.0);
            for (int j = 0; j < n; ++j) {
                const double t = 0.5 * (gx[j] + 1.0);
                const double u = s, v = (1.0 - s) * t;
                const double w = 0.25 * gw[i] * gw[j] * (1.0 - s) * jac;
                out.push_back({a + u * (b - a) + v * (c - a), w});
            }
        }
    };
    for (const auto& tri : ear_clip(poly)) {
        const Vec2 &a = poly[tri[0]], &b = poly[tri[1]], &c = poly[tri[2]];
        const double longest = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
        const int k = std::max(1, static_cast<int>(std::ceil(longest / h_max)));
        const Vec2 e1 = (b - a) / k, e2 = (c - a) / k;
        for (int i = 0; i < k; ++i)
            for (int j = 0; i + j < k; ++j) {
                const Vec2 p = a + i * e1 + j * e2;
                add_triangle(p, p + e1, p + e2);
                if (i + j + 1 < k) add_triangle(p + e1, p + e1 + e2, p + e2);
            }
    }

    // Slivers: (s, tau) -> (1 - tau) chord(s) + tau gamma(t(s)).
    constexpr int ns = 6, nt = 4;
    std::vector<double> sx, sw, tx, tw;
    gauss_legendre(ns, sx, sw);
    gauss_legendre(nt, tx, tw);
    const double dt = 2.0 * std::numbers::pi / samples;
    for (int k = 0; k < samples; ++k) {
        const Vec2& p0 = poly[static_cast<std::size_t>(k)];
        const Vec2& p1 = poly[static_cast<std::size_t>((k + 1) % samples)];
        for (int i = 0; i < ns; ++i) {
            const double s = 0.5 * (sx[i] + 1.0);
            const double t = dt * (k + s);
            const Vec2 g = shape.point(t), gd = shape.derivative(t) * dt;
            const Vec2 ch = (1.0 - s) * p0 + s * p1;
            const Vec2 dtau = g - ch;
            for (int j = 0; j < nt; ++j) {
                const double tau = 0.5 * (tx[j] + 1.0);
                const Vec2 ds = (1.0 - tau) * (p1 - p0) + tau * gd;
                const double w = -0.25 * sw[i] * tw[j] * cross(ds, dtau);
                out.push_back({(1.0 - tau) * ch + tau * g, w});
            }
        }
    }
    return out;
}

}  // namespace plateig
