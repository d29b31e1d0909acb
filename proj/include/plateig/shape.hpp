#pragma once

// Fourier-parameterized closed curves
//   gamma_1(t) = sum_j a1_j cos(jt) + b1_j sin(jt),  gamma_2 likewise,  t in [0, 2 pi).

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace plateig {

using Vec2 = Eigen::Vector2d;

struct BoundaryPoint {
    Vec2 point;
    Vec2 tangent;  // unit
    Vec2 normal;   // unit, outward
    double speed;  // |gamma'(t)|
};

class FourierShape {
public:
    static constexpr int kMaxOrder = 64;

    FourierShape() = default;
    /// Zero coefficients of order P.
    explicit FourierShape(int P);

    static FourierShape circle(double R, Vec2 center = Vec2::Zero());
    /// Axis-aligned ellipse with semi-axes a (first axis) and b.
    static FourierShape ellipse(double a, double b);
    /// Circle of radius R with gamma(t) scaled radially by 1 + amp cos(mode t).
    static FourierShape perturbed_circle(double R, int mode, double amp, int P);

    int order() const { return P_; }
    /// Raises the order, padding with zeros.
    FourierShape with_order(int P) const;

    // Coefficients; b*[0] is unused and kept at zero.
    std::vector<double> a1, b1, a2, b2;

    Vec2 point(double t) const;
    Vec2 derivative(double t) const;
    Vec2 second_derivative(double t) const;
    BoundaryPoint boundary(double t) const;

    /// Signed area from the exact trapezoid rule on 4P + 4 points.
    double signed_area() const;
    /// Positive area; throws GeometryError if the curve is negatively oriented.
    double area() const;
    Vec2 centroid() const;
    double perimeter(int samples = 0) const;

    /// Scaled about the centroid to unit area.
    FourierShape rescale_to_unit_area() const;
    FourierShape translated(Vec2 shift) const;
    FourierShape rotated(double angle) const;
    FourierShape scaled(double factor) const;

    /// Finite coefficients, P <= 64, speed > 1e-8 on 4096 points, positive area and
    /// no self-intersection on `samples` points.  Throws GeometryError.
    void validate(int samples = 1024) const;

    /// Closed polygon on n equally spaced parameter values (first point not repeated).
    std::vector<Vec2> polygon(int n) const;

    /// Flat coefficient vector [a1_0..a1_P, b1_1..b1_P, a2_0..a2_P, b2_1..b2_P].
    Eigen::VectorXd coefficients() const;
    void set_coefficients(const Eigen::VectorXd& c);
    int coefficient_count() const { return 4 * P_ + 2; }
    /// Human-readable name of coefficient i, e.g. "a1[2]".
    std::string coefficient_name(int i) const;
    /// Frequency j of coefficient i.
    int coefficient_frequency(int i) const;
    /// Deformation field of coefficient i at parameter t.
    Vec2 coefficient_field(int i, double t) const;

private:
    int P_ = 0;
};

/// Winding number of the closed polygon around q (0 outside, +-1 inside).
int winding_number(const std::vector<Vec2>& polygon, const Vec2& q);

/// Euclidean distance from q to the closed polygon's edges.
double polygon_distance(const std::vector<Vec2>& polygon, const Vec2& q);

/// True when two non-adjacent edges of the closed polygon intersect.
bool polygon_self_intersects(const std::vector<Vec2>& polygon);

}  // namespace plateig
