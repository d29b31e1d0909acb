#pragma once

// Quadrature on Fourier domains: ear-clipped polygon triangles plus the curved
// slivers between each polygon edge and its boundary arc.

#include <array>
#include <vector>

#include "plateig/shape.hpp"

namespace plateig {

struct QuadNode {
    Vec2 x;
    double w;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Triangulation of a simple counter-clockwise polygon by ear clipping.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& polygon);

/// Nodes for int_Omega f dA.  boundary_samples polygon vertices; triangles larger than
/// h_max are split uniformly before a collapsed n x n Gauss rule is applied.
std::vector<QuadNode> domain_quadrature(const FourierShape& shape, int boundary_samples, int n = 8,
                                        double h_max = 0.0);

}  // namespace plateig
