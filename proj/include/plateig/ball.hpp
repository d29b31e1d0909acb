#pragma once

// Clamped-plate spectra on balls B_R in R^N for
//   Delta^2 u + alpha Delta u = lambda u,   u = du/dnu = 0 on the boundary.
//
// The operator factors as (Delta + alpha_+)(Delta + alpha_-) with
// alpha_+ + alpha_- = alpha and alpha_+ alpha_- = -lambda, so each spherical
// degree k contributes the roots of a 2x2 determinant built from J_nu, I_nu
// (lambda > 0), two J_nu (lambda < 0) or J_nu and r^k (lambda = 0), with
// nu = k + N/2 - 1.  Scans run in p = alpha_+, for which
//   lambda = p (p - alpha)  and  lambda + alpha^2/4 = (p - alpha/2)^2.

#include <optional>
#include <string>
#include <vector>

#include "plateig/radial.hpp"

namespace plateig::ball {

struct BallProblem {
    double R = 1.0;
    int N = 2;
    double alpha = 0.0;

    /// Throws DomainError unless R > 0 and N >= 2.
    void validate() const;
};

struct SplitPair {
    double alpha_plus;
    double alpha_minus;
};

enum class Regime { positive, negative, zero };

const char* regime_name(Regime r);

struct BallEigenvalue {
    double lambda;
    double shifted;  // lambda + alpha^2/4, computed without cancellation
    int k;           // lowest spherical degree carrying this value
    int multiplicity;
    Regime regime;
    double residual;           // |normalized determinant| at the root
    std::vector<int> degrees;  // all degrees merged into this value
};

struct BallSpectrum {
    std::vector<BallEigenvalue> eigenvalues;
    int k_scanned = 0;
    std::vector<std::string> warnings;
};

struct BallScanOptions {
    /// Fixed upper degree.  By default degrees are scanned up to
    /// 1 + ceil(R sqrt(alpha_+)) for the largest alpha_+ in range, past which
    /// no root can exist.
    std::optional<int> k_max;
};

/// alpha_{+-} = alpha/2 +- sqrt(alpha^2/4 + lambda).
SplitPair split(double alpha, double lambda);

/// Dimension of the degree-k spherical harmonics in R^N.
int harmonic_dimension(int k, int N);

/// Guard width around the double root lambda = -alpha^2/4.
double discriminant_guard(double alpha);

/// Normalized determinant of the degree-k boundary system at lambda, in [-1, 1].
/// Continuous in lambda across 0 (where it reduces to J_{k+N/2}(R sqrt(alpha)) / M).
double clamped_det(const BallProblem& problem, int k, double lambda);

/// Same determinant as a function of p = alpha_+ (p > alpha/2).
double clamped_det_p(const BallProblem& problem, int k, double p);

/// The `count` smallest distinct eigenvalues (count <= 200), ascending.
BallSpectrum clamped_eigs(const BallProblem& problem, int count, const BallScanOptions& opts = {});

/// All degree-k eigenvalues with lambda <= lambda_max, ascending.
std::vector<BallEigenvalue> clamped_eigs_degree(const BallProblem& problem, int k, double lambda_max);

struct BucklingEigenvalue {
    double Lambda;
    int k;
    int multiplicity;
};

/// Buckling eigenvalues j_{k+N/2,m}^2 / R^2 (count <= 100), ascending.
std::vector<BucklingEigenvalue> buckling_eigs(double R, int N, int count);

/// Radial factor of the eigenfunction, normalized to max |profile| = 1 and
/// positive at its maximum.  Throws NotAnEigenvalue when the boundary system
/// has no kernel at lambda.
RadialFunction radial_profile(const BallProblem& problem, int k, double lambda);

}  // namespace plateig::ball
