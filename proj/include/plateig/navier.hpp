#pragma once

// The Navier (hinged) companion problem: u = Delta u = 0 on the boundary.  Its
// spectrum is {gamma^2 - alpha gamma} over the Dirichlet-Laplacian eigenvalues gamma.

#include <string>
#include <utility>
#include <vector>

namespace plateig::navier {

struct DirichletSpectrum {
    std::vector<double> gammas;  // ascending, with multiplicity
    std::string domain_label;
    double area = 0.0;
    int N = 2;

    /// Throws DomainError when gammas is empty, non-positive or unsorted.
    void validate() const;
};

/// The `count` smallest Dirichlet eigenvalues j_{k,m}^2/R^2 of the disk of radius R,
/// degree k >= 1 listed twice (count <= 500).
DirichletSpectrum dirichlet_disk_spectrum(double R, int count);

/// The `count` smallest gamma^2 - alpha gamma.  Throws InsufficientSpectrum unless
/// the largest gamma lies past the vertex alpha/2 and maps above every returned value.
std::vector<double> navier_spectrum(const DirichletSpectrum& spec, double alpha, int count);

struct NavierCurvePoint {
    double alpha;
    double lambda1;
    int active_k;  // 1-based index into gammas of the minimizer (smallest on ties)
};

/// lambda_1 on `samples` equally spaced alphas of [alpha_lo, alpha_hi].
std::vector<NavierCurvePoint> navier_lambda1_curve(const DirichletSpectrum& spec, double alpha_lo, double alpha_hi,
                                                   int samples);

/// Breakpoints gamma_k + gamma_{k+1} (distinct consecutive values) inside [alpha_lo, alpha_hi].
std::vector<double> navier_breakpoints(const DirichletSpectrum& spec, double alpha_lo, double alpha_hi);

/// (gamma_{k+1} - gamma_k)^2 / (gamma_{k+1} + gamma_k), k 1-based.
double weyl_gap_ratio(const DirichletSpectrum& spec, int k);

/// Running Cesaro means of weyl_gap_ratio for k = 1..kmax.
std::vector<double> weyl_gap_cesaro(const DirichletSpectrum& spec, int kmax);

}  // namespace plateig::navier
