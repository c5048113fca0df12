#pragma once

#include <cstddef>
#include <vector>

namespace kinlab {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Legendre polynomials P_0..P_nmax at x by the three-term recurrence.
void legendre_all(double x, int nmax, double* out);

/// Spherical Bessel j_0..j_nmax at x >= 0. Downward (Miller) recurrence with
/// sum normalization, stable for n well beyond x.
void sph_bessel_all(double x, int nmax, double* out);

/// Trapezoid rule over an ordered abscissa.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace kinlab
