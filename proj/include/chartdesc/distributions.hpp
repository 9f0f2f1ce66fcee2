#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace chartdesc {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series for x < a + 1, continued fraction otherwise.
double gamma_q(double a, double x);
/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double gamma_p(double a, double x);

/// Upper tail of the chi-square distribution with df degrees of freedom.
double chi_square_sf(double x, double df);

double normal_pdf(double z);
double normal_cdf(double z);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre(std::size_t n);

/// CDF of the studentized range of k standard normals (infinite degrees of
/// freedom): k * int phi(z) [Phi(z + q) - Phi(z)]^(k-1) dz.
double studentized_range_cdf(double q, int k);
/// Inverse of studentized_range_cdf by bisection; p in (0, 1).
double studentized_range_quantile(double p, int k);

}  // namespace chartdesc
