#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pcgauge/pc_matrix.hpp"

namespace pcgauge {

/// Outcome of replacing a matrix by a nearby consistent one.
struct ConsistencizationResult {
  GaugeVector lambda;      ///< normalized, lambda_0 = 1_G
  PCMatrix consistent;     ///< from_gauge_vector(lambda), same variance as the input
  double residual = 0.0;   ///< sum over i < j of d(a_ij, c_ij)^2
  double ii_before = 0.0;  ///< ii_indicator of the input (default In)
  double ii_after = 0.0;   ///< ii_indicator of the result (default In)
  std::size_t iterations = 0;
  bool converged = true;
  std::string status;                  ///< "converged", "closed form", "max_iter reached", ...
  std::vector<double> objective_trace; ///< objective after initialization and each accepted step
};

/// Sum over i < j of d(a_ij, c_ij)^2 where c = from_gauge_vector(lambda, a.variance()).
double consistency_objective(const PCMatrix& a, const GaugeVector& lambda);

/// Gradient of consistency_objective with respect to right perturbations
/// lambda_k -> lambda_k exp(xi_k), k = 1..n-1 (lambda_0 is pinned). Returned
/// as (n-1) * algebra_dim coordinates, block k-1 for lambda_k.
std::vector<double> consistency_gradient(const PCMatrix& a, const GaugeVector& lambda);

/// Least-squares projection in log coordinates for R+* and U(1):
/// l_i = -(1/n) sum_k log a_ik. For U(1) the principal-branch answer can sit
/// in the wrong winding; it is compared against descents started from every
/// row of a, each finished exactly within its winding class, and the best wins.
ConsistencizationResult consistencize_abelian(const PCMatrix& a);

struct DescentOptions {
  std::size_t max_iter = 10000;
  /// Initial step; <= 0 selects 1/(2n).
  double step = 0.0;
  /// Stop once an accepted step lowers the objective by less than this.
  double tol = 1e-15;
  /// Stop once the gradient norm drops below this.
  double grad_tol = 1e-12;
};

/// Gradient descent on (lambda_1, ..., lambda_n-1) in exponential
/// coordinates, starting from lambda_j = a_0j. Steps that raise the objective
/// (or cross the SU(2) cut locus) are retried at half length. Works for any
/// Lie group; throws for the finite cyclic groups.
ConsistencizationResult consistencize_riemannian(const PCMatrix& a, const DescentOptions& opts = {});

/// Membership in V_eps = { A : ii_In(A) < eps }. Throws for eps < 0.
bool epsilon_membership(const PCMatrix& a, double eps, const IndicatorMap& in = default_indicator());

}  // namespace pcgauge
