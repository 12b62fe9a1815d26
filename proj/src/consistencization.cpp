#include "pcgauge/consistencization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace pcgauge {
namespace {

double indicator_or_zero(const PCMatrix& a) {
  return a.size() < 3 ? 0.0 : ii_indicator(a).value;
}

void add_block(std::vector<double>& grad, std::size_t vertex, int dim, double scale,
               const std::vector<double>& v) {
  if (vertex == 0) return;
  const std::size_t off = (vertex - 1) * static_cast<std::size_t>(dim);
  for (int d = 0; d < dim; ++d) grad[off + d] += scale * v[d];
}

GaugeVector retract(const Group& g, const GaugeVector& lambda, const std::vector<double>& dir,
                    double step) {
  const int dim = g.algebra_dim();
  GaugeVector out = lambda;
  std::vector<double> xi(dim);
  for (std::size_t k = 1; k < lambda.size(); ++k) {
    for (int d = 0; d < dim; ++d) xi[d] = -step * dir[(k - 1) * dim + d];
    out.values[k] = g.multiply(lambda[k], g.exp_coords(xi));
  }
  return out;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

ConsistencizationResult finish(const PCMatrix& a, GaugeVector lambda, std::size_t iterations,
                               bool converged, std::string status, std::vector<double> trace) {
  lambda = normalized(a.group(), lambda, a.variance());
  PCMatrix c = from_gauge_vector(a.group(), lambda, a.variance());
  const double residual = consistency_objective(a, lambda);
  return ConsistencizationResult{std::move(lambda), c,        residual,
                                 indicator_or_zero(a), indicator_or_zero(c), iterations,
                                 converged,            std::move(status), std::move(trace)};
}

ConsistencizationResult descend(const PCMatrix& a, GaugeVector lambda, const DescentOptions& opts) {
  const Group& g = a.group();
  double step = opts.step > 0.0 ? opts.step : 1.0 / (2.0 * static_cast<double>(a.size()));
  double f = consistency_objective(a, lambda);
  std::vector<double> trace{f};
  std::vector<double> grad = consistency_gradient(a, lambda);

  std::size_t iter = 0;
  while (iter < opts.max_iter) {
    if (norm2(grad) < opts.grad_tol) {
      return finish(a, std::move(lambda), iter, true, "converged", std::move(trace));
    }
    bool accepted = false;
    bool singular = false;
    while (!accepted) {
      if (step < 1e-300) {
        if (singular) throw Error("log branch singularity: step underflow");
        return finish(a, std::move(lambda), iter, true, "step underflow", std::move(trace));
      }
      GaugeVector trial = retract(g, lambda, grad, step);
      const double f_trial = consistency_objective(a, trial);
      if (!(f_trial <= f)) {
        step *= 0.5;
        continue;
      }
      try {
        grad = consistency_gradient(a, trial);
      } catch (const Error&) {
        singular = true;
        step *= 0.5;
        continue;
      }
      const double decrease = f - f_trial;
      lambda = std::move(trial);
      f = f_trial;
      trace.push_back(f);
      ++iter;
      accepted = true;
      step *= 1.25;
      if (decrease < opts.tol) {
        return finish(a, std::move(lambda), iter, true, "converged", std::move(trace));
      }
    }
  }
  return finish(a, std::move(lambda), iter, false, "max_iter reached", std::move(trace));
}

/// Exact least squares within the winding class of lambda: unwrap each
/// a_ij to the angle nearest its current fit, solve the linear problem, and
/// repeat until the windings settle.
GaugeVector u1_polish(const PCMatrix& a, GaugeVector lambda) {
  const std::size_t n = a.size();
  std::vector<double> ell(n);
  for (std::size_t i = 0; i < n; ++i) ell[i] = std::get<Phase>(lambda[i]).theta;
  for (int round = 0; round < 8; ++round) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double fit = ell[k] - ell[i];
        s += fit + wrap_angle(std::get<Phase>(a(i, k)).theta - fit);
      }
      next[i] = -s / static_cast<double>(n);
    }
    const double shift = next[0];
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] -= shift;
      moved = std::max(moved, std::abs(wrap_angle(next[i] - ell[i] + ell[0])));
    }
    ell = std::move(next);
    if (moved < 1e-15) break;
  }
  for (std::size_t i = 0; i < n; ++i) lambda.values[i] = Phase{wrap_angle(ell[i])};
  return lambda;
}

}  // namespace

double consistency_objective(const PCMatrix& a, const GaugeVector& lambda) {
  if (lambda.size() != a.size()) throw Error("gauge vector length mismatch");
  const Group& g = a.group();
  const PCMatrix c = from_gauge_vector(g, lambda, a.variance());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double d = g.distance(a(i, j), c(i, j));
      sum += d * d;
    }
  }
  return sum;
}

std::vector<double> consistency_gradient(const PCMatrix& a, const GaugeVector& lambda) {
  if (lambda.size() != a.size()) throw Error("gauge vector length mismatch");
  const Group& g = a.group();
  const int dim = g.algebra_dim();
  if (dim == 0) throw Error("gradient requires a Lie group");
  std::vector<double> grad((a.size() - 1) * dim, 0.0);
  const PCMatrix c = from_gauge_vector(g, lambda, a.variance());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const Element a_inv = g.inverse(a(i, j));
      if (a.variance() == Variance::Covariant) {
        // c_ij = lambda_i^-1 lambda_j
        add_block(grad, j, dim, 2.0, g.log_coords(g.multiply(a_inv, c(i, j))));
        add_block(grad, i, dim, -2.0, g.log_coords(g.multiply(c(i, j), a_inv)));
      } else {
        // c_ij = lambda_j lambda_i^-1; both derivatives pass through Ad(lambda_i^-1).
        const Element r =
            conjugate(g, g.inverse(lambda[i]), g.multiply(a_inv, c(i, j)));
        const std::vector<double> v = g.log_coords(r);
        add_block(grad, j, dim, 2.0, v);
        add_block(grad, i, dim, -2.0, v);
      }
    }
  }
  return grad;
}

ConsistencizationResult consistencize_abelian(const PCMatrix& a) {
  const Group& g = a.group();
  if (g.kind() != GroupKind::RPlus && g.kind() != GroupKind::U1) {
    throw Error("abelian consistencization requires rplus or u1, got " + g.tag());
  }
  if (!a.gap_free()) throw Error("use simplicial consistencization");
  const std::size_t n = a.size();
  std::vector<double> ell(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += g.log_coords(a(i, k))[0];
    ell[i] = -s / static_cast<double>(n);
  }
  GaugeVector lambda;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = ell[i] - ell[0];
    lambda.values.push_back(g.exp_coords(std::span<const double>(&t, 1)));
  }
  lambda.values[0] = g.identity();

  if (g.kind() == GroupKind::U1 && n >= 3) {
    // The principal branch can pick a wrong winding, and the wrapped
    // objective has several local minima. Descend from each row of a
    // (lambda_j = a_rj relative to root r), solve each basin exactly, and
    // keep the best candidate.
    const double f0 = consistency_objective(a, lambda);
    GaugeVector best = lambda;
    double best_f = f0;
    std::size_t iterations = 0;
    for (std::size_t r = 0; r < n; ++r) {
      GaugeVector start = lambda;
      for (std::size_t j = 0; j < n; ++j) start.values[j] = a(r, j);
      const ConsistencizationResult cand = descend(a, std::move(start), DescentOptions{});
      iterations += cand.iterations;
      GaugeVector polished = u1_polish(a, cand.lambda);
      const double f = consistency_objective(a, polished);
      if (f < best_f) best = std::move(polished), best_f = f;
    }
    if (best_f < f0 - 1e-12 * std::max(1.0, f0)) {
      return finish(a, std::move(best), iterations, true, "closed form refined by descent", {});
    }
  }
  return finish(a, std::move(lambda), 0, true, "closed form", {});
}

ConsistencizationResult consistencize_riemannian(const PCMatrix& a, const DescentOptions& opts) {
  if (a.group().algebra_dim() == 0) {
    throw Error("riemannian consistencization requires a Lie group, got " + a.group().tag());
  }
  if (!a.gap_free()) throw Error("use simplicial consistencization");
  GaugeVector lambda;
  lambda.values.push_back(a.group().identity());
  for (std::size_t j = 1; j < a.size(); ++j) lambda.values.push_back(a(0, j));
  return descend(a, std::move(lambda), opts);
}

bool epsilon_membership(const PCMatrix& a, double eps, const IndicatorMap& in) {
  if (!(eps >= 0.0)) throw Error("epsilon must be non-negative");
  if (a.size() < 3) {
    require_indicator(a.group(), in);
    return 0.0 < eps;
  }
  return ii_indicator(a, in).value < eps;
}

}  // namespace pcgauge
