#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pcgauge/group.hpp"
#include "pcgauge/pc_matrix.hpp"

namespace pcgauge::testing {

inline std::vector<Group> all_groups() {
  return {Group::rplus(), Group::u1(), Group::su2(), Group::zmod(5)};
}

inline std::vector<Group> lie_groups() { return {Group::rplus(), Group::u1(), Group::su2()}; }

/// Random element; Haar for compact groups, log-normal for R+*.
inline Element random_element(const Group& g, Rng& rng) {
  if (g.kind() == GroupKind::RPlus) return g.make(std::exp(2.0 * rng.normal()));
  return g.haar_sample(rng);
}

/// Element exp(v) with v uniform in a ball of the given radius, for small perturbations.
inline Element small_element(const Group& g, Rng& rng, double radius) {
  std::vector<double> v(g.algebra_dim());
  for (auto& x : v) x = radius * (2.0 * rng.uniform() - 1.0);
  return g.exp_coords(v);
}

inline GaugeVector random_gauge(const Group& g, std::size_t n, Rng& rng) {
  GaugeVector mu;
  for (std::size_t i = 0; i < n; ++i) mu.values.push_back(random_element(g, rng));
  return mu;
}

inline double max_entry_distance(const PCMatrix& a, const PCMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.has(i, j) && b.has(i, j)) worst = std::max(worst, a.group().distance(a(i, j), b(i, j)));
  return worst;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

/// 1% critical value of the two-sample KS statistic.
inline double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return 1.628 * std::sqrt((nn + mm) / (nn * mm));
}

/// Composite Simpson rule on [a, b] with an even number of panels.
template <class F>
double simpson(F&& f, double a, double b, int panels = 2000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

inline double rplus_value(const Element& e) { return std::get<PositiveReal>(e).value; }
inline double u1_theta(const Element& e) { return std::get<Phase>(e).theta; }

}  // namespace pcgauge::testing
