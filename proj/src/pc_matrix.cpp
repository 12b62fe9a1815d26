#include "pcgauge/pc_matrix.hpp"

#include <cmath>
#include <limits>

namespace pcgauge {
namespace {

void require_gap_free(const PCMatrix& a, const char* what) {
  if (!a.gap_free()) throw Error(what);
}

void require_rplus(const PCMatrix& a) {
  if (a.group().kind() != GroupKind::RPlus) {
    throw Error("classical indicator requires an rplus matrix");
  }
  require_gap_free(a, "classical indicator undefined with gaps");
}

}  // namespace

Variance flipped(Variance v) {
  return v == Variance::Covariant ? Variance::Contravariant : Variance::Covariant;
}

std::string to_string(Variance v) {
  return v == Variance::Covariant ? "covariant" : "contravariant";
}

Variance parse_variance(const std::string& s) {
  if (s == "covariant") return Variance::Covariant;
  if (s == "contravariant") return Variance::Contravariant;
  throw Error("unknown variance '" + s + "'");
}

PCMatrix::PCMatrix(Group group, std::size_t n, Variance variance)
    : group_(group), n_(n), variance_(variance), entries_(n * n, group.identity()) {
  if (n < 2) throw Error("a PC matrix needs at least two indices");
}

PCMatrix PCMatrix::from_upper(Group group, std::size_t n, const std::vector<Element>& upper,
                              Variance variance) {
  PCMatrix a(group, n, variance);
  if (upper.size() != n * (n - 1) / 2) throw Error("upper triangle has the wrong length");
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, upper[pos++]);
  return a;
}

std::optional<Element>& PCMatrix::cell(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw Error("index out of range");
  return entries_[i * n_ + j];
}

const std::optional<Element>& PCMatrix::cell(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw Error("index out of range");
  return entries_[i * n_ + j];
}

const Element& PCMatrix::operator()(std::size_t i, std::size_t j) const {
  const auto& c = cell(i, j);
  if (!c) throw Error("gap at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return *c;
}

void PCMatrix::set(std::size_t i, std::size_t j, const Element& g) {
  if (i == j) throw Error("diagonal entries are fixed to the identity");
  group_.check(g);
  cell(i, j) = g;
  cell(j, i) = group_.inverse(g);
}

void PCMatrix::clear(std::size_t i, std::size_t j) {
  if (i == j) throw Error("diagonal entries cannot be gaps");
  cell(i, j).reset();
  cell(j, i).reset();
}

void PCMatrix::set_raw(std::size_t i, std::size_t j, std::optional<Element> g) {
  cell(i, j) = std::move(g);
}

bool PCMatrix::gap_free() const {
  for (const auto& e : entries_)
    if (!e) return false;
  return true;
}

std::vector<Violation> validate(const PCMatrix& a) {
  std::vector<Violation> out;
  const Group& g = a.group();
  const std::size_t n = a.size();
  const auto ok = [&](std::size_t i, std::size_t j) {
    return a.has(i, j) && g.contains(*a.entry(i, j));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.has(i, j) && !g.contains(*a.entry(i, j))) out.push_back({i, j, "carrier"});

  for (std::size_t i = 0; i < n; ++i) {
    if (!ok(i, i) || g.distance(*a.entry(i, i), g.identity()) > kAlgebraTol) {
      if (a.has(i, i) && !g.contains(*a.entry(i, i))) continue;  // already reported
      out.push_back({i, i, "diagonal"});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a.has(i, j) != a.has(j, i)) {
        out.push_back({j, i, "gap symmetry"});
      } else if (ok(i, j) && ok(j, i)) {
        if (g.distance(*a.entry(j, i), g.inverse(*a.entry(i, j))) > kAlgebraTol) {
          out.push_back({j, i, "reciprocity"});
        }
      }
    }
  }
  return out;
}

PCMatrix dualize(const PCMatrix& a) {
  if (!validate(a).empty()) throw Error("invalid PC matrix");
  PCMatrix b(a.group(), a.size(), flipped(a.variance()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) b.set_raw(i, j, a.entry(j, i));
  return b;
}

namespace {

bool complete(const PCMatrix& a, const Triad& t) {
  return a.has(t.i, t.j) && a.has(t.j, t.k) && a.has(t.i, t.k);
}

ConsistencyReport consistency_scan(const PCMatrix& a, double tol) {
  const Group& g = a.group();
  ConsistencyReport report;
  std::optional<Triad> worst;
  double worst_dev = -1.0;
  for_each_triad(a.size(), [&](const Triad& t) {
    if (!complete(a, t)) return;
    const Element composed = a.variance() == Variance::Covariant
                                 ? g.multiply(a(t.i, t.j), a(t.j, t.k))
                                 : g.multiply(a(t.j, t.k), a(t.i, t.j));
    const double dev = g.distance(composed, a(t.i, t.k));
    if (dev > worst_dev) {
      worst_dev = dev;
      worst = t;
    }
  });
  report.worst_deviation = std::max(worst_dev, 0.0);
  report.consistent = report.worst_deviation <= tol;
  if (!report.consistent) report.witness = worst;
  return report;
}

IndicatorValue indicator_scan(const PCMatrix& a, const IndicatorMap& in) {
  require_indicator(a.group(), in);
  IndicatorValue out;
  double best = -std::numeric_limits<double>::infinity();
  for_each_triad(a.size(), [&](const Triad& t) {
    if (!complete(a, t)) return;
    const double v = in(a.group(), triad_holonomy(a, t.i, t.j, t.k));
    if (v > best) {
      best = v;
      out.worst = t;
    }
  });
  if (out.worst) out.value = best;
  return out;
}

}  // namespace

ConsistencyReport is_consistent(const PCMatrix& a, double tol) {
  require_gap_free(a, "consistency undefined with gaps");
  return consistency_scan(a, tol);
}

ConsistencyReport is_consistent_where_defined(const PCMatrix& a, double tol) {
  return consistency_scan(a, tol);
}

Element triad_holonomy(const PCMatrix& a, std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) throw Error("triad indices must be distinct");
  if (!a.has(i, j) || !a.has(j, k) || !a.has(k, i)) throw Error("gap on the triangle");
  const Group& g = a.group();
  if (a.variance() == Variance::Contravariant) {
    return g.multiply(g.multiply(a(k, i), a(j, k)), a(i, j));
  }
  return g.multiply(g.multiply(a(i, j), a(j, k)), a(k, i));
}

std::array<Element, 3> triad_entries(const PCMatrix& a, const Triad& t) {
  return {a(t.i, t.j), a(t.i, t.k), a(t.j, t.k)};
}

double ii3(double x, double y, double z) {
  for (double v : {x, y, z}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("ii3 requires positive finite inputs");
  }
  const double r = y / (x * z);
  return 1.0 - std::min(r, 1.0 / r);
}

IndicatorValue ii3_matrix(const PCMatrix& a) {
  require_rplus(a);
  IndicatorValue out;
  if (a.size() < 3) return out;
  double best = -1.0;
  for_each_triad(a.size(), [&](const Triad& t) {
    const auto [x, y, z] = triad_entries(a, t);
    const double v = ii3(std::get<PositiveReal>(x).value, std::get<PositiveReal>(y).value,
                         std::get<PositiveReal>(z).value);
    if (v > best) {
      best = v;
      out.worst = t;
    }
  });
  out.value = best;
  return out;
}

double ii_n_chain(const PCMatrix& a) {
  require_rplus(a);
  const auto val = [&](std::size_t i, std::size_t j) {
    return std::get<PositiveReal>(a(i, j)).value;
  };
  double closest = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double chain = 1.0;
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      chain *= val(j - 1, j);
      const double r = val(i, j) / chain;
      closest = std::min(closest, std::min(r, 1.0 / r));
    }
  }
  return 1.0 - closest;
}

IndicatorMap default_indicator() {
  return [](const Group& g, const Element& x) { return g.distance(g.identity(), g.inverse(x)); };
}

IndicatorMap ii3_scale_indicator() {
  return [](const Group& g, const Element& x) {
    return -std::expm1(-g.distance(g.identity(), g.inverse(x)));
  };
}

void require_indicator(const Group& group, const IndicatorMap& in) {
  if (!in || in(group, group.identity()) != 0.0) throw Error("not an indicator map");
}

IndicatorValue ii_indicator(const PCMatrix& a, const IndicatorMap& in) {
  require_gap_free(a, "indicator undefined with gaps");
  return indicator_scan(a, in);
}

IndicatorValue ii_indicator_where_defined(const PCMatrix& a, const IndicatorMap& in) {
  return indicator_scan(a, in);
}

GaugeVector normalized(const Group& group, const GaugeVector& lambda, Variance variance) {
  if (lambda.values.empty()) return lambda;
  const Element shift = group.inverse(lambda[0]);
  GaugeVector out;
  out.values.reserve(lambda.size());
  for (const auto& l : lambda.values) {
    out.values.push_back(variance == Variance::Covariant ? group.multiply(shift, l)
                                                         : group.multiply(l, shift));
  }
  out.values[0] = group.identity();
  return out;
}

InconsistentMatrix::InconsistentMatrix(Triad w, double dev)
    : Error("no gauge vector exists: triad (" + std::to_string(w.i) + "," + std::to_string(w.j) +
            "," + std::to_string(w.k) + ") deviates by " + std::to_string(dev)),
      witness(w),
      deviation(dev) {}

GaugeVector gauge_extract(const PCMatrix& a, double tol) {
  const ConsistencyReport report = is_consistent(a, tol);
  if (!report.consistent) throw InconsistentMatrix(*report.witness, report.worst_deviation);
  GaugeVector lambda;
  lambda.values.reserve(a.size());
  lambda.values.push_back(a.group().identity());
  for (std::size_t j = 1; j < a.size(); ++j) lambda.values.push_back(a(0, j));
  return lambda;
}

PCMatrix from_gauge_vector(const Group& group, const GaugeVector& lambda, Variance variance) {
  PCMatrix a(group, lambda.size(), variance);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const Element inv = group.inverse(lambda[i]);
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      a.set(i, j, variance == Variance::Covariant ? group.multiply(inv, lambda[j])
                                                  : group.multiply(lambda[j], inv));
    }
  }
  return a;
}

PCMatrix gauge_transform(const PCMatrix& a, const GaugeVector& mu) {
  if (mu.size() != a.size()) throw Error("gauge vector length mismatch");
  const Group& g = a.group();
  PCMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (!a.has(i, j)) continue;
      const Element moved =
          a.variance() == Variance::Contravariant
              ? g.multiply(g.multiply(mu[j], a(i, j)), g.inverse(mu[i]))
              : g.multiply(g.multiply(mu[i], a(i, j)), g.inverse(mu[j]));
      out.set(i, j, moved);
    }
  }
  return out;
}

PCMatrix random_pc_matrix(const Group& group, std::size_t n, Rng& rng, Variance variance) {
  if (!group.compact()) throw Error("no normalized Haar measure");
  PCMatrix a(group, n, variance);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, group.haar_sample(rng));
  return a;
}

}  // namespace pcgauge
