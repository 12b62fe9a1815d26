#include "pcgauge/integration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pcgauge {
namespace {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

void require_compact(const Group& group) {
  if (!group.compact()) throw Error("no normalized Haar measure");
}

PathSpec loop_of(const SimplicialComplex2& k, const Observable& obs) {
  if (obs.loop) return *obs.loop;
  if (k.triangles().empty()) throw Error("observable/complex mismatch: no 2-simplices");
  const Triangle& t = k.triangles().front();
  return {t.i, t.j, t.k, t.i};
}

void check_observable(const SimplicialComplex2& k, const Observable& obs) {
  switch (obs.kind) {
    case ObservableKind::MeanCurvatureIn:
    case ObservableKind::SupCurvatureIn:
      if (k.triangles().empty()) throw Error("observable/complex mismatch: no 2-simplices");
      break;
    case ObservableKind::WilsonCharacter: {
      const PathSpec loop = loop_of(k, obs);
      if (loop.size() < 2 || loop.front() != loop.back()) {
        throw Error("observable/complex mismatch: wilson loop is not closed");
      }
      for (std::size_t s = 1; s < loop.size(); ++s) {
        if (loop[s - 1] >= k.vertex_count() || loop[s] >= k.vertex_count() ||
            !k.has_edge(loop[s - 1], loop[s])) {
          throw Error("observable/complex mismatch: wilson loop is not a valid path");
        }
      }
      break;
    }
    case ObservableKind::Ii3OfRandomMatrix:
      if (obs.matrix_size < 2) throw Error("random matrix size must be >= 2");
      break;
  }
}

double random_matrix_ii(const Group& group, std::size_t n, Variance variance,
                        const IndicatorMap& in, Rng& rng) {
  const PCMatrix a = random_pc_matrix(group, n, rng, variance);
  if (n < 3) {
    require_indicator(group, in);
    return 0.0;
  }
  return ii_indicator(a, in).value;
}

}  // namespace

std::string to_string(ObservableKind k) {
  switch (k) {
    case ObservableKind::MeanCurvatureIn: return "mean_curvature_In";
    case ObservableKind::SupCurvatureIn: return "sup_curvature_In";
    case ObservableKind::WilsonCharacter: return "wilson_character";
    case ObservableKind::Ii3OfRandomMatrix: return "ii3_of_random_matrix";
  }
  return {};
}

ObservableKind parse_observable(const std::string& s) {
  for (auto k : {ObservableKind::MeanCurvatureIn, ObservableKind::SupCurvatureIn,
                 ObservableKind::WilsonCharacter, ObservableKind::Ii3OfRandomMatrix}) {
    if (to_string(k) == s) return k;
  }
  throw Error("unknown observable '" + s + "'");
}

double character(const Group& group, const Element& g) {
  group.check(g);
  switch (group.kind()) {
    case GroupKind::U1: return std::cos(std::get<Phase>(g).theta);
    case GroupKind::SU2: return std::get<Quaternion>(g).w;
    case GroupKind::ZMod:
      return std::cos(2.0 * std::numbers::pi * static_cast<double>(std::get<Residue>(g).value) /
                      static_cast<double>(group.modulus()));
    case GroupKind::RPlus: break;
  }
  throw Error("no unitary character for " + group.tag());
}

EdgeField sample_field(const SimplicialComplex2& k, const Group& group, Rng& rng) {
  require_compact(group);
  EdgeField f(group);
  for (const auto& e : k.edges()) f.set(e.i, e.j, group.haar_sample(rng));
  return f;
}

double evaluate(const SimplicialComplex2& k, const EdgeField& f, const Observable& obs) {
  const Group& g = f.group();
  switch (obs.kind) {
    case ObservableKind::MeanCurvatureIn: {
      if (k.triangles().empty()) throw Error("observable/complex mismatch: no 2-simplices");
      require_indicator(g, obs.in);
      std::vector<double> v;
      v.reserve(k.triangles().size());
      for (const auto& t : k.triangles()) v.push_back(obs.in(g, plaquette(f, t)));
      return pairwise_sum(v) / static_cast<double>(v.size());
    }
    case ObservableKind::SupCurvatureIn: {
      const GlobalIndicator gi = global_ii(k, f, obs.in);
      if (gi.no_triangles) throw Error("observable/complex mismatch: no 2-simplices");
      return gi.value;
    }
    case ObservableKind::WilsonCharacter:
      return character(g, path_holonomy(f, loop_of(k, obs)));
    case ObservableKind::Ii3OfRandomMatrix: break;
  }
  throw Error("observable/complex mismatch: ii3_of_random_matrix does not act on edge fields");
}

MCEstimate summarize(std::span<const double> values, std::uint64_t seed, std::string observable) {
  if (values.size() < 2) throw Error("need at least two samples");
  const double n = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t s = 0; s < values.size(); ++s) sq[s] = (values[s] - mean) * (values[s] - mean);
  const double var = pairwise_sum(sq) / (n - 1.0);
  return MCEstimate{mean, std::sqrt(var / n), values.size(), seed, std::move(observable)};
}

std::vector<double> observable_samples(const SimplicialComplex2& k, const Group& group,
                                       const Observable& obs, std::size_t n, std::uint64_t seed,
                                       unsigned workers, const GaugeVector* mu) {
  require_compact(group);
  if (n < 2) throw Error("need at least two samples");
  check_observable(k, obs);
  if (mu != nullptr && mu->size() != k.vertex_count()) throw Error("gauge vector length mismatch");
  if (obs.kind == ObservableKind::Ii3OfRandomMatrix) {
    return sample_values(n, seed, workers, [&](Rng& rng) {
      return random_matrix_ii(group, obs.matrix_size, obs.variance, obs.in, rng);
    });
  }
  return sample_values(n, seed, workers, [&](Rng& rng) {
    const EdgeField f = sample_field(k, group, rng);
    return mu ? evaluate(k, gauge_transform_field(k, f, *mu), obs) : evaluate(k, f, obs);
  });
}

MCEstimate expectation(const SimplicialComplex2& k, const Group& group, const Observable& obs,
                       std::size_t n, std::uint64_t seed, unsigned workers, const GaugeVector* mu) {
  const std::vector<double> values = observable_samples(k, group, obs, n, seed, workers, mu);
  return summarize(values, seed, to_string(obs.kind));
}

Histogram make_histogram(std::span<const double> values, std::size_t bins) {
  Histogram h;
  h.counts.assign(bins, 0);
  if (values.empty() || bins == 0) return h;
  h.lo = *std::min_element(values.begin(), values.end());
  h.hi = *std::max_element(values.begin(), values.end());
  const double width = h.hi - h.lo;
  for (double x : values) {
    std::size_t b = 0;
    if (width > 0.0) {
      b = static_cast<std::size_t>((x - h.lo) / width * static_cast<double>(bins));
      b = std::min(b, bins - 1);
    }
    ++h.counts[b];
  }
  return h;
}

IiDistribution ii_distribution(const Group& group, std::size_t n, std::size_t samples,
                               std::uint64_t seed, const IndicatorMap& in, unsigned workers) {
  require_compact(group);
  require_indicator(group, in);
  if (n < 2) throw Error("random matrix size must be >= 2");
  IiDistribution out;
  out.values = sample_values(samples, seed, workers, [&](Rng& rng) {
    return random_matrix_ii(group, n, Variance::Covariant, in, rng);
  });
  out.estimate = summarize(out.values, seed, to_string(ObservableKind::Ii3OfRandomMatrix));
  out.histogram = make_histogram(out.values);
  return out;
}

}  // namespace pcgauge
