#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcgauge/simplicial.hpp"

namespace pcgauge {

/// Plain Monte Carlo estimate of an expectation.
struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< unbiased sample standard deviation / sqrt(samples)
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string observable;
};

enum class ObservableKind { MeanCurvatureIn, SupCurvatureIn, WilsonCharacter, Ii3OfRandomMatrix };

std::string to_string(ObservableKind k);
ObservableKind parse_observable(const std::string& s);

/// Real-valued function of a sampled configuration.
///
/// mean_curvature_In / sup_curvature_In: mean / max of In over triangle
/// plaquettes. wilson_character: normalized character of the loop holonomy
/// (cos theta for U(1), w = tr/2 for SU(2), cos(2 pi r / m) for Z_m); the
/// loop defaults to the boundary of the first triangle. ii3_of_random_matrix:
/// ii_In of a random PC matrix (no complex involved).
struct Observable {
  ObservableKind kind = ObservableKind::MeanCurvatureIn;
  IndicatorMap in = default_indicator();
  std::optional<PathSpec> loop;
  std::size_t matrix_size = 3;  ///< for ii3_of_random_matrix
  Variance variance = Variance::Covariant;
};

/// Normalized character Re tr(g) / dim of the fundamental representation.
double character(const Group& group, const Element& g);

/// I.i.d. Haar element on every canonical edge, drawn in edge order.
EdgeField sample_field(const SimplicialComplex2& k, const Group& group, Rng& rng);

/// Evaluates the observable on one field.
double evaluate(const SimplicialComplex2& k, const EdgeField& f, const Observable& obs);

/// Mean and standard error from per-sample values. Sums use pairwise
/// reduction, so the result depends on the values alone.
MCEstimate summarize(std::span<const double> values, std::uint64_t seed, std::string observable);

/// Draws `n` samples; sample s is produced by `draw(Rng::for_stream(seed, s))`.
/// The work is split across `workers` threads but the output is a function
/// of (seed, n) only.
template <class Draw>
std::vector<double> sample_values(std::size_t n, std::uint64_t seed, unsigned workers, Draw&& draw);

/// Per-sample observable values behind expectation().
std::vector<double> observable_samples(const SimplicialComplex2& k, const Group& group,
                                       const Observable& obs, std::size_t n, std::uint64_t seed,
                                       unsigned workers = 1, const GaugeVector* mu = nullptr);

/// Monte Carlo expectation of `obs` under the product Haar measure on edge
/// fields of `k`. Optionally post-composes each field with a fixed vertex
/// gauge `mu`.
MCEstimate expectation(const SimplicialComplex2& k, const Group& group, const Observable& obs,
                       std::size_t n, std::uint64_t seed, unsigned workers = 1,
                       const GaugeVector* mu = nullptr);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;  ///< 64 uniform bins over [lo, hi]
};

Histogram make_histogram(std::span<const double> values, std::size_t bins = 64);

struct IiDistribution {
  MCEstimate estimate;
  Histogram histogram;
  std::vector<double> values;
};

/// Law of ii_In over random PC matrices with i.i.d. Haar upper triangles.
IiDistribution ii_distribution(const Group& group, std::size_t n, std::size_t samples,
                               std::uint64_t seed, const IndicatorMap& in = default_indicator(),
                               unsigned workers = 1);

}  // namespace pcgauge

#include "pcgauge/detail/sampling.ipp"
