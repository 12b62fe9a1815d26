#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcgauge/group.hpp"

namespace pcgauge {

/// Which composition order defines consistency.
///   covariant:     a_ij . a_jk = a_ik
///   contravariant: a_jk . a_ij = a_ik
enum class Variance { Covariant, Contravariant };

Variance flipped(Variance v);
std::string to_string(Variance v);
Variance parse_variance(const std::string& s);

/// Strictly increasing index triple (i < j < k).
struct Triad {
  std::size_t i = 0, j = 0, k = 0;
  friend auto operator<=>(const Triad&, const Triad&) = default;
};

/// n x n matrix of group elements. Absent entries are gaps.
///
/// The constructor produces the identity matrix; use set() to fill the upper
/// triangle (the reciprocal entry is written automatically). set_raw() writes
/// a single cell without touching its mirror and exists for ingesting
/// untrusted data, which validate() then checks.
class PCMatrix {
 public:
  PCMatrix(Group group, std::size_t n, Variance variance = Variance::Covariant);

  /// Builds a gap-free matrix from its strict upper triangle in row-major
  /// order: a_01, a_02, ..., a_0(n-1), a_12, ...
  static PCMatrix from_upper(Group group, std::size_t n, const std::vector<Element>& upper,
                             Variance variance = Variance::Covariant);

  std::size_t size() const { return n_; }
  const Group& group() const { return group_; }
  Variance variance() const { return variance_; }
  void set_variance(Variance v) { variance_ = v; }

  bool has(std::size_t i, std::size_t j) const { return cell(i, j).has_value(); }
  const std::optional<Element>& entry(std::size_t i, std::size_t j) const { return cell(i, j); }
  /// Throws on a gap.
  const Element& operator()(std::size_t i, std::size_t j) const;

  /// Sets a_ij = g and a_ji = g^-1.
  void set(std::size_t i, std::size_t j, const Element& g);
  /// Makes both (i, j) and (j, i) gaps.
  void clear(std::size_t i, std::size_t j);
  void set_raw(std::size_t i, std::size_t j, std::optional<Element> g);

  bool gap_free() const;

  friend bool operator==(const PCMatrix&, const PCMatrix&) = default;

 private:
  std::optional<Element>& cell(std::size_t i, std::size_t j);
  const std::optional<Element>& cell(std::size_t i, std::size_t j) const;

  Group group_;
  std::size_t n_;
  Variance variance_;
  std::vector<std::optional<Element>> entries_;
};

struct Violation {
  std::size_t i = 0, j = 0;
  std::string axiom;  // "carrier", "diagonal", "gap symmetry", "reciprocity"
};

/// Checks the PC-matrix axioms. An empty result means the matrix is valid.
std::vector<Violation> validate(const PCMatrix& a);

/// b_ij = a_ji, with the variance flipped. Involutive.
PCMatrix dualize(const PCMatrix& a);

struct ConsistencyReport {
  bool consistent = true;
  /// Largest distance between the composed and the direct comparison.
  double worst_deviation = 0.0;
  /// Worst triad (lexicographically smallest on ties); set when inconsistent.
  std::optional<Triad> witness;
};

/// Tests the consistency law matching a.variance() on every triad.
ConsistencyReport is_consistent(const PCMatrix& a, double tol = 1e-9);

/// Like is_consistent but only over triads whose three entries are present;
/// used for matrices assembled from triangulations.
ConsistencyReport is_consistent_where_defined(const PCMatrix& a, double tol = 1e-9);

/// Loop product around a triad: a_ki . a_jk . a_ij for contravariant
/// matrices, a_ij . a_jk . a_ki for covariant ones. Identity iff the triad is
/// consistent. Indices need only be distinct.
Element triad_holonomy(const PCMatrix& a, std::size_t i, std::size_t j, std::size_t k);

/// The comparisons (x, y, z) = (a_ij, a_ik, a_jk) of a triad.
std::array<Element, 3> triad_entries(const PCMatrix& a, const Triad& t);

/// Triad indicator 1 - min(y/(xz), xz/y).
double ii3(double x, double y, double z);

struct IndicatorValue {
  double value = 0.0;
  std::optional<Triad> worst;
};

/// Supremum of ii3 over all triads of a gap-free R+* matrix.
IndicatorValue ii3_matrix(const PCMatrix& a);

/// 1 - min over i < j of min(a_ij / P, P / a_ij), P the chain a_i,i+1 ... a_j-1,j.
double ii_n_chain(const PCMatrix& a);

/// Indicator map In : G -> R with In(1_G) = 0.
using IndicatorMap = std::function<double(const Group&, const Element&)>;

/// In(g) = d(1_G, g^-1).
IndicatorMap default_indicator();
/// 1 - exp(-d(1_G, g^-1)); on R+* this puts ii_In on the ii3 scale.
IndicatorMap ii3_scale_indicator();

/// Throws "not an indicator map" unless In(1_G) == 0.
void require_indicator(const Group& group, const IndicatorMap& in);

/// Supremum of In(triad holonomy) over all triads.
IndicatorValue ii_indicator(const PCMatrix& a, const IndicatorMap& in = default_indicator());

/// ii_indicator restricted to triads without gaps.
IndicatorValue ii_indicator_where_defined(const PCMatrix& a,
                                          const IndicatorMap& in = default_indicator());

/// Vertex potentials (lambda_0, ..., lambda_n-1) of a consistent matrix.
struct GaugeVector {
  std::vector<Element> values;

  std::size_t size() const { return values.size(); }
  const Element& operator[](std::size_t i) const { return values[i]; }
  friend bool operator==(const GaugeVector&, const GaugeVector&) = default;
};

/// Fixes the global translation so that lambda_0 = 1_G: lambda_0^-1 lambda_i
/// for covariant, lambda_i lambda_0^-1 for contravariant.
GaugeVector normalized(const Group& group, const GaugeVector& lambda,
                       Variance variance = Variance::Covariant);

/// Thrown by gauge_extract when the matrix is not consistent.
class InconsistentMatrix : public Error {
 public:
  InconsistentMatrix(Triad witness, double deviation);
  Triad witness;
  double deviation;
};

/// Recovers the normalized gauge vector (lambda_j = a_0j) of a consistent matrix.
GaugeVector gauge_extract(const PCMatrix& a, double tol = 1e-9);

/// a_ij = lambda_i^-1 lambda_j (covariant) or lambda_j lambda_i^-1 (contravariant).
PCMatrix from_gauge_vector(const Group& group, const GaugeVector& lambda,
                           Variance variance = Variance::Covariant);

/// Vertex gauge action. Contravariant: a_ij -> mu_j a_ij mu_i^-1. Covariant:
/// a_ij -> mu_i a_ij mu_j^-1 (the dual action). Triad holonomies at i are
/// conjugated by mu_i; gaps are preserved.
PCMatrix gauge_transform(const PCMatrix& a, const GaugeVector& mu);

/// Upper triangle i.i.d. Haar, lower triangle by reciprocity.
PCMatrix random_pc_matrix(const Group& group, std::size_t n, Rng& rng,
                          Variance variance = Variance::Covariant);

/// Calls f(t) for every triad i < j < k in lexicographic order.
template <class F>
void for_each_triad(std::size_t n, F&& f) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) f(Triad{i, j, k});
}

}  // namespace pcgauge
