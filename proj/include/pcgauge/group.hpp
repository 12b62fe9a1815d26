#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pcgauge/error.hpp"
#include "pcgauge/random.hpp"

namespace pcgauge {

/// Tolerance for algebraic identities (group axioms, reciprocity).
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for exp/log round trips and the SU(2) cut locus.
inline constexpr double kExpLogTol = 1e-9;

/// Element of the multiplicative group of positive reals.
struct PositiveReal {
  double value = 1.0;
  friend bool operator==(const PositiveReal&, const PositiveReal&) = default;
};

/// Element of U(1), stored as an angle in (-pi, pi].
struct Phase {
  double theta = 0.0;
  friend bool operator==(const Phase&, const Phase&) = default;
};

/// Element of SU(2) as a unit quaternion w + xi + yj + zk.
struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Element of Z_m as a residue in {0, ..., m-1}. The modulus lives on the Group.
struct Residue {
  std::int64_t value = 0;
  friend bool operator==(const Residue&, const Residue&) = default;
};

using Element = std::variant<PositiveReal, Phase, Quaternion, Residue>;

enum class GroupKind { RPlus, U1, SU2, ZMod };

/// Wraps an angle into (-pi, pi]; -pi maps to +pi.
double wrap_angle(double theta);

/// One of the supported groups together with its operations.
///
/// Groups are small values; copying them is free. All distances are
/// bi-invariant, so d(g x, g y) = d(x g, y g) = d(x, y) and the metric is
/// also invariant under inversion and conjugation.
class Group {
 public:
  static Group rplus() { return Group(GroupKind::RPlus, 0); }
  static Group u1() { return Group(GroupKind::U1, 0); }
  static Group su2() { return Group(GroupKind::SU2, 0); }
  static Group zmod(std::int64_t m);

  /// Parses "rplus", "u1", "su2" or "zmod:<m>".
  static Group parse(std::string_view tag);

  std::string tag() const;
  GroupKind kind() const { return kind_; }
  std::int64_t modulus() const { return modulus_; }

  /// Dimension of the Lie algebra (0 for the finite cyclic groups).
  int algebra_dim() const;
  bool compact() const { return kind_ != GroupKind::RPlus; }
  bool abelian() const { return kind_ != GroupKind::SU2; }

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  double distance(const Element& a, const Element& b) const;

  /// Exponential coordinates. For SU(2) a vector v maps to
  /// cos|v| + sin|v| v/|v|, so distance(identity, exp(v)) = |v| for |v| <= pi.
  Element exp_coords(std::span<const double> v) const;
  /// Inverse of exp_coords on the principal branch. Throws
  /// "log branch singularity" for SU(2) elements within 1e-9 of -1.
  std::vector<double> log_coords(const Element& g) const;

  /// Draw from the normalized Haar measure. Throws for R+*.
  Element haar_sample(Rng& rng) const;

  /// Throws if `g` is not a valid carrier value of this group.
  void check(const Element& g) const;
  bool contains(const Element& g) const;

  /// Convenience constructors that enforce the carrier invariants.
  Element make(double scalar) const;  // R+* value or U(1) angle
  Element make_quaternion(double w, double x, double y, double z) const;
  Element make_residue(std::int64_t r) const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  Group(GroupKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}

  template <class T>
  const T& as(const Element& g) const;

  GroupKind kind_;
  std::int64_t modulus_;
};

/// Conjugation g x g^-1.
Element conjugate(const Group& group, const Element& g, const Element& x);

}  // namespace pcgauge
