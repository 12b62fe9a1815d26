#include "pcgauge/group.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace pcgauge {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Quaternion hamilton(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

double norm(const Quaternion& q) {
  return std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
}

Quaternion normalized(const Quaternion& q) {
  const double n = norm(q);
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

}  // namespace

double wrap_angle(double theta) {
  double r = std::remainder(theta, kTwoPi);
  if (r <= -kPi) r = kPi;
  if (r > kPi) r = kPi;
  return r;
}

Group Group::zmod(std::int64_t m) {
  if (m < 1) throw Error("zmod modulus must be >= 1");
  return Group(GroupKind::ZMod, m);
}

Group Group::parse(std::string_view tag) {
  if (tag == "rplus") return rplus();
  if (tag == "u1") return u1();
  if (tag == "su2") return su2();
  constexpr std::string_view prefix = "zmod:";
  if (tag.starts_with(prefix)) {
    const auto digits = tag.substr(prefix.size());
    std::int64_t m = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
      return zmod(m);
    }
  }
  throw Error("unknown group tag '" + std::string(tag) + "'");
}

std::string Group::tag() const {
  switch (kind_) {
    case GroupKind::RPlus: return "rplus";
    case GroupKind::U1: return "u1";
    case GroupKind::SU2: return "su2";
    case GroupKind::ZMod: return "zmod:" + std::to_string(modulus_);
  }
  return {};
}

int Group::algebra_dim() const {
  switch (kind_) {
    case GroupKind::RPlus:
    case GroupKind::U1: return 1;
    case GroupKind::SU2: return 3;
    case GroupKind::ZMod: return 0;
  }
  return 0;
}

template <class T>
const T& Group::as(const Element& g) const {
  const T* p = std::get_if<T>(&g);
  if (p == nullptr) throw Error("group mismatch");
  return *p;
}

bool Group::contains(const Element& g) const {
  switch (kind_) {
    case GroupKind::RPlus: {
      const auto* p = std::get_if<PositiveReal>(&g);
      return p && std::isfinite(p->value) && p->value > 0.0;
    }
    case GroupKind::U1: {
      const auto* p = std::get_if<Phase>(&g);
      return p && std::isfinite(p->theta) && p->theta > -kPi && p->theta <= kPi;
    }
    case GroupKind::SU2: {
      const auto* p = std::get_if<Quaternion>(&g);
      return p && std::isfinite(norm(*p)) && std::abs(norm(*p) - 1.0) <= kAlgebraTol;
    }
    case GroupKind::ZMod: {
      const auto* p = std::get_if<Residue>(&g);
      return p && p->value >= 0 && p->value < modulus_;
    }
  }
  return false;
}

void Group::check(const Element& g) const {
  if (g.index() != static_cast<std::size_t>(kind_)) throw Error("group mismatch");
  if (!contains(g)) throw Error("element outside the carrier of " + tag());
}

Element Group::make(double scalar) const {
  if (kind_ == GroupKind::RPlus) {
    if (!std::isfinite(scalar) || scalar <= 0.0) {
      throw Error("rplus element must be positive and finite");
    }
    return PositiveReal{scalar};
  }
  if (kind_ == GroupKind::U1) {
    if (!std::isfinite(scalar)) throw Error("u1 angle must be finite");
    return Phase{wrap_angle(scalar)};
  }
  throw Error("group mismatch");
}

Element Group::make_quaternion(double w, double x, double y, double z) const {
  if (kind_ != GroupKind::SU2) throw Error("group mismatch");
  const Quaternion q{w, x, y, z};
  const double n = norm(q);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-6) {
    throw Error("su2 quaternion must have unit norm");
  }
  if (std::abs(n - 1.0) <= kAlgebraTol) return q;
  return normalized(q);
}

Element Group::make_residue(std::int64_t r) const {
  if (kind_ != GroupKind::ZMod) throw Error("group mismatch");
  return Residue{((r % modulus_) + modulus_) % modulus_};
}

Element Group::identity() const {
  switch (kind_) {
    case GroupKind::RPlus: return PositiveReal{1.0};
    case GroupKind::U1: return Phase{0.0};
    case GroupKind::SU2: return Quaternion{};
    case GroupKind::ZMod: return Residue{0};
  }
  return {};
}

Element Group::multiply(const Element& a, const Element& b) const {
  switch (kind_) {
    case GroupKind::RPlus:
      return PositiveReal{as<PositiveReal>(a).value * as<PositiveReal>(b).value};
    case GroupKind::U1:
      return Phase{wrap_angle(as<Phase>(a).theta + as<Phase>(b).theta)};
    case GroupKind::SU2:
      return normalized(hamilton(as<Quaternion>(a), as<Quaternion>(b)));
    case GroupKind::ZMod:
      return Residue{(as<Residue>(a).value + as<Residue>(b).value) % modulus_};
  }
  return {};
}

Element Group::inverse(const Element& a) const {
  switch (kind_) {
    case GroupKind::RPlus: return PositiveReal{1.0 / as<PositiveReal>(a).value};
    case GroupKind::U1: return Phase{wrap_angle(-as<Phase>(a).theta)};
    case GroupKind::SU2: {
      const auto& q = as<Quaternion>(a);
      return Quaternion{q.w, -q.x, -q.y, -q.z};
    }
    case GroupKind::ZMod:
      return Residue{(modulus_ - as<Residue>(a).value) % modulus_};
  }
  return {};
}

double Group::distance(const Element& a, const Element& b) const {
  switch (kind_) {
    case GroupKind::RPlus:
      return std::abs(std::log(as<PositiveReal>(a).value / as<PositiveReal>(b).value));
    case GroupKind::U1:
      return std::abs(wrap_angle(as<Phase>(a).theta - as<Phase>(b).theta));
    case GroupKind::SU2: {
      // Angle between unit vectors on S^3; the atan2 form stays accurate
      // near 0 and pi where arccos(<a,b>) loses half the digits.
      const auto& p = as<Quaternion>(a);
      const auto& q = as<Quaternion>(b);
      const Quaternion diff{p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
      const Quaternion sum{p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
      return 2.0 * std::atan2(norm(diff), norm(sum));
    }
    case GroupKind::ZMod: {
      const std::int64_t k = std::abs(as<Residue>(a).value - as<Residue>(b).value) % modulus_;
      return kTwoPi * static_cast<double>(std::min(k, modulus_ - k)) /
             static_cast<double>(modulus_);
    }
  }
  return 0.0;
}

Element Group::exp_coords(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != algebra_dim()) {
    throw Error("exp_coords expects " + std::to_string(algebra_dim()) + " coordinates");
  }
  switch (kind_) {
    case GroupKind::RPlus: return make(std::exp(v[0]));
    case GroupKind::U1: return make(v[0]);
    case GroupKind::SU2: {
      const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      if (n == 0.0) return Quaternion{};
      const double s = std::sin(n) / n;
      return normalized(Quaternion{std::cos(n), s * v[0], s * v[1], s * v[2]});
    }
    case GroupKind::ZMod: return Residue{0};
  }
  return {};
}

std::vector<double> Group::log_coords(const Element& g) const {
  switch (kind_) {
    case GroupKind::RPlus: return {std::log(as<PositiveReal>(g).value)};
    case GroupKind::U1: return {as<Phase>(g).theta};
    case GroupKind::SU2: {
      const auto& q = as<Quaternion>(g);
      const double s = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
      const double theta = std::atan2(s, q.w);
      if (kPi - theta < kExpLogTol) throw Error("log branch singularity");
      if (s == 0.0) return {0.0, 0.0, 0.0};
      const double f = theta / s;
      return {f * q.x, f * q.y, f * q.z};
    }
    case GroupKind::ZMod:
      as<Residue>(g);
      return {};
  }
  return {};
}

Element Group::haar_sample(Rng& rng) const {
  switch (kind_) {
    case GroupKind::RPlus: throw Error("no normalized Haar measure");
    case GroupKind::U1: return Phase{wrap_angle(-kPi + kTwoPi * rng.uniform())};
    case GroupKind::SU2: {
      for (;;) {
        const Quaternion q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        if (norm(q) > 1e-12) return normalized(q);
      }
    }
    case GroupKind::ZMod:
      return Residue{static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(modulus_)))};
  }
  return {};
}

Element conjugate(const Group& group, const Element& g, const Element& x) {
  return group.multiply(group.multiply(g, x), group.inverse(g));
}

}  // namespace pcgauge
