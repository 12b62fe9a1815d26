#include <numbers>

#include <doctest.h>

#include "support.hpp"

using namespace pcgauge;
using namespace pcgauge::testing;

namespace {

PCMatrix rplus_upper(std::size_t n, std::vector<double> upper) {
  std::vector<Element> e;
  for (double v : upper) e.push_back(PositiveReal{v});
  return PCMatrix::from_upper(Group::rplus(), n, e);
}

PCMatrix u1_upper(std::size_t n, std::vector<double> upper, Variance v = Variance::Covariant) {
  std::vector<Element> e;
  for (double t : upper) e.push_back(Group::u1().make(t));
  return PCMatrix::from_upper(Group::u1(), n, e, v);
}

}  // namespace

TEST_CASE("validate") {
  for (const Group& g : all_groups()) CHECK(validate(PCMatrix(g, 4)).empty());

  PCMatrix a = rplus_upper(3, {2, 8, 4});
  CHECK(validate(a).empty());

  a.set_raw(1, 0, PositiveReal{0.4});
  const auto v = validate(a);
  REQUIRE(v.size() == 1);
  CHECK(v[0].i == 1);
  CHECK(v[0].j == 0);
  CHECK(v[0].axiom == "reciprocity");

  PCMatrix b = rplus_upper(3, {2, 8, 4});
  b.set_raw(0, 2, std::nullopt);
  REQUIRE(validate(b).size() == 1);
  CHECK(validate(b)[0].axiom == "gap symmetry");

  PCMatrix c = rplus_upper(3, {2, 8, 4});
  c.set_raw(1, 1, PositiveReal{2});
  REQUIRE(validate(c).size() == 1);
  CHECK(validate(c)[0].axiom == "diagonal");

  PCMatrix d = rplus_upper(3, {2, 8, 4});
  d.set_raw(2, 1, PositiveReal{-0.25});
  CHECK(validate(d)[0].axiom == "carrier");

  PCMatrix gapped(Group::su2(), 3);
  gapped.clear(0, 2);
  CHECK(validate(gapped).empty());
  CHECK_THROWS(gapped.clear(1, 1));
  CHECK_THROWS(PCMatrix(Group::u1(), 1));
}

TEST_CASE("dualize") {
  const PCMatrix a = rplus_upper(3, {2, 8, 4});
  const PCMatrix b = dualize(a);
  CHECK(rplus_value(b(0, 1)) == 0.5);
  CHECK(b.variance() == Variance::Contravariant);
  CHECK(dualize(b) == a);
  CHECK(dualize(PCMatrix(Group::su2(), 3)) == PCMatrix(Group::su2(), 3, Variance::Contravariant));

  PCMatrix bad = a;
  bad.set_raw(1, 0, PositiveReal{3});
  CHECK_THROWS(dualize(bad));

  // Covariant-consistent becomes contravariant-consistent; checked by brute
  // force on the contravariant law over every ordered triple.
  Rng rng(17);
  for (const Group& g : all_groups()) {
    const PCMatrix cov = from_gauge_vector(g, random_gauge(g, 4, rng));
    const PCMatrix con = dualize(cov);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k)
          CHECK(g.distance(g.multiply(con(j, k), con(i, j)), con(i, k)) <= 1e-10);
    CHECK(is_consistent(con, 1e-10).consistent);
    CHECK(dualize(con) == cov);
  }
}

TEST_CASE("is_consistent") {
  Rng rng(1);
  for (const Group& g : all_groups()) {
    CHECK(is_consistent(from_gauge_vector(g, random_gauge(g, 5, rng)), 1e-10).consistent);
  }
  CHECK(is_consistent(rplus_upper(3, {2, 8, 4})).consistent);
  const auto r = is_consistent(rplus_upper(3, {2, 4, 4}));
  CHECK_FALSE(r.consistent);
  REQUIRE(r.witness);
  CHECK(*r.witness == Triad{0, 1, 2});
  CHECK(r.worst_deviation == doctest::Approx(std::log(2.0)));

  PCMatrix gapped(Group::rplus(), 3);
  gapped.clear(0, 1);
  CHECK_THROWS_WITH(is_consistent(gapped), "consistency undefined with gaps");
  CHECK(is_consistent_where_defined(gapped).consistent);
}

TEST_CASE("triad_holonomy") {
  const Group rp = Group::rplus();
  CHECK(rp.distance(triad_holonomy(rplus_upper(3, {2, 8, 4}), 0, 1, 2), rp.identity()) == 0.0);
  // (x, y, z) = (2, 4, 4): y^-1 z x = 2.
  CHECK(rplus_value(triad_holonomy(rplus_upper(3, {2, 4, 4}), 0, 1, 2)) == 2.0);
  PCMatrix contra = dualize(rplus_upper(3, {0.5, 0.25, 0.25}));
  CHECK(rplus_value(triad_holonomy(contra, 0, 1, 2)) == doctest::Approx(2.0));

  for (Variance v : {Variance::Covariant, Variance::Contravariant}) {
    // (x, y, z) = (theta_01, theta_02, theta_12) = (0.3, 0.1, 0.5)
    const PCMatrix a = u1_upper(3, {0.3, 0.1, 0.5}, v);
    CHECK(u1_theta(triad_holonomy(a, 0, 1, 2)) == doctest::Approx(0.7).epsilon(1e-14));
  }
  PCMatrix gapped(Group::u1(), 3);
  gapped.clear(1, 2);
  CHECK_THROWS_WITH(triad_holonomy(gapped, 0, 1, 2), "gap on the triangle");
  CHECK_THROWS(triad_holonomy(gapped, 0, 0, 2));
}

TEST_CASE("triad holonomy is conjugated when the corners rotate") {
  // Starting the loop at j instead of i conjugates the holonomy, so In values agree.
  Rng rng(23);
  const Group g = Group::su2();
  const PCMatrix a = random_pc_matrix(g, 4, rng);
  const Element h_i = triad_holonomy(a, 0, 1, 2);
  const Element h_j = triad_holonomy(a, 1, 2, 0);
  CHECK(g.distance(h_j, conjugate(g, g.inverse(a(0, 1)), h_i)) <= 1e-12);
  CHECK(std::abs(g.distance(g.identity(), h_i) - g.distance(g.identity(), h_j)) <= 1e-12);
}

TEST_CASE("ii3 golden values") {
  CHECK(ii3(2, 8, 4) == 0.0);
  CHECK(ii3(1, 2, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ii3(2, 4, 4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ii3(2, 4, 8) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS(ii3(0, 1, 1));
  CHECK_THROWS(ii3(1, -2, 1));

  Rng rng(4);
  for (int s = 0; s < 10000; ++s) {
    const double x = std::exp(rng.normal()), y = std::exp(rng.normal()), z = std::exp(rng.normal());
    CHECK(std::abs(ii3(x, y, z) - (1.0 - std::exp(-std::abs(std::log(y / (x * z)))))) <= 1e-12);
  }
}

TEST_CASE("ii3_matrix") {
  const auto c = ii3_matrix(from_gauge_vector(Group::rplus(), GaugeVector{{PositiveReal{1}, PositiveReal{3}, PositiveReal{0.5}, PositiveReal{7}}}));
  CHECK(c.value == doctest::Approx(0.0).epsilon(1e-15));

  const auto r3 = ii3_matrix(rplus_upper(3, {2, 4, 4}));
  CHECK(r3.value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(*r3.worst == Triad{0, 1, 2});

  // a01=2, a02=4, a03=8, a12=2, a13=4, a23=4
  const PCMatrix a4 = rplus_upper(4, {2, 4, 8, 2, 4, 4});
  // Brute-force oracle over the four triads.
  double best = -1;
  Triad arg;
  for (const Triad t : {Triad{0, 1, 2}, Triad{0, 1, 3}, Triad{0, 2, 3}, Triad{1, 2, 3}}) {
    const double x = rplus_value(a4(t.i, t.j)), y = rplus_value(a4(t.i, t.k)), z = rplus_value(a4(t.j, t.k));
    const double v = 1.0 - std::min(y / (x * z), x * z / y);
    if (v > best) best = v, arg = t;
  }
  // (0,2,3) and (1,2,3) both score 0.5; the tie goes to (0,2,3).
  CHECK(best == doctest::Approx(0.5));
  CHECK(arg == Triad{0, 2, 3});
  const auto r4 = ii3_matrix(a4);
  CHECK(r4.value == doctest::Approx(best).epsilon(1e-15));
  CHECK(*r4.worst == arg);

  const auto r2 = ii3_matrix(rplus_upper(2, {5}));
  CHECK(r2.value == 0.0);
  CHECK_FALSE(r2.worst);
  CHECK_THROWS(ii3_matrix(PCMatrix(Group::u1(), 3)));

  Rng rng(8);
  for (int s = 0; s < 200; ++s) {
    const double x = std::exp(rng.normal()), y = std::exp(rng.normal()), z = std::exp(rng.normal());
    CHECK(ii3_matrix(rplus_upper(3, {x, y, z})).value == ii3(x, y, z));
  }
}

TEST_CASE("ii_n_chain") {
  Rng rng(12);
  const Group g = Group::rplus();
  CHECK(ii_n_chain(from_gauge_vector(g, random_gauge(g, 6, rng))) <= 1e-12);
  CHECK(ii_n_chain(rplus_upper(3, {2, 4, 4})) == doctest::Approx(0.5));
  CHECK(ii_n_chain(rplus_upper(4, {2, 4, 8, 2, 4, 4})) == doctest::Approx(0.5));
  CHECK(ii_n_chain(rplus_upper(2, {3})) == 0.0);

  // ii3 and ii_n vanish together, on consistent matrices and on perturbed ones.
  for (int s = 0; s < 300; ++s) {
    const std::size_t n = 3 + s % 4;
    PCMatrix a = from_gauge_vector(g, random_gauge(g, n, rng));
    if (s % 2) {
      const std::size_t i = rng.below(n - 1), j = i + 1 + rng.below(n - 1 - i);
      a.set(i, j, g.multiply(a(i, j), g.make(std::exp(0.2 + rng.uniform()))));
    }
    const bool zero3 = ii3_matrix(a).value <= 1e-12;
    const bool zero_n = ii_n_chain(a) <= 1e-12;
    CHECK(zero3 == zero_n);
    CHECK(zero3 == (s % 2 == 0));
  }
}

TEST_CASE("ii_indicator") {
  Rng rng(2);
  for (const Group& g : all_groups()) {
    CHECK(ii_indicator(from_gauge_vector(g, random_gauge(g, 4, rng))).value <= 1e-12);
  }
  const auto r = ii_indicator(rplus_upper(3, {2, 4, 4}));
  CHECK(r.value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(*r.worst == Triad{0, 1, 2});

  const auto u = ii_indicator(u1_upper(3, {0.3, 0.1, 0.5}));
  CHECK(u.value == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(*u.worst == Triad{0, 1, 2});

  const IndicatorMap bad = [](const Group&, const Element&) { return 1.0; };
  CHECK_THROWS_WITH(ii_indicator(rplus_upper(3, {2, 4, 4}), bad), "not an indicator map");

  // On R+*, ii3 = 1 - exp(-ii_In) triad by triad, so the argmax agrees.
  const Group g = Group::rplus();
  for (int s = 0; s < 200; ++s) {
    PCMatrix a(g, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) a.set(i, j, g.make(std::exp(rng.normal())));
    const auto k = ii3_matrix(a);
    const auto in = ii_indicator(a);
    CHECK(k.value == doctest::Approx(1.0 - std::exp(-in.value)).epsilon(1e-12));
    CHECK(*k.worst == *in.worst);
    CHECK(ii_indicator(a, ii3_scale_indicator()).value == doctest::Approx(k.value).epsilon(1e-12));
  }
}

TEST_CASE("consistency agrees with a vanishing indicator") {
  Rng rng(6);
  for (const Group& g : all_groups()) {
    CAPTURE(g.tag());
    for (int s = 0; s < 200; ++s) {
      PCMatrix a = from_gauge_vector(g, random_gauge(g, 5, rng));
      if (s % 2) a.set(1, 3, g.multiply(a(1, 3), random_element(g, rng)));
      for (double tol : {1e-9, 1e-3, 0.5}) {
        const bool consistent = is_consistent(a, tol).consistent;
        CHECK(consistent == (ii_indicator(a).value <= tol));
      }
    }
  }
}

TEST_CASE("gauge_extract and from_gauge_vector") {
  for (const Group& g : all_groups()) {
    const GaugeVector lambda = gauge_extract(PCMatrix(g, 3));
    for (const auto& l : lambda.values) CHECK(l == g.identity());
  }
  const Group rp = Group::rplus();
  const PCMatrix c = from_gauge_vector(rp, GaugeVector{{PositiveReal{1}, PositiveReal{2}, PositiveReal{6}}});
  CHECK(rplus_value(c(0, 1)) == 2.0);
  CHECK(rplus_value(c(0, 2)) == 6.0);
  CHECK(rplus_value(c(1, 2)) == 3.0);
  const GaugeVector back = gauge_extract(c);
  CHECK(rplus_value(back[1]) == 2.0);
  CHECK(rplus_value(back[2]) == 6.0);

  CHECK(from_gauge_vector(rp, GaugeVector{{PositiveReal{1}, PositiveReal{1}, PositiveReal{1}}}) == PCMatrix(rp, 3));

  Rng rng(31);
  for (const Group& g : all_groups()) {
    CAPTURE(g.tag());
    for (Variance v : {Variance::Covariant, Variance::Contravariant}) {
      const GaugeVector lambda = random_gauge(g, 5, rng);
      const PCMatrix a = from_gauge_vector(g, lambda, v);
      CHECK(a.variance() == v);
      CHECK(is_consistent(a, 1e-12).consistent);
      const GaugeVector expected = normalized(g, lambda, v);
      const GaugeVector got = gauge_extract(a, 1e-10);
      for (std::size_t i = 0; i < 5; ++i) CHECK(g.distance(got[i], expected[i]) <= 1e-10);

      // A global translation of lambda leaves the matrix unchanged.
      const Element shift = random_element(g, rng);
      GaugeVector moved;
      for (const auto& l : lambda.values) {
        moved.values.push_back(v == Variance::Covariant ? g.multiply(shift, l) : g.multiply(l, shift));
      }
      CHECK(max_entry_distance(from_gauge_vector(g, moved, v), a) <= 1e-10);
    }
  }

  try {
    gauge_extract(rplus_upper(4, {2, 4, 8, 2, 4, 4}));
    FAIL("expected InconsistentMatrix");
  } catch (const InconsistentMatrix& e) {
    CHECK(e.witness == Triad{0, 2, 3});
    CHECK(std::string(e.what()).starts_with("no gauge vector exists"));
  }
}

TEST_CASE("gauge_transform") {
  Rng rng(41);
  for (const Group& g : all_groups()) {
    CAPTURE(g.tag());
    for (Variance v : {Variance::Covariant, Variance::Contravariant}) {
      PCMatrix a(g, 4, v);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) a.set(i, j, random_element(g, rng));

      GaugeVector ones{std::vector<Element>(4, g.identity())};
      CHECK(max_entry_distance(gauge_transform(a, ones), a) <= 1e-15);

      const GaugeVector mu = random_gauge(g, 4, rng);
      const PCMatrix b = gauge_transform(a, mu);
      CHECK(validate(b).empty());
      CHECK(std::abs(ii_indicator(b).value - ii_indicator(a).value) <= 1e-10);
      if (g.abelian()) {
        for_each_triad(4, [&](const Triad& t) {
          CHECK(g.distance(triad_holonomy(b, t.i, t.j, t.k), triad_holonomy(a, t.i, t.j, t.k)) <= 1e-12);
        });
      }
      for_each_triad(4, [&](const Triad& t) {
        const Element expected = conjugate(g, mu[t.i], triad_holonomy(a, t.i, t.j, t.k));
        CHECK(g.distance(triad_holonomy(b, t.i, t.j, t.k), expected) <= 1e-10);
      });
    }
  }
  PCMatrix gapped(Group::u1(), 3);
  gapped.clear(0, 2);
  const PCMatrix moved = gauge_transform(gapped, GaugeVector{{Phase{0.1}, Phase{0.2}, Phase{0.3}}});
  CHECK_FALSE(moved.has(0, 2));
  CHECK_THROWS(gauge_transform(gapped, GaugeVector{{Phase{0.1}}}));
}

TEST_CASE("random_pc_matrix") {
  Rng rng(42);
  for (const Group& g : {Group::u1(), Group::su2(), Group::zmod(3)}) {
    CHECK(is_consistent(random_pc_matrix(g, 2, rng)).consistent);
  }
  CHECK(random_pc_matrix(Group::zmod(1), 4, rng) == PCMatrix(Group::zmod(1), 4));
  Rng a(42), b(42);
  const PCMatrix m1 = random_pc_matrix(Group::u1(), 3, a);
  const PCMatrix m2 = random_pc_matrix(Group::u1(), 3, b);
  CHECK(m1 == m2);
  CHECK(validate(m1).empty());
  CHECK_THROWS_WITH(random_pc_matrix(Group::rplus(), 3, rng), "no normalized Haar measure");
}

TEST_CASE("exhaustive Z_5 oracle for consistency") {
  const Group g = Group::zmod(5);
  for (std::size_t n : {2u, 3u, 4u}) {
    const std::size_t slots = n * (n - 1) / 2;
    std::size_t total = 1;
    for (std::size_t s = 0; s < slots; ++s) total *= 5;
    std::size_t consistent_count = 0;
    for (std::size_t code = 0; code < total; ++code) {
      // Raw residue table, independent of PCMatrix.
      std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
      std::size_t c = code;
      std::vector<Element> upper;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          r[i][j] = static_cast<int>(c % 5);
          r[j][i] = (5 - r[i][j]) % 5;
          upper.push_back(Residue{r[i][j]});
          c /= 5;
        }
      bool brute = true;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if ((r[i][j] + r[j][k]) % 5 != r[i][k]) brute = false;
      for (Variance v : {Variance::Covariant, Variance::Contravariant}) {
        const PCMatrix a = PCMatrix::from_upper(g, n, upper, v);
        REQUIRE(is_consistent(a).consistent == brute);
      }
      consistent_count += brute;
    }
    // Consistent matrices are parametrized by lambda_1..lambda_{n-1}.
    std::size_t expected = 1;
    for (std::size_t s = 1; s < n; ++s) expected *= 5;
    CHECK(consistent_count == expected);
  }
}
