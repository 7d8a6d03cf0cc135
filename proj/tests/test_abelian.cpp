#include "doctest.h"

#include "torsionlab/abelian.hpp"
#include "torsionlab/presentation.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace torsionlab;

namespace {

const char* kTrefoil =
    "generators: a b\nrelators: a b a b^-1 a^-1 b^-1\nmeridian: a\n";
const char* kFigure8 =
    "generators: x y m\nrelators: m x m^-1 y^-1 x^-1 ; m y m^-1 y^-1 x^-1 "
    "y^-1\nmeridian: m\n";
const char* kUnknot = "generators: a\nrelators:\nmeridian: a\n";

LaurentPoly rand_poly(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<int> c(-4, 4);
  LaurentPoly f;
  for (int d = 0; d <= deg; ++d)
    f = f + LaurentPoly(Int(c(rng))) * LaurentPoly::monomial(d);
  return f;
}

std::vector<Int> cyclo(int n) {
  // t^n - 1 in ascending coefficient order.
  std::vector<Int> c(static_cast<size_t>(n) + 1, 0);
  c.front() = -1;
  c.back() = 1;
  return c;
}

}  // namespace

TEST_CASE("resultant") {
  const std::vector<Int> lin1 = {-1, 1};  // t - 1
  const std::vector<Int> lin2 = {-2, 1};  // t - 2
  Int r = resultant(lin1, lin2);
  if (r < 0) r = -r;
  CHECK(r == 1);

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const LaurentPoly f = rand_poly(rng, 2);
    const LaurentPoly g = rand_poly(rng, 3);
    const LaurentPoly h = rand_poly(rng, 2);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    const Int lhs = resultant((f * g).shifted_coeffs(), h.shifted_coeffs());
    const Int rhs = resultant(f.shifted_coeffs(), h.shifted_coeffs()) *
                    resultant(g.shifted_coeffs(), h.shifted_coeffs());
    CHECK(lhs == rhs);
    Int ab = resultant(f.shifted_coeffs(), g.shifted_coeffs());
    Int ba = resultant(g.shifted_coeffs(), f.shifted_coeffs());
    if (ab < 0) ab = -ab;
    if (ba < 0) ba = -ba;
    CHECK(ab == ba);
  }
}

TEST_CASE("resultant against float root product") {
  const LaurentPoly tre = abelianized_alexander(parse_presentation(kTrefoil));
  const LaurentPoly fig = abelianized_alexander(parse_presentation(kFigure8));
  for (const LaurentPoly* delta : {&tre, &fig}) {
    for (int n = 1; n <= 50; ++n) {
      Int res = resultant(delta->shifted_coeffs(), cyclo(n));
      if (res < 0) res = -res;
      double prod = 1.0;
      for (int j = 0; j < n; ++j) {
        const double theta = 2.0 * M_PI * j / n;
        prod *= std::abs(delta->eval(std::complex<double>(
            std::cos(theta), std::sin(theta))));
      }
      if (res == 0) {
        CHECK(prod == doctest::Approx(0.0).epsilon(1e-6));
      } else {
        CHECK(res.get_d() == doctest::Approx(prod).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("branched cover torsion orders") {
  const LaurentPoly tre = abelianized_alexander(parse_presentation(kTrefoil));
  const long expected[] = {1, 3, 4, 3, 1, 0};
  for (int n = 1; n <= 6; ++n)
    CHECK(cyclic_branched_torsion(tre, n) == expected[n - 1]);

  const LaurentPoly fig = abelianized_alexander(parse_presentation(kFigure8));
  // |tr(A^n) - 2| for the fibre monodromy A with tr A = 3: Lucas-style
  // recurrence a(n+1) = 3 a(n) - a(n-1).
  Int prev = 3, cur = 7;
  for (int n = 2; n <= 10; ++n) {
    const Int want = cur - 2;
    CHECK(cyclic_branched_torsion(fig, n) == want);
    const Int next = 3 * cur - prev;
    prev = cur;
    cur = next;
  }
}

TEST_CASE("mahler measure") {
  const LaurentPoly tminus2 = LaurentPoly::monomial(1) - LaurentPoly(Int(2));
  CHECK(mahler_measure(tminus2) == doctest::Approx(2.0).epsilon(1e-9));

  LaurentPoly cyc;
  for (long d = 0; d <= 4; ++d) cyc = cyc + LaurentPoly::monomial(d);
  CHECK(mahler_measure(cyc) == doctest::Approx(1.0).epsilon(1e-6));

  const LaurentPoly fig = abelianized_alexander(parse_presentation(kFigure8));
  CHECK(mahler_measure(fig) ==
        doctest::Approx((3.0 + std::sqrt(5.0)) / 2).epsilon(1e-9));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const LaurentPoly f = rand_poly(rng, 3);
    const LaurentPoly g = rand_poly(rng, 2);
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(mahler_measure(f * g) ==
          doctest::Approx(mahler_measure(f) * mahler_measure(g)).epsilon(1e-8));
  }

  CHECK_THROWS_AS(mahler_measure(LaurentPoly()), Error);
}

TEST_CASE("growth report") {
  const GroupPresentation tre = parse_presentation(kTrefoil);
  const GrowthReport gt = growth_report(tre, 6);
  CHECK(gt.alexander.shifted_coeffs() == std::vector<Int>{1, -1, 1});
  REQUIRE(gt.rows.size() == 5);
  const long orders[] = {3, 4, 3, 1, 0};
  for (size_t i = 0; i < gt.rows.size(); ++i) {
    CHECK(gt.rows[i].n == static_cast<long>(i) + 2);
    CHECK(gt.rows[i].torsion == orders[i]);
    CHECK(gt.rows[i].betti_jump == (gt.rows[i].n == 6));
    if (gt.rows[i].torsion > 0) {
      REQUIRE(gt.rows[i].log_torsion_over_n.has_value());
      CHECK(*gt.rows[i].log_torsion_over_n ==
            doctest::Approx(std::log(static_cast<double>(orders[i])) /
                            static_cast<double>(gt.rows[i].n))
                .epsilon(1e-12));
    } else {
      CHECK(!gt.rows[i].log_torsion_over_n.has_value());
    }
  }
  CHECK(gt.mahler == doctest::Approx(1.0).epsilon(1e-9));

  const GroupPresentation unk = parse_presentation(kUnknot);
  const GrowthReport gu = growth_report(unk, 4);
  CHECK(gu.rows.size() == 3);
  for (const GrowthRow& row : gu.rows) {
    CHECK(row.torsion == 1);
    CHECK(!row.betti_jump);
  }
  CHECK(gu.log_mahler == doctest::Approx(0.0));

  CHECK_THROWS_AS(growth_report(tre, 1), Error);
}
