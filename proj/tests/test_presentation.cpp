#include "doctest.h"

#include "torsionlab/presentation.hpp"

#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace torsionlab;

namespace {

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(TORSIONLAB_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Word rand_word(std::mt19937_64& rng, int gens, int len) {
  std::uniform_int_distribution<int> g(0, gens - 1);
  std::uniform_int_distribution<int> s(0, 1);
  std::vector<Letter> letters;
  for (int i = 0; i < len; ++i) letters.push_back({g(rng), s(rng) ? 1 : -1});
  return Word(std::move(letters));
}

// r - 1 as a group ring element.
GroupRingElement minus_one(const Word& r) {
  return GroupRingElement::of_word(r) - GroupRingElement::one();
}

}  // namespace

TEST_CASE("parser basics") {
  const GroupPresentation p =
      parse_presentation("generators: a b\nrelators: a b a b^-1 a^-1 b^-1\n");
  CHECK(p.generators == std::vector<std::string>{"a", "b"});
  CHECK(p.relators.size() == 1);
  CHECK(p.relators[0].size() == 6);
  CHECK(!p.meridian.has_value());
  CHECK(shape(p) == PresentationShape::KnotExterior);

  const GroupPresentation free1 = parse_presentation("generators: a\nrelators:\n");
  CHECK(free1.rank() == 1);
  CHECK(free1.relators.empty());

  CHECK_THROWS_AS(parse_presentation("relators: a\ngenerators: a\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("generators: a a\nrelators:\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("generators: a\nrelators: a b\n"), ParseError);

  try {
    parse_presentation("generators: a\nrelators: a c\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col > 0);
  }
}

TEST_CASE("meridian is moved last") {
  const GroupPresentation p = parse_presentation(data_file("trefoil.pres"));
  CHECK(p.generators == std::vector<std::string>{"b", "a"});
  REQUIRE(p.meridian.has_value());
  CHECK(*p.meridian == 1);
  CHECK(p.relators.size() == 1);
  CHECK(p.relators[0].size() == 6);
}

TEST_CASE("parse serialize round trip") {
  std::mt19937_64 rng(1);
  for (const char* name : {"trefoil.pres", "figure8.pres", "unknot.pres"}) {
    const GroupPresentation p = parse_presentation(data_file(name));
    CHECK(parse_presentation(serialize(p)) == p);
  }
  const GroupPresentation fig = parse_presentation(data_file("figure8.pres"));
  REQUIRE(fig.volume.has_value());
  CHECK(*fig.volume == doctest::Approx(2.029883212819).epsilon(1e-12));
}

TEST_CASE("fox derivative rules") {
  const Word a = Word::generator(0);
  const Word b = Word::generator(1);

  CHECK(fox_derivative(a, 0) == GroupRingElement::one());
  CHECK(fox_derivative(a, 1).is_zero());
  CHECK(fox_derivative(a.inverse(), 0) ==
        -GroupRingElement::of_word(a.inverse()));

  // Trefoil relator in (a, b) order: d/da = 1 + ab - abab^-1a^-1.
  const Word r = a * b * a * b.inverse() * a.inverse() * b.inverse();
  const GroupRingElement expected =
      GroupRingElement::one() + GroupRingElement::of_word(a * b) -
      GroupRingElement::of_word(a * b * a * b.inverse() * a.inverse());
  CHECK(fox_derivative(r, 0) == expected);

  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Word u = rand_word(rng, 3, 6);
    const Word v = rand_word(rng, 3, 6);
    for (int g = 0; g < 3; ++g) {
      CHECK(fox_derivative(u * v, g) ==
            fox_derivative(u, g) +
                GroupRingElement::of_word(u) * fox_derivative(v, g));
    }
    // Fundamental formula: sum_j d(w)/da_j (a_j - 1) = w - 1.
    GroupRingElement total;
    for (int g = 0; g < 3; ++g)
      total += fox_derivative(u, g) *
               (GroupRingElement::of_word(Word::generator(g)) -
                GroupRingElement::one());
    CHECK(total == minus_one(u));
  }
}

TEST_CASE("boundary matrices") {
  const GroupPresentation tre = parse_presentation(data_file("trefoil.pres"));
  const BoundaryMaps maps = boundary_matrices(tre);
  CHECK(maps.d2.rows() == 1);
  CHECK(maps.d2.cols() == 2);
  CHECK(maps.d1.rows() == 2);
  CHECK(maps.d1.cols() == 1);
  CHECK(!maps.d3.has_value());
  for (Index j = 0; j < 2; ++j) {
    CHECK(maps.d1(j, 0) ==
          GroupRingElement::one() -
              GroupRingElement::of_word(Word::generator(static_cast<int>(j))));
    CHECK(maps.d2(0, j) == fox_derivative(tre.relators[0], static_cast<int>(j)));
  }

  const GroupPresentation free1 = parse_presentation("generators: a\nrelators:\n");
  const BoundaryMaps fm = boundary_matrices(free1);
  CHECK(fm.d2.rows() == 0);
  CHECK(fm.d2.cols() == 1);
  CHECK(fm.d1(0, 0) ==
        GroupRingElement::one() - GroupRingElement::of_word(Word::generator(0)));
}

TEST_CASE("reduced jacobian") {
  const GroupPresentation tre = parse_presentation(data_file("trefoil.pres"));
  const ReducedJacobian rj = reduced_jacobian(tre);
  CHECK(rj.J.rows() == 1);
  CHECK(rj.J.cols() == 1);
  CHECK(rj.c.rows() == 1);
  CHECK(rj.c.cols() == 1);
  CHECK(rj.J(0, 0) == fox_derivative(tre.relators[0], 0));
  CHECK(rj.c(0, 0) == fox_derivative(tre.relators[0], 1));
  CHECK(rj.J(0, 0).l1_norm() == 3);

  // <a, m | a m a^-1 m^-1> with meridian m: J entry is 1 - a m a^-1.
  const GroupPresentation cm = parse_presentation(
      "generators: a m\nrelators: a m a^-1 m^-1\nmeridian: m\n");
  CHECK(cm.generators == std::vector<std::string>{"a", "m"});
  const Word a = Word::generator(0);
  const Word m = Word::generator(1);
  CHECK(reduced_jacobian(cm).J(0, 0) ==
        GroupRingElement::one() -
            GroupRingElement::of_word(a * m * a.inverse()));

  CHECK_THROWS_AS(
      reduced_jacobian(parse_presentation(
          "generators: a b c\nrelators: a b a^-1 b^-1 ; b c b^-1 c^-1 ; "
          "c a c^-1 a^-1\nduals: a ; b ; c\n")),
      Error);
}

TEST_CASE("alexander polynomials") {
  const GroupPresentation unk = parse_presentation(data_file("unknot.pres"));
  const GroupPresentation tre = parse_presentation(data_file("trefoil.pres"));
  const GroupPresentation fig = parse_presentation(data_file("figure8.pres"));

  CHECK(abelianized_alexander(unk).str() == "1");
  CHECK(abelianized_alexander(tre).shifted_coeffs() ==
        std::vector<Int>{1, -1, 1});
  CHECK(abelianized_alexander(fig).shifted_coeffs() ==
        std::vector<Int>{1, -3, 1});

  CHECK(abelianization_degrees(unk) == std::vector<long>{1});
  CHECK(abelianization_degrees(tre) == std::vector<long>{1, 1});
  CHECK(abelianization_degrees(fig) == std::vector<long>{0, 0, 1});

  for (const GroupPresentation* p : {&unk, &tre, &fig}) {
    Int at_one = abelianized_alexander(*p).eval(Int(1));
    if (at_one < 0) at_one = -at_one;
    CHECK(at_one == 1);
    const std::vector<long> deg = abelianization_degrees(*p);
    CHECK(deg.size() == static_cast<size_t>(p->rank()));
    CHECK(deg[static_cast<size_t>(*p->meridian)] == 1);
    long g = 0;
    for (long d : deg) g = std::gcd(g, d);
    CHECK(g == 1);
    for (const Word& r : p->relators) {
      long pair = 0;
      for (int j = 0; j < p->rank(); ++j)
        pair += r.exponent_sum(j) * deg[static_cast<size_t>(j)];
      CHECK(pair == 0);
    }
  }

  // Abelianization Z^2 is rejected.
  CHECK_THROWS_AS(abelianization_degrees(parse_presentation(
                      "generators: a m\nrelators: a m a^-1 m^-1\nmeridian: m\n")),
                  Error);
}
