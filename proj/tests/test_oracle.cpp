#include <doctest.h>

#include <set>

#include "checks.hpp"
#include "gcf/error.hpp"
#include "gcf/oracle.hpp"
#include "support.hpp"

using namespace gcf;
using namespace gcf::oracle;
using namespace gcf::test;

namespace {

FormMatrix F(std::vector<std::vector<Rational>> g) { return FormMatrix::from_grid(g); }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("best approximations") {
  const auto r = best_approximations({Rational(2, 5)}, 10);
  REQUIRE(r.size() == 3);
  CHECK(r[0].q == 1);
  CHECK(r[0].err2 == Rational(4, 25));
  CHECK(r[1].q == 2);
  CHECK(r[1].p == std::vector<Integer>{1});
  CHECK(r[1].err2 == Rational(1, 25));
  CHECK(r[2].q == 5);
  CHECK(r[2].err2 == 0);

  const auto z = best_approximations({0}, 10);
  REQUIRE(z.size() == 1);
  CHECK(z[0].q == 1);
  CHECK(z[0].err2 == 0);

  const auto h = best_approximations({Rational(1, 2)}, 10);
  REQUIRE(h.size() == 2);
  CHECK(h[0].q == 1);
  CHECK(h[1].q == 2);

  const auto two = best_approximations({Rational(1, 3), Rational(1, 7)}, 30);
  CHECK(two.back().q == 21);
  CHECK(two.back().p == std::vector<Integer>{7, 3});
}

TEST_CASE("classical continued fraction") {
  const auto c = classical_cf(Rational(2, 5));
  REQUIRE(c.size() == 3);
  CHECK(c[0] == Fraction{0, 1});
  CHECK(c[1] == Fraction{1, 2});
  CHECK(c[2] == Fraction{2, 5});
  CHECK(classical_cf(0) == std::vector<Fraction>{{0, 1}});
  const auto f = classical_cf(Rational(610, 987));
  CHECK(f.size() == 15);
  CHECK(f.back() == Fraction{610, 987});
  CHECK(classical_cf(Rational(-7, 3)).back() == Fraction{-7, 3});
}

TEST_CASE("successive minima") {
  const auto id = successive_minima(FormMatrix::identity(3), 3, 1);
  CHECK(id.values == std::vector<Rational>{1, 1, 1});

  const auto m = successive_minima(F({{2, 1}, {1, 3}}), 2, 3);
  CHECK(m.values == std::vector<Rational>{2, 3});
  CHECK(m.witnesses[0] == std::vector<Integer>{1, 0});

  const auto d = successive_minima(F({{4, 0}, {0, 1}}), 2, 4);
  CHECK(d.values == std::vector<Rational>{1, 4});
  CHECK(d.witnesses[0] == std::vector<Integer>{0, 1});
  CHECK(d.witnesses[1] == std::vector<Integer>{1, 0});

  CHECK_THROWS_AS(successive_minima(F({{4, 0}, {0, 1}}), 2, 3), Error);
  try {
    successive_minima(F({{4, 0}, {0, 1}}), 2, 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundTooSmall);
  }
}

TEST_CASE("short vectors") {
  const auto v = enumerate_short_vectors(F({{2, 1}, {1, 3}}), 3);
  // +-(1,0), +-(0,1), +-(1,-1)
  CHECK(v.size() == 6);
  for (const auto& x : v) CHECK(evaluate(F({{2, 1}, {1, 3}}), x) <= 3);
}

TEST_CASE("integer relations") {
  const auto a = relation_search({Rational(2, 5)}, 5);
  CHECK(a.l == std::vector<Integer>{-2, 5});
  CHECK(a.value == 0);

  const auto b = relation_search({Rational(1, 2), Rational(1, 3)}, 3);
  CHECK(b.l == std::vector<Integer>{-1, 2, 0});
  CHECK(b.value == 0);
  // A zero coordinate gives the shortest relation of all.
  CHECK(relation_search({Rational(1, 2), 0}, 2).l == std::vector<Integer>{0, 0, 1});

  const auto c = relation_search({0}, 3);
  CHECK(c.l == std::vector<Integer>{0, 1});

  const auto s = relation_search({parse_rational(kSqrt2), (1 + parse_rational(kSqrt2)) / 2}, 3);
  CHECK(s.value == 0);
  CHECK(s.l == std::vector<Integer>{-1, -1, 2});
}

TEST_CASE("property: continued fraction denominators are best approximations") {
  Gen g(41);
  for (int it = 0; it < 100; ++it) {
    const Rational a = g.rational(500);
    std::set<Integer> best;
    for (const auto& r : best_approximations({a}, 500)) best.insert(r.q);
    const auto cf = classical_cf(a);
    CAPTURE(a.get_str());
    // Every convergent after the first is a record, with the usual
    // exception at a half-integer tail (q = 1 and q = 2 can tie).
    for (std::size_t i = 1; i < cf.size(); ++i) {
      if (cf[i].q <= 2 && i + 1 == cf.size() && best.count(cf[i].q) == 0) continue;
      CHECK(best.count(cf[i].q) == 1);
    }
  }
}

TEST_CASE("property: Hermite bound on the first minimum") {
  // mu_1^n <= (4/3)^{n(n-1)/2} D
  Gen g(42);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 2 + it % 3;
    const FormMatrix q = g.form(n, 30);
    const auto mu = all_minima(q);
    CHECK(pow(mu[0], n) <= pow(Rational(4, 3), n * (n - 1) / 2) * q.determinant());
    CHECK(pow(mu[0], n) <= pow(Rational(2 * n, 3), n) * q.determinant());
    for (std::size_t i = 1; i < n; ++i) CHECK(mu[i - 1] <= mu[i]);
  }
}

}
