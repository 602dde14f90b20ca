#include <cmath>

#include "doctest.h"

#include "coherence/exact.hpp"
#include "coherence/generators.hpp"
#include "coherence/spectral.hpp"
#include "oracles.hpp"

using namespace coherence;
using namespace coherence::exact;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

Rational n_half(int n) { return Rational(2 * static_cast<long>(family_vertex_count(n))); }

}  // namespace

TEST_CASE("rational printing") {
  CHECK(to_string(q(6, 4)) == "3/2");
  CHECK(to_string(Rational(5)) == "5/1");
  CHECK(to_double(q(1, 4)) == 0.25);
}

TEST_CASE("scaled rationals") {
  const ScaledRational a(q(-24, 5));
  CHECK(a.mantissa() == q(-1, 5));
  CHECK(a.exponent2() == 3);
  CHECK(a.exponent3() == 1);
  CHECK(a.value() == q(-24, 5));
  CHECK(a.sign() == -1);
  CHECK(a.to_string() == "-1/5*2^3*3^1");
  const ScaledRational b(q(1, 18), 1, 2);
  CHECK(b.value() == 1);
  CHECK(b == ScaledRational(Rational(1)));
  CHECK((a * b).value() == q(-24, 5));
  CHECK(ScaledRational(Rational(0), 4, 4) == ScaledRational());
}

TEST_CASE("truncated polynomial arithmetic") {
  const TruncPoly a{1, 2, 3, 4};
  const TruncPoly b{0, 1};
  CHECK(a * b == TruncPoly{0, 1, 2, 3});
  CHECK(a.shifted_up(2) == TruncPoly{0, 0, 1, 2});
  CHECK(TruncPoly{0, 5, 6, 7}.shifted_down() == TruncPoly{5, 6, 7, 0});
  CHECK_THROWS(a.shifted_down());
  CHECK(a + b - b == a);
  CHECK(3 * b == TruncPoly{0, 3});
  // (1 - x)(1 + x + x^2 + x^3) = 1 - x^4, truncated.
  CHECK(TruncPoly{1, -1} * TruncPoly{1, 1, 1, 1} == TruncPoly{1});
  const std::vector<std::vector<TruncPoly>> m{{TruncPoly{2}, TruncPoly{1}}, {TruncPoly{1}, TruncPoly{3}}};
  CHECK(determinant(m) == TruncPoly{5});
}

TEST_CASE("seed polynomials of the triangle") {
  const auto s = seed_polyquad();
  CHECK(s.p == TruncPoly{-9, 6, -1, 0});
  CHECK(s.q == TruncPoly{3, -4, 1, 0});
  CHECK(s.r == TruncPoly{2, -1, 0, 0});
  CHECK(s.x == TruncPoly{-3, 1, 0, 0});
  const auto e = exact_sums(s);
  CHECK(e.h_fo == q(1, 9));
  CHECK(e.h_so == q(1, 27));
}

TEST_CASE("normalized recursion state") {
  auto pq = seed_polyquad();
  struct Frozen {
    std::int64_t e2, e3;
    long p0;
  };
  const Frozen frozen[] = {{0, 0, -324}, {3, 2, -43740}, {16, 11, -29760696}};
  for (const auto& f : frozen) {
    pq = recursion_step(pq);
    CHECK(pq.scale_log2 == f.e2);
    CHECK(pq.scale_log3 == f.e3);
    CHECK(pq.p[0] == f.p0);
  }
}

TEST_CASE("recursion matches exact traces of the generated graph") {
  for (int n = 0; n <= 3; ++n) {
    const auto tr = oracle::rational_traces(psfw_iterative(n).graph);
    const auto e = psfw_recursion(n);
    CHECK(e.s == tr.s);
    CHECK(e.t == tr.t);
    CHECK(e.h_fo == tr.s / n_half(n));
  }
}

TEST_CASE("first generation values") {
  CHECK(psfw_recursion(1).h_fo == q(65, 432));
  CHECK(psfw_recursion(1).h_so == q(1073, 15552));
  CHECK(psfw_theorem1(1).h_fo == q(65, 432));
  CHECK(psfw_theorem1(1).h_so == q(1073, 15552));
  CHECK(sierpinski_theorem2(1).h_fo == q(65, 432));
  CHECK(sierpinski_theorem2(1).h_so == q(1073, 15552));
}

TEST_CASE("recursion agrees with the PSFW closed form") {
  for (int n = 1; n <= 15; ++n) {
    const auto r = psfw_recursion(n);
    const auto t = psfw_theorem1(n);
    CHECK(r.h_fo == t.h_fo);
    CHECK(r.h_so == t.h_so);
  }
}

TEST_CASE("Sierpinski closed form matches exact traces") {
  for (int n = 1; n <= 3; ++n) {
    const auto tr = oracle::rational_traces(sierpinski(n).graph);
    const auto t = sierpinski_theorem2(n);
    CHECK(t.h_fo == tr.s / n_half(n));
    CHECK(t.h_so == tr.t / n_half(n));
  }
}

TEST_CASE("closed-form coefficients equal the recursion coefficients") {
  auto pq = seed_polyquad();
  for (int n = 0; n <= 7; ++n) {
    const auto c = closed_coeffs(n);
    for (char which : {'p', 'q', 'r', 'x'})
      for (int i = 0; i < 3; ++i) CHECK(c.of(which)[i] == pq.coefficient(which, i));
    pq = recursion_step(pq);
  }
  CHECK_NOTHROW(closed_coeffs(20));
  CHECK_THROWS(closed_coeffs(-1));
}

TEST_CASE("theorem domain") {
  CHECK_THROWS_WITH(psfw_theorem1(0), doctest::Contains("outside theorem domain"));
  CHECK_THROWS_WITH(sierpinski_theorem2(0), doctest::Contains("outside theorem domain"));
  CHECK(theorem(Family::Sierpinski, 2).h_fo == sierpinski_theorem2(2).h_fo);
}

TEST_CASE("closed forms match dense spectra") {
  for (int n = 1; n <= 4; ++n)
    for (auto f : {Family::Psfw, Family::Sierpinski}) {
      const auto d = coherence_from_spectrum(spectrum(generate(f, n).graph));
      const auto t = theorem(f, n);
      CHECK(d.h_fo == doctest::Approx(to_double(t.h_fo)).epsilon(1e-10));
      CHECK(d.h_so == doctest::Approx(to_double(t.h_so)).epsilon(1e-10));
    }
}

TEST_CASE("large generations stay fast and consistent") {
  const auto r = psfw_recursion(30);
  CHECK(to_double(r.h_fo) == doctest::Approx(25.0 / 84).epsilon(1e-3));
  CHECK(r.h_so > 0);
}

TEST_CASE("asymptotic helpers") {
  CHECK(asymptote_exponent(Family::Psfw, Order::First) == 0.0);
  CHECK(asymptote_exponent(Family::Psfw, Order::Second) == doctest::Approx(std::log(4.0) / std::log(3.0) - 1));
  CHECK(asymptote_exponent(Family::Sierpinski, Order::Second) ==
        doctest::Approx(std::log(25.0) / std::log(3.0) - 1));
  CHECK(asymptote(Family::Psfw, Order::First, 1e6) == doctest::Approx(25.0 / 84));
  CHECK_THROWS(asymptote(Family::Psfw, Order::First, 1));
}
