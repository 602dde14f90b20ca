#pragma once

// Exact rational machinery for the coherence of the pseudofractal
// scale-free web (PSFW) and the Sierpinski gasket.
//
// The PSFW route tracks four determinants of (L_n - lambda I): the full
// characteristic polynomial P_n, the minor Q_n with one hub row/column
// removed, R_n with two hubs removed, and X_n with the row of hub A and
// the column of hub B removed. Their low-order coefficients obey a closed
// cubic recursion; Vieta's formulas turn the first three coefficients of
// P_n / lambda into S_n = sum 1/lambda_i and T_n = sum 1/lambda_i^2.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coherence/generators.hpp"

namespace coherence::exact {

using Integer = mpz_class;
using Rational = mpq_class;

/// "numerator/denominator" in base 10 (integers print as "k/1").
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// mantissa * 2^e2 * 3^e3, kept with every factor of 2 and 3 moved out of
/// the mantissa. Lets values such as 2^(3^20/4) be compared without being
/// expanded.
class ScaledRational {
 public:
  ScaledRational() = default;
  ScaledRational(Rational mantissa, std::int64_t e2 = 0, std::int64_t e3 = 0);

  const Rational& mantissa() const { return mantissa_; }
  std::int64_t exponent2() const { return e2_; }
  std::int64_t exponent3() const { return e3_; }
  int sign() const { return sgn(mantissa_); }

  /// Fully expanded value. Size grows with the exponents.
  Rational value() const;
  std::string to_string() const;

  friend bool operator==(const ScaledRational& a, const ScaledRational& b) {
    return a.mantissa_ == b.mantissa_ && (a.mantissa_ == 0 || (a.e2_ == b.e2_ && a.e3_ == b.e3_));
  }
  friend ScaledRational operator*(const ScaledRational& a, const ScaledRational& b);

 private:
  Rational mantissa_{0};
  std::int64_t e2_ = 0;
  std::int64_t e3_ = 0;
};

/// Polynomial in lambda truncated after the lambda^3 term.
class TruncPoly {
 public:
  static constexpr int kTerms = 4;

  TruncPoly() = default;
  TruncPoly(std::initializer_list<long> coefficients);
  explicit TruncPoly(std::array<Rational, kTerms> coefficients) : c_(std::move(coefficients)) {}

  const Rational& operator[](int i) const { return c_[i]; }
  Rational& operator[](int i) { return c_[i]; }

  /// lambda^k * this, truncated.
  TruncPoly shifted_up(int k = 1) const;
  /// this / lambda; requires a zero constant term. The top coefficient
  /// becomes zero because the lambda^4 term was never kept.
  TruncPoly shifted_down() const;

  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b);
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b);
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator*(long k, TruncPoly a);
  friend bool operator==(const TruncPoly& a, const TruncPoly& b) { return a.c_ == b.c_; }

 private:
  std::array<Rational, kTerms> c_{};
};

/// Determinant of a small square matrix of truncated polynomials by
/// cofactor expansion.
TruncPoly determinant(const std::vector<std::vector<TruncPoly>>& m);

/// State of the PSFW recursion at generation n. The stored polynomials are
/// the true ones divided by 2^scale_log2 * 3^scale_log3; the recursion is
/// homogeneous of degree three, so the common factor drops out of every
/// Vieta ratio and is only needed to report raw coefficients.
struct PolyQuad {
  int generation = 0;
  TruncPoly p;  // P_n / lambda; coefficients 0..2 are exact, 3 is not carried
  TruncPoly q;
  TruncPoly r;
  TruncPoly x;
  std::int64_t scale_log2 = 0;
  std::int64_t scale_log3 = 0;

  /// True (unscaled) coefficient i of polynomial 'p', 'q', 'r' or 'x'.
  ScaledRational coefficient(char which, int i) const;
};

/// Generation 0 from determinants of (L - lambda I) for the triangle:
/// P from the full matrix, Q without hub A, R without hubs A and B, X
/// without row A and column B.
PolyQuad seed_polyquad();

/// One application of the cubic recursion for (P, Q, R, X), followed by
/// removal of the common power of 2 and 3. Throws "recursion inconsistency"
/// if the new characteristic polynomial does not vanish at lambda = 0.
PolyQuad recursion_step(const PolyQuad& pq);

struct ExactCoherence {
  int generation = 0;
  Rational s;  // sum of 1/lambda_i over nonzero eigenvalues
  Rational t;  // sum of 1/lambda_i^2
  Rational h_fo;
  Rational h_so;
};

/// S = -p1/p0, T = S^2 - 2 p2/p0, H = S/(2N), T/(2N).
ExactCoherence exact_sums(const PolyQuad& pq);

/// Seed, n recursion steps and exact_sums.
ExactCoherence psfw_recursion(int n);

/// Closed-form coefficients p, q, r, x of orders 0..2 at generation n.
struct ClosedCoefficients {
  int generation = 0;
  std::array<ScaledRational, 3> p, q, r, x;

  const std::array<ScaledRational, 3>& of(char which) const;
};

/// Throws "closed-form transcription inconsistency at n=..." if any
/// quarter-integer exponent fails to be an integer.
ClosedCoefficients closed_coeffs(int n);

struct TheoremValue {
  int generation = 0;
  Rational h_fo;
  Rational h_so;
};

/// Closed forms for the PSFW (n >= 1).
TheoremValue psfw_theorem1(int n);
/// Closed forms for the Sierpinski gasket (n >= 1).
TheoremValue sierpinski_theorem2(int n);
TheoremValue theorem(Family family, int n);

enum class Order { First = 1, Second = 2 };

/// Leading-order prediction c * N^alpha for the given family and order.
double asymptote(Family family, Order order, double n_vertices);
double asymptote_exponent(Family family, Order order);
double asymptote_prefactor(Family family, Order order);

}  // namespace coherence::exact
