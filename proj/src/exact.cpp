#include "coherence/exact.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace coherence::exact {

namespace {

Integer ipow(unsigned long base, long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, static_cast<unsigned long>(exponent));
  return r;
}

// Moves every factor `prime` out of `z`, returning how many were removed.
std::int64_t strip(Integer& z, unsigned long prime) {
  if (z == 0) return 0;
  Integer f = prime;
  return static_cast<std::int64_t>(mpz_remove(z.get_mpz_t(), z.get_mpz_t(), f.get_mpz_t()));
}

Rational scale(const Rational& m, std::int64_t e2, std::int64_t e3) {
  Integer num = m.get_num(), den = m.get_den();
  auto apply = [&](unsigned long prime, std::int64_t e) {
    if (e > 0) num *= ipow(prime, e);
    if (e < 0) den *= ipow(prime, -e);
  };
  apply(2, e2);
  apply(3, e3);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

ScaledRational::ScaledRational(Rational mantissa, std::int64_t e2, std::int64_t e3)
    : mantissa_(std::move(mantissa)), e2_(e2), e3_(e3) {
  mantissa_.canonicalize();
  if (mantissa_ == 0) {
    e2_ = e3_ = 0;
    return;
  }
  Integer num = mantissa_.get_num(), den = mantissa_.get_den();
  e2_ += strip(num, 2) - strip(den, 2);
  e3_ += strip(num, 3) - strip(den, 3);
  mantissa_ = Rational(num, den);
}

Rational ScaledRational::value() const { return scale(mantissa_, e2_, e3_); }

std::string ScaledRational::to_string() const {
  std::string s = exact::to_string(mantissa_);
  if (e2_) s += "*2^" + std::to_string(e2_);
  if (e3_) s += "*3^" + std::to_string(e3_);
  return s;
}

ScaledRational operator*(const ScaledRational& a, const ScaledRational& b) {
  return ScaledRational(a.mantissa_ * b.mantissa_, a.e2_ + b.e2_, a.e3_ + b.e3_);
}

TruncPoly::TruncPoly(std::initializer_list<long> coefficients) {
  int i = 0;
  for (long c : coefficients) {
    if (i < kTerms) c_[i] = c;
    ++i;
  }
}

TruncPoly TruncPoly::shifted_up(int k) const {
  TruncPoly out;
  for (int i = kTerms - 1; i >= k; --i) out.c_[i] = c_[i - k];
  return out;
}

TruncPoly TruncPoly::shifted_down() const {
  if (c_[0] != 0) throw Error("cannot divide by lambda: nonzero constant term");
  TruncPoly out;
  for (int i = 0; i + 1 < kTerms; ++i) out.c_[i] = c_[i + 1];
  return out;
}

TruncPoly operator+(TruncPoly a, const TruncPoly& b) {
  for (int i = 0; i < TruncPoly::kTerms; ++i) a.c_[i] += b.c_[i];
  return a;
}

TruncPoly operator-(TruncPoly a, const TruncPoly& b) {
  for (int i = 0; i < TruncPoly::kTerms; ++i) a.c_[i] -= b.c_[i];
  return a;
}

TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
  TruncPoly out;
  for (int i = 0; i < TruncPoly::kTerms; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j < TruncPoly::kTerms; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return out;
}

TruncPoly operator*(long k, TruncPoly a) {
  for (auto& c : a.c_) c *= k;
  return a;
}

TruncPoly determinant(const std::vector<std::vector<TruncPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return TruncPoly{1};
  if (n == 1) return m[0][0];
  TruncPoly det;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<TruncPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<TruncPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    const TruncPoly term = m[0][col] * determinant(minor);
    det = (col % 2 == 0) ? det + term : det - term;
  }
  return det;
}

ScaledRational PolyQuad::coefficient(char which, int i) const {
  const TruncPoly* poly = nullptr;
  switch (which) {
    case 'p': poly = &p; break;
    case 'q': poly = &q; break;
    case 'r': poly = &r; break;
    case 'x': poly = &x; break;
    default: throw Error(std::string("unknown polynomial '") + which + "'");
  }
  if (i < 0 || i >= TruncPoly::kTerms) throw Error("coefficient index out of range");
  return ScaledRational((*poly)[i], scale_log2, scale_log3);
}

PolyQuad seed_polyquad() {
  // (L - lambda I) of the triangle, hubs A=0, B=1, C=2.
  const TruncPoly diag{2, -1};
  const TruncPoly off{-1};
  const std::vector<std::vector<TruncPoly>> full{{diag, off, off}, {off, diag, off}, {off, off, diag}};
  auto submatrix = [&](std::vector<int> rows, std::vector<int> cols) {
    std::vector<std::vector<TruncPoly>> out;
    for (int r : rows) {
      std::vector<TruncPoly> row;
      for (int c : cols) row.push_back(full[r][c]);
      out.push_back(std::move(row));
    }
    return out;
  };

  PolyQuad pq;
  pq.generation = 0;
  pq.p = determinant(full).shifted_down();
  pq.q = determinant(submatrix({1, 2}, {1, 2}));
  pq.r = determinant(submatrix({2}, {2}));
  pq.x = determinant(submatrix({1, 2}, {0, 2}));
  return pq;
}

PolyQuad recursion_step(const PolyQuad& pq) {
  if (pq.p[0] == 0) throw Error("recursion inconsistency: P_n/lambda has zero constant term");

  const TruncPoly P = pq.p.shifted_up(1);
  const TruncPoly& Q = pq.q;
  const TruncPoly& R = pq.r;
  const TruncPoly& X = pq.x;
  const TruncPoly Q2 = Q * Q;
  const TruncPoly R2 = R * R;
  const TruncPoly R3 = R2 * R;
  const TruncPoly QR = Q * R;

  const TruncPoly P_next = 2 * (Q2 * Q) + 6 * (P * QR) + 9 * (Q2 * R).shifted_up(1) +
                           3 * (P * R2).shifted_up(1) + 6 * (Q * R2).shifted_up(2) +
                           R3.shifted_up(3) + 2 * (X * X * X);
  const TruncPoly Q_next = 3 * (Q2 * R) + P * R2 + 4 * (Q * R2).shifted_up(1) + R3.shifted_up(2);
  const TruncPoly R_next = 2 * (R2 * Q) + R3.shifted_up(1);
  const TruncPoly X_next = 2 * (QR * X) + (R2 * X).shifted_up(1) - R * X * X;

  if (P_next[0] != 0)
    throw Error("recursion inconsistency at n=" + std::to_string(pq.generation + 1) +
                ": characteristic polynomial does not vanish at zero");

  PolyQuad next;
  next.generation = pq.generation + 1;
  next.p = P_next.shifted_down();
  next.q = Q_next;
  next.r = R_next;
  next.x = X_next;

  // Pull the common power of 2 and 3 out of every carried coefficient.
  std::int64_t v2 = std::numeric_limits<std::int64_t>::max();
  std::int64_t v3 = v2;
  for (const TruncPoly* poly : {&next.p, &next.q, &next.r, &next.x}) {
    for (int i = 0; i < TruncPoly::kTerms; ++i) {
      const Rational& c = (*poly)[i];
      if (c == 0) continue;
      if (c.get_den() != 1) throw Error("recursion inconsistency: non-integer coefficient");
      Integer z = c.get_num();
      v2 = std::min(v2, static_cast<std::int64_t>(mpz_scan1(z.get_mpz_t(), 0)));
      v3 = std::min(v3, strip(z, 3));
    }
  }
  if (v2 == std::numeric_limits<std::int64_t>::max()) throw Error("recursion inconsistency: all zero");
  const Integer divisor = ipow(2, v2) * ipow(3, v3);
  for (TruncPoly* poly : {&next.p, &next.q, &next.r, &next.x})
    for (int i = 0; i < TruncPoly::kTerms; ++i) {
      Integer z = (*poly)[i].get_num();
      mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), divisor.get_mpz_t());
      (*poly)[i] = z;
    }
  next.scale_log2 = 3 * pq.scale_log2 + v2;
  next.scale_log3 = 3 * pq.scale_log3 + v3;

  if (next.p[0] == 0) throw Error("recursion inconsistency: P_n/lambda has zero constant term");
  return next;
}

ExactCoherence exact_sums(const PolyQuad& pq) {
  if (pq.p[0] == 0) throw Error("P_n/lambda has zero constant term");
  ExactCoherence out;
  out.generation = pq.generation;
  out.s = -pq.p[1] / pq.p[0];
  out.t = out.s * out.s - 2 * pq.p[2] / pq.p[0];
  out.s.canonicalize();
  out.t.canonicalize();
  const Rational two_n(2 * Integer(static_cast<unsigned long>(family_vertex_count(pq.generation))));
  out.h_fo = out.s / two_n;
  out.h_so = out.t / two_n;
  return out;
}

ExactCoherence psfw_recursion(int n) {
  if (n < 0) throw Error("generation must be non-negative");
  PolyQuad pq = seed_polyquad();
  for (int i = 0; i < n; ++i) pq = recursion_step(pq);
  return exact_sums(pq);
}

const std::array<ScaledRational, 3>& ClosedCoefficients::of(char which) const {
  switch (which) {
    case 'p': return p;
    case 'q': return q;
    case 'r': return r;
    case 'x': return x;
    default: throw Error(std::string("unknown polynomial '") + which + "'");
  }
}

namespace {

// Largest n for which 3^{n+1} fits comfortably in an int64 exponent.
constexpr int kClosedFormMaxGeneration = 36;

struct QuarterPowers {
  int n;
  std::int64_t quarter(std::int64_t numerator) const {
    if (numerator % 4 != 0)
      throw Error("closed-form transcription inconsistency at n=" + std::to_string(n));
    return numerator / 4;
  }
  // factor * 2^{e2/4} * 3^{e3/4} * bracket
  ScaledRational term(Rational factor, std::int64_t e2, std::int64_t e3, const Integer& bracket) const {
    return ScaledRational(factor * Rational(bracket), quarter(e2), quarter(e3));
  }
};

}  // namespace

ClosedCoefficients closed_coeffs(int n) {
  if (n < 0) throw Error("generation must be non-negative");
  if (n > kClosedFormMaxGeneration) throw Error("generation too large for closed-form exponents");
  const QuarterPowers qp{n};
  const std::int64_t t = static_cast<std::int64_t>(family_edge_count(n));  // 3^{n+1}
  const std::int64_t m = n;
  auto P = [](unsigned long b, long e) { return ipow(b, e); };
  const Rational one(1), seventh(1, 7), c5635(1, 5635);

  ClosedCoefficients c;
  c.generation = n;
  c.p[0] = qp.term(-one, -7 + t - 2 * m, 5 + t + 2 * m, 1 + P(3, n));
  c.q[0] = qp.term(one, -3 + t - 2 * m, 1 + t + 2 * m, 1);
  c.r[0] = qp.term(one, 1 + t + 2 * m, -3 + t - 2 * m, 1);
  c.x[0] = qp.term(-one, -3 + t - 2 * m, 1 + t + 2 * m, 1);

  c.p[1] = qp.term(seventh, -15 + t - 2 * m, 1 + t - 2 * m,
                   25 * P(2, n) - 7 * P(3, n) + 8 * P(3, 1 + 2 * n) + 25 * P(3, 1 + 3 * n) +
                       5 * P(6, 1 + n) - 35 * P(18, n));
  c.q[1] = qp.term(seventh, -11 + t - 2 * m, -3 + t - 2 * m,
                   -11 * P(2, 2 + n) + 7 * P(3, n) - 25 * P(3, 1 + 2 * n));
  c.r[1] = qp.term(seventh, -7 + t + 2 * m, -7 + t - 6 * m,
                   3 * P(2, 2 + n) - 25 * P(3, 1 + 2 * n) + 7 * P(3, n) * (P(2, 2 + n) - 1));
  c.x[1] = qp.term(seventh, -11 + t - 2 * m, -3 + t - 2 * m,
                   P(2, 1 + n) - 7 * P(3, n) + 25 * P(3, 1 + 2 * n) - 7 * P(6, 1 + n));

  c.p[2] = qp.term(c5635, -27 + t - 2 * m, -7 + t - 6 * m,
                   -41 * P(2, 7 + 2 * n) * P(3, 1 + n) - 9775 * P(2, 1 + n) * P(3, 3 + 2 * n) +
                       129283 * P(3, 1 + 3 * n) - 71875 * P(3, 3 + 5 * n) + 9039 * P(4, 2 + n) -
                       20125 * P(6, 1 + n) + 93541 * P(9, n) + 79373 * P(4, 2 + n) * P(9, n) +
                       147163 * P(9, 1 + 2 * n) + 100625 * P(2, 1 + n) * P(9, 1 + 2 * n) -
                       64975 * P(54, 1 + n));
  c.q[2] = qp.term(c5635, -23 + t - 2 * m, -11 + t - 6 * m,
                   8855 * P(2, 3 + n) * P(3, 1 + n) - 1127 * P(2, 7 + 2 * n) * P(3, 1 + n) +
                       71875 * P(3, 3 + 4 * n) - 18819 * P(4, 2 + n) - 93541 * P(9, n) -
                       61985 * P(4, 2 + n) * P(9, n) + 31625 * P(2, 3 + n) * P(9, 1 + n) -
                       36596 * P(27, 1 + n));
  c.r[2] = qp.term(c5635, -19 + t + 2 * m, -15 + t - 10 * m,
                   18873 * P(2, 3 + 2 * n) + 161 * P(2, 4 + 2 * n) * P(3, 3 + n) -
                       115 * P(2, 9 + n) * P(3, 1 + 2 * n) - 29288 * P(3, 2 + 3 * n) -
                       20125 * P(2, 3 + n) * P(3, 2 + 3 * n) + 71875 * P(3, 3 + 4 * n) -
                       805 * P(6, 3 + n) + 127351 * P(9, n) - 28175 * P(2, 3 + 2 * n) * P(9, n));
  c.x[2] = qp.term(c5635, -23 + t - 2 * m, -11 + t - 6 * m,
                   1413 * P(2, 3 + 2 * n) - 805 * P(2, 2 + n) * P(3, 1 + n) +
                       1771 * P(2, 4 + 2 * n) * P(3, 1 + n) - 71875 * P(3, 3 + 4 * n) +
                       93541 * P(9, n) - 28175 * P(2, 3 + 2 * n) * P(9, n) -
                       8165 * P(2, 4 + n) * P(9, 1 + n) + 36596 * P(27, 1 + n) +
                       20125 * P(2, 2 + n) * P(27, 1 + n));
  return c;
}

namespace {

void check_theorem_domain(int n) {
  if (n < 1) throw Error("n=" + std::to_string(n) + " is outside theorem domain (n >= 1); use exact_sums");
}

}  // namespace

TheoremValue psfw_theorem1(int n) {
  check_theorem_domain(n);
  auto P = [](unsigned long b, long e) { return ipow(b, e); };
  const Integer one_plus = 1 + P(3, n);

  const Integer fo_num = 25 * P(2, n) - 7 * P(3, n) + 8 * P(3, 1 + 2 * n) + 25 * P(3, 1 + 3 * n) +
                         5 * P(6, 1 + n) - 35 * P(18, n);
  const Integer fo_den = 28 * one_plus * one_plus * P(3, 2 + n);

  const Integer so_num =
      69538 * P(3, 2 + 5 * n) + 360249 * P(4, n) +
      35 * P(2, 2 + n) * P(3, 1 + n) * (1539 * P(2, n) - 575) +
      322 * P(27, n) * (1135 - 3225 * P(2, 1 + n) + 847 * P(2, 1 + 2 * n)) +
      P(3, 1 + 4 * n) * (516262 - 60375 * P(2, 2 + n) + 140875 * P(4, n)) +
      2 * P(9, n) * (55223 - 94875 * P(2, 1 + n) + 480487 * P(4, n));
  const Integer so_den = 90160 * one_plus * one_plus * one_plus * P(3, 4 + 2 * n);

  TheoremValue v;
  v.generation = n;
  v.h_fo = Rational(fo_num, fo_den);
  v.h_so = Rational(so_num, so_den);
  v.h_fo.canonicalize();
  v.h_so.canonicalize();
  return v;
}

TheoremValue sierpinski_theorem2(int n) {
  check_theorem_domain(n);
  auto P = [](unsigned long b, long e) { return ipow(b, e); };
  const Integer one_plus = 1 + P(3, n);

  const Integer fo_num = 4 * P(3, n) + 2 * P(3, 1 + 2 * n) - P(3, 1 + 3 * n) +
                         13 * P(3, 1 + n) * P(5, n) + 4 * P(5, 1 + n) + 14 * P(45, n);
  const Integer fo_den = 20 * P(3, 2 + n) * one_plus * one_plus;

  const Integer so_num = 86 * P(3, 1 + 4 * n) - 2 * P(3, 2 + 5 * n) + 754 * P(3, 1 + 2 * n) * P(5, n) +
                         568 * P(3, 1 + 3 * n) * P(5, n) + 32 * P(3, 2 + n) * P(5, 1 + 2 * n) +
                         119 * P(9, n) + 28 * P(5, n) * P(9, 1 + 2 * n) + 64 * P(15, 1 + n) +
                         8 * P(9, 1 + 2 * n) * P(25, n) + 24 * P(25, 1 + n) + 320 * P(27, n) +
                         1237 * P(225, n) + 394 * P(675, n);
  const Integer so_den = 400 * one_plus * one_plus * one_plus * P(9, 2 + n);

  TheoremValue v;
  v.generation = n;
  v.h_fo = Rational(fo_num, fo_den);
  v.h_so = Rational(so_num, so_den);
  v.h_fo.canonicalize();
  v.h_so.canonicalize();
  return v;
}

TheoremValue theorem(Family family, int n) {
  return family == Family::Psfw ? psfw_theorem1(n) : sierpinski_theorem2(n);
}

double asymptote_exponent(Family family, Order order) {
  const double log3 = std::log(3.0);
  if (family == Family::Psfw) return order == Order::First ? 0.0 : std::log(4.0) / log3 - 1.0;
  return order == Order::First ? std::log(5.0) / log3 - 1.0 : std::log(25.0) / log3 - 1.0;
}

double asymptote_prefactor(Family family, Order order) {
  if (family == Family::Psfw) return order == Order::First ? 25.0 / 84.0 : 25.0 / 432.0;
  return order == Order::First ? 7.0 / 90.0 : 1.0 / 450.0;
}

double asymptote(Family family, Order order, double n_vertices) {
  if (n_vertices < 3) throw Error("asymptote needs at least 3 vertices");
  return asymptote_prefactor(family, order) * std::pow(n_vertices, asymptote_exponent(family, order));
}

}  // namespace coherence::exact
