#include "hahn/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace hahn {

NumericBackend NumericBackend::floating(double tol) {
  if (!(tol > 0.0)) throw InputError("float backend needs a positive tolerance");
  return {Mode::Float, tol};
}

Integer factorial(long n) {
  if (n < 0) throw InputError("factorial of a negative number");
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Integer binomial(long n, long k) {
  if (n < 0) throw InputError("binomial with negative top argument");
  if (k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

Rational ratio(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pochhammer(const Rational& a, long i) {
  Rational out = 1;
  for (long j = 0; j < i; ++j) out *= a + j;
  return out;
}

Integer pochhammer(long a, long i) {
  Integer out = 1;
  for (long j = 0; j < i; ++j) out *= a + j;
  return out;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational out(rn, rd);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

double to_double(const Rational& q) {
  // mpq_get_d truncates but handles operands far outside double range.
  return mpq_get_d(q.get_mpq_t());
}

int sign(const Rational& q) { return sgn(q); }

SignedSqrt::SignedSqrt(int s, Rational square) : square_(std::move(square)) {
  square_.canonicalize();
  if (sgn(square_) < 0) throw InputError("SignedSqrt needs a non-negative square");
  sign_ = (s == 0 || sgn(square_) == 0) ? 0 : (s > 0 ? 1 : -1);
  if (sign_ == 0) square_ = 0;
}

SignedSqrt SignedSqrt::from_rational(const Rational& q) {
  return SignedSqrt(sgn(q), q * q);
}

std::optional<Rational> SignedSqrt::rational() const {
  auto r = exact_sqrt(square_);
  if (!r) return std::nullopt;
  return sign_ < 0 ? Rational(-*r) : *r;
}

double SignedSqrt::to_double() const {
  return sign_ * std::sqrt(hahn::to_double(square_));
}

std::string SignedSqrt::str() const {
  if (auto r = rational()) return to_string(*r);
  return (sign_ < 0 ? "-sqrt(" : "sqrt(") + to_string(square_) + ")";
}

SignedSqrt SignedSqrt::operator*(const SignedSqrt& other) const {
  return SignedSqrt(sign_ * other.sign_, square_ * other.square_);
}

SignedSqrt SignedSqrt::operator*(const Rational& q) const {
  return SignedSqrt(sign_ * sgn(q), square_ * q * q);
}

SignedSqrt SignedSqrt::operator/(const SignedSqrt& other) const {
  if (other.is_zero()) throw InputError("SignedSqrt division by zero");
  return SignedSqrt(sign_ * other.sign_, square_ / other.square_);
}

FloatDeterminant pivoted_determinant(Matrix<double> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("determinant of a non-square matrix");
  FloatDeterminant out;
  if (n == 0) return out;
  double det = 1.0;
  double min_pivot = INFINITY;
  double max_pivot = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    }
    const double pivot = m(p, k);
    min_pivot = std::min(min_pivot, std::abs(pivot));
    max_pivot = std::max(max_pivot, std::abs(pivot));
    if (pivot == 0.0) {
      out.value = 0.0;
      out.pivot_ratio = 0.0;
      return out;
    }
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = m(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  out.value = det;
  out.pivot_ratio = max_pivot > 0.0 ? min_pivot / max_pivot : 0.0;
  return out;
}

}  // namespace hahn
