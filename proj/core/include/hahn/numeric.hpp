#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hahn/errors.hpp"

namespace hahn {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Mode { Exact, Float };

/// Selects exact rational evaluation or binary64 with a comparison tolerance.
struct NumericBackend {
  Mode mode = Mode::Exact;
  double tol = 1e-10;

  static NumericBackend exact() { return {Mode::Exact, 1e-10}; }
  static NumericBackend floating(double tol = 1e-10);
};

Integer factorial(long n);

/// C(n, k), zero unless 0 <= k <= n.
Integer binomial(long n, long k);

/// num / den in lowest terms.
Rational ratio(long num, long den);

/// Rising factorial (a)_i = a (a+1) ... (a+i-1).
Rational pochhammer(const Rational& a, long i);
Integer pochhammer(long a, long i);

/// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& q);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
double to_double(const Rational& q);
int sign(const Rational& q);

/// sign * sqrt(square) with square >= 0 rational. Used wherever an exact
/// value carries a single square root (orthonormal functions, natural-gauge
/// kernel entries) so that checks stay inside rational arithmetic.
class SignedSqrt {
 public:
  SignedSqrt() = default;
  SignedSqrt(int sign, Rational square);

  static SignedSqrt from_rational(const Rational& q);

  int sign() const { return sign_; }
  const Rational& square() const { return square_; }
  bool is_zero() const { return sign_ == 0; }

  /// The value as a rational when square() is a perfect square.
  std::optional<Rational> rational() const;
  double to_double() const;
  /// "p/q" when rational, otherwise "sqrt(p/q)" or "-sqrt(p/q)".
  std::string str() const;

  SignedSqrt operator*(const SignedSqrt& other) const;
  SignedSqrt operator*(const Rational& q) const;
  SignedSqrt operator/(const SignedSqrt& other) const;

  friend bool operator==(const SignedSqrt& a, const SignedSqrt& b) {
    return a.sign_ == b.sign_ && a.square_ == b.square_;
  }

 private:
  int sign_ = 0;
  Rational square_ = 0;
};

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols_; ++c) {
      std::swap((*this)(a, c), (*this)(b, c));
    }
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Fraction-free (Bareiss) elimination. Divisions are exact for Integer, and
// plain field divisions for Rational, so both stay exact.
template <typename T>
T bareiss_determinant(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("determinant of a non-square matrix");
  if (n == 0) return T(1);
  int det_sign = 1;
  T prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return T(0);
      m.swap_rows(k, p);
      det_sign = -det_sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        v /= prev;
        m(i, j) = v;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  T det = m(n - 1, n - 1);
  if (det_sign < 0) det = -det;
  return det;
}

struct FloatDeterminant {
  double value = 1.0;
  /// min |pivot| / max |pivot| over the elimination; 1 for an empty matrix.
  double pivot_ratio = 1.0;
};

/// Gaussian elimination with partial pivoting plus a conditioning report.
FloatDeterminant pivoted_determinant(Matrix<double> m);

}  // namespace hahn
