#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "hahn/hahn_polynomials.hpp"
#include "hahn/model.hpp"
#include "hahn/numeric.hpp"

namespace hahn {

struct CorrelationQuery {
  std::vector<SpaceTimePoint> points;
};

/// Extended kernel of the path ensemble, with every slice basis and transfer
/// eigenvalue it needs precomputed.
///
/// Two gauges are exposed. The natural gauge is the orthonormal-function
/// form (sums of c-products times f^s(x) f^t(y)); its entries are single
/// signed square roots. The rational gauge multiplies an entry by
/// F(x,s)/F(y,t) with F(x,s) = 1/sqrt(w_s(x) D_0 ... D_{s-1}) and
/// D_j = (j+N)(T+N-j-1); there every entry is rational:
///   s >= t:  sum_{i<N}  H_i^s(x) H_i^t(y) w_t(y) / (n_i^s g_i^t ... g_i^{s-1})
///   s <  t: -sum_{i>=N} g_i^s ... g_i^{t-1} H_i^s(x) H_i^t(y) w_t(y) / n_i^s
/// where n_i^s are squared norms and g the rational transfer eigenvalues.
/// Determinants are gauge invariant, so correlations are exact rationals.
class DynamicalKernel {
 public:
  /// Every time slice with every support column.
  explicit DynamicalKernel(const ModelParams& model);

  /// Only the slices spanned by the points, with columns at those points.
  DynamicalKernel(const ModelParams& model,
                  const std::vector<SpaceTimePoint>& points);

  const ModelParams& model() const { return model_; }
  const SliceBasis& slice(int t) const;

  /// Kernel in the rational gauge; 0 when either point is off its support.
  Rational gauge_value(const SpaceTimePoint& p, const SpaceTimePoint& q) const;

  /// Kernel in the natural gauge, exact.
  SignedSqrt value(const SpaceTimePoint& p, const SpaceTimePoint& q) const;

  /// Natural gauge in binary64: f and c are rounded first, then summed.
  double value_float(const SpaceTimePoint& p, const SpaceTimePoint& q) const;

  /// Rational transfer eigenvalue g_i^j (0 when i does not survive to j+1).
  const Rational& eigenvalue(int j, long i) const;

 private:
  void build(const std::map<int, std::vector<long>>& columns, int t_lo,
             int t_hi);

  ModelParams model_;
  int t_lo_ = 0;
  std::vector<SliceBasis> slices_;               // t_lo_ .. t_hi
  std::vector<std::vector<Rational>> eigen_;     // [j - t_lo_][i]
};

/// Static kernel sum_{n<N} f_n^t(x) f_n^t(y).
SignedSqrt static_kernel(const ModelParams& model, int t, long x, long y);
double static_kernel_float(const ModelParams& model, int t, long x, long y);

/// -sum_{i>=N} f_i^t(x) f_i^t(y), equal to the static kernel minus the
/// identity on the support.
SignedSqrt complementary_kernel(const ModelParams& model, int t, long x, long y);

SignedSqrt extended_kernel(const ModelParams& model, const SpaceTimePoint& p,
                           const SpaceTimePoint& q);
double extended_kernel_float(const ModelParams& model, const SpaceTimePoint& p,
                             const SpaceTimePoint& q);

/// Kernel restricted to a query. natural(i,j) is the natural-gauge entry
/// K(points[i], points[j]); gauged holds the rational-gauge entries (exact
/// mode only) and values the binary64 entries.
struct KernelMatrix {
  std::vector<SpaceTimePoint> points;
  NumericBackend backend;
  Matrix<SignedSqrt> natural;
  Matrix<Rational> gauged;
  Matrix<double> values;
};

KernelMatrix kernel_matrix(const DynamicalKernel& kernel,
                           const CorrelationQuery& query,
                           const NumericBackend& backend);

struct CorrelationResult {
  Mode mode = Mode::Exact;
  std::optional<Rational> exact;  // set in exact mode
  double value = 0.0;
  double pivot_ratio = 1.0;       // float mode conditioning report
};

/// det of the kernel matrix on the query points; exact mode is Bareiss over
/// the rational gauge, float mode is pivoted elimination of natural entries.
CorrelationResult correlation(const DynamicalKernel& kernel,
                              const CorrelationQuery& query,
                              const NumericBackend& backend);
CorrelationResult correlation(const ModelParams& model,
                              const CorrelationQuery& query,
                              const NumericBackend& backend = NumericBackend::exact());

/// K*(p, q) = K(p, q) F(p) / F(q). Throws InputError if F vanishes at a point.
using GaugeFunction = std::function<Rational(const SpaceTimePoint&)>;
Matrix<Rational> gauge_transform(const Matrix<Rational>& values,
                                 const std::vector<SpaceTimePoint>& points,
                                 const GaugeFunction& F);

/// Rational-gauge matrices on the supports of slices s and t (rows indexed by
/// x - support_lo). transfer_gauged(j) is the bidiagonal one-step operator
/// from j to j+1; complementary_gauged(s) is the tail projection at s.
Matrix<Rational> transfer_gauged(const ModelParams& model, int j);
Matrix<Rational> complementary_gauged(const DynamicalKernel& kernel, int s);

/// Max entry of |K(., s; ., t) - Kc_s U_s ... U_{t-1}| over the supports,
/// exactly, for s < t. Zero when the operator factorization holds.
Rational factorization_residual(const DynamicalKernel& kernel, int s, int t);

}  // namespace hahn
