#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hahn/model.hpp"
#include "hahn/numeric.hpp"

namespace hahn {

enum class HahnCase { I = 1, II = 2, III = 3, IV = 4 };

std::string to_string(HahnCase c);

/// Hahn parameters of the time-t slice. The weight in the shifted
/// coordinate x' = x - shift is (alpha+1)_{x'} (beta+1)_{M-x'} / (x'! (M-x')!)
/// up to a constant, on the support [support_lo, support_hi].
struct SliceParams {
  int t = 0;
  HahnCase case_tag = HahnCase::I;
  long alpha = 0;
  long beta = 0;
  long M = 0;
  long shift = 0;
  long support_lo = 0;
  long support_hi = 0;

  bool contains(long x) const { return x >= support_lo && x <= support_hi; }
  long size() const { return M + 1; }

  friend bool operator==(const SliceParams&, const SliceParams&) = default;
};

/// Cases whose defining inequalities hold at time t (one or two of them).
std::vector<HahnCase> admissible_cases(const ModelParams& model, int t);

/// Parameters for an explicit case, without checking its inequalities.
SliceParams slice_params_for_case(const ModelParams& model, int t, HahnCase c);

/// The lowest-numbered admissible case. When two cases apply, their weight
/// sequences are compared exactly and IdentityViolation is thrown on mismatch.
SliceParams slice_params(const ModelParams& model, int t);

/// 1 / (x! (t-x+N-1)! (S-x+N-1)! (T-t-S+x)!), zero outside the support.
Rational weight(const ModelParams& model, int t, long x);

/// (alpha+1)_{x'} (beta+1)_{M-x'} / (x'! (M-x')!) for 0 <= x' <= M.
Rational pochhammer_weight(long alpha, long beta, long M, long xp);

/// The constant lambda_t with pochhammer_weight = lambda_t * weight on the
/// whole support; throws IdentityViolation if the ratio is not constant.
Rational pochhammer_to_factorial_ratio(const ModelParams& model, int t);

/// Terminating 3F2(-k, -x', k+alpha+beta+1; -M, alpha+1; 1), 0 <= k <= M.
/// Throws DegenerateParameters when a vanishing denominator meets a
/// nonzero numerator.
Rational hahn_Q(long k, long xp, long alpha, long beta, long M);

/// Same series summed exactly and rounded once at the end.
double hahn_Q_float(long k, long xp, long alpha, long beta, long M);

/// Coefficient of x'^k in hahn_Q.
Rational hahn_leading_coefficient(long k, long alpha, long beta, long M);

/// Closed-form squared norm with respect to |pochhammer_weight|:
///   (-1)^k (k+a+b+1)_{M+1} (b+1)_k k! / ((2k+a+b+1) (a+1)_k (-M)_k M!)
/// times the (constant) sign of the weight. Throws DegenerateParameters if
/// the result is not positive.
Rational hahn_norm2(long k, long alpha, long beta, long M);

/// sum_{x'=0..M} |pochhammer_weight(x')| Q_k(x')^2.
Rational hahn_norm2_direct(long k, long alpha, long beta, long M);

/// Exact Hahn data of one time slice, with the weight in factorial form.
/// Holds H_k(x) for the requested columns (all of the support by default)
/// and every squared norm. Immutable after construction.
class SliceBasis {
 public:
  SliceBasis(const ModelParams& model, int t);
  SliceBasis(const ModelParams& model, int t, std::vector<long> columns);

  const ModelParams& model() const { return model_; }
  const SliceParams& params() const { return params_; }
  long dimension() const { return params_.M + 1; }

  const Rational& weight(long x) const;
  /// Squared norm of H_k with respect to weight().
  const Rational& norm2(long k) const { return norms_.at(k); }
  /// sum of weight() over the support (the squared norm of H_0).
  const Rational& weight_total() const { return norms_.at(0); }

  /// H_k(x) = Q_k(x - shift); 0 outside the support.
  const Rational& H(long k, long x) const;

  /// f_k(x) = H_k(x) sqrt(w(x) / norm2(k)); 0 outside the support or for
  /// k beyond the slice dimension.
  SignedSqrt f(long k, long x) const;
  double f_float(long k, long x) const;

  bool has_column(long x) const;

 private:
  struct Column {
    Rational weight;
    std::vector<Rational> values;
  };

  const Column* column(long x) const;

  ModelParams model_;
  SliceParams params_;
  std::vector<Rational> norms_;
  std::map<long, Column> columns_;
};

/// f_n^t(x) for the model (builds a SliceBasis; use SliceBasis directly for
/// repeated evaluation).
SignedSqrt orthonormal_function(const ModelParams& model, long n, int t, long x);

/// Residuals of the two contiguous relations
///   (*)  x' Q_k(x'-1; a, b, M-1) + (M - x') Q_k(x'; a, b, M-1) - M Q_k(x'; a, b, M)
///   (**) x' Q_k(x'-1; a+1, b-1, M) - (x'+a+1) Q_k(x'; a+1, b-1, M)
///          + (a+1) Q_k(x'; a, b, M)
/// at the slice parameters of time t, x' = x - shift. A relation whose
/// series hit a degenerate denominator is reported as std::nullopt.
struct ContiguousResiduals {
  std::optional<Rational> lowered_size;
  std::optional<Rational> shifted_parameters;
};
ContiguousResiduals contiguous_relation_residuals(const ModelParams& model,
                                                  int t, long k, long x);

/// sum_k Q_k(x) Q_k(y) / h_k - delta_{xy} / w(x), where h_k is the raw
/// closed-form norm for the Pochhammer weight w.
Rational dual_orthogonality_residual(long alpha, long beta, long M, long x,
                                     long y);

/// k (k+a+b+1) Q_k(x') - [B Q_k(x'+1) - (B + D) Q_k(x') + D Q_k(x'-1)] with
/// B = (x'+a+1)(x'-M), D = x'(x'-b-M-1), at the slice parameters of time t.
Rational difference_relation_residual(const ModelParams& model, int t, long k,
                                      long x);

namespace detail {
// The 3F2 series without the 0 <= k <= M precondition; relations evaluate
// it at neighbouring parameters.
Rational hahn_series(long k, const Rational& xp, long alpha, long beta, long M);
}  // namespace detail

}  // namespace hahn
