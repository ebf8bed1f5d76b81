#include "hahn/hahn_polynomials.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hahn {

std::string to_string(HahnCase c) {
  switch (c) {
    case HahnCase::I: return "I";
    case HahnCase::II: return "II";
    case HahnCase::III: return "III";
    case HahnCase::IV: return "IV";
  }
  return "?";
}

namespace {

void check_time(const ModelParams& model, int t) {
  if (t < 0 || t > model.T) {
    throw InputError("time " + std::to_string(t) + " outside 0.." +
                     std::to_string(model.T));
  }
}

// Factorial arguments of the weight; all must be >= 0 on the support.
std::array<long, 4> factorial_arguments(const ModelParams& m, int t, long x) {
  return {x, t - x + m.N - 1, m.S - x + m.N - 1, m.T - t - m.S + x};
}

}  // namespace

std::vector<HahnCase> admissible_cases(const ModelParams& m, int t) {
  check_time(m, t);
  std::vector<HahnCase> out;
  const int S = m.S, T = m.T;
  if (t <= std::min(S, T - S)) out.push_back(HahnCase::I);
  if (S <= t && t <= T - S) out.push_back(HahnCase::II);
  if (T - S <= t && t <= S) out.push_back(HahnCase::III);
  if (t >= std::max(S, T - S)) out.push_back(HahnCase::IV);
  return out;
}

SliceParams slice_params_for_case(const ModelParams& m, int t, HahnCase c) {
  check_time(m, t);
  const long N = m.N, S = m.S, T = m.T;
  SliceParams p;
  p.t = t;
  p.case_tag = c;
  p.support_lo = std::max(0L, t + S - T);
  p.support_hi = std::min<long>(t, S) + N - 1;
  switch (c) {
    case HahnCase::I:
      p.M = t + N - 1;
      p.alpha = -S - N;
      p.beta = S - T - N;
      p.shift = 0;
      break;
    case HahnCase::II:
      p.M = S + N - 1;
      p.alpha = -t - N;
      p.beta = t - N - T;
      p.shift = 0;
      break;
    case HahnCase::III:
      p.M = T - S + N - 1;
      p.alpha = -T + t - N;
      p.beta = -t - N;
      p.shift = t + S - T;
      break;
    case HahnCase::IV:
      p.M = T - t + N - 1;
      p.alpha = -T - N + S;
      p.beta = -S - N;
      p.shift = t + S - T;
      break;
  }
  return p;
}

SliceParams slice_params(const ModelParams& m, int t) {
  const auto cases = admissible_cases(m, t);
  if (cases.empty()) {
    throw IdentityViolation("no Hahn case applies at t=" + std::to_string(t));
  }
  const SliceParams chosen = slice_params_for_case(m, t, cases.front());
  if (chosen.support_hi - chosen.support_lo != chosen.M ||
      chosen.shift != chosen.support_lo) {
    throw IdentityViolation("case " + to_string(chosen.case_tag) +
                            " disagrees with the factorial support at t=" +
                            std::to_string(t));
  }
  for (std::size_t i = 1; i < cases.size(); ++i) {
    const SliceParams other = slice_params_for_case(m, t, cases[i]);
    if (other.M != chosen.M || other.shift != chosen.shift) {
      throw IdentityViolation("boundary cases disagree on the support at t=" +
                              std::to_string(t));
    }
    // Normalised Pochhammer weights must coincide.
    Rational sum_a = 0, sum_b = 0;
    std::vector<Rational> wa, wb;
    for (long xp = 0; xp <= chosen.M; ++xp) {
      wa.push_back(pochhammer_weight(chosen.alpha, chosen.beta, chosen.M, xp));
      wb.push_back(pochhammer_weight(other.alpha, other.beta, other.M, xp));
      sum_a += wa.back();
      sum_b += wb.back();
    }
    for (long xp = 0; xp <= chosen.M; ++xp) {
      if (wa[xp] / sum_a != wb[xp] / sum_b) {
        throw IdentityViolation("boundary cases disagree on the weight at t=" +
                                std::to_string(t));
      }
    }
  }
  return chosen;
}

Rational weight(const ModelParams& m, int t, long x) {
  check_time(m, t);
  Integer den = 1;
  for (long a : factorial_arguments(m, t, x)) {
    if (a < 0) return 0;
    den *= factorial(a);
  }
  return 1 / Rational(den);
}

Rational pochhammer_weight(long alpha, long beta, long M, long xp) {
  if (xp < 0 || xp > M) return 0;
  Rational out(pochhammer(alpha + 1, xp) * pochhammer(beta + 1, M - xp),
               factorial(xp) * factorial(M - xp));
  out.canonicalize();
  return out;
}

Rational pochhammer_to_factorial_ratio(const ModelParams& m, int t) {
  const SliceParams p = slice_params(m, t);
  std::optional<Rational> lambda;
  for (long x = p.support_lo; x <= p.support_hi; ++x) {
    const Rational r =
        pochhammer_weight(p.alpha, p.beta, p.M, x - p.shift) / weight(m, t, x);
    if (!lambda) {
      lambda = r;
    } else if (*lambda != r) {
      throw IdentityViolation("Pochhammer and factorial weights are not "
                              "proportional at t=" + std::to_string(t));
    }
  }
  if (!lambda || sgn(*lambda) == 0) {
    throw IdentityViolation("vanishing Pochhammer weight at t=" +
                            std::to_string(t));
  }
  return *lambda;
}

namespace detail {

Rational hahn_series(long k, const Rational& xp, long alpha, long beta,
                     long M) {
  if (k < 0) throw InputError("Hahn degree must be non-negative");
  Rational sum = 1;
  Rational term = 1;
  for (long i = 0; i < k; ++i) {
    const Rational num = Rational(i - k) * (Rational(i) - xp) *
                         Rational(k + alpha + beta + 1 + i);
    if (num == 0) break;  // every later term carries this factor
    const Integer den = Integer(i - M) * Integer(alpha + 1 + i) * Integer(i + 1);
    if (den == 0) {
      throw DegenerateParameters(
          "Hahn series: zero denominator with nonzero numerator (k=" +
          std::to_string(k) + ", alpha=" + std::to_string(alpha) +
          ", M=" + std::to_string(M) + ")");
    }
    term *= num;
    term /= den;
    sum += term;
  }
  return sum;
}

}  // namespace detail

Rational hahn_Q(long k, long xp, long alpha, long beta, long M) {
  if (k < 0 || k > M) throw InputError("hahn_Q needs 0 <= k <= M");
  return detail::hahn_series(k, Rational(xp), alpha, beta, M);
}

double hahn_Q_float(long k, long xp, long alpha, long beta, long M) {
  return to_double(hahn_Q(k, xp, alpha, beta, M));
}

Rational hahn_leading_coefficient(long k, long alpha, long beta, long M) {
  // i = k term: (-k)_k (-x)_k (k+a+b+1)_k / ((-M)_k (a+1)_k k!), and
  // (-k)_k (-x)_k = k! x^k + lower order.
  const Integer den = pochhammer(-M, k) * pochhammer(alpha + 1, k);
  if (den == 0) throw DegenerateParameters("Hahn leading coefficient undefined");
  Rational out(pochhammer(k + alpha + beta + 1, k), den);
  out.canonicalize();
  return out;
}

namespace {

Rational raw_norm2(long k, long alpha, long beta, long M) {
  const Integer num = pochhammer(k + alpha + beta + 1, M + 1) *
                      pochhammer(beta + 1, k) * factorial(k);
  const Integer den = Integer(2 * k + alpha + beta + 1) *
                      pochhammer(alpha + 1, k) * pochhammer(-M, k) *
                      factorial(M);
  if (den == 0) throw DegenerateParameters("Hahn norm: zero denominator");
  Rational out(num, den);
  out.canonicalize();
  if (k % 2 == 1) out = -out;
  return out;
}

// Sign of (a)_n without forming the product.
int pochhammer_sign(long a, long n) {
  if (n <= 0) return 1;
  if (a <= 0 && a + n - 1 >= 0) return 0;
  const long negatives = a < 0 ? std::min(-a, n) : 0;
  return negatives % 2 == 0 ? 1 : -1;
}

int weight_sign(long alpha, long beta, long M) {
  int s = 0;
  for (long xp = 0; xp <= M; ++xp) {
    const int here =
        pochhammer_sign(alpha + 1, xp) * pochhammer_sign(beta + 1, M - xp);
    if (here == 0 || (s != 0 && here != s)) {
      throw DegenerateParameters("Hahn weight is not of constant sign");
    }
    s = here;
  }
  return s;
}

}  // namespace

Rational hahn_norm2(long k, long alpha, long beta, long M) {
  if (k < 0 || k > M) throw InputError("hahn_norm2 needs 0 <= k <= M");
  Rational out = raw_norm2(k, alpha, beta, M);
  if (weight_sign(alpha, beta, M) < 0) out = -out;
  if (sgn(out) <= 0) {
    throw DegenerateParameters("Hahn norm is not positive for these parameters");
  }
  return out;
}

Rational hahn_norm2_direct(long k, long alpha, long beta, long M) {
  Rational out = 0;
  for (long xp = 0; xp <= M; ++xp) {
    const Rational q = hahn_Q(k, xp, alpha, beta, M);
    out += abs(pochhammer_weight(alpha, beta, M, xp)) * q * q;
  }
  return out;
}

SliceBasis::SliceBasis(const ModelParams& model, int t)
    : SliceBasis(model, t, [&] {
        const SliceParams p = slice_params(model, t);
        std::vector<long> all;
        for (long x = p.support_lo; x <= p.support_hi; ++x) all.push_back(x);
        return all;
      }()) {}

SliceBasis::SliceBasis(const ModelParams& model, int t,
                       std::vector<long> columns)
    : model_(model), params_(slice_params(model, t)) {
  const auto& p = params_;
  // Norms with respect to the factorial weight: closed form / |lambda|,
  // lambda taken at the lowest support point.
  const Rational lambda =
      pochhammer_weight(p.alpha, p.beta, p.M, 0) / hahn::weight(model, t, p.support_lo);
  const Rational abs_lambda = abs(lambda);
  norms_.reserve(p.M + 1);
  for (long k = 0; k <= p.M; ++k) {
    norms_.push_back(hahn_norm2(k, p.alpha, p.beta, p.M) / abs_lambda);
  }
  for (long x : columns) {
    if (!p.contains(x) || columns_.count(x)) continue;
    Column col;
    col.weight = hahn::weight(model, t, x);
    col.values.reserve(p.M + 1);
    for (long k = 0; k <= p.M; ++k) {
      col.values.push_back(hahn_Q(k, x - p.shift, p.alpha, p.beta, p.M));
    }
    columns_.emplace(x, std::move(col));
  }
}

bool SliceBasis::has_column(long x) const {
  return !params_.contains(x) || columns_.count(x) != 0;
}

const SliceBasis::Column* SliceBasis::column(long x) const {
  if (!params_.contains(x)) return nullptr;
  auto it = columns_.find(x);
  if (it == columns_.end()) {
    throw InputError("slice basis at t=" + std::to_string(params_.t) +
                     " was built without column x=" + std::to_string(x));
  }
  return &it->second;
}

const Rational& SliceBasis::weight(long x) const {
  static const Rational zero = 0;
  const Column* c = column(x);
  return c ? c->weight : zero;
}

const Rational& SliceBasis::H(long k, long x) const {
  static const Rational zero = 0;
  const Column* c = column(x);
  if (!c || k < 0 || k > params_.M) return zero;
  return c->values[k];
}

SignedSqrt SliceBasis::f(long k, long x) const {
  const Column* c = column(x);
  if (!c || k < 0 || k > params_.M) return {};
  const Rational& h = c->values[k];
  return SignedSqrt(sgn(h), h * h * c->weight / norms_[k]);
}

double SliceBasis::f_float(long k, long x) const { return f(k, x).to_double(); }

SignedSqrt orthonormal_function(const ModelParams& model, long n, int t,
                                long x) {
  const SliceParams p = slice_params(model, t);
  if (n < 0 || n > p.M) throw InputError("f_n^t needs 0 <= n <= M(t)");
  return SliceBasis(model, t, {x}).f(n, x);
}

ContiguousResiduals contiguous_relation_residuals(const ModelParams& model,
                                                  int t, long k, long x) {
  const SliceParams p = slice_params(model, t);
  const Rational xp(x - p.shift);
  const long a = p.alpha, b = p.beta, M = p.M;
  ContiguousResiduals out;
  try {
    out.lowered_size = xp * detail::hahn_series(k, xp - 1, a, b, M - 1) +
                       (Rational(M) - xp) * detail::hahn_series(k, xp, a, b, M - 1) -
                       Rational(M) * detail::hahn_series(k, xp, a, b, M);
  } catch (const DegenerateParameters&) {
  }
  try {
    out.shifted_parameters =
        xp * detail::hahn_series(k, xp - 1, a + 1, b - 1, M) -
        (xp + a + 1) * detail::hahn_series(k, xp, a + 1, b - 1, M) +
        Rational(a + 1) * detail::hahn_series(k, xp, a, b, M);
  } catch (const DegenerateParameters&) {
  }
  return out;
}

Rational dual_orthogonality_residual(long alpha, long beta, long M, long x,
                                     long y) {
  if (x < 0 || x > M || y < 0 || y > M) {
    throw InputError("dual orthogonality needs 0 <= x, y <= M");
  }
  Rational sum = 0;
  for (long k = 0; k <= M; ++k) {
    sum += hahn_Q(k, x, alpha, beta, M) * hahn_Q(k, y, alpha, beta, M) /
           raw_norm2(k, alpha, beta, M);
  }
  if (x == y) {
    const Rational w = pochhammer_weight(alpha, beta, M, x);
    if (w == 0) throw DegenerateParameters("dual orthogonality: zero weight");
    sum -= 1 / w;
  }
  return sum;
}

Rational difference_relation_residual(const ModelParams& model, int t, long k,
                                      long x) {
  const SliceParams p = slice_params(model, t);
  const long a = p.alpha, b = p.beta, M = p.M;
  if (k < 0 || k > M) throw InputError("difference relation needs 0 <= k <= M");
  const Rational xp(x - p.shift);
  const Rational B = (xp + a + 1) * (xp - M);
  const Rational D = xp * (xp - b - M - 1);
  const Rational lhs =
      Rational(k * (k + a + b + 1)) * detail::hahn_series(k, xp, a, b, M);
  const Rational rhs = B * detail::hahn_series(k, xp + 1, a, b, M) -
                       (B + D) * detail::hahn_series(k, xp, a, b, M) +
                       D * detail::hahn_series(k, xp - 1, a, b, M);
  return lhs - rhs;
}

}  // namespace hahn
