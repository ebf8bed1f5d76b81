#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "hahn/hahn_polynomials.hpp"
#include "hahn/model.hpp"
#include "hahn/numeric.hpp"

namespace hahn {

/// (c_i^t)^2 = (1 - i/(t+N)) (1 - i/(T+N-t-1)) when both factors are
/// non-negative, 0 otherwise.
Rational coupling_coefficient_squared(const ModelParams& model, int t, long i);
double coupling_coefficient(const ModelParams& model, int t, long i);

struct CouplingCoefficients {
  int t = 0;
  std::vector<double> values;      // c_i^t
  std::vector<Rational> squares;   // (c_i^t)^2, exact
};

/// c_i^t for i = 0 .. max(M(t), M(t+1)); needs 0 <= t < T.
CouplingCoefficients coupling_coefficients(const ModelParams& model, int t);

/// g_i^t = sqrt((t+N-i)(T+N-t-1-i) n_i^t / n_i^{t+1}), the rational factor
/// relating U_t f_i^t = c_i^t f_i^{t+1} to the Hahn polynomials. Throws
/// IdentityViolation when the radicand is not a perfect square; 0 when the
/// index does not survive to t+1.
Rational transfer_eigenvalue(const SliceBasis& from, const SliceBasis& to,
                             long i);

/// One-time distribution P_t. Z is computed from the squared norms and,
/// when the support is small enough, also by summing over all N-subsets;
/// the two must agree exactly.
class SliceDistribution {
 public:
  SliceDistribution(const ModelParams& model, int t);

  const SliceParams& params() const { return params_; }
  const Rational& partition_function() const { return Z_; }

  /// P_t(z) for an increasing list z; 0 outside the support.
  Rational probability(const std::vector<int>& z) const;

  /// Every N-subset of the support with its probability.
  std::vector<std::pair<std::vector<int>, Rational>> support_table() const;

 private:
  Rational unnormalised(const std::vector<int>& z) const;

  ModelParams model_;
  SliceParams params_;
  std::vector<Rational> weights_;  // indexed by x - support_lo
  Rational Z_;
};

Rational slice_distribution(const ModelParams& model, int t,
                            const std::vector<int>& z);

/// One-step transition probability in product form.
Rational transition_probability(const ModelParams& model, int t,
                                const std::vector<int>& x,
                                const std::vector<int>& y);

/// The same probability as det[(S+N-x_i-1) d(x_i+1, y_j) + (T-t-S+x_i)
/// d(x_i, y_j)] / (T-t)_N * prod (y_j - y_i)/(x_j - x_i), via Bareiss.
Rational transition_probability_determinantal(const ModelParams& model, int t,
                                              const std::vector<int>& x,
                                              const std::vector<int>& y);

/// det[v(x_i, y_j)] det[f_{i-1}^{t+1}(y_j)] / (det[f_{i-1}^t(x_j)] prod c_n^t),
/// the transition form required by the Eynard-Mehta argument, evaluated
/// exactly as a signed square root (every radical factors out of rows and
/// columns).
SignedSqrt transition_probability_eynard_mehta(const ModelParams& model, int t,
                                               const std::vector<int>& x,
                                               const std::vector<int>& y);

/// v_{t,t+1}(x, y) from its closed bidiagonal form.
SignedSqrt transfer_matrix(const ModelParams& model, int t, long x, long y);
double transfer_matrix_float(const ModelParams& model, int t, long x, long y);

/// sum_k c_k^t f_k^t(x) f_k^{t+1}(y), evaluated exactly through
/// transfer_eigenvalue.
SignedSqrt transfer_matrix_series(const SliceBasis& from, const SliceBasis& to,
                                  long x, long y);

struct Trajectory {
  ModelParams model;
  std::vector<Configuration> configurations;  // t = 0..T

  PathFamily to_family() const;
  static Trajectory from_family(const PathFamily& family);
};

/// Exact sampler of the uniform measure on path families, stepping through
/// product-form transition probabilities. The generator is std::mt19937_64 seeded
/// with the 64-bit seed; a transition is chosen by drawing an integer
/// uniformly below the common denominator (T-t)_N prod(x_j - x_i) by
/// rejection on whole 64-bit words, so runs are reproducible on every
/// platform. Owns its RNG and a memo of transition tables; not thread-safe.
class TrajectorySampler {
 public:
  static constexpr int kMaxParticles = 20;

  TrajectorySampler(const ModelParams& model, std::uint64_t seed);

  Trajectory sample();

 private:
  struct Table {
    std::vector<std::uint32_t> masks;
    std::vector<Integer> cumulative;
  };

  const Table& table(int t, const std::vector<int>& x);
  Integer uniform_below(const Integer& bound);

  ModelParams model_;
  std::mt19937_64 rng_;
  std::map<std::pair<int, std::vector<int>>, Table> tables_;
};

Trajectory sample_trajectory(const ModelParams& model, std::uint64_t seed);

}  // namespace hahn
