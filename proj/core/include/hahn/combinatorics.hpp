#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hahn/model.hpp"
#include "hahn/numeric.hpp"

namespace hahn {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Number of non-intersecting path families from (t1, a_i) to (t2, b_i):
/// det[C(t2 - t1, b_i - a_j)], evaluated with Bareiss elimination.
Integer count_path_families(int t1, std::span<const long> a, int t2,
                            std::span<const long> b);

/// Number of path families of the model (start 0..N-1, end S..S+N-1).
Integer count_path_families(const ModelParams& model);

/// Every path family of the model, exactly once, in lexicographic order of
/// the per-time move masks. Throws CapExceeded when the count exceeds cap.
std::vector<PathFamily> enumerate_path_families(
    const ModelParams& model, std::uint64_t cap = kDefaultEnumerationCap);

/// Brute-force correlation oracle: the fraction of families whose slices
/// contain every queried point. Precomputes one occupancy bitset per
/// lattice point so that repeated queries are cheap.
class PathOracle {
 public:
  explicit PathOracle(const ModelParams& model,
                      std::uint64_t cap = kDefaultEnumerationCap);

  const ModelParams& model() const { return model_; }
  std::size_t family_count() const { return families_.size(); }
  const std::vector<PathFamily>& families() const { return families_; }

  /// Exact probability that all query points are occupied; 1 for an empty
  /// query. Throws InputError on duplicate points.
  Rational correlation(const std::vector<SpaceTimePoint>& query) const;

  /// Number of families passing through all query points.
  std::size_t count_through(const std::vector<SpaceTimePoint>& query) const;

 private:
  ModelParams model_;
  std::vector<PathFamily> families_;
  std::size_t words_ = 0;
  std::map<SpaceTimePoint, std::vector<std::uint64_t>> occupancy_;
};

Rational oracle_correlation(const ModelParams& model,
                            const std::vector<SpaceTimePoint>& query,
                            std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace hahn
