#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace hahn {

/// N non-intersecting paths from (0, i-1) to (T, S+i-1), i = 1..N.
struct ModelParams {
  int N = 1;
  int S = 0;
  int T = 1;

  /// Validates 1 <= N, 0 <= S <= T, T >= 1; throws InputError.
  static ModelParams make(int N, int S, int T);

  /// Hexagon with sides a, b, c, a, b, c: N = a, S = b, T = b + c.
  static ModelParams from_hexagon(int a, int b, int c);

  std::string str() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

enum class Step : std::uint8_t { Flat = 0, Up = 1 };

/// One path per particle, each a sequence of T unit steps.
struct PathFamily {
  ModelParams model;
  std::vector<std::vector<Step>> moves;

  /// Height of path i (0-based) at time t.
  int height(int i, int t) const;
  std::vector<int> positions(int t) const;

  friend bool operator==(const PathFamily&, const PathFamily&) = default;
};

/// Throws InputError unless the endpoint and non-intersection invariants hold.
void validate(const PathFamily& family);

/// An N-point set at one time.
struct Configuration {
  int t = 0;
  std::vector<int> positions;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// A space-time lattice point (x, t).
struct SpaceTimePoint {
  int x = 0;
  int t = 0;

  friend auto operator<=>(const SpaceTimePoint&, const SpaceTimePoint&) = default;
};

/// Throws InputError on duplicate points or times outside 0..T.
void validate_query(const ModelParams& model,
                    const std::vector<SpaceTimePoint>& query);

}  // namespace hahn
