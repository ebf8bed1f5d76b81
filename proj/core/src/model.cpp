#include "hahn/model.hpp"

#include <set>

#include "hahn/errors.hpp"

namespace hahn {

ModelParams ModelParams::make(int N, int S, int T) {
  if (N < 1) throw InputError("model needs N >= 1");
  if (T < 1) throw InputError("model needs T >= 1");
  if (S < 0 || S > T) throw InputError("model needs 0 <= S <= T");
  return ModelParams{N, S, T};
}

ModelParams ModelParams::from_hexagon(int a, int b, int c) {
  if (a < 1 || b < 0 || c < 0 || b + c < 1) {
    throw InputError("hexagon needs a >= 1, b, c >= 0 and b + c >= 1");
  }
  return make(a, b, b + c);
}

std::string ModelParams::str() const {
  return "(N=" + std::to_string(N) + ",S=" + std::to_string(S) +
         ",T=" + std::to_string(T) + ")";
}

int PathFamily::height(int i, int t) const {
  int h = i;
  for (int s = 0; s < t; ++s) h += moves[i][s] == Step::Up ? 1 : 0;
  return h;
}

std::vector<int> PathFamily::positions(int t) const {
  std::vector<int> out(moves.size());
  for (std::size_t i = 0; i < moves.size(); ++i) {
    out[i] = height(static_cast<int>(i), t);
  }
  return out;
}

void validate(const PathFamily& family) {
  const auto& m = family.model;
  if (static_cast<int>(family.moves.size()) != m.N) {
    throw InputError("path family: wrong number of paths");
  }
  for (int i = 0; i < m.N; ++i) {
    if (static_cast<int>(family.moves[i].size()) != m.T) {
      throw InputError("path family: path " + std::to_string(i) +
                       " has the wrong length");
    }
    if (family.height(i, m.T) != m.S + i) {
      throw InputError("path family: path " + std::to_string(i) +
                       " ends at the wrong height");
    }
  }
  for (int t = 0; t <= m.T; ++t) {
    const auto pos = family.positions(t);
    for (std::size_t i = 1; i < pos.size(); ++i) {
      if (pos[i] <= pos[i - 1]) {
        throw InputError("path family: paths intersect at t=" +
                         std::to_string(t));
      }
    }
  }
}

void validate_query(const ModelParams& model,
                    const std::vector<SpaceTimePoint>& query) {
  std::set<SpaceTimePoint> seen;
  for (const auto& p : query) {
    if (p.t < 0 || p.t > model.T) {
      throw InputError("query time " + std::to_string(p.t) + " outside 0..T");
    }
    if (!seen.insert(p).second) {
      throw InputError("query contains the point (" + std::to_string(p.x) +
                       "," + std::to_string(p.t) + ") twice");
    }
  }
}

}  // namespace hahn
