#include "hahn/combinatorics.hpp"

#include <bit>

namespace hahn {

Integer count_path_families(int t1, std::span<const long> a, int t2,
                            std::span<const long> b) {
  if (a.size() != b.size()) {
    throw InputError("count_path_families: endpoint lists differ in length");
  }
  if (t2 <= t1) throw InputError("count_path_families: needs t2 > t1");
  const std::size_t n = a.size();
  Matrix<Integer> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = binomial(t2 - t1, b[i] - a[j]);
  }
  return bareiss_determinant(std::move(m));
}

Integer count_path_families(const ModelParams& model) {
  std::vector<long> a(model.N), b(model.N);
  for (int i = 0; i < model.N; ++i) {
    a[i] = i;
    b[i] = model.S + i;
  }
  return count_path_families(0, a, model.T, b);
}

namespace {

struct Enumerator {
  const ModelParams& model;
  std::vector<PathFamily>& out;
  std::vector<int> pos;
  std::vector<std::vector<Step>> moves;

  void run(int t) {
    if (t == model.T) {
      out.push_back(PathFamily{model, moves});
      return;
    }
    const int remaining = model.T - t - 1;
    const unsigned limit = 1u << model.N;
    std::vector<int> next(model.N);
    for (unsigned mask = 0; mask < limit; ++mask) {
      bool ok = true;
      for (int i = 0; i < model.N && ok; ++i) {
        next[i] = pos[i] + ((mask >> i) & 1u);
        const int need = model.S + i - next[i];
        ok = need >= 0 && need <= remaining && (i == 0 || next[i] > next[i - 1]);
      }
      if (!ok) continue;
      for (int i = 0; i < model.N; ++i) {
        moves[i].push_back(((mask >> i) & 1u) ? Step::Up : Step::Flat);
      }
      std::swap(pos, next);
      run(t + 1);
      std::swap(pos, next);
      for (int i = 0; i < model.N; ++i) moves[i].pop_back();
    }
  }
};

}  // namespace

std::vector<PathFamily> enumerate_path_families(const ModelParams& model,
                                                std::uint64_t cap) {
  if (model.N > 20) throw ResourceLimit("enumeration supports N <= 20");
  const Integer count = count_path_families(model);
  if (count > Integer(std::to_string(cap))) {
    throw CapExceeded("model " + model.str() + " has " + to_string(count) +
                      " path families, above the enumeration cap " +
                      std::to_string(cap));
  }
  std::vector<PathFamily> out;
  out.reserve(count.get_ui());
  Enumerator e{model, out, {}, std::vector<std::vector<Step>>(model.N)};
  e.pos.resize(model.N);
  for (int i = 0; i < model.N; ++i) e.pos[i] = i;
  e.run(0);
  return out;
}

PathOracle::PathOracle(const ModelParams& model, std::uint64_t cap)
    : model_(model), families_(enumerate_path_families(model, cap)) {
  words_ = (families_.size() + 63) / 64;
  for (std::size_t f = 0; f < families_.size(); ++f) {
    for (int t = 0; t <= model_.T; ++t) {
      for (int x : families_[f].positions(t)) {
        auto& bits = occupancy_[SpaceTimePoint{x, t}];
        if (bits.empty()) bits.assign(words_, 0);
        bits[f / 64] |= std::uint64_t{1} << (f % 64);
      }
    }
  }
}

std::size_t PathOracle::count_through(
    const std::vector<SpaceTimePoint>& query) const {
  validate_query(model_, query);
  std::vector<std::uint64_t> acc(words_, ~std::uint64_t{0});
  if (!families_.empty() && families_.size() % 64 != 0) {
    acc.back() = (std::uint64_t{1} << (families_.size() % 64)) - 1;
  }
  for (const auto& p : query) {
    auto it = occupancy_.find(p);
    if (it == occupancy_.end()) return 0;
    for (std::size_t w = 0; w < words_; ++w) acc[w] &= it->second[w];
  }
  std::size_t n = 0;
  for (auto w : acc) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Rational PathOracle::correlation(const std::vector<SpaceTimePoint>& query) const {
  Rational r(static_cast<unsigned long>(count_through(query)),
             static_cast<unsigned long>(families_.size()));
  r.canonicalize();
  return r;
}

Rational oracle_correlation(const ModelParams& model,
                            const std::vector<SpaceTimePoint>& query,
                            std::uint64_t cap) {
  return PathOracle(model, cap).correlation(query);
}

}  // namespace hahn
