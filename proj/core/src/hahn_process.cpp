#include "hahn/hahn_process.hpp"

#include <cmath>

namespace hahn {

namespace {

void check_step_time(const ModelParams& m, int t) {
  if (t < 0 || t >= m.T) {
    throw InputError("transition time " + std::to_string(t) + " outside 0..T-1");
  }
}

void check_configuration(const ModelParams& m, const std::vector<int>& z) {
  if (static_cast<int>(z.size()) != m.N) {
    throw InputError("configuration must have exactly N points");
  }
  for (std::size_t i = 1; i < z.size(); ++i) {
    if (z[i] <= z[i - 1]) throw InputError("configuration must be increasing");
  }
}

Integer vandermonde(const std::vector<int>& z) {
  Integer v = 1;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) v *= z[j] - z[i];
  }
  return v;
}

Integer product_numerator(const ModelParams& m, int t, const std::vector<int>& x,
                         const std::vector<int>& y) {
  Integer num = vandermonde(y);
  for (int i = 0; i < m.N && num != 0; ++i) {
    const int d = y[i] - x[i];
    if (d == 1) {
      num *= m.N + m.S - x[i] - 1;
    } else if (d == 0) {
      num *= x[i] + m.T - t - m.S;
    } else {
      return 0;
    }
  }
  return num;
}

Integer product_denominator(const ModelParams& m, int t,
                           const std::vector<int>& x) {
  return pochhammer(m.T - t, m.N) * vandermonde(x);
}

}  // namespace

Rational coupling_coefficient_squared(const ModelParams& m, int t, long i) {
  const Rational a = 1 - ratio(i, t + m.N);
  const Rational b = 1 - ratio(i, m.T + m.N - t - 1);
  if (sgn(a) < 0 || sgn(b) < 0) return 0;
  return a * b;
}

double coupling_coefficient(const ModelParams& m, int t, long i) {
  return std::sqrt(to_double(coupling_coefficient_squared(m, t, i)));
}

CouplingCoefficients coupling_coefficients(const ModelParams& m, int t) {
  check_step_time(m, t);
  const long top = std::max(slice_params(m, t).M, slice_params(m, t + 1).M);
  CouplingCoefficients out;
  out.t = t;
  for (long i = 0; i <= top; ++i) {
    out.squares.push_back(coupling_coefficient_squared(m, t, i));
    out.values.push_back(std::sqrt(to_double(out.squares.back())));
  }
  return out;
}

Rational transfer_eigenvalue(const SliceBasis& from, const SliceBasis& to,
                             long i) {
  const ModelParams& m = from.model();
  const int t = from.params().t;
  if (to.params().t != t + 1) {
    throw InputError("transfer_eigenvalue needs consecutive slices");
  }
  if (i < 0 || i > from.params().M) {
    throw InputError("transfer_eigenvalue: index outside the source slice");
  }
  if (i > to.params().M) return 0;
  const Rational radicand = Rational(Integer(t + m.N - i) *
                                     Integer(m.T + m.N - t - 1 - i)) *
                            from.norm2(i) / to.norm2(i);
  auto root = exact_sqrt(radicand);
  if (!root) {
    throw IdentityViolation("transfer eigenvalue is irrational at t=" +
                            std::to_string(t) + ", i=" + std::to_string(i));
  }
  return *root;
}

SliceDistribution::SliceDistribution(const ModelParams& model, int t)
    : model_(model), params_(slice_params(model, t)) {
  if (model.N > params_.M + 1) {
    throw InputError("N exceeds the support size at t=" + std::to_string(t));
  }
  for (long x = params_.support_lo; x <= params_.support_hi; ++x) {
    weights_.push_back(weight(model, t, x));
  }
  // Sum over N-subsets of prod (z_i - z_j)^2 prod w(z_i) = prod_k h_k with
  // h_k the squared norm of the monic orthogonal polynomial.
  const SliceBasis basis(model, t, {});
  Z_ = 1;
  for (long k = 0; k < model.N; ++k) {
    const Rational lead =
        hahn_leading_coefficient(k, params_.alpha, params_.beta, params_.M);
    Z_ *= basis.norm2(k) / (lead * lead);
  }
  constexpr long kSubsetLimit = 200'000;
  if (binomial(params_.M + 1, model.N) <= kSubsetLimit) {
    Rational direct = 0;
    for (const auto& [z, p] : support_table()) direct += p;
    if (direct != 1) {
      throw IdentityViolation("slice partition function: norm product and "
                              "subset sum disagree at t=" + std::to_string(t));
    }
  }
}

Rational SliceDistribution::unnormalised(const std::vector<int>& z) const {
  Rational out = 1;
  for (int x : z) {
    if (!params_.contains(x)) return 0;
    out *= weights_[x - params_.support_lo];
  }
  const Integer v = vandermonde(z);
  return out * v * v;
}

Rational SliceDistribution::probability(const std::vector<int>& z) const {
  check_configuration(model_, z);
  return unnormalised(z) / Z_;
}

std::vector<std::pair<std::vector<int>, Rational>>
SliceDistribution::support_table() const {
  std::vector<std::pair<std::vector<int>, Rational>> out;
  const int n = model_.N;
  std::vector<int> z(n);
  for (int i = 0; i < n; ++i) z[i] = static_cast<int>(params_.support_lo) + i;
  while (true) {
    out.emplace_back(z, unnormalised(z) / Z_);
    int i = n - 1;
    while (i >= 0 && z[i] == params_.support_hi - (n - 1 - i)) --i;
    if (i < 0) break;
    ++z[i];
    for (int j = i + 1; j < n; ++j) z[j] = z[j - 1] + 1;
  }
  return out;
}

Rational slice_distribution(const ModelParams& model, int t,
                            const std::vector<int>& z) {
  return SliceDistribution(model, t).probability(z);
}

Rational transition_probability(const ModelParams& m, int t,
                                const std::vector<int>& x,
                                const std::vector<int>& y) {
  check_step_time(m, t);
  check_configuration(m, x);
  if (static_cast<int>(y.size()) != m.N) {
    throw InputError("configuration must have exactly N points");
  }
  Rational p(product_numerator(m, t, x, y), product_denominator(m, t, x));
  p.canonicalize();
  return p;
}

Rational transition_probability_determinantal(const ModelParams& m, int t,
                                              const std::vector<int>& x,
                                              const std::vector<int>& y) {
  check_step_time(m, t);
  check_configuration(m, x);
  if (static_cast<int>(y.size()) != m.N) {
    throw InputError("configuration must have exactly N points");
  }
  const std::size_t n = x.size();
  Matrix<Integer> a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == x[i] + 1) a(i, j) = m.S + m.N - x[i] - 1;
      if (y[j] == x[i]) a(i, j) = m.T - t - m.S + x[i];
    }
  }
  Rational p(bareiss_determinant(std::move(a)) * vandermonde(y),
             product_denominator(m, t, x));
  p.canonicalize();
  return p;
}

SignedSqrt transition_probability_eynard_mehta(const ModelParams& m, int t,
                                               const std::vector<int>& x,
                                               const std::vector<int>& y) {
  check_step_time(m, t);
  check_configuration(m, x);
  if (static_cast<int>(y.size()) != m.N) {
    throw InputError("configuration must have exactly N points");
  }
  std::vector<long> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  const SliceBasis from(m, t, xs);
  const SliceBasis to(m, t + 1, ys);
  const std::size_t n = x.size();
  Matrix<Rational> hx(n, n), hy(n, n), r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      hx(i, j) = from.H(i, x[j]);
      hy(i, j) = to.H(i, y[j]);
      if (!from.params().contains(x[i]) || !to.params().contains(y[j])) continue;
      if (y[j] == x[i] + 1) r(i, j) = m.S + m.N - 1 - x[i];
      if (y[j] == x[i]) r(i, j) = m.T - t - m.S + x[i];
    }
  }
  for (int xi : x) {
    if (!from.params().contains(xi)) {
      throw InputError("Eynard-Mehta transition needs x inside the support");
    }
  }
  const Rational dx = bareiss_determinant(hx);
  const Rational dy = bareiss_determinant(hy);
  const Rational dr = bareiss_determinant(r);
  if (dx == 0) throw InputError("Eynard-Mehta transition: singular source");
  // D^N prod c_n^2 = prod (t+N-n)(T+N-t-1-n).
  Rational square = dr * dr * dy * dy / (dx * dx);
  for (long k = 0; k < m.N; ++k) {
    square *= from.norm2(k) / to.norm2(k);
    square /= Integer(t + m.N - k) * Integer(m.T + m.N - t - 1 - k);
  }
  return SignedSqrt(sgn(dr) * sgn(dy) * sgn(dx), square);
}

SignedSqrt transfer_matrix(const ModelParams& m, int t, long x, long y) {
  check_step_time(m, t);
  const SliceParams from = slice_params(m, t);
  const SliceParams to = slice_params(m, t + 1);
  if (!from.contains(x) || !to.contains(y)) return {};
  const Integer D = Integer(t + m.N) * Integer(m.T + m.N - t - 1);
  if (y == x + 1) {
    return SignedSqrt(1, Rational(Integer(m.S + m.N - x - 1) * (x + 1), D));
  }
  if (y == x) {
    return SignedSqrt(1, Rational(Integer(m.T - t - m.S + x) * (t + m.N - x), D));
  }
  return {};
}

double transfer_matrix_float(const ModelParams& m, int t, long x, long y) {
  return transfer_matrix(m, t, x, y).to_double();
}

SignedSqrt transfer_matrix_series(const SliceBasis& from, const SliceBasis& to,
                                  long x, long y) {
  const ModelParams& m = from.model();
  const int t = from.params().t;
  if (!from.params().contains(x) || !to.params().contains(y)) return {};
  Rational sum = 0;
  const long top = std::min(from.params().M, to.params().M);
  for (long k = 0; k <= top; ++k) {
    sum += transfer_eigenvalue(from, to, k) * from.H(k, x) * to.H(k, y) /
           from.norm2(k);
  }
  const Integer D = Integer(t + m.N) * Integer(m.T + m.N - t - 1);
  return SignedSqrt(sgn(sum),
                    sum * sum * from.weight(x) * to.weight(y) / Rational(D));
}

PathFamily Trajectory::to_family() const {
  PathFamily f{model, std::vector<std::vector<Step>>(model.N)};
  for (int t = 0; t < model.T; ++t) {
    for (int i = 0; i < model.N; ++i) {
      const int d = configurations[t + 1].positions[i] -
                    configurations[t].positions[i];
      if (d != 0 && d != 1) throw InputError("trajectory has an illegal step");
      f.moves[i].push_back(d ? Step::Up : Step::Flat);
    }
  }
  return f;
}

Trajectory Trajectory::from_family(const PathFamily& family) {
  Trajectory tr{family.model, {}};
  for (int t = 0; t <= family.model.T; ++t) {
    tr.configurations.push_back(Configuration{t, family.positions(t)});
  }
  return tr;
}

TrajectorySampler::TrajectorySampler(const ModelParams& model,
                                     std::uint64_t seed)
    : model_(model), rng_(seed) {
  if (model.N > kMaxParticles) {
    throw ResourceLimit("subset sampler supports N <= " +
                        std::to_string(kMaxParticles));
  }
}

const TrajectorySampler::Table& TrajectorySampler::table(
    int t, const std::vector<int>& x) {
  auto key = std::make_pair(t, x);
  auto it = tables_.find(key);
  if (it != tables_.end()) return it->second;
  Table tab;
  Integer total = 0;
  std::vector<int> y(model_.N);
  for (std::uint32_t mask = 0; mask < (1u << model_.N); ++mask) {
    for (int i = 0; i < model_.N; ++i) y[i] = x[i] + ((mask >> i) & 1u);
    const Integer w = product_numerator(model_, t, x, y);
    if (w == 0) continue;
    total += w;
    tab.masks.push_back(mask);
    tab.cumulative.push_back(total);
  }
  if (total != product_denominator(model_, t, x)) {
    throw IdentityViolation("transition probabilities do not sum to one");
  }
  return tables_.emplace(std::move(key), std::move(tab)).first->second;
}

Integer TrajectorySampler::uniform_below(const Integer& bound) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  Integer mask = (Integer(1) << bits) - 1;
  while (true) {
    Integer r = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t v = rng_();
      r <<= 64;
      r += Integer(static_cast<unsigned long>(v >> 32)) << 32;
      r += Integer(static_cast<unsigned long>(v & 0xffffffffu));
    }
    r &= mask;
    if (r < bound) return r;
  }
}

Trajectory TrajectorySampler::sample() {
  Trajectory tr{model_, {}};
  std::vector<int> x(model_.N);
  for (int i = 0; i < model_.N; ++i) x[i] = i;
  tr.configurations.push_back(Configuration{0, x});
  for (int t = 0; t < model_.T; ++t) {
    const Table& tab = table(t, x);
    std::uint32_t mask = tab.masks.front();
    if (tab.masks.size() > 1) {
      const Integer r = uniform_below(tab.cumulative.back());
      std::size_t k = 0;
      while (tab.cumulative[k] <= r) ++k;
      mask = tab.masks[k];
    }
    for (int i = 0; i < model_.N; ++i) x[i] += (mask >> i) & 1u;
    tr.configurations.push_back(Configuration{t + 1, x});
  }
  return tr;
}

Trajectory sample_trajectory(const ModelParams& model, std::uint64_t seed) {
  return TrajectorySampler(model, seed).sample();
}

}  // namespace hahn
