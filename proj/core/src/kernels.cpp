#include "hahn/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "hahn/hahn_process.hpp"

namespace hahn {

namespace {

Integer block_factor(const ModelParams& m, int j) {
  return Integer(j + m.N) * Integer(m.T + m.N - j - 1);
}

// (F(y,t) / F(x,s))^2 with F the rational-gauge function.
Rational gauge_ratio_squared(const DynamicalKernel& k, const SpaceTimePoint& p,
                             const SpaceTimePoint& q) {
  const ModelParams& m = k.model();
  Rational r = k.slice(p.t).weight(p.x) / k.slice(q.t).weight(q.x);
  for (int j = q.t; j < p.t; ++j) r *= block_factor(m, j);
  for (int j = p.t; j < q.t; ++j) r /= block_factor(m, j);
  return r;
}

}  // namespace

DynamicalKernel::DynamicalKernel(const ModelParams& model) : model_(model) {
  std::map<int, std::vector<long>> columns;
  for (int t = 0; t <= model.T; ++t) {
    const SliceParams p = slice_params(model, t);
    for (long x = p.support_lo; x <= p.support_hi; ++x) columns[t].push_back(x);
  }
  build(columns, 0, model.T);
}

DynamicalKernel::DynamicalKernel(const ModelParams& model,
                                 const std::vector<SpaceTimePoint>& points)
    : model_(model) {
  validate_query(model, points);
  if (points.empty()) return;
  std::map<int, std::vector<long>> columns;
  int lo = points.front().t, hi = points.front().t;
  for (const auto& p : points) {
    columns[p.t].push_back(p.x);
    lo = std::min(lo, p.t);
    hi = std::max(hi, p.t);
  }
  build(columns, lo, hi);
}

void DynamicalKernel::build(const std::map<int, std::vector<long>>& columns,
                            int t_lo, int t_hi) {
  t_lo_ = t_lo;
  for (int t = t_lo; t <= t_hi; ++t) {
    auto it = columns.find(t);
    slices_.emplace_back(model_, t,
                         it == columns.end() ? std::vector<long>{} : it->second);
  }
  for (int j = t_lo; j < t_hi; ++j) {
    const SliceBasis& from = slices_[j - t_lo];
    const SliceBasis& to = slices_[j + 1 - t_lo];
    std::vector<Rational> g;
    for (long i = 0; i <= from.params().M; ++i) {
      g.push_back(transfer_eigenvalue(from, to, i));
    }
    eigen_.push_back(std::move(g));
  }
}

const SliceBasis& DynamicalKernel::slice(int t) const {
  const int idx = t - t_lo_;
  if (idx < 0 || idx >= static_cast<int>(slices_.size())) {
    throw InputError("kernel was built without time slice t=" +
                     std::to_string(t));
  }
  return slices_[idx];
}

const Rational& DynamicalKernel::eigenvalue(int j, long i) const {
  static const Rational zero = 0;
  const int idx = j - t_lo_;
  if (idx < 0 || idx >= static_cast<int>(eigen_.size())) {
    throw InputError("kernel was built without the step from t=" +
                     std::to_string(j));
  }
  const auto& g = eigen_[idx];
  return i >= 0 && i < static_cast<long>(g.size()) ? g[i] : zero;
}

Rational DynamicalKernel::gauge_value(const SpaceTimePoint& p,
                                      const SpaceTimePoint& q) const {
  const SliceBasis& row = slice(p.t);
  const SliceBasis& col = slice(q.t);
  if (!row.params().contains(p.x) || !col.params().contains(q.x)) return 0;
  Rational sum = 0;
  if (p.t >= q.t) {
    for (long i = 0; i < model_.N; ++i) {
      Rational prod = 1;
      for (int j = q.t; j < p.t; ++j) prod *= eigenvalue(j, i);
      const Rational hh = row.H(i, p.x) * col.H(i, q.x);
      if (prod == 0) {
        if (hh != 0) {
          throw GaugeSingular("vanishing coupling coefficient for index " +
                              std::to_string(i));
        }
        continue;
      }
      sum += hh / (row.norm2(i) * prod);
    }
  } else {
    for (long i = model_.N; i <= row.params().M; ++i) {
      Rational prod = 1;
      for (int j = p.t; j < q.t && prod != 0; ++j) prod *= eigenvalue(j, i);
      if (prod == 0) continue;
      sum -= prod * row.H(i, p.x) * col.H(i, q.x) / row.norm2(i);
    }
  }
  return sum * col.weight(q.x);
}

SignedSqrt DynamicalKernel::value(const SpaceTimePoint& p,
                                  const SpaceTimePoint& q) const {
  const Rational g = gauge_value(p, q);
  if (g == 0) return {};
  return SignedSqrt(sgn(g), g * g * gauge_ratio_squared(*this, p, q));
}

double DynamicalKernel::value_float(const SpaceTimePoint& p,
                                    const SpaceTimePoint& q) const {
  const SliceBasis& row = slice(p.t);
  const SliceBasis& col = slice(q.t);
  if (!row.params().contains(p.x) || !col.params().contains(q.x)) return 0.0;
  double sum = 0.0;
  if (p.t >= q.t) {
    for (long i = 0; i < model_.N; ++i) {
      double prod = 1.0;
      for (int j = q.t; j < p.t; ++j) prod *= coupling_coefficient(model_, j, i);
      const double ff = row.f_float(i, p.x) * col.f_float(i, q.x);
      if (prod == 0.0) {
        if (ff != 0.0) {
          throw GaugeSingular("vanishing coupling coefficient for index " +
                              std::to_string(i));
        }
        continue;
      }
      sum += ff / prod;
    }
  } else {
    for (long i = model_.N; i <= row.params().M; ++i) {
      double prod = 1.0;
      for (int j = p.t; j < q.t; ++j) prod *= coupling_coefficient(model_, j, i);
      if (prod == 0.0) continue;
      sum -= prod * row.f_float(i, p.x) * col.f_float(i, q.x);
    }
  }
  return sum;
}

SignedSqrt static_kernel(const ModelParams& model, int t, long x, long y) {
  const SpaceTimePoint p{static_cast<int>(x), t}, q{static_cast<int>(y), t};
  std::vector<SpaceTimePoint> pts{p};
  if (x != y) pts.push_back(q);
  return DynamicalKernel(model, pts).value(p, q);
}

double static_kernel_float(const ModelParams& model, int t, long x, long y) {
  const SpaceTimePoint p{static_cast<int>(x), t}, q{static_cast<int>(y), t};
  std::vector<SpaceTimePoint> pts{p};
  if (x != y) pts.push_back(q);
  return DynamicalKernel(model, pts).value_float(p, q);
}

SignedSqrt complementary_kernel(const ModelParams& model, int t, long x,
                                long y) {
  std::vector<long> cols{x};
  if (x != y) cols.push_back(y);
  const SliceBasis b(model, t, cols);
  if (!b.params().contains(x) || !b.params().contains(y)) return {};
  Rational sum = 0;
  for (long i = model.N; i <= b.params().M; ++i) {
    sum -= b.H(i, x) * b.H(i, y) / b.norm2(i);
  }
  return SignedSqrt(sgn(sum), sum * sum * b.weight(x) * b.weight(y));
}

SignedSqrt extended_kernel(const ModelParams& model, const SpaceTimePoint& p,
                           const SpaceTimePoint& q) {
  std::vector<SpaceTimePoint> pts{p};
  if (!(p == q)) pts.push_back(q);
  return DynamicalKernel(model, pts).value(p, q);
}

double extended_kernel_float(const ModelParams& model, const SpaceTimePoint& p,
                             const SpaceTimePoint& q) {
  std::vector<SpaceTimePoint> pts{p};
  if (!(p == q)) pts.push_back(q);
  return DynamicalKernel(model, pts).value_float(p, q);
}

KernelMatrix kernel_matrix(const DynamicalKernel& kernel,
                           const CorrelationQuery& query,
                           const NumericBackend& backend) {
  validate_query(kernel.model(), query.points);
  const std::size_t n = query.points.size();
  KernelMatrix km;
  km.points = query.points;
  km.backend = backend;
  km.values = Matrix<double>(n, n, 0.0);
  if (backend.mode == Mode::Exact) {
    km.natural = Matrix<SignedSqrt>(n, n, SignedSqrt{});
    km.gauged = Matrix<Rational>(n, n, Rational(0));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& p = query.points[i];
      const auto& q = query.points[j];
      if (backend.mode == Mode::Exact) {
        km.gauged(i, j) = kernel.gauge_value(p, q);
        if (km.gauged(i, j) != 0) {
          const Rational& g = km.gauged(i, j);
          km.natural(i, j) =
              SignedSqrt(sgn(g), g * g * gauge_ratio_squared(kernel, p, q));
        }
        km.values(i, j) = km.natural(i, j).to_double();
      } else {
        km.values(i, j) = kernel.value_float(p, q);
      }
    }
  }
  return km;
}

CorrelationResult correlation(const DynamicalKernel& kernel,
                              const CorrelationQuery& query,
                              const NumericBackend& backend) {
  CorrelationResult r;
  r.mode = backend.mode;
  const KernelMatrix km = kernel_matrix(kernel, query, backend);
  if (backend.mode == Mode::Exact) {
    r.exact = bareiss_determinant(km.gauged);
    r.value = to_double(*r.exact);
  } else {
    const FloatDeterminant d = pivoted_determinant(km.values);
    r.value = d.value;
    r.pivot_ratio = d.pivot_ratio;
  }
  return r;
}

CorrelationResult correlation(const ModelParams& model,
                              const CorrelationQuery& query,
                              const NumericBackend& backend) {
  return correlation(DynamicalKernel(model, query.points), query, backend);
}

Matrix<Rational> gauge_transform(const Matrix<Rational>& values,
                                 const std::vector<SpaceTimePoint>& points,
                                 const GaugeFunction& F) {
  const std::size_t n = points.size();
  if (values.rows() != n || values.cols() != n) {
    throw InputError("gauge_transform: matrix and point list differ in size");
  }
  std::vector<Rational> f;
  for (const auto& p : points) {
    f.push_back(F(p));
    if (f.back() == 0) {
      throw InputError("gauge function vanishes at (" + std::to_string(p.x) +
                       "," + std::to_string(p.t) + ")");
    }
  }
  Matrix<Rational> out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = values(i, j) * f[i] / f[j];
  }
  return out;
}

Matrix<Rational> transfer_gauged(const ModelParams& m, int j) {
  const SliceParams from = slice_params(m, j);
  const SliceParams to = slice_params(m, j + 1);
  Matrix<Rational> u(from.size(), to.size());
  for (long x = from.support_lo; x <= from.support_hi; ++x) {
    const std::size_t r = x - from.support_lo;
    if (to.contains(x + 1)) u(r, x + 1 - to.support_lo) = m.S + m.N - 1 - x;
    if (to.contains(x)) u(r, x - to.support_lo) = m.T - j - m.S + x;
  }
  return u;
}

Matrix<Rational> complementary_gauged(const DynamicalKernel& kernel, int s) {
  const SliceBasis& b = kernel.slice(s);
  const auto& p = b.params();
  Matrix<Rational> k(p.size(), p.size());
  for (long x = p.support_lo; x <= p.support_hi; ++x) {
    for (long z = p.support_lo; z <= p.support_hi; ++z) {
      Rational sum = 0;
      for (long i = kernel.model().N; i <= p.M; ++i) {
        sum -= b.H(i, x) * b.H(i, z) / b.norm2(i);
      }
      k(x - p.support_lo, z - p.support_lo) = sum * b.weight(z);
    }
  }
  return k;
}

Rational factorization_residual(const DynamicalKernel& kernel, int s, int t) {
  if (s >= t) throw InputError("factorization_residual needs s < t");
  Matrix<Rational> prod = complementary_gauged(kernel, s);
  for (int j = s; j < t; ++j) prod = prod * transfer_gauged(kernel.model(), j);
  const auto& ps = kernel.slice(s).params();
  const auto& pt = kernel.slice(t).params();
  Rational worst = 0;
  for (long x = ps.support_lo; x <= ps.support_hi; ++x) {
    for (long y = pt.support_lo; y <= pt.support_hi; ++y) {
      const Rational direct = kernel.gauge_value({static_cast<int>(x), s},
                                                 {static_cast<int>(y), t});
      const Rational d =
          abs(direct - prod(x - ps.support_lo, y - pt.support_lo));
      if (d > worst) worst = d;
    }
  }
  return worst;
}

}  // namespace hahn
