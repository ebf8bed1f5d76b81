#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hahn/combinatorics.hpp"
#include "hahn/hahn_process.hpp"
#include "hahn/kernels.hpp"
#include "sweep.hpp"

using namespace hahn;

namespace {

std::vector<SpaceTimePoint> lattice(const ModelParams& m) {
  std::vector<SpaceTimePoint> pts;
  for (int t = 0; t <= m.T; ++t) {
    for (int x = 0; x <= m.S + m.N - 1; ++x) pts.push_back({x, t});
  }
  return pts;
}

}  // namespace

TEST_CASE("static kernel examples") {
  const auto m = ModelParams::make(1, 1, 2);
  CHECK(static_kernel(m, 1, 0, 0).rational() == Rational(1, 2));
  const auto m3 = ModelParams::make(3, 2, 5);
  for (long x = 0; x < 3; ++x) CHECK(static_kernel(m3, 0, x, x).rational() == Rational(1));
  CHECK(static_kernel(m3, 2, 9, 1).is_zero());
  CHECK(static_kernel_float(m, 1, 0, 1) ==
        doctest::Approx(static_kernel(m, 1, 0, 1).to_double()));
}

TEST_CASE("complementary kernel examples") {
  const auto m = ModelParams::make(2, 2, 4);
  const SignedSqrt k = static_kernel(m, 2, 1, 1);
  const SignedSqrt kc = complementary_kernel(m, 2, 1, 1);
  CHECK(*kc.rational() == *k.rational() - 1);
  // N = M + 1 at t = 0: the tail is empty.
  CHECK(complementary_kernel(m, 0, 0, 1).is_zero());
  CHECK(complementary_kernel(m, 0, 1, 1).is_zero());
}

TEST_CASE("extended kernel and correlation examples") {
  const auto m1 = ModelParams::make(1, 1, 2);
  CHECK(*correlation(m1, {{{0, 1}}}).exact == Rational(1, 2));
  const auto m2 = ModelParams::make(2, 1, 2);
  CHECK(*correlation(m2, {{{0, 1}, {2, 1}}}).exact == Rational(1, 3));
  CHECK(*correlation(m2, {{}}).exact == 1);
  CHECK(*correlation(m2, {{{1, 0}}}).exact == 1);
  const auto m = ModelParams::make(2, 2, 4);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      CHECK(extended_kernel(m, {x, 2}, {y, 2}) == static_kernel(m, 2, x, y));
    }
  }
  CHECK_THROWS_AS(correlation(m2, {{{0, 1}, {0, 1}}}), InputError);
  CHECK_THROWS_AS(correlation(m2, {{{0, 3}}}), InputError);
}

TEST_CASE("sweep: static kernel is a rank-N orthogonal projection") {
  testing::for_each_sweep_model([](const ModelParams& m) {
    const DynamicalKernel k(m);
    for (int t = 0; t <= m.T; ++t) {
      const SliceParams p = k.slice(t).params();
      const std::size_t n = p.size();
      Matrix<Rational> g(n, n);
      Rational trace = 0;
      for (long x = p.support_lo; x <= p.support_hi; ++x) {
        for (long y = p.support_lo; y <= p.support_hi; ++y) {
          const SpaceTimePoint a{static_cast<int>(x), t}, b{static_cast<int>(y), t};
          g(x - p.support_lo, y - p.support_lo) = k.gauge_value(a, b);
          CHECK(k.value(a, b) == k.value(b, a));
          const SignedSqrt kc = complementary_kernel(m, t, x, y);
          const Rational shifted = k.gauge_value(a, b) - (x == y ? 1 : 0);
          const Rational ratio = k.slice(t).weight(x) / k.slice(t).weight(y);
          CHECK(SignedSqrt(sgn(shifted), shifted * shifted * ratio) == kc);
        }
        trace += g(x - p.support_lo, x - p.support_lo);
      }
      CHECK(trace == m.N);
      CHECK(g * g == g);  // idempotence survives the diagonal conjugation
    }
  });
}

TEST_CASE("sweep: correlations match the oracle, lie in [0,1], float agrees") {
  testing::for_each_sweep_model(
      [](const ModelParams& m) {
        const PathOracle oracle(m);
        const DynamicalKernel k(m);
        const auto pts = lattice(m);
        for (std::size_t i = 0; i < pts.size(); ++i) {
          for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const CorrelationQuery q{{pts[i], pts[j]}};
            const auto r = correlation(k, q, NumericBackend::exact());
            CHECK(*r.exact == oracle.correlation(q.points));
            CHECK(*r.exact >= 0);
            CHECK(*r.exact <= 1);
            const auto f = correlation(k, q, NumericBackend::floating());
            CHECK(std::abs(f.value - r.value) < 1e-10);
          }
        }
        // A three-point space-time query at each model.
        if (m.T < 2) return;
        const CorrelationQuery q3{{{0, 0}, {m.S, m.T}, {std::min(1, m.S), 1}}};
        CHECK(*correlation(k, q3, NumericBackend::exact()).exact ==
              oracle.correlation(q3.points));
      },
      3, 5);
}

TEST_CASE("sweep: operator factorization of the s < t branch") {
  testing::for_each_sweep_model([](const ModelParams& m) {
    const DynamicalKernel k(m);
    for (int s = 0; s < m.T; ++s) {
      for (int t = s + 1; t <= m.T; ++t) CHECK(factorization_residual(k, s, t) == 0);
    }
  });
}

TEST_CASE("sweep: time reversal symmetry") {
  testing::for_each_sweep_model(
      [](const ModelParams& m) {
        const DynamicalKernel k(m);
        const auto pts = lattice(m);
        const int top = m.S + m.N - 1;
        for (std::size_t i = 0; i < pts.size(); i += 2) {
          for (std::size_t j = i + 1; j < pts.size(); j += 3) {
            const CorrelationQuery q{{pts[i], pts[j]}};
            const CorrelationQuery r{{{top - pts[i].x, m.T - pts[i].t},
                                      {top - pts[j].x, m.T - pts[j].t}}};
            CHECK(*correlation(k, q, NumericBackend::exact()).exact ==
                  *correlation(k, r, NumericBackend::exact()).exact);
          }
        }
      },
      3, 5);
}

TEST_CASE("gauge transforms leave determinants unchanged") {
  const auto m = ModelParams::make(2, 2, 4);
  const DynamicalKernel k(m);
  const CorrelationQuery q{{{1, 1}, {2, 3}, {0, 2}}};
  const KernelMatrix km = kernel_matrix(k, q, NumericBackend::exact());
  const Rational det = bareiss_determinant(km.gauged);
  const Matrix<Rational> same = gauge_transform(km.gauged, q.points,
                                                [](const SpaceTimePoint&) { return Rational(1); });
  CHECK(same == km.gauged);
  const auto pow2 = gauge_transform(km.gauged, q.points, [](const SpaceTimePoint& p) {
    return Rational(Integer(1) << p.t);
  });
  CHECK(bareiss_determinant(pow2) == det);
  const auto sign = gauge_transform(km.gauged, q.points, [](const SpaceTimePoint& p) {
    return Rational(p.x % 2 ? -1 : 1);
  });
  CHECK(bareiss_determinant(sign) == det);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      Matrix<Rational> two(2, 2);
      two(0, 0) = pow2(a, a);
      two(0, 1) = pow2(a, b);
      two(1, 0) = pow2(b, a);
      two(1, 1) = pow2(b, b);
      CHECK(bareiss_determinant(two) ==
            *correlation(k, {{q.points[a], q.points[b]}}, NumericBackend::exact()).exact);
    }
  }
  CHECK_THROWS_AS(gauge_transform(km.gauged, q.points,
                                  [](const SpaceTimePoint& p) { return Rational(p.x - 1); }),
                  InputError);
}

TEST_CASE("kernel matrix entries equal kernel evaluations") {
  const auto m = ModelParams::make(3, 2, 5);
  const DynamicalKernel k(m);
  const CorrelationQuery q{{{1, 1}, {3, 4}, {2, 2}}};
  const KernelMatrix km = kernel_matrix(k, q, NumericBackend::exact());
  const KernelMatrix kf = kernel_matrix(k, q, NumericBackend::floating());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(km.natural(i, j) == extended_kernel(m, q.points[i], q.points[j]));
      CHECK(kf.values(i, j) == doctest::Approx(km.values(i, j)).epsilon(1e-12));
      CHECK(kf.values(i, j) ==
            doctest::Approx(extended_kernel_float(m, q.points[i], q.points[j])));
    }
  }
  const auto f = correlation(k, q, NumericBackend::floating());
  CHECK(f.pivot_ratio > 0);
  CHECK(f.pivot_ratio <= 1);
}

TEST_CASE("transfer eigenvalues are rational and positive below the cutoff") {
  testing::for_each_sweep_model([](const ModelParams& m) {
    const DynamicalKernel k(m);
    for (int j = 0; j < m.T; ++j) {
      const long top = std::min(k.slice(j).params().M, k.slice(j + 1).params().M);
      for (long i = 0; i <= top; ++i) CHECK(k.eigenvalue(j, i) > 0);
      CHECK(k.eigenvalue(j, top + 1) == 0);
    }
  });
}
