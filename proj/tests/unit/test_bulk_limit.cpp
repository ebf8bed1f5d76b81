#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hahn/bulk_limit.hpp"
#include "hahn/kernels.hpp"

using namespace hahn;
using std::numbers::pi;

namespace {
const LimitRegime kCenter = LimitRegime::make(1, 1, 2, 1, 1);

LimitRegime random_interior(std::mt19937_64& rng, double N, double S, double T) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const double t = T * u(rng);
  const double lo = std::max(0.0, t + S - T), hi = std::min(t, S) + N;
  return LimitRegime::make(N, S, T, t, lo + (hi - lo) * u(rng));
}
}  // namespace

TEST_CASE("regime validation") {
  CHECK_THROWS_AS(LimitRegime::make(0, 1, 2, 1, 1), InputError);
  CHECK_THROWS_AS(LimitRegime::make(1, 3, 2, 1, 1), InputError);
  CHECK_THROWS_AS(LimitRegime::make(1, 1, 2, 3, 1), InputError);
  CHECK_THROWS_AS(LimitRegime::make(1, 1, 2, 1, 2.5), InputError);
}

TEST_CASE("limit parameters") {
  const LimitKernelParams p = limit_params(kCenter);
  CHECK(p.c == doctest::Approx(1.0));
  CHECK(p.D == doctest::Approx(-0.5));
  CHECK(p.phi == doctest::Approx(2 * pi / 3));
  const LimitKernelParams out = limit_params(LimitRegime::make(1, 1, 2, 1, 1.95));
  CHECK(out.D > 1);
  CHECK(out.phi == 0.0);
  CHECK_THROWS_AS(limit_params(LimitRegime::make(1, 1, 2, 0, 0)), BoundaryRegime);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const LimitRegime r = random_interior(rng, 1.3, 0.7, 1.9);
    const LimitKernelParams a = limit_params(r), b = limit_params(r.flipped());
    CHECK(a.D == doctest::Approx(b.D));
    CHECK(a.c == doctest::Approx(b.c));
    CHECK(a.phi >= 0);
    CHECK(a.phi <= pi);
  }
}

TEST_CASE("tridiagonal limit operator") {
  const Tridiagonal tri = limit_tridiagonal(kCenter);
  CHECK(tri.A == doctest::Approx(-2));
  CHECK(tri.B == doctest::Approx(1));
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    const LimitRegime r = random_interior(rng, 0.8, 1.1, 1.6);
    const Tridiagonal a = limit_tridiagonal(r), b = limit_tridiagonal(r.flipped());
    CHECK(a.B == doctest::Approx(b.B));
    const LimitKernelParams p = limit_params(r);
    CHECK(std::abs(p.D - (-r.N * (r.N + r.T) - a.A) / (2 * a.B)) < 1e-12);
  }
}

TEST_CASE("static sine kernel") {
  CHECK(sine_kernel_static(2 * pi / 3, 0) == doctest::Approx(2.0 / 3));
  CHECK(std::abs(sine_kernel_static(pi, 3)) < 1e-15);
  CHECK(sine_kernel_static(pi, 0) == doctest::Approx(1));
  CHECK(sine_kernel_static(pi / 2, 1) == doctest::Approx(1 / pi));
  for (long d = 1; d < 8; ++d) {
    CHECK(sine_kernel_static(1.1, d) == sine_kernel_static(1.1, -d));
  }
}

TEST_CASE("extended sine kernel") {
  const LimitKernelParams p{0.6, 1.2, 0};
  for (long dx = -6; dx <= 6; ++dx) {
    CHECK(extended_sine_kernel(p, dx, 0, ArcSide::Right) ==
          doctest::Approx(sine_kernel_static(p.phi, dx)).epsilon(1e-12));
  }
  CHECK(extended_sine_kernel(p, 0, 0) == doctest::Approx(p.phi / pi));
  const LimitKernelParams full{0.4, pi, 0};
  CHECK(extended_sine_kernel(full, 0, 1, ArcSide::Right) == doctest::Approx(1.0));
  for (long dt = 0; dt <= 3; ++dt) {
    for (long dx = -4; dx <= 4; ++dx) {
      for (ArcSide side : {ArcSide::Right, ArcSide::Left}) {
        const ContourValue q = arc_integral_quadrature(p, dx, dt, side);
        CHECK(std::abs(q.value.real() - arc_integral_binomial(p, dx, dt, side)) < 1e-10);
        CHECK(std::abs(q.value.imag()) < 1e-10);
      }
    }
  }
  const LimitKernelParams unit{1.0, 2.0, 0};
  CHECK_THROWS_AS(arc_integral_quadrature(unit, 0, -1, ArcSide::Left), PoleOnContour);
  CHECK_NOTHROW(arc_integral_quadrature(unit, 0, -1, ArcSide::Right));
  CHECK(arc_side(0) == ArcSide::Right);
  CHECK(arc_side(-2) == ArcSide::Right);
  CHECK(arc_side(1) == ArcSide::Left);
}

TEST_CASE("inversion for large amplitude") {
  for (double c : {1.5, 2.5}) {
    const LimitKernelParams p{c, 1.3, 0};
    for (long dt = -2; dt <= 2; ++dt) {
      for (long dx = -3; dx <= 3; ++dx) {
        const double direct = arc_integral_quadrature(p, dx, dt, arc_side(dt)).value.real();
        CHECK(std::abs(direct - inverted_extended_sine_kernel(p, dx, dt)) < 1e-10);
      }
    }
  }
}

TEST_CASE("duality with the reflected-arc kernel") {
  CHECK(std::abs(or_duality_residual({0.5, 1.0, 0}, 0, 0)) < 1e-12);
  for (long dx = -3; dx <= 3; ++dx) {
    if (dx == 0) continue;
    CHECK(std::abs(or_duality_residual({0.5, 1.0, 0}, dx, 0)) < 1e-12);
  }
  for (double c : {0.3, 0.7, 1.0}) {
    for (double phi : {0.5, 1.5, 2.5}) {
      for (long dt : {-2L, 0L, 2L}) {
        if (c == 1.0 && dt > 0) continue;
        for (long dx = -3; dx <= 3; ++dx) {
          CHECK(std::abs(or_duality_residual({c, phi, 0}, dx, dt)) < 1e-10);
        }
      }
    }
  }
  CHECK(std::abs(or_duality_residual({1.8, 1.2, 0}, 1, 2)) < 1e-10);
  CHECK_THROWS_AS(or_duality_residual({0.5, 1.0, 0}, 0, 1), InputError);
}

TEST_CASE("ellipse classification") {
  CHECK(ellipse_form(kCenter) == doctest::Approx(-3));
  CHECK(ellipse_classify(kCenter) == Region::Inside);
  CHECK(ellipse_classify(LimitRegime::make(1, 1, 2, 1, 1.95)) == Region::FrozenEmpty);
  CHECK(limit_density(LimitRegime::make(1, 1, 2, 1, 1.95)) == 0.0);
  CHECK(ellipse_classify(LimitRegime::make(1, 1, 2, 0.1, 0.055)) == Region::FrozenFull);
  CHECK(limit_density(LimitRegime::make(1, 1, 2, 0.1, 0.055)) == 1.0);
  const double edge = std::sqrt(3.0) / 2;
  CHECK(ellipse_classify(LimitRegime::make(1, 1, 2, 1, 1 - edge + 1e-9)) == Region::Inside);
  CHECK(ellipse_classify(LimitRegime::make(1, 1, 2, 1, 1 + edge - 1e-9)) == Region::Inside);
  CHECK(ellipse_classify(LimitRegime::make(1, 1, 2, 1, 1 + edge + 1e-6)) != Region::Inside);
  CHECK(limit_density(kCenter) == doctest::Approx(2.0 / 3));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const LimitRegime r = random_interior(rng, 1.2, 0.9, 2.1);
    const double d = limit_density(r);
    CHECK(d >= 0);
    CHECK(d <= 1);
    const LimitKernelParams p = limit_params(r);
    if (ellipse_classify(r) == Region::Inside) {
      CHECK(p.D <= 1 + 1e-12);
      CHECK(p.D >= -1 - 1e-12);
    } else {
      CHECK(std::abs(p.D) >= 1 - 1e-12);
      CHECK((d == 0.0 || d == 1.0));
    }
  }
}

TEST_CASE("ellipse is tangent to all six sides") {
  for (auto shape : {std::array<double, 3>{1, 1, 2}, {0.7, 1.3, 2.2}, {2, 0.5, 3}}) {
    const auto sides = ellipse_tangency(shape[0], shape[1], shape[2]);
    CHECK(sides.size() == 6);
    for (const auto& s : sides) CHECK(std::abs(s.discriminant) < 1e-9);
  }
}

TEST_CASE("scaled points and gauge factor") {
  const ScaledPoint sp = scale_regime(kCenter, 20, {{0, 0}});
  CHECK(sp.model == ModelParams::make(20, 20, 40));
  CHECK(sp.t == 20);
  CHECK(sp.x == 20);
  CHECK(sp.repair == 0);
  // Near the lower boundary the offsets force a repair of +1.
  const ScaledPoint low = scale_regime(LimitRegime::make(1, 1, 2, 1, 0.01), 10, {{-1, 0}});
  CHECK(low.repair == 1);
  CHECK(gauge_step_factor(kCenter) == doctest::Approx(0.5));
}

TEST_CASE("pre-limit kernel equals the exact kernel at small scale") {
  const ProbeTable table = convergence_probe(kCenter, {{0, 0}, {1, -1}}, {2});
  const ModelParams m = ModelParams::make(2, 2, 4);
  const double a = gauge_step_factor(kCenter);
  CHECK(table.rows[0].point.model == m);
  CHECK(table.rows[0].cells[0].prelimit ==
        doctest::Approx(static_kernel(m, 2, 2, 2).to_double()));
  CHECK(table.rows[0].cells[1].prelimit ==
        doctest::Approx(extended_kernel(m, {3, 2}, {2, 1}).to_double() * a));
}

TEST_CASE("pre-limit density approaches phi/pi at the center") {
  const ProbeTable table = convergence_probe(kCenter, {{0, 0}}, {10, 20, 40});
  CHECK(table.non_increasing);
  CHECK(std::abs(table.rows.back().cells[0].prelimit - 2.0 / 3) < 0.01);
  const ScaledDensity frozen = prelimit_density(LimitRegime::make(1, 1, 2, 1, 1.9), 40);
  CHECK(frozen.value < 0.01);
}
