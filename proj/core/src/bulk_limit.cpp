#include "hahn/bulk_limit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "hahn/hahn_polynomials.hpp"
#include "hahn/kernels.hpp"

namespace hahn {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kQuadratureTol = 1e-12;
constexpr long kPanelCap = 1L << 20;
constexpr double kCheckTol = 1e-10;

cplx ipow(cplx base, long e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  cplx out = 1.0;
  while (e) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

class AdaptiveSimpson {
 public:
  explicit AdaptiveSimpson(std::function<cplx(double)> f) : f_(std::move(f)) {}

  cplx integrate(double a, double b, double tol) {
    panels_ = 0;
    const double m = 0.5 * (a + b);
    const cplx fa = f_(a), fm = f_(m), fb = f_(b);
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return refine(a, b, fa, fm, fb, whole, tol, 0);
  }

  long panels() const { return panels_; }

 private:
  cplx refine(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole,
              double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cplx flm = f_(lm), frm = f_(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx delta = left + right - whole;
    if ((depth >= 6 && std::abs(delta) <= 15.0 * tol) || depth >= 60) {
      panels_ += 2;
      if (panels_ > kPanelCap) {
        throw ResourceLimit("contour quadrature exceeded the panel cap");
      }
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  std::function<cplx(double)> f_;
  long panels_ = 0;
};

// (1/2 pi) int over the arc of e^{i m theta}: right arc [-phi, phi]
// counterclockwise, left arc clockwise from -phi to phi - 2 pi.
double elementary_arc(double phi, long m, ArcSide side) {
  const double right = sine_kernel_static(phi, m);
  return side == ArcSide::Right ? right : right - (m == 0 ? 1.0 : 0.0);
}

double box_product(double a, double b, const char* what) {
  if (a <= 0 || b <= 0) {
    throw BoundaryRegime(std::string("regime point on the boundary: ") + what);
  }
  return a * b;
}

}  // namespace

LimitRegime LimitRegime::make(double N, double S, double T, double t,
                              double x) {
  if (!(N > 0)) throw InputError("limit regime needs N > 0");
  if (!(S > 0 && S <= T)) throw InputError("limit regime needs 0 < S <= T");
  if (!(t >= 0 && t <= T)) throw InputError("limit regime needs 0 <= t <= T");
  if (!(x >= std::max(0.0, t + S - T) && x <= std::min(t, S) + N)) {
    throw InputError("limit regime location outside the hexagon");
  }
  return {N, S, T, t, x};
}

LimitRegime LimitRegime::flipped() const {
  return {N, S, T, T - t, S + N - x};
}

std::string LimitRegime::str() const {
  std::ostringstream os;
  os << "(N=" << N << ",S=" << S << ",T=" << T << ",t=" << t << ",x=" << x
     << ")";
  return os.str();
}

LimitKernelParams limit_params(const LimitRegime& r) {
  const double up = r.x * (r.S + r.N - r.x);
  const double stay = box_product(r.T - r.t - r.S + r.x, r.t + r.N - r.x,
                                  "amplitude denominator");
  const double four = box_product(up, (r.t + r.N - r.x) * (r.x + r.T - r.S - r.t),
                                  "angle denominator");
  LimitKernelParams p;
  p.c = std::sqrt(up / stay);
  p.D = (-r.N * (r.N + r.T) + (r.S + r.N - r.x) * (r.t + r.N - r.x) +
         r.x * (r.T + r.x - r.S - r.t)) /
        (2.0 * std::sqrt(four));
  p.phi = std::acos(std::clamp(p.D, -1.0, 1.0));
  return p;
}

Tridiagonal limit_tridiagonal(const LimitRegime& r) {
  Tridiagonal tri;
  tri.A = -(r.S + r.N - r.x) * (r.t + r.N - r.x) - r.x * (r.x + r.T - r.S - r.t);
  const double b2 =
      (r.S + r.N - r.x) * (r.t + r.N - r.x) * r.x * (r.x + r.T - r.S - r.t);
  if (!(b2 > 0)) throw BoundaryRegime("limit operator off-diagonal vanishes");
  tri.B = std::sqrt(b2);
  const double cos_phi = (-r.N * (r.N + r.T) - tri.A) / (2.0 * tri.B);
  const double D = limit_params(r).D;
  if (std::abs(cos_phi - D) > 1e-12 * std::max(1.0, std::abs(D))) {
    throw IdentityViolation("tridiagonal limit disagrees with the angle formula");
  }
  return tri;
}

double sine_kernel_static(double phi, long d) {
  if (d == 0) return phi / kPi;
  return std::sin(phi * static_cast<double>(d)) / (kPi * static_cast<double>(d));
}

std::string to_string(ArcSide side) {
  return side == ArcSide::Right ? "right" : "left";
}

ArcSide arc_side(long dt) { return dt <= 0 ? ArcSide::Right : ArcSide::Left; }

ContourValue arc_integral_quadrature(const LimitKernelParams& p, long dx,
                                     long dt, ArcSide side) {
  const bool through_minus_one = side == ArcSide::Left || p.phi >= kPi;
  if (dt < 0 && std::abs(p.c - 1.0) < 1e-14 && through_minus_one) {
    throw PoleOnContour("pole of the integrand lies on the integration arc");
  }
  AdaptiveSimpson simpson([&](double theta) {
    const cplx w = std::polar(1.0, theta);
    return ipow(1.0 + p.c * w, dt) * std::polar(1.0, theta * dx);
  });
  ContourValue out;
  if (side == ArcSide::Right) {
    out.value = simpson.integrate(-p.phi, p.phi, kQuadratureTol) / (2.0 * kPi);
  } else {
    out.value =
        -simpson.integrate(p.phi, 2.0 * kPi - p.phi, kQuadratureTol) / (2.0 * kPi);
  }
  out.panels = simpson.panels();
  return out;
}

double arc_integral_binomial(const LimitKernelParams& p, long dx, long dt,
                             ArcSide side) {
  if (dt < 0) throw InputError("binomial expansion needs dt >= 0");
  double sum = 0.0;
  double coeff = 1.0;  // C(dt,k) c^k
  for (long k = 0; k <= dt; ++k) {
    sum += coeff * elementary_arc(p.phi, dx + k, side);
    coeff *= p.c * static_cast<double>(dt - k) / static_cast<double>(k + 1);
  }
  return sum;
}

double extended_sine_kernel(const LimitKernelParams& p, long dx, long dt,
                            ArcSide side) {
  const ContourValue q = arc_integral_quadrature(p, dx, dt, side);
  const double magnitude = std::abs(q.value.real());
  if (std::abs(q.value.imag()) > kCheckTol * magnitude + 1e-12) {
    throw IdentityViolation("contour integral has a non-vanishing imaginary part");
  }
  if (dt < 0) return q.value.real();
  const double closed = arc_integral_binomial(p, dx, dt, side);
  if (std::abs(closed - q.value.real()) > kCheckTol) {
    throw IdentityViolation("binomial form and quadrature disagree");
  }
  return closed;
}

double extended_sine_kernel(const LimitKernelParams& p, long dx, long dt) {
  return extended_sine_kernel(p, dx, dt, arc_side(dt));
}

double inverted_extended_sine_kernel(const LimitKernelParams& p, long dx,
                                     long dt) {
  const LimitKernelParams inv{1.0 / p.c, p.phi, p.D};
  return std::pow(p.c, static_cast<double>(dt)) *
         extended_sine_kernel(inv, -dx - dt, dt);
}

std::complex<double> or_kernel(double radius, double psi, long dx_lattice,
                               long dt) {
  if (dt % 2 != 0) throw InputError("the sheared lattice needs an even dt");
  const long m = dx_lattice - dt / 2;
  if (dt < 0 && std::abs(radius - 1.0) < 1e-14 && psi <= 0.0) {
    throw PoleOnContour("pole of the integrand lies on the integration arc");
  }
  AdaptiveSimpson simpson([&](double theta) {
    const cplx w = std::polar(radius, theta);
    return ipow(1.0 - w, dt) * ipow(w, m);
  });
  if (dt >= 0) return simpson.integrate(-psi, psi, kQuadratureTol) / (2.0 * kPi);
  return -simpson.integrate(psi, 2.0 * kPi - psi, kQuadratureTol) / (2.0 * kPi);
}

double or_duality_residual(const LimitKernelParams& params, long dx, long dt) {
  if (dt % 2 != 0) throw InputError("duality check needs an even dt");
  LimitKernelParams p = params;
  if (p.c > 1.0) {
    p.c = 1.0 / p.c;
    dx = -dx - dt;
  }
  const double ours = extended_sine_kernel(p, dx, dt);
  const std::complex<double> other = or_kernel(p.c, kPi - p.phi, dx + dt / 2, dt);
  if (std::abs(other.imag()) > kCheckTol * std::abs(other.real()) + 1e-12) {
    throw IdentityViolation("OR kernel has a non-vanishing imaginary part");
  }
  const double sign = (dx % 2 == 0) ? 1.0 : -1.0;
  const double delta = (dx == 0 && dt == 0) ? 1.0 : 0.0;
  return sign * ours -
         (delta - other.real() / std::pow(p.c, static_cast<double>(dx)));
}

std::string to_string(Region r) {
  switch (r) {
    case Region::Inside: return "INSIDE";
    case Region::FrozenEmpty: return "FROZEN_EMPTY";
    case Region::FrozenFull: return "FROZEN_FULL";
  }
  return "?";
}

namespace {
double form(double N, double S, double T, double t, double x) {
  return T * T * x * x + (S + N) * (S + N) * t * t +
         2 * x * t * (N * T - S * T - 2 * S * N) +
         2 * t * (S * N * N - N * T * S - N * N * T + S * S * N) +
         2 * x * (N * T * S - N * T * T) + N * N * (T - S) * (T - S);
}
}  // namespace

double ellipse_form(const LimitRegime& r) { return form(r.N, r.S, r.T, r.t, r.x); }

Region ellipse_classify(const LimitRegime& r) {
  if (ellipse_form(r) <= 0) return Region::Inside;
  return limit_params(r).D > 0 ? Region::FrozenEmpty : Region::FrozenFull;
}

double limit_density(const LimitRegime& r) {
  switch (ellipse_classify(r)) {
    case Region::FrozenEmpty: return 0.0;
    case Region::FrozenFull: return 1.0;
    case Region::Inside: break;
  }
  return limit_params(r).phi / kPi;
}

std::vector<SideDiscriminant> ellipse_tangency(double N, double S, double T) {
  struct Line {
    const char* name;
    double t0, x0, dt, dx;
  };
  const Line lines[] = {
      {"t=0", 0, 0, 0, 1},       {"t=T", T, 0, 0, 1},
      {"x=0", 0, 0, 1, 0},       {"x=S+N", 0, S + N, 1, 0},
      {"x=t+N", 0, N, 1, 1},     {"x=t-(T-S)", T - S, 0, 1, 1},
  };
  std::vector<SideDiscriminant> out;
  for (const auto& l : lines) {
    auto q = [&](double s) {
      return form(N, S, T, l.t0 + s * l.dt, l.x0 + s * l.dx);
    };
    const double c0 = q(0), qp = q(1), qm = q(-1);
    const double a = 0.5 * (qp + qm) - c0;
    const double b = 0.5 * (qp - qm);
    out.push_back({l.name, b * b - 4 * a * c0});
  }
  return out;
}

ScaledPoint scale_regime(const LimitRegime& r, double rho,
                         const std::vector<std::pair<long, long>>& offsets) {
  auto round_half_up = [](double v) { return static_cast<int>(std::floor(v + 0.5)); };
  ScaledPoint sp;
  sp.rho = rho;
  const int N = round_half_up(rho * r.N), S = round_half_up(rho * r.S),
            T = round_half_up(rho * r.T);
  if (N < 1 || S < 0 || S > T || T < 1) {
    throw InputError("scaled parameters do not form a model at rho=" +
                     std::to_string(rho));
  }
  sp.model = ModelParams::make(N, S, T);
  sp.t = round_half_up(rho * r.t);
  const int x0 = round_half_up(rho * r.x);
  auto fits = [&](int x) {
    for (const auto& [dx, dt] : offsets) {
      const long t = sp.t + std::max(0L, dt);
      const long s = sp.t + std::min(0L, dt);
      if (s < 0 || t > T) return false;
      const SliceParams row = slice_params(sp.model, sp.t);
      const SliceParams col = slice_params(sp.model, static_cast<int>(sp.t + dt));
      if (!row.contains(x + dx) || !col.contains(x)) return false;
    }
    return true;
  };
  for (int repair : {0, -1, 1}) {
    if (fits(x0 + repair)) {
      sp.x = x0 + repair;
      sp.repair = repair;
      return sp;
    }
  }
  throw InputError("scaled point leaves the support at rho=" + std::to_string(rho));
}

double gauge_step_factor(const LimitRegime& r) {
  return std::sqrt((r.T - r.t - r.S + r.x) * (r.t + r.N - r.x) /
                   ((r.t + r.N) * (r.T + r.N - r.t)));
}

ProbeTable convergence_probe(const LimitRegime& regime,
                             const std::vector<std::pair<long, long>>& offsets,
                             const std::vector<double>& rhos,
                             const NumericBackend& backend) {
  ProbeTable table;
  table.regime = regime;
  table.params = limit_params(regime);
  const double a = gauge_step_factor(regime);
  for (double rho : rhos) {
    ProbeRow row;
    row.point = scale_regime(regime, rho, offsets);
    const int t0 = row.point.t, x0 = row.point.x;
    std::vector<SpaceTimePoint> pts;
    for (const auto& [dx, dt] : offsets) {
      pts.push_back({static_cast<int>(x0 + dx), t0});
      pts.push_back({x0, static_cast<int>(t0 + dt)});
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const DynamicalKernel kernel(row.point.model, pts);
    for (const auto& [dx, dt] : offsets) {
      const SpaceTimePoint p{static_cast<int>(x0 + dx), t0};
      const SpaceTimePoint q{x0, static_cast<int>(t0 + dt)};
      ProbeCell cell;
      cell.dx = dx;
      cell.dt = dt;
      const double raw = backend.mode == Mode::Exact
                             ? kernel.value(p, q).to_double()
                             : kernel.value_float(p, q);
      cell.prelimit = raw / std::pow(a, static_cast<double>(dt));
      cell.limit = extended_sine_kernel(table.params, dx, dt);
      cell.error = std::abs(cell.prelimit - cell.limit);
      row.max_error = std::max(row.max_error, cell.error);
      row.cells.push_back(cell);
    }
    if (!table.rows.empty() && row.max_error > table.rows.back().max_error) {
      table.non_increasing = false;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ScaledDensity prelimit_density(const LimitRegime& regime, double rho) {
  ScaledDensity d;
  d.point = scale_regime(regime, rho, {{0, 0}});
  const SpaceTimePoint p{d.point.x, d.point.t};
  d.value = DynamicalKernel(d.point.model, {p}).value(p, p).to_double();
  return d;
}

}  // namespace hahn
