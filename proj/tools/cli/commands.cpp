#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "hahn/bulk_limit.hpp"
#include "hahn/combinatorics.hpp"
#include "hahn/hahn_process.hpp"
#include "hahn/kernels.hpp"
#include "render.hpp"
#include "trajectory_io.hpp"

namespace hahn::cli {

using nlohmann::json;

namespace {

const ModelParams& require_model(const RunConfig& c) {
  if (!c.model) throw InputError("this command needs --model or --hexagon");
  return *c.model;
}

json header(const RunConfig& c, const char* command) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  if (c.model) {
    json model = {{"N", c.model->N}, {"S", c.model->S}, {"T", c.model->T}};
    if (c.hexagon) {
      model["hexagon"] = {{"a", (*c.hexagon)[0]}, {"b", (*c.hexagon)[1]},
                          {"c", (*c.hexagon)[2]}};
    }
    doc["model"] = model;
  }
  doc["mode"] = c.backend.mode == Mode::Exact ? "exact" : "float";
  return doc;
}

json points_json(const std::vector<SpaceTimePoint>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back({{"x", p.x}, {"t", p.t}});
  return out;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CommandOutput json_output(const json& doc) { return {doc.dump(2) + "\n"}; }

void require_format(const RunConfig& c, std::initializer_list<Format> allowed,
                    const char* command) {
  if (std::find(allowed.begin(), allowed.end(), c.format) == allowed.end()) {
    throw InputError(std::string("unsupported --format for ") + command);
  }
}

}  // namespace

json exact_field(const Rational& q) {
  return {{"value", to_double(q)}, {"exact", to_string(q)}};
}

json exact_field(const SignedSqrt& v) {
  return {{"value", v.to_double()}, {"exact", v.str()}};
}

CommandOutput cmd_enumerate(const RunConfig& c) {
  require_format(c, {Format::Json, Format::Csv}, "enumerate");
  const ModelParams& m = require_model(c);
  const Integer lgv = count_path_families(m);
  if (lgv > Integer(std::to_string(c.cap))) {
    throw CapExceeded("model has " + to_string(lgv) +
                      " path families, above the enumeration cap " +
                      std::to_string(c.cap));
  }
  const PathOracle oracle(m, c.cap);
  json doc = header(c, "enumerate");
  doc["count"] = oracle.family_count();
  doc["lgv_count"] = to_string(lgv);
  json marginals = json::array();
  std::ostringstream csv;
  csv << "t,x,probability,exact\n";
  for (int t = 0; t <= m.T; ++t) {
    const SliceParams p = slice_params(m, t);
    json row = {{"t", t}, {"points", json::array()}};
    for (long x = p.support_lo; x <= p.support_hi; ++x) {
      const Rational r = oracle.correlation({{static_cast<int>(x), t}});
      row["points"].push_back({{"x", x}, {"probability", exact_field(r)}});
      csv << t << "," << x << "," << csv_number(to_double(r)) << ","
          << to_string(r) << "\n";
    }
    marginals.push_back(std::move(row));
  }
  doc["marginals"] = std::move(marginals);
  if (c.has_query) {
    validate_query(m, c.query);
    doc["queries"] = json::array();
    doc["queries"].push_back({{"points", points_json(c.query)},
                              {"probability", exact_field(oracle.correlation(c.query))}});
  }
  if (c.format == Format::Csv) return {csv.str()};
  return json_output(doc);
}

CommandOutput cmd_kernel(const RunConfig& c) {
  require_format(c, {Format::Json, Format::Csv}, "kernel");
  const ModelParams& m = require_model(c);
  const bool exact = c.backend.mode == Mode::Exact;
  json doc = header(c, "kernel");
  std::ostringstream csv;

  if (c.time && c.times) throw InputError("give at most one of --time and --times");
  if (c.time || c.times) {
    const int s = c.time ? *c.time : c.times->first;
    const int t = c.time ? *c.time : c.times->second;
    if (s < 0 || s > m.T || t < 0 || t > m.T) {
      throw InputError("kernel grid time outside 0..T");
    }
    const SliceParams ps = slice_params(m, s), pt = slice_params(m, t);
    std::vector<SpaceTimePoint> pts;
    for (long x = ps.support_lo; x <= ps.support_hi; ++x) {
      pts.push_back({static_cast<int>(x), s});
    }
    for (long y = pt.support_lo; y <= pt.support_hi; ++y) {
      if (s != t) pts.push_back({static_cast<int>(y), t});
    }
    const DynamicalKernel kernel(m, pts);
    json grid = {{"kind", s == t ? "static" : "extended"}, {"s", s}, {"t", t},
                 {"rows", json::array()}, {"cols", json::array()},
                 {"values", json::array()}};
    if (exact) grid["exact"] = json::array();
    csv << "x:" << s << "\\y:" << t;
    for (long y = pt.support_lo; y <= pt.support_hi; ++y) {
      grid["cols"].push_back(y);
      csv << "," << y << ":" << t;
    }
    csv << "\n";
    double trace = 0;
    Rational exact_trace = 0;
    for (long x = ps.support_lo; x <= ps.support_hi; ++x) {
      grid["rows"].push_back(x);
      json vals = json::array(), strs = json::array();
      csv << x << ":" << s;
      for (long y = pt.support_lo; y <= pt.support_hi; ++y) {
        const SpaceTimePoint p{static_cast<int>(x), s}, q{static_cast<int>(y), t};
        double v;
        if (exact) {
          const SignedSqrt e = kernel.value(p, q);
          v = e.to_double();
          strs.push_back(e.str());
          if (x == y && s == t) exact_trace += kernel.gauge_value(p, q);
        } else {
          v = kernel.value_float(p, q);
        }
        if (x == y && s == t) trace += v;
        vals.push_back(v);
        csv << "," << csv_number(v);
      }
      csv << "\n";
      grid["values"].push_back(std::move(vals));
      if (exact) grid["exact"].push_back(std::move(strs));
    }
    if (s == t) {
      grid["trace"] = exact ? exact_field(exact_trace) : json{{"value", trace}};
    }
    doc["grid"] = std::move(grid);
  }

  if (c.has_query) {
    const CorrelationQuery q{c.query};
    const CorrelationResult r = correlation(m, q, c.backend);
    json prob = exact ? exact_field(*r.exact) : json{{"value", r.value}};
    if (!exact) prob["pivot_ratio"] = r.pivot_ratio;
    doc["queries"] = json::array();
    doc["queries"].push_back({{"points", points_json(c.query)}, {"probability", prob}});
    if (!c.time && !c.times) {
      csv << "query,probability\n\"";
      for (std::size_t i = 0; i < c.query.size(); ++i) {
        csv << (i ? "," : "") << c.query[i].x << ":" << c.query[i].t;
      }
      csv << "\"," << csv_number(r.value) << "\n";
    }
  }
  if (!c.has_query && !c.time && !c.times) {
    throw InputError("kernel needs --time, --times or --query");
  }
  if (c.format == Format::Csv) return {csv.str()};
  return json_output(doc);
}

CommandOutput cmd_sample(const RunConfig& c) {
  require_format(c, {Format::Json}, "sample");
  const ModelParams& m = require_model(c);
  if (c.samples < 1) throw InputError("--samples must be positive");
  TrajectorySampler sampler(m, c.seed);
  const int height = m.S + m.N;
  std::vector<std::vector<long>> counts(m.T + 1, std::vector<long>(height, 0));
  std::vector<PathFamily> families;
  for (long k = 0; k < c.samples; ++k) {
    const Trajectory tr = sampler.sample();
    for (const auto& conf : tr.configurations) {
      for (int x : conf.positions) ++counts[conf.t][x];
    }
    if (c.trajectories) families.push_back(tr.to_family());
  }
  json doc = header(c, "sample");
  doc["seed"] = c.seed;
  doc["samples"] = c.samples;
  json densities = json::array();
  double worst_z = 0;
  for (int t = 0; t <= m.T; ++t) {
    const SliceParams p = slice_params(m, t);
    json row = {{"t", t}, {"points", json::array()}};
    std::optional<DynamicalKernel> kernel;
    if (c.compare) {
      std::vector<SpaceTimePoint> pts;
      for (long x = p.support_lo; x <= p.support_hi; ++x) {
        pts.push_back({static_cast<int>(x), t});
      }
      kernel.emplace(m, pts);
    }
    for (long x = p.support_lo; x <= p.support_hi; ++x) {
      const double freq = static_cast<double>(counts[t][x]) / c.samples;
      json point = {{"x", x}, {"frequency", freq}};
      if (kernel) {
        const SpaceTimePoint pt{static_cast<int>(x), t};
        const Rational exact = kernel->gauge_value(pt, pt);
        const double pr = to_double(exact);
        const double sd = std::sqrt(pr * (1 - pr) / c.samples);
        const double z = sd > 0 ? (freq - pr) / sd : (freq == pr ? 0.0 : INFINITY);
        worst_z = std::max(worst_z, std::abs(z));
        point["kernel"] = exact_field(exact);
        point["z"] = z;
      }
      row["points"].push_back(std::move(point));
    }
    densities.push_back(std::move(row));
  }
  doc["densities"] = std::move(densities);
  if (c.compare) doc["max_abs_z"] = worst_z;
  if (c.trajectories) {
    write_atomic(*c.trajectories,
                 trajectories_to_json(m, c.seed, families).dump() + "\n");
    doc["trajectory_file"] = *c.trajectories;
  } else {
    doc["trajectory_file"] = nullptr;
  }
  return json_output(doc);
}

CommandOutput cmd_limit(const RunConfig& c) {
  require_format(c, {Format::Json, Format::Csv}, "limit");
  if (!c.regime) throw InputError("limit needs --regime N,S,T,t,x");
  const LimitRegime& r = *c.regime;
  const LimitKernelParams p = limit_params(r);
  const Region region = ellipse_classify(r);
  json doc = header(c, "limit");
  doc["regime"] = {{"N", r.N}, {"S", r.S}, {"T", r.T}, {"t", r.t}, {"x", r.x}};
  doc["c"] = p.c;
  doc["phi"] = p.phi;
  doc["D"] = p.D;
  doc["density"] = limit_density(r);
  doc["class"] = to_string(region);
  doc["ellipse_form"] = ellipse_form(r);
  const Tridiagonal tri = limit_tridiagonal(r);
  doc["tridiagonal"] = {{"A", tri.A}, {"B", tri.B}};

  json sine = json::array();
  for (long d = -5; d <= 5; ++d) {
    sine.push_back({{"d", d}, {"value", sine_kernel_static(p.phi, d)}});
  }
  doc["sine_kernel"] = std::move(sine);

  std::vector<std::pair<long, long>> offsets = c.offsets;
  if (offsets.empty()) {
    for (long dt = -2; dt <= 2; ++dt) {
      for (long dx = -3; dx <= 3; ++dx) offsets.push_back({dx, dt});
    }
  }
  std::ostringstream csv;
  csv << "dx,dt,side,extended_sine_kernel,duality_residual\n";
  json ext = json::array();
  for (const auto& [dx, dt] : offsets) {
    const double v = extended_sine_kernel(p, dx, dt);
    json cell = {{"dx", dx}, {"dt", dt}, {"side", to_string(arc_side(dt))},
                 {"value", v}};
    std::string residual;
    if (dt % 2 == 0) {
      const double res = or_duality_residual(p, dx, dt);
      cell["duality_residual"] = res;
      residual = csv_number(res);
    }
    csv << dx << "," << dt << "," << to_string(arc_side(dt)) << ","
        << csv_number(v) << "," << residual << "\n";
    ext.push_back(std::move(cell));
  }
  doc["extended_sine_kernel"] = std::move(ext);

  if (!c.rhos.empty()) {
    const ProbeTable table = convergence_probe(r, offsets, c.rhos, c.backend);
    json rows = json::array();
    for (const auto& row : table.rows) {
      json cells = json::array();
      for (const auto& cell : row.cells) {
        cells.push_back({{"dx", cell.dx}, {"dt", cell.dt},
                         {"prelimit", cell.prelimit}, {"limit", cell.limit},
                         {"error", cell.error}});
      }
      const auto& pt = row.point;
      rows.push_back({{"rho", pt.rho},
                      {"model", {{"N", pt.model.N}, {"S", pt.model.S}, {"T", pt.model.T}}},
                      {"t", pt.t}, {"x", pt.x}, {"repair", pt.repair},
                      {"max_error", row.max_error}, {"cells", std::move(cells)}});
    }
    doc["convergence"] = {{"rows", std::move(rows)},
                          {"non_increasing", table.non_increasing}};
    csv << "\nrho,N,S,T,t,x,repair,max_error\n";
    for (const auto& row : table.rows) {
      const auto& pt = row.point;
      csv << csv_number(pt.rho) << "," << pt.model.N << "," << pt.model.S << ","
          << pt.model.T << "," << pt.t << "," << pt.x << "," << pt.repair << ","
          << csv_number(row.max_error) << "\n";
    }
  }
  if (c.format == Format::Csv) return {csv.str()};
  return json_output(doc);
}

CommandOutput cmd_render(const RunConfig& c) {
  require_format(c, {Format::Svg}, "render");
  if (!c.trajectories) throw InputError("render needs --trajectories FILE");
  const PathFamily family = read_family(*c.trajectories, c.index);
  return {render_svg(family, parse_style(c.style))};
}

}  // namespace hahn::cli
