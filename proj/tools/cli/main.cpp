#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "trajectory_io.hpp"

namespace {

struct RawOptions {
  std::string model, hexagon, mode = "exact", query, regime, rhos, offsets;
  std::string style = "rhombi", out, format, trajectories, times;
  std::uint64_t seed = 0;
  long samples = 1000;
  long index = 0;
  int time = -1;
  bool compare = false;
};

void add_model_options(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--model", o.model, "N,S,T");
  cmd->add_option("--hexagon", o.hexagon, "a,b,c (N=a, S=b, T=b+c)");
  cmd->add_option("--mode", o.mode, "exact|float");
}

void add_output_options(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--out", o.out, "output path (stdout when omitted)");
  cmd->add_option("--format", o.format, "json|csv|svg");
}

hahn::cli::RunConfig resolve(const RawOptions& o, const std::string& command) {
  using namespace hahn::cli;
  RunConfig c;
  if (!o.model.empty() || !o.hexagon.empty()) {
    c.model = resolve_model(o.model, o.hexagon, &c.hexagon);
  }
  c.backend.mode = parse_mode(o.mode);
  c.seed = o.seed;
  c.samples = o.samples;
  c.index = o.index;
  c.compare = o.compare;
  c.style = o.style;
  c.cap = enumeration_cap();
  if (!o.out.empty()) c.out = o.out;
  if (!o.trajectories.empty()) c.trajectories = o.trajectories;
  c.format = parse_format(o.format.empty() ? (command == "render" ? "svg" : "json")
                                           : o.format);
  if (!o.regime.empty()) c.regime = parse_regime(o.regime);
  if (!o.rhos.empty()) c.rhos = parse_reals(o.rhos);
  if (!o.offsets.empty()) c.offsets = parse_offsets(o.offsets);
  if (o.time >= 0) c.time = o.time;
  if (!o.times.empty()) {
    const auto v = parse_integers(o.times, 2);
    c.times = std::pair<int, int>(static_cast<int>(v[0]), static_cast<int>(v[1]));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic computations for non-intersecting lattice "
               "paths in a hexagon"};
  app.require_subcommand(1);
  RawOptions o;
  bool query_given = false;

  auto* enumerate = app.add_subcommand("enumerate", "count families, marginals, oracle correlations");
  add_model_options(enumerate, o);
  add_output_options(enumerate, o);

  auto* kernel = app.add_subcommand("kernel", "kernel grids and correlation determinants");
  add_model_options(kernel, o);
  add_output_options(kernel, o);
  kernel->add_option("--time", o.time, "static kernel grid at time t");
  kernel->add_option("--times", o.times, "extended kernel grid s,t");

  for (auto* cmd : {enumerate, kernel}) {
    cmd->add_option_function<std::string>(
        "--query",
        [&](const std::string& q) {
          o.query = q;
          query_given = true;
        },
        "x:t,x:t,...");
  }

  auto* sample = app.add_subcommand("sample", "exact trajectory sampling");
  add_model_options(sample, o);
  add_output_options(sample, o);
  sample->add_option("--seed", o.seed, "64-bit seed of the mt19937_64 generator");
  sample->add_option("--samples", o.samples, "number of trajectories");
  sample->add_option("--trajectories", o.trajectories, "write trajectories here");
  sample->add_flag("--compare", o.compare, "compare densities with the exact kernel");

  auto* limit = app.add_subcommand("limit", "bulk limit quantities");
  add_model_options(limit, o);
  add_output_options(limit, o);
  limit->add_option("--regime", o.regime, "N,S,T,t,x (macroscopic)")->required();
  limit->add_option("--rhos", o.rhos, "scales for the convergence table");
  limit->add_option("--offsets", o.offsets, "dx:dt,...");

  auto* render = app.add_subcommand("render", "SVG rendering of one sampled family");
  add_output_options(render, o);
  render->add_option("--trajectories", o.trajectories, "trajectory file")->required();
  render->add_option("--index", o.index, "trajectory index in the file");
  render->add_option("--style", o.style, "paths|surface|rhombi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    hahn::cli::RunConfig config = resolve(o, command);
    config.has_query = query_given;
    if (query_given) config.query = hahn::cli::parse_query(o.query);

    hahn::cli::CommandOutput output;
    if (command == "enumerate") output = hahn::cli::cmd_enumerate(config);
    else if (command == "kernel") output = hahn::cli::cmd_kernel(config);
    else if (command == "sample") output = hahn::cli::cmd_sample(config);
    else if (command == "limit") output = hahn::cli::cmd_limit(config);
    else output = hahn::cli::cmd_render(config);

    if (config.out) {
      hahn::cli::write_atomic(*config.out, output.text);
    } else {
      std::cout << output.text;
    }
    return 0;
  } catch (const hahn::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const hahn::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const hahn::MathBoundary& e) {
    std::cerr << "mathematical boundary: " << e.what() << "\n";
    return 4;
  } catch (const hahn::DegenerateParameters& e) {
    std::cerr << "mathematical boundary: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
