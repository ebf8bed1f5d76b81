#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hahn/bulk_limit.hpp"
#include "hahn/model.hpp"
#include "hahn/numeric.hpp"

namespace hahn::cli {

inline constexpr int kSchemaVersion = 1;

enum class Format { Json, Csv, Svg };

struct RunConfig {
  std::optional<ModelParams> model;
  std::optional<std::array<int, 3>> hexagon;  // as given, echoed in output
  NumericBackend backend = NumericBackend::exact();
  std::uint64_t seed = 0;
  long samples = 1000;
  bool has_query = false;
  std::vector<SpaceTimePoint> query;
  std::optional<int> time;                   // static kernel grid
  std::optional<std::pair<int, int>> times;  // extended kernel grid (s, t)
  std::optional<LimitRegime> regime;
  std::vector<double> rhos;
  std::vector<std::pair<long, long>> offsets;
  std::string style = "rhombi";
  std::optional<std::string> out;
  Format format = Format::Json;
  std::optional<std::string> trajectories;  // sample: write, render: read
  long index = 0;
  bool compare = false;
  std::uint64_t cap = 0;
};

std::vector<long> parse_integers(const std::string& text, std::size_t expected);
std::vector<double> parse_reals(const std::string& text);
/// "x:t,x:t,..."; empty text is an empty query.
std::vector<SpaceTimePoint> parse_query(const std::string& text);
/// "dx:dt,...".
std::vector<std::pair<long, long>> parse_offsets(const std::string& text);
LimitRegime parse_regime(const std::string& text);
Mode parse_mode(const std::string& text);
Format parse_format(const std::string& text);

/// Exactly one of the two must be non-empty. A hexagon (a,b,c) becomes
/// N=a, S=b, T=b+c after checking that the tiling count is symmetric in b, c.
ModelParams resolve_model(const std::string& model_text,
                          const std::string& hexagon_text,
                          std::optional<std::array<int, 3>>* hexagon);

/// HAHN_PATHS_CAP when set, else the library default.
std::uint64_t enumeration_cap();

}  // namespace hahn::cli
