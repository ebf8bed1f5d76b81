#include "config.hpp"

#include <cstdlib>
#include <sstream>

#include "hahn/combinatorics.hpp"

namespace hahn::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (text.back() == sep) parts.emplace_back();
  return parts;
}

long to_long(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw InputError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw InputError("not an integer: '" + s + "'");
  return v;
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InputError("not a number: '" + s + "'");
  return v;
}

std::pair<long, long> colon_pair(const std::string& item) {
  const auto parts = split(item, ':');
  if (parts.size() != 2) throw InputError("expected a:b, got '" + item + "'");
  return {to_long(parts[0]), to_long(parts[1])};
}

}  // namespace

std::vector<long> parse_integers(const std::string& text, std::size_t expected) {
  std::vector<long> out;
  for (const auto& p : split(text, ',')) out.push_back(to_long(p));
  if (out.size() != expected) {
    throw InputError("expected " + std::to_string(expected) +
                     " comma-separated integers, got '" + text + "'");
  }
  return out;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(to_real(p));
  return out;
}

std::vector<SpaceTimePoint> parse_query(const std::string& text) {
  std::vector<SpaceTimePoint> out;
  for (const auto& item : split(text, ',')) {
    const auto [x, t] = colon_pair(item);
    out.push_back({static_cast<int>(x), static_cast<int>(t)});
  }
  return out;
}

std::vector<std::pair<long, long>> parse_offsets(const std::string& text) {
  std::vector<std::pair<long, long>> out;
  for (const auto& item : split(text, ',')) out.push_back(colon_pair(item));
  return out;
}

LimitRegime parse_regime(const std::string& text) {
  const auto v = parse_reals(text);
  if (v.size() != 5) throw InputError("--regime needs N,S,T,t,x");
  return LimitRegime::make(v[0], v[1], v[2], v[3], v[4]);
}

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::Exact;
  if (text == "float") return Mode::Float;
  throw InputError("--mode must be exact or float");
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "svg") return Format::Svg;
  throw InputError("--format must be json, csv or svg");
}

ModelParams resolve_model(const std::string& model_text,
                          const std::string& hexagon_text,
                          std::optional<std::array<int, 3>>* hexagon) {
  if (model_text.empty() == hexagon_text.empty()) {
    throw InputError("give exactly one of --model N,S,T and --hexagon a,b,c");
  }
  if (!model_text.empty()) {
    const auto v = parse_integers(model_text, 3);
    return ModelParams::make(v[0], v[1], v[2]);
  }
  const auto v = parse_integers(hexagon_text, 3);
  const ModelParams m = ModelParams::from_hexagon(v[0], v[1], v[2]);
  const ModelParams swapped = ModelParams::from_hexagon(v[0], v[2], v[1]);
  if (count_path_families(m) != count_path_families(swapped)) {
    throw IdentityViolation("hexagon tiling count is not symmetric in b and c");
  }
  if (hexagon) {
    *hexagon = std::array<int, 3>{static_cast<int>(v[0]), static_cast<int>(v[1]),
                                  static_cast<int>(v[2])};
  }
  return m;
}

std::uint64_t enumeration_cap() {
  const char* env = std::getenv("HAHN_PATHS_CAP");
  if (!env || !*env) return kDefaultEnumerationCap;
  const long v = to_long(env);
  if (v < 0) throw InputError("HAHN_PATHS_CAP must be non-negative");
  return static_cast<std::uint64_t>(v);
}

}  // namespace hahn::cli
