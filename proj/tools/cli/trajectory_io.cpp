#include "trajectory_io.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace hahn::cli {

std::string encode_moves(const std::vector<Step>& moves) {
  std::string out;
  std::size_t i = 0;
  while (i < moves.size()) {
    std::size_t j = i;
    while (j < moves.size() && moves[j] == moves[i]) ++j;
    out += moves[i] == Step::Up ? 'U' : 'F';
    out += std::to_string(j - i);
    i = j;
  }
  return out;
}

std::vector<Step> decode_moves(const std::string& text) {
  std::vector<Step> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char kind = text[i++];
    if (kind != 'U' && kind != 'F') {
      throw InputError("bad move letter in '" + text + "'");
    }
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i || j - i > 6) throw InputError("bad run length in '" + text + "'");
    const long run = std::stol(text.substr(i, j - i));
    if (run < 1) throw InputError("empty run in '" + text + "'");
    out.insert(out.end(), run, kind == 'U' ? Step::Up : Step::Flat);
    i = j;
  }
  return out;
}

nlohmann::json trajectories_to_json(const ModelParams& model, std::uint64_t seed,
                                    const std::vector<PathFamily>& families) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["model"] = {{"N", model.N}, {"S", model.S}, {"T", model.T}};
  doc["seed"] = seed;
  auto& list = doc["trajectories"] = nlohmann::json::array();
  for (const auto& f : families) {
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& moves : f.moves) paths.push_back(encode_moves(moves));
    list.push_back(std::move(paths));
  }
  return doc;
}

PathFamily read_family(const std::string& path, long index) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open trajectory file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    const auto& m = doc.at("model");
    const ModelParams model = ModelParams::make(
        m.at("N").get<int>(), m.at("S").get<int>(), m.at("T").get<int>());
    const auto& list = doc.at("trajectories");
    if (index < 0 || index >= static_cast<long>(list.size())) {
      throw InputError("trajectory index " + std::to_string(index) +
                       " out of range");
    }
    PathFamily family{model, {}};
    for (const auto& p : list.at(index)) {
      family.moves.push_back(decode_moves(p.get<std::string>()));
    }
    validate(family);
    return family;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed trajectory file: " + std::string(e.what()));
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ResourceLimit("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace hahn::cli
