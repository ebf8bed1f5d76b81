#pragma once

#include <string>

#include "hahn/model.hpp"

namespace hahn::cli {

enum class RenderStyle { Paths, Surface, Rhombi };

RenderStyle parse_style(const std::string& text);

/// Element counts of a rendering, by class attribute.
struct RenderCounts {
  long up = 0;
  long flat = 0;
  long gap = 0;
};

/// Counts without rendering: UP = N S, FLAT = N (T - S), GAP = S (T - S).
RenderCounts expected_counts(const ModelParams& model);

/// Deterministic SVG of one path family with unit edge 20.
///   paths:   steps drawn in the (t, x) lattice, one <line> per step;
///   surface: the same steps along +30 / -30 degree directions;
///   rhombi:  the full lozenge tiling of the hexagon, one <polygon> per tile.
/// Every step element carries class "up" or "flat", gap tiles class "gap".
std::string render_svg(const PathFamily& family, RenderStyle style,
                       RenderCounts* counts = nullptr);

}  // namespace hahn::cli
