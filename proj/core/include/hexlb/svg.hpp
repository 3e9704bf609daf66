#pragma once

#include <filesystem>
#include <string>

#include "hexlb/hexgrid.hpp"
#include "hexlb/pct.hpp"

namespace hexlb {

/// Renders the layout as an SVG document with each triangle filled by a
/// color keyed to its serving hexagon. Best-effort display output; nothing
/// downstream depends on it.
std::string layout_svg(const HexLayout& layout, const Assignment& assignment);

void save_svg(const std::string& svg, const std::filesystem::path& path);

}  // namespace hexlb
