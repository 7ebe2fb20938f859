#pragma once

#include <string>

#include "spdchg/analytic_coefficients.hpp"

namespace spdchg {

// Rendering style for coefficient heatmaps.  The colormap is pinned: a
// diverging blue-white-red map anchored to the matrix minimum and maximum
// with white exactly at zero, so sign structure is directly readable and a
// one-signed matrix still shows white at zero.
struct HeatmapStyle {
  int width_px = 360;
  int height_px = 360;
};

// Writes a binary PPM (P6) image of the matrix: index a runs left to right,
// index b bottom to top.  Byte-deterministic; the write is atomic
// (temp file + rename).
void render_heatmap(const CoefficientMatrix& matrix, const HeatmapStyle& style,
                    const std::string& path);

}  // namespace spdchg
