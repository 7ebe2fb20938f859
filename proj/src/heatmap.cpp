#include "spdchg/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spdchg/errors.hpp"
#include "spdchg/io.hpp"

namespace spdchg {

namespace {

struct Rgb {
  int r, g, b;
};

// Endpoints of the diverging map (cool blue through white to warm red).
constexpr Rgb kBlue{59, 76, 192};
constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kRed{180, 4, 38};

Rgb mix(const Rgb& from, const Rgb& to, double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto channel = [t](int a, int b) {
    return static_cast<int>(std::lround(a + t * (b - a)));
  };
  return {channel(from.r, to.r), channel(from.g, to.g), channel(from.b, to.b)};
}

// White is pinned at zero; the blue ramp is anchored at the matrix minimum
// (when negative) and the red ramp at the maximum (when positive).
Rgb color_for(double value, double min_value, double max_value) {
  if (value > 0.0 && max_value > 0.0) return mix(kWhite, kRed, value / max_value);
  if (value < 0.0 && min_value < 0.0) return mix(kWhite, kBlue, value / min_value);
  return kWhite;
}

}  // namespace

void render_heatmap(const CoefficientMatrix& matrix, const HeatmapStyle& style,
                    const std::string& path) {
  if (style.width_px <= 0 || style.height_px <= 0)
    throw DomainError("render_heatmap: image dimensions must be positive");
  if (matrix.entries.size() == 0)
    throw DomainError("render_heatmap: empty coefficient matrix");

  const int cells = matrix.max_index + 1;
  const double min_value = matrix.entries.minCoeff();
  const double max_value = matrix.entries.maxCoeff();

  std::string out;
  out.reserve(static_cast<size_t>(style.width_px) * style.height_px * 3 + 32);
  out += "P6\n" + std::to_string(style.width_px) + " " + std::to_string(style.height_px) +
         "\n255\n";

  for (int py = 0; py < style.height_px; ++py) {
    // Index b runs bottom to top: the top pixel row shows the largest b.
    const int b = cells - 1 - static_cast<int>(static_cast<long>(py) * cells / style.height_px);
    for (int px = 0; px < style.width_px; ++px) {
      const int a = static_cast<int>(static_cast<long>(px) * cells / style.width_px);
      const Rgb c = color_for(matrix.entries(a, b), min_value, max_value);
      out.push_back(static_cast<char>(c.r));
      out.push_back(static_cast<char>(c.g));
      out.push_back(static_cast<char>(c.b));
    }
  }
  atomic_write_file(path, out);
}

}  // namespace spdchg
