#pragma once

#include <string>
#include <vector>

#include "spdchg/heatmap.hpp"
#include "spdchg/params.hpp"

namespace spdchg {

// One heatmap panel in a figure set: pump order n at a given waist ratio
// w/delta and collection-width mode.
struct FigurePanelSpec {
  int figure = 0;      // which figure set this panel belongs to (1..4)
  int index = 0;       // panel position within the set (0-based)
  int pump_order = 0;  // 1D pump mode index n
  double w_over_delta = 1.0;
  SigmaMode sigma_mode = SigmaMode::Geometric;
};

// Panel layout for the built-in figure sets:
//   1: n=1, ratios {1/3, 1/2, 1, 2, 3}, geometric collection width
//   2: n=2, same ratios, geometric collection width
//   3: n=5, same ratios, geometric collection width
//   4: n=2, {pump, 2}, {pump, 1/2}, {pm, 2}, {pm, 1/2}
// Throws DomainError for any other figure number.
std::vector<FigurePanelSpec> figure_panel_specs(int which);

// Renders every panel of the given figure set into out_dir as
// fig{which}_panel{i}.ppm, each with a fig{which}_panel{i}.json sidecar
// carrying the panel parameters and the w/delta grid the set was built
// from. Returns the paths written.
std::vector<std::string> render_figure_set(int which, const std::string& out_dir,
                                           int max_index = 17,
                                           const HeatmapStyle& style = {});

}  // namespace spdchg
