#include "spdchg/figures.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spdchg/analytic_coefficients.hpp"
#include "spdchg/errors.hpp"
#include "spdchg/io.hpp"

namespace spdchg {

namespace {

// Default waist-ratio panel grid for the single-mode figure sets.
const std::vector<double>& ratio_grid() {
  static const std::vector<double> grid = {1.0 / 3.0, 0.5, 1.0, 2.0, 3.0};
  return grid;
}

}  // namespace

std::vector<FigurePanelSpec> figure_panel_specs(int which) {
  std::vector<FigurePanelSpec> panels;
  switch (which) {
    case 1:
    case 2:
    case 3: {
      const int order = which == 1 ? 1 : (which == 2 ? 2 : 5);
      int index = 0;
      for (double ratio : ratio_grid())
        panels.push_back({which, index++, order, ratio, SigmaMode::Geometric});
      return panels;
    }
    case 4: {
      panels.push_back({4, 0, 2, 2.0, SigmaMode::PumpMatched});
      panels.push_back({4, 1, 2, 0.5, SigmaMode::PumpMatched});
      panels.push_back({4, 2, 2, 2.0, SigmaMode::PhaseMatched});
      panels.push_back({4, 3, 2, 0.5, SigmaMode::PhaseMatched});
      return panels;
    }
    default:
      throw DomainError("figure_panel_specs: figure number must be 1..4, got " +
                        std::to_string(which));
  }
}

std::vector<std::string> render_figure_set(int which, const std::string& out_dir,
                                           int max_index, const HeatmapStyle& style) {
  if (max_index < 0) throw DomainError("render_figure_set: negative max index");
  const std::vector<FigurePanelSpec> panels = figure_panel_specs(which);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw std::runtime_error("render_figure_set: cannot create output directory '" +
                             out_dir + "': " + ec.message());

  std::vector<std::string> written;
  for (const FigurePanelSpec& panel : panels) {
    PhysicalParams params;
    params.pump_waist = panel.w_over_delta;  // delta fixed at 1
    params.pm_width = 1.0;
    params.sigma_mode = panel.sigma_mode;
    params.pump_order_n = panel.pump_order;

    const CoefficientMatrix matrix =
        coefficient_matrix(panel.pump_order, params, max_index);

    const std::string stem = (fs::path(out_dir) /
                              ("fig" + std::to_string(which) + "_panel" +
                               std::to_string(panel.index)))
                                 .string();
    const std::string image_path = stem + ".ppm";
    render_heatmap(matrix, style, image_path);
    written.push_back(image_path);

    nlohmann::json sidecar;
    sidecar["figure"] = panel.figure;
    sidecar["panel_index"] = panel.index;
    sidecar["image"] = fs::path(image_path).filename().string();
    sidecar["n"] = panel.pump_order;
    sidecar["w_over_delta"] = panel.w_over_delta;
    sidecar["w_over_delta_grid"] = ratio_grid();
    sidecar["params"] = params_to_json(params);
    sidecar["max_index"] = max_index;
    sidecar["width_px"] = style.width_px;
    sidecar["height_px"] = style.height_px;
    sidecar["raw_frobenius_norm"] = matrix.raw_frobenius_norm;
    sidecar["normalized"] = matrix.normalized;
    sidecar["min_entry"] = matrix.entries.minCoeff();
    sidecar["max_entry"] = matrix.entries.maxCoeff();

    const std::string sidecar_path = stem + ".json";
    atomic_write_file(sidecar_path, sidecar.dump(2) + "\n");
    written.push_back(sidecar_path);
  }
  return written;
}

}  // namespace spdchg
