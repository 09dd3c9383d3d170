#pragma once

#include <map>
#include <string>
#include <vector>

#include "somimpute/evaluation.hpp"
#include "somimpute/metric.hpp"
#include "somimpute/superclass.hpp"
#include "somimpute/trainer.hpp"

namespace somimpute {

struct MapView {
    const CodeBook* codebook = nullptr;
    const Assignment* assignment = nullptr;
    std::vector<std::string> row_labels;
    std::vector<bool> supplementary;                          ///< per row; empty means none
    const SuperClassing* superclasses = nullptr;              ///< optional cell coloring
    const std::vector<std::map<std::string, double>>* modalities = nullptr;  ///< optional per-unit shading
    std::string title;
};

/// Plain-text listing, one line per unit in grid order. Supplementary members are
/// wrapped in asterisks; unassigned rows are listed last.
std::string render_map_text(const MapView& view);

/// SVG grid with one cell per unit. Supplementary members are set in italics with a
/// distinct color; super-classes tint the cells; modality proportions are drawn as a
/// stacked grey bar (lightest for the first modality in sorted order).
std::string render_map_svg(const MapView& view);

/// Line chart of estimation error against the number of deleted values per row.
std::string render_curve_svg(const EvalReport& report, const std::string& title = "");

/// Fill colors used for super-classes, cycled when k exceeds the palette.
const std::vector<std::string>& superclass_palette();

}  // namespace somimpute
