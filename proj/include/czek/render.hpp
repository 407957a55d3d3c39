#pragma once

#include "czek/diagram.hpp"

#include <optional>
#include <string>
#include <vector>

namespace czek {

enum class SymbolMode { dots, grayscale, color_ramp };

SymbolMode parse_symbol_mode(const std::string& name);

struct RenderStyle {
  double cell_px = 16.0;
  SymbolMode symbol = SymbolMode::dots;
  /// Dot radius per class as a fraction of the cell size (drawn radius is
  /// fraction * cell_px / 2). Empty selects default_dot_radii().
  std::vector<double> dot_radii;
  double label_font_px = 11.0;
  bool show_labels = true;
  /// Optional color per observation (original order), drawn along both axes.
  std::vector<std::string> tip_colors;

  void validate(int n_classes, Index n) const;
};

/// (0.42, 0.32, 0.22, 0.12, 0) for five classes; otherwise linear from 0.42
/// down to 0.12 over the non-blank classes, blank class 0.
std::vector<double> default_dot_radii(int n_classes);

/// SVG 1.1 document. Grid cell (r, c) shows classes[order[r]][order[c]].
std::string render_svg(const CzekanowskiDiagram& d, const RenderStyle& style = {});

/// One glyph per class; the last one is the blank glyph. Empty selects a
/// default charset ending in a space.
std::string render_text(const CzekanowskiDiagram& d, const std::string& charset = {},
                        bool label_gutter = false);

std::string default_charset(int n_classes);

/// Ordered labels and criteria; `raw` adds the class matrix and breaks.
std::string print_summary(const CzekanowskiDiagram& d, bool raw = false);

}  // namespace czek
