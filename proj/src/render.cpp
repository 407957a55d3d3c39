#include "czek/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <regex>
#include <sstream>

namespace czek {

SymbolMode parse_symbol_mode(const std::string& name) {
  if (name == "dots") return SymbolMode::dots;
  if (name == "grayscale") return SymbolMode::grayscale;
  if (name == "color" || name == "color_ramp") return SymbolMode::color_ramp;
  throw ValidationError("unknown style '" + name + "' (expected dots, grayscale or color)");
}

std::vector<double> default_dot_radii(int n_classes) {
  if (n_classes == 5) return {0.42, 0.32, 0.22, 0.12, 0.0};
  std::vector<double> radii;
  const int drawn = n_classes - 1;
  for (int k = 0; k < drawn; ++k) {
    radii.push_back(drawn == 1 ? 0.42 : 0.42 - 0.30 * k / (drawn - 1));
  }
  radii.push_back(0.0);
  return radii;
}

void RenderStyle::validate(int n_classes, Index n) const {
  if (!(cell_px > 0.0)) throw ValidationError("cell size must be positive");
  if (!(label_font_px > 0.0)) throw ValidationError("label font size must be positive");
  if (!dot_radii.empty()) {
    if (static_cast<int>(dot_radii.size()) != n_classes) {
      throw ValidationError("dot radii count does not match the number of classes");
    }
    for (std::size_t k = 1; k < dot_radii.size(); ++k) {
      if (dot_radii[k] > dot_radii[k - 1]) throw ValidationError("dot radii must not increase");
    }
    if (dot_radii.back() != 0.0) throw ValidationError("the blank class radius must be 0");
  }
  if (!tip_colors.empty()) {
    if (static_cast<Index>(tip_colors.size()) != n) {
      throw ValidationError("tip color count does not match the number of observations");
    }
    static const std::regex hex("#[0-9a-fA-F]{6}");
    for (const auto& c : tip_colors) {
      if (!std::regex_match(c, hex)) throw ValidationError("tip color '" + c + "' is not #rrggbb");
    }
  }
}

namespace {

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::size_t utf8_length(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string hex_color(double r, double g, double b) {
  auto channel = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(r), channel(g), channel(b));
  return buf;
}

// 0 for the nearest class, 1 for the blank class.
double class_position(int cls, int n_classes) {
  return n_classes <= 1 ? 0.0 : static_cast<double>(cls - 1) / (n_classes - 1);
}

std::string fill_for(int cls, int n_classes, SymbolMode mode) {
  const double t = class_position(cls, n_classes);
  if (mode == SymbolMode::grayscale) {
    const double lightness = 0.10 + 0.90 * t;
    return hex_color(lightness, lightness, lightness);
  }
  // dark red -> orange -> pale yellow -> white
  struct Stop {
    double at, r, g, b;
  };
  static constexpr Stop stops[] = {
      {0.0, 0.50, 0.00, 0.15}, {0.35, 0.90, 0.33, 0.05}, {0.7, 1.00, 0.85, 0.45}, {1.0, 1.0, 1.0, 1.0}};
  for (std::size_t k = 1; k < std::size(stops); ++k) {
    if (t <= stops[k].at) {
      const double u = (t - stops[k - 1].at) / (stops[k].at - stops[k - 1].at);
      return hex_color(stops[k - 1].r + u * (stops[k].r - stops[k - 1].r),
                       stops[k - 1].g + u * (stops[k].g - stops[k - 1].g),
                       stops[k - 1].b + u * (stops[k].b - stops[k - 1].b));
    }
  }
  return "#ffffff";
}

}  // namespace

std::string render_svg(const CzekanowskiDiagram& d, const RenderStyle& style) {
  const Index n = d.size();
  style.validate(d.n_classes, n);
  const auto radii = style.dot_radii.empty() ? default_dot_radii(d.n_classes) : style.dot_radii;
  const double cell = style.cell_px;
  const double font = style.label_font_px;
  const bool tips = !style.tip_colors.empty();

  std::size_t longest = 0;
  for (const auto& l : d.labels) longest = std::max(longest, utf8_length(l));
  const double gutter = style.show_labels ? 0.62 * font * static_cast<double>(longest) + 6.0 : 0.0;
  const double tip_band = tips ? cell : 0.0;
  const double margin = 4.0;
  const double x0 = margin + gutter + tip_band;
  const double y0 = margin + gutter + tip_band;
  const double grid = cell * static_cast<double>(n);
  const double width = x0 + grid + margin;
  const double height = y0 + grid + margin;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt3(width)
      << "\" height=\"" << fmt3(height) << "\" viewBox=\"0 0 " << fmt3(width) << ' '
      << fmt3(height) << "\">\n"
      << "<rect x=\"0.000\" y=\"0.000\" width=\"" << fmt3(width) << "\" height=\"" << fmt3(height)
      << "\" fill=\"#ffffff\"/>\n";

  svg << "<g id=\"cells\">\n";
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const int cls = d.classes(d.order[r], d.order[c]);
      const double x = x0 + cell * static_cast<double>(c);
      const double y = y0 + cell * static_cast<double>(r);
      if (style.symbol == SymbolMode::dots) {
        const double radius = radii[static_cast<std::size_t>(cls - 1)] * cell / 2.0;
        if (radius <= 0.0) continue;
        svg << "<circle cx=\"" << fmt3(x + cell / 2) << "\" cy=\"" << fmt3(y + cell / 2) << "\" r=\""
            << fmt3(radius) << "\" fill=\"#000000\" data-row=\"" << r << "\" data-col=\"" << c
            << "\" data-class=\"" << cls << "\"/>\n";
      } else {
        svg << "<rect x=\"" << fmt3(x) << "\" y=\"" << fmt3(y) << "\" width=\"" << fmt3(cell)
            << "\" height=\"" << fmt3(cell) << "\" fill=\"" << fill_for(cls, d.n_classes, style.symbol)
            << "\" data-row=\"" << r << "\" data-col=\"" << c << "\" data-class=\"" << cls << "\"/>\n";
      }
    }
  }
  svg << "</g>\n";
  svg << "<rect x=\"" << fmt3(x0) << "\" y=\"" << fmt3(y0) << "\" width=\"" << fmt3(grid)
      << "\" height=\"" << fmt3(grid) << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.000\"/>\n";

  if (tips) {
    svg << "<g id=\"tips\">\n";
    for (Index p = 0; p < n; ++p) {
      const auto& color = style.tip_colors[static_cast<std::size_t>(d.order[p])];
      const double along = cell * static_cast<double>(p) + cell / 2;
      svg << "<circle cx=\"" << fmt3(x0 - tip_band / 2) << "\" cy=\"" << fmt3(y0 + along) << "\" r=\""
          << fmt3(cell * 0.3) << "\" fill=\"" << color << "\"/>\n";
      svg << "<circle cx=\"" << fmt3(x0 + along) << "\" cy=\"" << fmt3(y0 - tip_band / 2) << "\" r=\""
          << fmt3(cell * 0.3) << "\" fill=\"" << color << "\"/>\n";
    }
    svg << "</g>\n";
  }

  if (style.show_labels) {
    svg << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"" << fmt3(font) << "\">\n";
    for (Index p = 0; p < n; ++p) {
      const std::string label = xml_escape(d.labels[static_cast<std::size_t>(d.order[p])]);
      const double along = cell * static_cast<double>(p) + cell / 2;
      svg << "<text x=\"" << fmt3(x0 - tip_band - 3.0) << "\" y=\"" << fmt3(y0 + along)
          << "\" text-anchor=\"end\" dominant-baseline=\"middle\">" << label << "</text>\n";
      const double tx = x0 + along;
      const double ty = y0 - tip_band - 3.0;
      svg << "<text x=\"" << fmt3(tx) << "\" y=\"" << fmt3(ty) << "\" transform=\"rotate(-90 "
          << fmt3(tx) << ' ' << fmt3(ty) << ")\" text-anchor=\"start\" dominant-baseline=\"middle\">"
          << label << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string default_charset(int n_classes) {
  static const std::string glyphs = "#@%*+=-:.";
  if (n_classes < 1 || n_classes - 1 > static_cast<int>(glyphs.size())) {
    throw ValidationError("no default charset for " + std::to_string(n_classes) +
                          " classes; pass one explicitly");
  }
  return glyphs.substr(0, static_cast<std::size_t>(n_classes - 1)) + ' ';
}

std::string render_text(const CzekanowskiDiagram& d, const std::string& charset, bool label_gutter) {
  const std::string glyphs = charset.empty() ? default_charset(d.n_classes) : charset;
  if (static_cast<int>(glyphs.size()) != d.n_classes) {
    throw ValidationError("charset has " + std::to_string(glyphs.size()) + " glyphs but the diagram has " +
                          std::to_string(d.n_classes) + " classes");
  }
  const Index n = d.size();
  std::size_t width = 0;
  if (label_gutter) {
    for (const auto& l : d.labels) width = std::max(width, utf8_length(l));
  }
  std::string out;
  for (Index r = 0; r < n; ++r) {
    if (r > 0) out += '\n';
    if (label_gutter) {
      const auto& l = d.labels[static_cast<std::size_t>(d.order[r])];
      out += std::string(width - utf8_length(l), ' ') + l + " |";
    }
    for (Index c = 0; c < n; ++c) {
      out += glyphs[static_cast<std::size_t>(d.classes(d.order[r], d.order[c]) - 1)];
    }
  }
  return out;
}

std::string print_summary(const CzekanowskiDiagram& d, bool raw) {
  std::ostringstream out;
  out << "Czekanowski diagram: " << d.size() << " observations, " << d.n_classes << " classes, "
      << (d.symmetric ? "symmetric" : "asymmetric (column ranks)") << "\n";
  out << "Ordering:\n";
  for (Index p = 0; p < d.size(); ++p) {
    out << std::setw(5) << p + 1 << "  " << d.labels[static_cast<std::size_t>(d.order[p])] << "\n";
  }
  out << std::setprecision(10);
  out << "um              " << d.report.um << "\n";
  out << "two_sum         " << d.report.two_sum << "\n";
  out << "path_length     " << d.report.path_length << "\n";
  out << "criterion       " << d.report.criterion_name << " = " << d.report.criterion_value << "\n";
  for (const auto& w : d.warnings) out << "warning: " << w << "\n";
  if (raw) {
    if (d.symmetric) {
      out << "breaks         ";
      for (double b : d.breaks) out << ' ' << b;
    } else {
      out << "grouping       ";
      for (int g : d.grouping) out << ' ' << g;
    }
    out << "\norder           ";
    for (long long v : d.order.one_based()) out << ' ' << v;
    out << "\nclasses (original order):\n";
    for (Index i = 0; i < d.size(); ++i) {
      for (Index j = 0; j < d.size(); ++j) out << (j ? " " : "") << d.classes(i, j);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace czek
