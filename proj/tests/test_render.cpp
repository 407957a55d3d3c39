#include <doctest.h>

#include "support/fixtures.hpp"

#include <czek/render.hpp>

#include <regex>

using namespace czek;

namespace {

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

CzekanowskiDiagram tiny(const ClassMatrix& classes, int n_classes) {
  CzekanowskiDiagram d;
  d.classes = classes;
  d.order = Permutation::identity(classes.rows());
  d.n_classes = n_classes;
  d.labels = default_labels(classes.rows());
  return d;
}

BuiltDiagram sample(Method m = Method::olo) {
  DiagramOptions opt;
  opt.seriation.method = m;
  return build_diagram(fixture::random_distances(13, 1909), opt);
}

// Minimal structural XML check: every tag is closed in order.
bool balanced(const std::string& xml) {
  std::vector<std::string> stack;
  const std::regex tag(R"(<(/?)([A-Za-z]+)[^>]*?(/?)>)");
  for (auto it = std::sregex_iterator(xml.begin(), xml.end(), tag); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (m[0].str().rfind("<?", 0) == 0) continue;
    if (m[3] == "/") continue;
    if (m[1] == "/") {
      if (stack.empty() || stack.back() != m[2]) return false;
      stack.pop_back();
    } else {
      stack.push_back(m[2]);
    }
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("2x2 all-class-1 diagram draws four full-size dots") {
  const auto d = tiny(ClassMatrix::Ones(2, 2), 5);
  RenderStyle style;
  const auto svg = render_svg(d, style);
  CHECK(count(svg, "<circle") == 4);
  // class 1 radius: 0.42 * 16 / 2
  CHECK(count(svg, "r=\"3.360\"") == 4);
  CHECK(svg.find(">1<") != std::string::npos);
  CHECK(svg.find(">2<") != std::string::npos);
  CHECK(balanced(svg));
}

TEST_CASE("rendering is byte-deterministic") {
  const auto d = sample().diagram;
  CHECK(render_svg(d) == render_svg(d));
  CHECK(render_text(d) == render_text(d));
}

TEST_CASE("blank cells draw no circle") {
  const auto d = sample().diagram;
  const auto svg = render_svg(d);
  CHECK(count(svg, "<circle") == (d.classes.array() < d.n_classes).count());
  CHECK(balanced(svg));
}

TEST_CASE("grid cells follow the ordering") {
  const auto d = sample().diagram;
  const auto svg = render_svg(d);
  const std::regex cell(R"re(data-row="(\d+)" data-col="(\d+)" data-class="(\d+)")re");
  int seen = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), cell); it != std::sregex_iterator(); ++it) {
    const Index r = std::stoi((*it)[1]), c = std::stoi((*it)[2]);
    CHECK(std::stoi((*it)[3]) == d.classes(d.order[r], d.order[c]));
    ++seen;
  }
  CHECK(seen > 0);
}

TEST_CASE("grayscale and color modes fill every cell") {
  const auto d = sample().diagram;
  for (auto mode : {SymbolMode::grayscale, SymbolMode::color_ramp}) {
    RenderStyle style;
    style.symbol = mode;
    const auto svg = render_svg(d, style);
    CHECK(count(svg, "data-class=") == 13 * 13);
    CHECK(balanced(svg));
  }
  CHECK(parse_symbol_mode("color") == SymbolMode::color_ramp);
  CHECK_THROWS_AS(parse_symbol_mode("emoji"), ValidationError);
}

TEST_CASE("labels are escaped and optional") {
  auto d = tiny(ClassMatrix::Ones(2, 2), 2);
  d.labels = {"a<b", "c&d"};
  const auto svg = render_svg(d);
  CHECK(svg.find("a&lt;b") != std::string::npos);
  CHECK(svg.find("c&amp;d") != std::string::npos);
  CHECK(balanced(svg));
  RenderStyle bare;
  bare.show_labels = false;
  CHECK(render_svg(d, bare).find("a&lt;b") == std::string::npos);
}

TEST_CASE("style validation") {
  RenderStyle s;
  s.cell_px = 0;
  CHECK_THROWS_AS(s.validate(5, 3), ValidationError);
  s = {};
  s.dot_radii = {0.4, 0.2};
  CHECK_THROWS_AS(s.validate(5, 3), ValidationError);
  s = {};
  s.tip_colors = {"red"};
  CHECK_THROWS_AS(s.validate(5, 3), ValidationError);
  CHECK(default_dot_radii(5) == std::vector<double>{0.42, 0.32, 0.22, 0.12, 0.0});
}

TEST_CASE("tip colors appear along both axes") {
  auto d = tiny(ClassMatrix::Ones(2, 2), 2);
  RenderStyle s;
  s.tip_colors = {"#ff0000", "#00ff00"};
  const auto svg = render_svg(d, s);
  CHECK(count(svg, "#ff0000") == 2);
  CHECK(count(svg, "#00ff00") == 2);
}

TEST_CASE("text rendering") {
  ClassMatrix c(2, 2);
  c << 1, 2, 2, 1;
  CHECK(render_text(tiny(c, 2), "#.") == "#.\n.#");

  ClassMatrix blank = ClassMatrix::Constant(3, 3, 3);
  blank.diagonal().setOnes();
  CHECK(render_text(tiny(blank, 3), "#+ ") == "#  \n # \n  #");

  CHECK_THROWS_AS(render_text(tiny(c, 2), "#.+"), ValidationError);
  CHECK(default_charset(5).size() == 5);
  CHECK(default_charset(5).back() == ' ');

  const auto d = sample().diagram;
  const auto text = render_text(d);
  CHECK(count(text, "\n") == 12);
  for (std::size_t start = 0; start < text.size();) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    CHECK(end - start == 13);
    start = end + 1;
  }
}

TEST_CASE("summary lists labels in display order and the criteria") {
  const auto d = sample().diagram;
  const auto s = print_summary(d);
  CHECK(s.find("path_length") != std::string::npos);
  CHECK(s.find("um") != std::string::npos);
  std::size_t at = 0;
  for (Index p = 0; p < d.size(); ++p) {
    const auto& label = d.labels[static_cast<std::size_t>(d.order[p])];
    const auto found = s.find("  " + label + "\n", at);
    REQUIRE(found != std::string::npos);
    at = found + 1;
  }

  const auto raw = print_summary(d, true);
  CHECK(raw.size() > s.size());
  CHECK(raw.find("breaks") != std::string::npos);
}

TEST_CASE("identity summary keeps input order") {
  CzekanowskiDiagram d = tiny(ClassMatrix::Ones(3, 3), 2);
  d.labels = {"Mazda RX4", "Datsun 710", "Valiant"};
  const auto s = print_summary(d);
  const auto a = s.find("Mazda RX4"), b = s.find("Datsun 710"), c = s.find("Valiant");
  CHECK(a < b);
  CHECK(b < c);
}
