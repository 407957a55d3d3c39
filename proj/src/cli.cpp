#include "czek/cli.hpp"

#include "czek/datasets.hpp"
#include "czek/diagram.hpp"
#include "czek/io.hpp"
#include "czek/render.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <optional>
#include <sstream>

namespace czek {

namespace {

struct InputArgs {
  std::string input;
  std::string dataset;
  std::string kind;
  bool symmetrize = false;
  double max_similarity = 100.0;
};

void add_input_options(CLI::App* cmd, InputArgs& in, const std::string& default_kind) {
  in.kind = default_kind;
  auto* file = cmd->add_option("--input", in.input, "CSV file with row and column labels");
  auto* ds = cmd->add_option("--dataset", in.dataset, "Bundled dataset name (see `datasets list`)");
  file->excludes(ds);
  cmd->add_option("--input-kind", in.kind, "data, dist or sim")
      ->check(CLI::IsMember({"data", "dist", "distance", "sim", "similarity"}))
      ->capture_default_str();
  cmd->add_flag("--symmetrize", in.symmetrize, "Average asymmetric distance pairs instead of failing");
  cmd->add_option("--max-similarity", in.max_similarity, "Maximum similarity for sim inputs")
      ->capture_default_str();
}

LoadedInput load_input(const InputArgs& in, const CLI::App& cmd, std::ostream& err) {
  LoadOptions options{in.symmetrize ? SymmetryMode::symmetrize : SymmetryMode::strict,
                      in.max_similarity};
  LoadedInput loaded;
  if (!in.dataset.empty()) {
    const auto info = find_dataset(in.dataset);
    if (!info) throw ValidationError("unknown dataset '" + in.dataset + "'");
    LoadOptions ds_options = info->load_options();
    if (cmd.count("--max-similarity") > 0) ds_options.max_similarity = in.max_similarity;
    if (in.symmetrize) ds_options.symmetry = SymmetryMode::symmetrize;
    const InputKind kind = cmd.count("--input-kind") > 0 ? parse_input_kind(in.kind) : info->kind;
    loaded = to_input(load_dataset_table(*info), kind, ds_options);
  } else if (!in.input.empty()) {
    loaded = read_matrix_csv(in.input, parse_input_kind(in.kind), options);
  } else {
    throw ValidationError("one of --input or --dataset is required");
  }
  const auto& labels = std::visit(
      [](const auto& t) -> const std::vector<std::string>& {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, DataMatrix>) {
          return t.row_labels;
        } else {
          return t.labels();
        }
      },
      loaded.table);
  for (const auto& p : loaded.asymmetric_pairs) {
    err << "symmetrized: '" << labels[static_cast<std::size_t>(p.i)] << "' / '"
        << labels[static_cast<std::size_t>(p.j)] << "' " << p.w_ij << " vs " << p.w_ji << " -> "
        << 0.5 * (p.w_ij + p.w_ji) << "\n";
  }
  return loaded;
}

std::vector<Index> parse_focal(const std::vector<long long>& focal) {
  std::vector<Index> out;
  for (long long f : focal) out.push_back(static_cast<Index>(f - 1));
  return out;
}

std::string extension_of(const std::string& path) {
  const auto dot = path.find_last_of('.');
  return dot == std::string::npos ? std::string() : path.substr(dot + 1);
}

void print_criteria(std::ostream& out, const CriterionReport& r) {
  out << std::setprecision(12);
  out << "um           " << r.um << "\n";
  out << "two_sum      " << r.two_sum << "\n";
  out << "path_length  " << r.path_length << "\n";
}

struct DiagramArgs {
  InputArgs input;
  std::string order = "olo";
  std::string linkage = "complete";
  std::optional<int> n_classes;
  std::vector<double> proportions;
  std::vector<double> breaks;
  bool original = false;
  std::vector<int> grouping;
  std::string distance = "euclidean";
  bool scale = true;
  std::vector<long long> focal;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  bool print_raw = false;
  std::string style = "dots";
  double cell_px = 16.0;
  double font_px = 11.0;
  bool no_labels = false;
  std::vector<std::string> tip_colors;
  std::string charset;
  bool text_labels = false;
  GaParams ga;
  QapParams qap;
};

int run_diagram(const DiagramArgs& a, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
  const int discretizations = (a.n_classes ? 1 : 0) + (a.proportions.empty() ? 0 : 1) +
                              (a.breaks.empty() ? 0 : 1);
  if (discretizations > 1) {
    throw ValidationError("--n-classes, --proportions and --breaks are mutually exclusive");
  }
  if (a.original && discretizations > 0) {
    throw ValidationError(
        "--original-diagram groups per-column ranks via --column-grouping; --n-classes, "
        "--proportions and --breaks do not apply");
  }
  if (!a.original && !a.grouping.empty()) {
    throw ValidationError("--column-grouping requires --original-diagram");
  }

  DiagramOptions options;
  if (a.original) {
    options.scheme = a.grouping.empty() ? ColumnRank{} : ColumnRank{a.grouping};
  } else if (a.n_classes) {
    options.scheme = EqualCount{*a.n_classes};
  } else if (!a.proportions.empty()) {
    options.scheme = Proportions{a.proportions};
  } else if (!a.breaks.empty()) {
    if (a.breaks.front() != 0.0) {
      throw ValidationError("--breaks has to start with 0 and end with the largest distance");
    }
    options.scheme = ExplicitBreaks{a.breaks};
  }

  LoadedInput loaded = load_input(a.input, cmd, err);

  SeriationConfig& cfg = options.seriation;
  cfg.seed = a.seed;
  cfg.linkage = parse_linkage(a.linkage);
  cfg.ga = a.ga;
  cfg.qap = a.qap;
  const Index n = std::visit([](const auto& t) -> Index {
    if constexpr (std::is_same_v<std::decay_t<decltype(t)>, DataMatrix>) {
      return t.rows();
    } else {
      return t.size();
    }
  }, loaded.table);
  if (a.order == "olo") {
    cfg.method = Method::olo;
  } else if (a.order == "qap2sum") {
    cfg.method = Method::qap2sum;
  } else if (a.order == "ga") {
    cfg.method = Method::ga;
  } else if (a.order == "identity") {
    cfg.method = Method::identity;
  } else if (a.order.rfind("file:", 0) == 0) {
    cfg.method = Method::user;
    cfg.user_order = read_permutation_file(a.order.substr(5), n);
  } else if (default_registry().contains(a.order)) {
    cfg.method = Method::custom;
    cfg.custom_name = a.order;
  } else {
    throw ValidationError("unknown --order '" + a.order +
                          "' (expected olo, qap2sum, ga, identity or file:PERM.csv)");
  }
  options.focal = parse_focal(a.focal);
  options.scale_data = a.scale;
  options.metric = parse_metric(a.distance);

  RenderStyle style;
  style.symbol = parse_symbol_mode(a.style);
  style.cell_px = a.cell_px;
  style.label_font_px = a.font_px;
  style.show_labels = !a.no_labels;
  style.tip_colors = a.tip_colors;

  const BuiltDiagram built = std::visit(
      [&](const auto& table) { return build_diagram(table, options); }, loaded.table);
  for (const auto& w : built.diagram.warnings) err << "warning: " << w << "\n";

  for (const auto& path : a.outputs) {
    const std::string ext = extension_of(path);
    if (ext == "svg") {
      write_text_file(path, render_svg(built.diagram, style));
    } else if (ext == "txt") {
      write_text_file(path, render_text(built.diagram, a.charset, a.text_labels) + "\n");
    } else if (ext == "json") {
      write_text_file(path, export_json(built.diagram, built.distances).dump(2) + "\n");
    } else {
      throw ValidationError("output '" + path + "' must end in .svg, .txt or .json");
    }
  }
  out << print_summary(built.diagram, a.print_raw);
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"czek"};
  for (const auto& s : args) argv.push_back(s.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Czekanowski diagrams: seriation, discretization, criteria and rendering", "czek"};
  app.require_subcommand(1);

  // diagram ------------------------------------------------------------------
  DiagramArgs d;
  auto* diagram = app.add_subcommand("diagram", "Seriate, discretize and render a diagram");
  add_input_options(diagram, d.input, "data");
  diagram->add_option("--order", d.order, "olo, qap2sum, ga, identity or file:PERM.csv")
      ->capture_default_str();
  diagram->add_option("--linkage", d.linkage, "Dendrogram linkage for olo")
      ->check(CLI::IsMember({"complete", "average", "single"}))
      ->capture_default_str();
  diagram->add_option("--n-classes", d.n_classes, "Equal-count classes");
  diagram->add_option("--proportions", d.proportions, "Fraction of distances per class")
      ->delimiter(',');
  diagram->add_option("--breaks", d.breaks, "Interval breaks, starting at 0")->delimiter(',');
  diagram->add_flag("--original-diagram", d.original, "Asymmetric per-column rank encoding");
  diagram->add_option("--column-grouping", d.grouping, "Border ranks (default 3,4,5,6)")
      ->delimiter(',');
  diagram->add_option("--distance", d.distance, "euclidean, manhattan or maximum")
      ->capture_default_str();
  diagram->add_flag("--scale,!--no-scale", d.scale, "Standardize raw data (default on)");
  diagram->add_option("--focal", d.focal, "1-based observations held out and placed last")
      ->delimiter(',');
  diagram->add_option("--seed", d.seed, "Random seed")->capture_default_str();
  diagram->add_option("--out", d.outputs, "Output file(s): .svg, .txt or .json");
  diagram->add_flag("--print-raw", d.print_raw, "Print the class matrix and breaks");
  diagram->add_option("--style", d.style, "dots, grayscale or color")->capture_default_str();
  diagram->add_option("--cell-px", d.cell_px, "SVG cell size")->capture_default_str();
  diagram->add_option("--font-px", d.font_px, "SVG label font size")->capture_default_str();
  diagram->add_flag("--no-labels", d.no_labels, "Omit SVG axis labels");
  diagram->add_option("--tip-colors", d.tip_colors, "#rrggbb per observation (input order)")
      ->delimiter(',');
  diagram->add_option("--charset", d.charset, "Text glyph per class, last = blank");
  diagram->add_flag("--text-labels", d.text_labels, "Label gutter in text output");
  diagram->add_option("--ga-population", d.ga.population_size)->capture_default_str();
  diagram->add_option("--ga-generations", d.ga.generations)->capture_default_str();
  diagram->add_option("--ga-crossover", d.ga.crossover_prob)->capture_default_str();
  diagram->add_option("--ga-mutation", d.ga.mutation_prob)->capture_default_str();
  diagram->add_option("--ga-stagnation", d.ga.stagnation_limit)->capture_default_str();
  diagram->add_option("--qap-restarts", d.qap.restarts)->capture_default_str();
  diagram->add_option("--qap-sweeps", d.qap.sa_sweeps)->capture_default_str();
  diagram->add_option("--qap-temp", d.qap.sa_initial_temp)->capture_default_str();
  diagram->add_option("--qap-cooling", d.qap.sa_cooling)->capture_default_str();

  // criteria -----------------------------------------------------------------
  InputArgs crit_in;
  std::string order_file;
  std::string crit_distance = "euclidean";
  bool crit_scale = true;
  auto* criteria = app.add_subcommand("criteria", "Print U_m, 2-sum and path length of an ordering");
  add_input_options(criteria, crit_in, "dist");
  criteria->add_option("--order-file", order_file, "1-based permutation (default: input order)");
  criteria->add_option("--distance", crit_distance, "Metric for data inputs")->capture_default_str();
  criteria->add_flag("--scale,!--no-scale", crit_scale, "Standardize data inputs (default on)");

  // reorder ------------------------------------------------------------------
  std::string reorder_json;
  std::string reorder_perm;
  std::string reorder_out;
  auto* reorder = app.add_subcommand("reorder", "Apply a manual ordering to an exported diagram");
  reorder->add_option("--json", reorder_json, "Diagram JSON from `diagram --out F.json`")->required();
  reorder->add_option("--new-order", reorder_perm, "1-based permutation file")->required();
  reorder->add_option("--out", reorder_out, "Updated diagram JSON")->required();

  // datasets -----------------------------------------------------------------
  auto* datasets = app.add_subcommand("datasets", "Bundled reference data");
  datasets->require_subcommand(1);
  auto* ds_list = datasets->add_subcommand("list", "List datasets and their availability");
  std::string dump_name;
  std::string dump_out;
  auto* ds_dump = datasets->add_subcommand("dump", "Write a dataset as CSV");
  ds_dump->add_option("name", dump_name)->required();
  ds_dump->add_option("--out", dump_out, "File to write (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*diagram) return run_diagram(d, *diagram, out, err);

    if (*criteria) {
      LoadedInput loaded = load_input(crit_in, *criteria, err);
      DistanceMatrix w = std::visit(
          [&](const auto& t) -> DistanceMatrix {
            if constexpr (std::is_same_v<std::decay_t<decltype(t)>, DataMatrix>) {
              return compute_distance(crit_scale ? standardize(t) : t, parse_metric(crit_distance));
            } else {
              return t;
            }
          },
          loaded.table);
      const Permutation pi = order_file.empty() ? Permutation::identity(w.size())
                                                : read_permutation_file(order_file, w.size());
      print_criteria(out, make_report(w, pi, kCriterionPath));
      return kExitOk;
    }

    if (*reorder) {
      const auto doc = nlohmann::json::parse(read_text_file(reorder_json), nullptr, false);
      if (doc.is_discarded()) throw ValidationError("'" + reorder_json + "' is not valid JSON");
      const ImportedDiagram imported = import_json(doc);
      const Permutation pi = read_permutation_file(reorder_perm, imported.distances.size());
      const CzekanowskiDiagram updated = manual_reorder(imported.diagram, pi, imported.distances);
      write_text_file(reorder_out, export_json(updated, imported.distances).dump(2) + "\n");
      print_criteria(out, updated.report);
      return kExitOk;
    }

    if (*ds_list) {
      for (const auto& info : list_datasets()) {
        out << std::left << std::setw(24) << info.name << std::setw(6)
            << (info.kind == InputKind::data ? "data" : info.kind == InputKind::distance ? "dist" : "sim")
            << (info.available ? (info.embedded ? "bundled    " : "available  ") : "missing    ")
            << info.provenance << "\n";
      }
      return kExitOk;
    }

    if (*ds_dump) {
      const auto info = find_dataset(dump_name);
      if (!info) throw ValidationError("unknown dataset '" + dump_name + "'");
      const std::string csv = write_matrix_csv(load_dataset_table(*info));
      err << "# " << info->provenance << "\n";
      if (dump_out.empty()) {
        out << csv;
      } else {
        write_text_file(dump_out, csv);
      }
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace czek
