#pragma once

#include "czek/diagram.hpp"
#include "czek/matrix_core.hpp"

#include <json.hpp>

#include <filesystem>
#include <istream>
#include <string>
#include <variant>
#include <vector>

namespace czek {

/// A numeric table with row and column labels. Missing cells ("", "NA")
/// parse as NaN; whether that is acceptable depends on the table kind.
struct LabeledMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
};

/// CSV with a header row of column labels and a leading column of row
/// labels. Fields may be double-quoted. Errors cite row and column.
LabeledMatrix parse_matrix_csv(std::istream& in, const std::string& source = "<input>");
LabeledMatrix parse_matrix_csv(const std::string& text, const std::string& source = "<input>");
std::string write_matrix_csv(const LabeledMatrix& m);

enum class InputKind { data, distance, similarity };

InputKind parse_input_kind(const std::string& name);

struct LoadOptions {
  SymmetryMode symmetry = SymmetryMode::strict;
  double max_similarity = 100.0;
};

struct LoadedInput {
  std::variant<DataMatrix, DistanceMatrix> table;
  std::vector<AsymmetricPair> asymmetric_pairs;  // distance inputs in symmetrize mode
};

LoadedInput read_matrix_csv(const std::filesystem::path& path, InputKind kind,
                            const LoadOptions& options = {});
LoadedInput to_input(const LabeledMatrix& m, InputKind kind, const LoadOptions& options = {});

/// D = max_sim - S with the diagonal forced to max_sim first (so it may be
/// missing in the input). Entries above max_sim are rejected.
DistanceMatrix similarity_to_distance(const Eigen::MatrixXd& similarities, double max_similarity,
                                      std::vector<std::string> labels = {});

/// Permutation files hold 1-based indices separated by commas or newlines,
/// optionally preceded by a non-numeric header line.
Permutation parse_permutation(const std::string& text, Index n);
Permutation read_permutation_file(const std::filesystem::path& path, Index n);
std::string write_permutation(const Permutation& order);

inline constexpr int kSchemaVersion = 1;

/// Diagram hand-off document (schema_version 1). Numbers keep full double
/// precision.
nlohmann::json export_json(const CzekanowskiDiagram& d, const DistanceMatrix& w);

struct ImportedDiagram {
  CzekanowskiDiagram diagram;
  DistanceMatrix distances;
};

/// Inverse of export_json; validates the document structure.
ImportedDiagram import_json(const nlohmann::json& doc);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace czek
