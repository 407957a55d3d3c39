#include "czek/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace czek {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one CSV record; handles quoted fields with doubled quotes.
std::vector<std::string> split_record(const std::string& line, const std::string& where) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          field += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : trim(field));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ValidationError(where + ": unterminated quoted field");
  fields.push_back(was_quoted ? field : trim(field));
  return fields;
}

bool is_missing(const std::string& cell) { return cell.empty() || cell == "NA" || cell == "NaN"; }

bool parse_double(const std::string& cell, double& out) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

LabeledMatrix parse_matrix_csv(std::istream& in, const std::string& source) {
  std::vector<std::vector<std::string>> records;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> line_of;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    records.push_back(split_record(line, source + ":" + std::to_string(line_no)));
    line_of.push_back(line_no);
  }
  if (records.size() < 2) throw ValidationError(source + ": expected a header row and data rows");

  LabeledMatrix m;
  const auto& header = records.front();
  const std::size_t width = header.size();
  if (width < 2) throw ValidationError(source + ": header needs a label column and data columns");
  m.col_labels.assign(header.begin() + 1, header.end());
  const auto rows = static_cast<Index>(records.size() - 1);
  m.values.resize(rows, static_cast<Index>(width - 1));
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where = source + ":" + std::to_string(line_of[r]);
    if (rec.size() != width) {
      throw ValidationError(where + ": row has " + std::to_string(rec.size()) + " fields, header has " +
                            std::to_string(width));
    }
    m.row_labels.push_back(rec.front());
    for (std::size_t c = 1; c < width; ++c) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!is_missing(rec[c]) && !parse_double(rec[c], v)) {
        throw ValidationError(where + ": non-numeric cell '" + rec[c] + "' in row '" + rec.front() +
                              "', column '" + header[c] + "' (row " + std::to_string(r) +
                              ", column " + std::to_string(c) + ")");
      }
      m.values(static_cast<Index>(r - 1), static_cast<Index>(c - 1)) = v;
    }
  }
  return m;
}

LabeledMatrix parse_matrix_csv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_matrix_csv(in, source);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string write_matrix_csv(const LabeledMatrix& m) {
  std::ostringstream out;
  out << "\"\"";
  for (const auto& c : m.col_labels) out << ',' << csv_field(c);
  out << '\n';
  for (Index i = 0; i < m.values.rows(); ++i) {
    out << csv_field(m.row_labels[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < m.values.cols(); ++j) out << ',' << format_number(m.values(i, j));
    out << '\n';
  }
  return out.str();
}

InputKind parse_input_kind(const std::string& name) {
  if (name == "data") return InputKind::data;
  if (name == "dist" || name == "distance") return InputKind::distance;
  if (name == "sim" || name == "similarity") return InputKind::similarity;
  throw ValidationError("unknown input kind '" + name + "' (expected data, dist or sim)");
}

DistanceMatrix similarity_to_distance(const Eigen::MatrixXd& similarities, double max_similarity,
                                      std::vector<std::string> labels) {
  const Index n = similarities.rows();
  if (similarities.cols() != n) throw ValidationError("similarity matrix is not square");
  if (labels.empty()) labels = default_labels(n);
  Eigen::MatrixXd d(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) {
        d(i, j) = 0.0;
        continue;
      }
      const double s = similarities(i, j);
      if (!std::isfinite(s)) {
        throw ValidationError("similarity between '" + labels[static_cast<std::size_t>(i)] + "' and '" +
                              labels[static_cast<std::size_t>(j)] + "' is missing");
      }
      if (s > max_similarity) {
        std::ostringstream msg;
        msg << "similarity " << s << " between '" << labels[static_cast<std::size_t>(i)] << "' and '"
            << labels[static_cast<std::size_t>(j)] << "' exceeds the maximum " << max_similarity;
        throw ValidationError(msg.str());
      }
      d(i, j) = max_similarity - s;
    }
  }
  return DistanceMatrix(std::move(d), std::move(labels));
}

LoadedInput to_input(const LabeledMatrix& m, InputKind kind, const LoadOptions& options) {
  switch (kind) {
    case InputKind::data: {
      DataMatrix data{m.values, m.row_labels, m.col_labels};
      validate(data);
      return {std::move(data), {}};
    }
    case InputKind::distance: {
      auto result = validate_or_symmetrize(m.values, m.row_labels, options.symmetry);
      return {std::move(result.distances), std::move(result.asymmetric_pairs)};
    }
    case InputKind::similarity:
      return {similarity_to_distance(m.values, options.max_similarity, m.row_labels), {}};
  }
  throw std::logic_error("unhandled input kind");
}

LoadedInput read_matrix_csv(const std::filesystem::path& path, InputKind kind,
                            const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  return to_input(parse_matrix_csv(in, path.string()), kind, options);
}

// ---------------------------------------------------------------------------

Permutation parse_permutation(const std::string& text, Index n) {
  std::vector<long long> values;
  std::string token;
  bool first = true;
  auto flush = [&] {
    const std::string t = trim(token);
    token.clear();
    if (t.empty()) return;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      if (first && values.empty()) {  // header
        first = false;
        return;
      }
      throw ValidationError("permutation entry '" + t + "' is not an integer");
    }
    first = false;
    values.push_back(v);
  };
  for (char c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == ';' || c == ' ' || c == '\t') {
      flush();
    } else if (c != '"') {
      token += c;
    }
  }
  flush();
  std::vector<Index> zero_based;
  for (long long v : values) zero_based.push_back(static_cast<Index>(v - 1));
  check_bijection(zero_based, n);
  return Permutation(std::move(zero_based));
}

Permutation read_permutation_file(const std::filesystem::path& path, Index n) {
  return parse_permutation(read_text_file(path), n);
}

std::string write_permutation(const Permutation& order) {
  std::string out = "order\n";
  for (long long v : order.one_based()) out += std::to_string(v) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::json export_json(const CzekanowskiDiagram& d, const DistanceMatrix& w) {
  const Index n = d.size();
  if (w.size() != n || static_cast<Index>(d.labels.size()) != n) {
    throw ValidationError("diagram and distance matrix sizes differ");
  }
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["labels"] = d.labels;
  doc["order"] = d.order.one_based();
  auto classes = nlohmann::json::array();
  auto distances = nlohmann::json::array();
  for (Index i = 0; i < n; ++i) {
    auto crow = nlohmann::json::array();
    auto drow = nlohmann::json::array();
    for (Index j = 0; j < n; ++j) {
      crow.push_back(d.classes(i, j));
      drow.push_back(w(i, j));
    }
    classes.push_back(std::move(crow));
    distances.push_back(std::move(drow));
  }
  doc["classes"] = std::move(classes);
  doc["distances"] = std::move(distances);
  doc["breaks"] = d.symmetric ? nlohmann::json(d.breaks) : nlohmann::json(d.grouping);
  doc["n_classes"] = d.n_classes;
  doc["symmetric"] = d.symmetric;
  doc["criteria"] = {{"um", d.report.um},
                     {"two_sum", d.report.two_sum},
                     {"path_length", d.report.path_length},
                     {"criterion_name", d.report.criterion_name},
                     {"criterion_value", d.report.criterion_value}};
  return doc;
}

ImportedDiagram import_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw ValidationError("diagram document is not a JSON object");
    if (doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw ValidationError("unsupported schema_version " + doc.at("schema_version").dump());
    }
    CzekanowskiDiagram d;
    d.labels = doc.at("labels").get<std::vector<std::string>>();
    const auto n = static_cast<Index>(d.labels.size());
    const auto order = doc.at("order").get<std::vector<long long>>();
    d.order = Permutation::from_one_based(order);
    if (d.order.size() != n) throw ValidationError("order length does not match labels");
    d.n_classes = doc.at("n_classes").get<int>();
    d.symmetric = doc.at("symmetric").get<bool>();
    if (d.symmetric) {
      d.breaks = doc.at("breaks").get<std::vector<double>>();
    } else {
      d.grouping = doc.at("breaks").get<std::vector<int>>();
    }

    const auto& classes = doc.at("classes");
    const auto& distances = doc.at("distances");
    if (static_cast<Index>(classes.size()) != n || static_cast<Index>(distances.size()) != n) {
      throw ValidationError("classes/distances do not have one row per label");
    }
    d.classes.resize(n, n);
    Eigen::MatrixXd w(n, n);
    for (Index i = 0; i < n; ++i) {
      const auto& crow = classes.at(static_cast<std::size_t>(i));
      const auto& drow = distances.at(static_cast<std::size_t>(i));
      if (static_cast<Index>(crow.size()) != n || static_cast<Index>(drow.size()) != n) {
        throw ValidationError("classes/distances rows must have one entry per label");
      }
      for (Index j = 0; j < n; ++j) {
        d.classes(i, j) = crow.at(static_cast<std::size_t>(j)).get<int>();
        if (d.classes(i, j) < 1 || d.classes(i, j) > d.n_classes) {
          throw ValidationError("class entry outside 1..n_classes");
        }
        w(i, j) = drow.at(static_cast<std::size_t>(j)).get<double>();
      }
    }
    DistanceMatrix dm(std::move(w), d.labels);
    const auto& criteria = doc.at("criteria");
    d.report.um = criteria.at("um").get<double>();
    d.report.two_sum = criteria.at("two_sum").get<double>();
    d.report.path_length = criteria.at("path_length").get<double>();
    d.report.criterion_name = criteria.at("criterion_name").get<std::string>();
    d.report.criterion_value = criteria.at("criterion_value").get<double>();
    return {std::move(d), std::move(dm)};
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed diagram document: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

}  // namespace czek
