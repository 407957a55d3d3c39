#include "czek/datasets.hpp"

#include <cstdlib>
#include <fstream>

#ifndef CZEK_DEFAULT_DATA_DIR
#define CZEK_DEFAULT_DATA_DIR "data"
#endif

namespace czek {

namespace {

// Three well separated groups of four, rows interleaved so that the input
// order hides the structure.
constexpr const char* kBlocks3 = R"(,x1,x2,x3
a1,1.0,2.0,0.5
b1,5.0,0.5,3.0
c1,2.5,6.0,6.0
a2,1.2,1.8,0.7
b2,5.3,0.7,2.8
c2,2.7,5.8,6.3
a3,0.9,2.1,0.4
b3,4.8,0.4,3.2
c3,2.4,6.2,5.9
a4,1.1,2.2,0.6
b4,5.1,0.6,3.1
c4,2.6,6.1,6.2
)";

// W_ij = |i - j| on eight points of a line.
constexpr const char* kChain8 = R"(,p1,p2,p3,p4,p5,p6,p7,p8
p1,0,1,2,3,4,5,6,7
p2,1,0,1,2,3,4,5,6
p3,2,1,0,1,2,3,4,5
p4,3,2,1,0,1,2,3,4
p5,4,3,2,1,0,1,2,3
p6,5,4,3,2,1,0,1,2
p7,6,5,4,3,2,1,0,1
p8,7,6,5,4,3,2,1,0
)";

struct Embedded {
  const char* name;
  InputKind kind;
  const char* provenance;
  const char* csv;
};

constexpr Embedded kEmbedded[] = {
    {"blocks3", InputKind::data, "synthetic: 12 observations, 3 variables, three groups of four",
     kBlocks3},
    {"chain8", InputKind::distance, "synthetic: distances |i - j| between 8 points on a line",
     kChain8},
};

struct Reference {
  const char* name;
  InputKind kind;
  double max_similarity;
  bool needs_symmetrize;
  const char* provenance;
};

// Reference datasets are read from <data dir>/<name>.csv. Each file must be
// stored in its published ordering, which is the "original" ordering the
// published criterion values refer to.
constexpr Reference kReference[] = {
    {"skulls_distances", InputKind::distance, 100.0, true,
     "Czekanowski (1909) distances between 13 archaic human skulls, in his published row order. "
     "Contains one asymmetric pair (Neandertal/Galley Hill: 10.54 vs 10.504); load with "
     "symmetrization."},
    {"urns", InputKind::data, 100.0, false,
     "Soltysiak & Jaskulski (1999) nine measurements of 13 cremation urns from Paprotki Kolonia "
     "12, rows in the MaCzek ordering; scale before computing Euclidean distances."},
    {"seals_similarities", InputKind::similarity, 100.0, false,
     "Soltysiak (2000) similarities between 37 Akkadian Serpent God seals (maximum 100, diagonal "
     "NA), rows in the MaCzek ordering; convert with distance = 100 - similarity."},
    {"internet_availability", InputKind::distance, 100.0, false,
     "Warzecha (2015) Euclidean distances between 36 Silesian counties on standardized Internet "
     "availability indicators, rows in the MaCzek ordering."},
};

}  // namespace

std::filesystem::path dataset_directory() {
  if (const char* env = std::getenv("CZEK_DATA_DIR"); env && *env) return env;
  return CZEK_DEFAULT_DATA_DIR;
}

std::vector<DatasetInfo> list_datasets(const std::filesystem::path& dir) {
  std::vector<DatasetInfo> out;
  for (const auto& e : kEmbedded) {
    DatasetInfo info;
    info.name = e.name;
    info.kind = e.kind;
    info.provenance = e.provenance;
    info.embedded = true;
    info.available = true;
    out.push_back(std::move(info));
  }
  for (const auto& r : kReference) {
    DatasetInfo info;
    info.name = r.name;
    info.kind = r.kind;
    info.provenance = r.provenance;
    info.max_similarity = r.max_similarity;
    info.needs_symmetrize = r.needs_symmetrize;
    info.file = dir / (std::string(r.name) + ".csv");
    std::error_code ec;
    info.available = std::filesystem::is_regular_file(info.file, ec);
    out.push_back(std::move(info));
  }
  return out;
}

std::optional<DatasetInfo> find_dataset(const std::string& name, const std::filesystem::path& dir) {
  for (auto& info : list_datasets(dir)) {
    if (info.name == name) return info;
  }
  return std::nullopt;
}

LabeledMatrix load_dataset_table(const DatasetInfo& info) {
  if (info.embedded) {
    for (const auto& e : kEmbedded) {
      if (info.name == e.name) return parse_matrix_csv(std::string(e.csv), info.name);
    }
  }
  if (!info.available) {
    throw ValidationError("dataset '" + info.name + "' is not bundled; place its transcription at " +
                          info.file.string());
  }
  std::ifstream in(info.file);
  if (!in) throw ValidationError("cannot open '" + info.file.string() + "'");
  return parse_matrix_csv(in, info.file.string());
}

}  // namespace czek
