#pragma once

#include "czek/io.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace czek {

struct DatasetInfo {
  std::string name;
  InputKind kind = InputKind::data;
  std::string provenance;
  double max_similarity = 100.0;    // similarity datasets
  bool needs_symmetrize = false;    // distance datasets with known asymmetries
  bool embedded = false;            // compiled into the library
  std::filesystem::path file;       // transcription location (non-embedded)
  bool available = false;

  LoadOptions load_options() const {
    return {needs_symmetrize ? SymmetryMode::symmetrize : SymmetryMode::strict, max_similarity};
  }
};

/// Directory holding reference transcriptions: $CZEK_DATA_DIR if set,
/// otherwise the build-time default.
std::filesystem::path dataset_directory();

/// Embedded fixtures plus the reference datasets, the latter marked
/// available when their CSV exists in `dir`.
std::vector<DatasetInfo> list_datasets(const std::filesystem::path& dir = dataset_directory());

std::optional<DatasetInfo> find_dataset(const std::string& name,
                                        const std::filesystem::path& dir = dataset_directory());

/// Raw table of an available dataset; throws ValidationError otherwise.
LabeledMatrix load_dataset_table(const DatasetInfo& info);

}  // namespace czek
