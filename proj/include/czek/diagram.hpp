#pragma once

#include "czek/criteria.hpp"
#include "czek/matrix_core.hpp"
#include "czek/seriation.hpp"
#include "czek/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace czek {

// ---------------------------------------------------------------------------
// Classification schemes

struct EqualCount {
  int n_classes = 5;
};
struct Proportions {
  std::vector<double> fractions;  // per class, summing to one
};
struct ExplicitBreaks {
  std::vector<double> breaks;  // b0 < b1 < ... ; class k covers (b[k-1], b[k]]
};
/// Per-column rank grouping of the asymmetric diagram. Entry k is the last
/// rank of class k+1; ranks past the final entry are blank.
struct ColumnRank {
  std::vector<int> grouping{3, 4, 5, 6};
};

using ClassificationScheme = std::variant<EqualCount, Proportions, ExplicitBreaks, ColumnRank>;

inline bool is_symmetric(const ClassificationScheme& s) {
  return !std::holds_alternative<ColumnRank>(s);
}

void validate(const ClassificationScheme& scheme);

struct Breaks {
  std::vector<double> values;         // class k covers (values[k-1], values[k]]
  std::vector<std::string> warnings;  // e.g. merged duplicate breaks
  int n_classes() const { return static_cast<int>(values.size()) - 1; }
};

/// Empirical quantiles (linear interpolation of order statistics) of the
/// off-diagonal distances, each unordered pair counted once. Duplicate
/// breaks are merged with a warning.
Breaks compute_breaks(const DistanceMatrix& w, const ClassificationScheme& scheme);

using ClassMatrix = Eigen::MatrixXi;

/// class(i, j) = k with breaks[k-1] < W_ij <= breaks[k]; zero maps to 1.
ClassMatrix encode_symmetric(const DistanceMatrix& w, std::span<const double> breaks);

/// Column-wise rank encoding: in column j the off-diagonal rows are ranked
/// by (distance, row index) and the rank mapped through `grouping`. The
/// diagonal is class 1; the blank class is grouping.size() + 1.
ClassMatrix encode_asymmetric(const DistanceMatrix& w, std::span<const int> grouping);

// ---------------------------------------------------------------------------
// Diagram

/// Classes are kept in the original observation order; `order` says how to
/// display them.
struct CzekanowskiDiagram {
  ClassMatrix classes;
  Permutation order;
  std::vector<double> breaks;  // symmetric diagrams
  std::vector<int> grouping;   // asymmetric diagrams
  int n_classes = 0;
  std::vector<std::string> labels;
  CriterionReport report;
  bool symmetric = true;
  std::vector<std::string> warnings;

  Index size() const { return classes.rows(); }
};

using DiagramInput = std::variant<DataMatrix, DistanceMatrix>;

struct DiagramOptions {
  ClassificationScheme scheme = EqualCount{};
  SeriationConfig seriation;
  bool scale_data = true;              // raw data only
  Metric metric = Metric::euclidean;   // raw data only
  DistanceHook distance_hook;          // Metric::custom
  std::vector<Index> focal;
};

struct BuiltDiagram {
  CzekanowskiDiagram diagram;
  DistanceMatrix distances;
};

/// standardize (optional) -> distances -> seriation -> discretization.
BuiltDiagram build_diagram(const DiagramInput& input, const DiagramOptions& options,
                           const SeriationRegistry& registry = default_registry());

/// New diagram with `new_order` and a report recomputed against `w`; the
/// class matrix is carried over untouched.
CzekanowskiDiagram manual_reorder(const CzekanowskiDiagram& d, const Permutation& new_order,
                                  const DistanceMatrix& w);

}  // namespace czek
