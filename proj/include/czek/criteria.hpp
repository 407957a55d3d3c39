#pragma once

#include "czek/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace czek {

// The three ordering criteria. Each accepts any dense Eigen expression for
// the distance matrix and an ordering given as positions -> observations.
// Positions enter the formulas through their differences only, so 0- and
// 1-based position counting give the same values.

namespace detail {
template <typename Derived>
void check_dims(const Eigen::MatrixBase<Derived>& w, std::span<const Index> order) {
  if (w.rows() != w.cols() || w.rows() != static_cast<Index>(order.size())) {
    throw ValidationError("ordering length " + std::to_string(order.size()) +
                          " does not match a " + std::to_string(w.rows()) + "x" +
                          std::to_string(w.cols()) + " distance matrix");
  }
}
}  // namespace detail

/// U_m = (2/n^2) * sum_{j<i} (i-j)^2 / (W[pi_i, pi_j] + 1). Lower is better.
template <typename Derived>
typename Derived::Scalar um_factor(const Eigen::MatrixBase<Derived>& w,
                                   std::span<const Index> order) {
  using Scalar = typename Derived::Scalar;
  detail::check_dims(w, order);
  const Index n = w.rows();
  Scalar sum(0);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      const Scalar gap = static_cast<Scalar>(i - j);
      sum += gap * gap / (w(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]) + Scalar(1));
    }
  }
  return Scalar(2) * sum / static_cast<Scalar>(n * n);
}

/// Full double sum over all (i, j); equals n^2 * U_m for symmetric W.
template <typename Derived>
typename Derived::Scalar two_sum(const Eigen::MatrixBase<Derived>& w,
                                 std::span<const Index> order) {
  using Scalar = typename Derived::Scalar;
  detail::check_dims(w, order);
  const Index n = w.rows();
  Scalar sum(0);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const Scalar gap = static_cast<Scalar>(i - j);
      sum += gap * gap / (w(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]) + Scalar(1));
    }
  }
  return sum;
}

/// Length of the Hamiltonian path visiting the observations in order.
template <typename Derived>
typename Derived::Scalar path_length(const Eigen::MatrixBase<Derived>& w,
                                     std::span<const Index> order) {
  using Scalar = typename Derived::Scalar;
  detail::check_dims(w, order);
  Scalar sum(0);
  for (std::size_t p = 0; p + 1 < order.size(); ++p) sum += w(order[p], order[p + 1]);
  return sum;
}

inline double um_factor(const DistanceMatrix& w, const Permutation& pi) {
  return um_factor(w.values(), pi.indices());
}
inline double two_sum(const DistanceMatrix& w, const Permutation& pi) {
  return two_sum(w.values(), pi.indices());
}
inline double path_length(const DistanceMatrix& w, const Permutation& pi) {
  return path_length(w.values(), pi.indices());
}

inline constexpr const char* kCriterionUm = "um";
inline constexpr const char* kCriterionTwoSum = "two_sum";
inline constexpr const char* kCriterionPath = "path_length";

struct CriterionReport {
  double um = 0.0;
  double two_sum = 0.0;
  double path_length = 0.0;
  std::string criterion_name = kCriterionPath;  // what the producing method optimized
  double criterion_value = 0.0;
};

/// Scores `pi` under all three criteria; `criterion_name` selects which one
/// is echoed as criterion_value.
CriterionReport make_report(const DistanceMatrix& w, const Permutation& pi,
                            const std::string& criterion_name);

struct ClusterAssessment {
  std::vector<double> per_block_fraction;
  std::vector<int> best_label_assignment;  // label (1..k) given to each block
};

inline constexpr int kMaxAssessClusters = 8;

/// Splits the ordering into k equal consecutive blocks and finds the label
/// assignment (one label per block) maximizing the number of observations
/// whose true label matches their block. Ties go to the lexicographically
/// smallest assignment. Labels are 1..k with n/k of each.
ClusterAssessment cluster_assess(const Permutation& pi, std::span<const int> true_labels, int k);

}  // namespace czek
