#include "czek/criteria.hpp"

#include <algorithm>
#include <numeric>

namespace czek {

CriterionReport make_report(const DistanceMatrix& w, const Permutation& pi,
                            const std::string& criterion_name) {
  CriterionReport r;
  r.um = um_factor(w, pi);
  r.two_sum = two_sum(w, pi);
  r.path_length = path_length(w, pi);
  r.criterion_name = criterion_name;
  if (criterion_name == kCriterionUm) {
    r.criterion_value = r.um;
  } else if (criterion_name == kCriterionTwoSum) {
    r.criterion_value = r.two_sum;
  } else if (criterion_name == kCriterionPath) {
    r.criterion_value = r.path_length;
  } else {
    throw ValidationError("unknown criterion '" + criterion_name + "'");
  }
  return r;
}

ClusterAssessment cluster_assess(const Permutation& pi, std::span<const int> true_labels, int k) {
  const Index n = pi.size();
  if (k < 1) throw ValidationError("number of clusters must be positive");
  if (k > kMaxAssessClusters) {
    throw ValidationError("cluster assessment supports at most " +
                          std::to_string(kMaxAssessClusters) + " clusters");
  }
  if (n % k != 0) {
    throw ValidationError(std::to_string(n) + " observations cannot be split into " +
                          std::to_string(k) + " equal blocks");
  }
  if (static_cast<Index>(true_labels.size()) != n) {
    throw ValidationError("label count does not match the ordering length");
  }
  const Index block = n / k;
  std::vector<Index> label_count(static_cast<std::size_t>(k), 0);
  for (int label : true_labels) {
    if (label < 1 || label > k) {
      throw ValidationError("cluster label " + std::to_string(label) + " outside 1.." +
                            std::to_string(k));
    }
    ++label_count[static_cast<std::size_t>(label - 1)];
  }
  for (Index c : label_count) {
    if (c != block) throw ValidationError("every cluster label must occur n/k times");
  }

  // counts(b, l): observations of label l+1 placed in block b
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(k, k);
  for (Index p = 0; p < n; ++p) {
    counts(p / block, true_labels[static_cast<std::size_t>(pi[p])] - 1) += 1;
  }

  std::vector<int> assignment(static_cast<std::size_t>(k));
  std::iota(assignment.begin(), assignment.end(), 0);
  std::vector<int> best = assignment;
  int best_matches = -1;
  do {
    int matches = 0;
    for (int b = 0; b < k; ++b) matches += counts(b, assignment[static_cast<std::size_t>(b)]);
    if (matches > best_matches) {
      best_matches = matches;
      best = assignment;
    }
  } while (std::next_permutation(assignment.begin(), assignment.end()));

  ClusterAssessment out;
  for (int b = 0; b < k; ++b) {
    const int label = best[static_cast<std::size_t>(b)];
    out.per_block_fraction.push_back(static_cast<double>(counts(b, label)) /
                                     static_cast<double>(block));
    out.best_label_assignment.push_back(label + 1);
  }
  return out;
}

}  // namespace czek
