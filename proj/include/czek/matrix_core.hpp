#pragma once

#include "czek/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace czek {

/// Centers every column and scales it by its sample standard deviation
/// (divisor n-1). Constant columns become zero.
DataMatrix standardize(const DataMatrix& data);

enum class Metric { euclidean, manhattan, maximum, custom };

using RowView = Eigen::Ref<const Eigen::RowVectorXd>;
using DistanceHook = std::function<double(const RowView&, const RowView&)>;

/// Pairwise distances between the rows of `data`. For Metric::custom the
/// hook is evaluated in both directions and the two values averaged; a
/// negative or non-finite result raises ValidationError naming the pair.
DistanceMatrix compute_distance(const DataMatrix& data, Metric metric,
                                const DistanceHook& hook = {});

Metric parse_metric(const std::string& name);
std::string to_string(Metric metric);

enum class SymmetryMode { strict, symmetrize };

struct AsymmetricPair {
  Index i;
  Index j;
  double w_ij;
  double w_ji;
};

struct SymmetrizeResult {
  DistanceMatrix distances;
  std::vector<AsymmetricPair> asymmetric_pairs;  // i < j
};

/// Checks a raw square matrix against the distance-matrix contract.
/// In strict mode any |W_ij - W_ji| above 1e-9 is an error listing every
/// offending pair; in symmetrize mode the pair is replaced by its mean and
/// reported.
SymmetrizeResult validate_or_symmetrize(const Eigen::MatrixXd& raw,
                                        std::vector<std::string> labels,
                                        SymmetryMode mode);

}  // namespace czek
