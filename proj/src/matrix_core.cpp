#include "czek/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace czek {

// ---------------------------------------------------------------------------
// Permutation / core types

Permutation::Permutation(std::vector<Index> order) : order_(std::move(order)) {
  check_bijection(order_, static_cast<Index>(order_.size()));
}

Permutation Permutation::identity(Index n) {
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  return Permutation(std::move(order));
}

Permutation Permutation::from_one_based(std::span<const long long> order) {
  std::vector<Index> zero_based;
  zero_based.reserve(order.size());
  for (long long v : order) zero_based.push_back(static_cast<Index>(v - 1));
  return Permutation(std::move(zero_based));
}

Permutation Permutation::reversed() const {
  return Permutation(std::vector<Index>(order_.rbegin(), order_.rend()));
}

std::vector<Index> Permutation::inverse() const {
  std::vector<Index> inv(order_.size());
  for (std::size_t p = 0; p < order_.size(); ++p) {
    inv[static_cast<std::size_t>(order_[p])] = static_cast<Index>(p);
  }
  return inv;
}

std::vector<long long> Permutation::one_based() const {
  std::vector<long long> out;
  out.reserve(order_.size());
  for (Index v : order_) out.push_back(static_cast<long long>(v) + 1);
  return out;
}

void check_bijection(std::span<const Index> order, Index n) {
  if (static_cast<Index>(order.size()) != n) {
    throw ValidationError("ordering has " + std::to_string(order.size()) +
                          " entries, expected " + std::to_string(n));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index v : order) {
    if (v < 0 || v >= n) {
      throw ValidationError("ordering entry " + std::to_string(v + 1) +
                            " is out of range 1.." + std::to_string(n));
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw ValidationError("ordering is not a bijection: " + std::to_string(v + 1) +
                            " appears more than once");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

std::vector<std::string> default_labels(Index n) {
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  return labels;
}

namespace {

void check_unique(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw ValidationError(std::string("duplicate ") + what + " label '" + l + "'");
    }
  }
}

}  // namespace

void validate(const DataMatrix& data) {
  if (data.rows() < 2) throw ValidationError("data needs at least 2 observations");
  if (data.cols() < 1) throw ValidationError("data needs at least 1 variable");
  if (static_cast<Index>(data.row_labels.size()) != data.rows()) {
    throw ValidationError("row label count does not match the number of rows");
  }
  if (static_cast<Index>(data.col_labels.size()) != data.cols()) {
    throw ValidationError("column label count does not match the number of columns");
  }
  check_unique(data.row_labels, "row");
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < data.cols(); ++j) {
      if (!std::isfinite(data.values(i, j))) {
        throw ValidationError("missing or non-finite value at observation '" +
                              data.row_labels[static_cast<std::size_t>(i)] + "', variable '" +
                              data.col_labels[static_cast<std::size_t>(j)] +
                              "'; impute it or supply a distance matrix instead");
      }
    }
  }
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  const Index n = values_.rows();
  if (values_.cols() != n) throw ValidationError("distance matrix is not square");
  if (n < 1) throw ValidationError("distance matrix is empty");
  if (static_cast<Index>(labels_.size()) != n) {
    throw ValidationError("label count does not match distance matrix size");
  }
  check_unique(labels_, "observation");
  for (Index i = 0; i < n; ++i) {
    if (values_(i, i) != 0.0) {
      throw ValidationError("distance matrix diagonal is not zero at '" +
                            labels_[static_cast<std::size_t>(i)] + "'");
    }
    for (Index j = 0; j < n; ++j) {
      const double v = values_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("distance between '" + labels_[static_cast<std::size_t>(i)] +
                              "' and '" + labels_[static_cast<std::size_t>(j)] +
                              "' is negative or not finite");
      }
      if (std::abs(v - values_(j, i)) > kSymmetryTolerance) {
        throw ValidationError("distance matrix is not symmetric at '" +
                              labels_[static_cast<std::size_t>(i)] + "', '" +
                              labels_[static_cast<std::size_t>(j)] + "'");
      }
    }
  }
}

DistanceMatrix DistanceMatrix::submatrix(std::span<const Index> keep) const {
  const auto m = static_cast<Index>(keep.size());
  Eigen::MatrixXd sub(m, m);
  std::vector<std::string> labels;
  for (Index a = 0; a < m; ++a) {
    labels.push_back(labels_[static_cast<std::size_t>(keep[static_cast<std::size_t>(a)])]);
    for (Index b = 0; b < m; ++b) {
      sub(a, b) = values_(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]);
    }
  }
  return DistanceMatrix(std::move(sub), std::move(labels));
}

// ---------------------------------------------------------------------------
// matrix-core operations

DataMatrix standardize(const DataMatrix& data) {
  validate(data);
  DataMatrix out = data;
  const double n = static_cast<double>(data.rows());
  for (Index j = 0; j < data.cols(); ++j) {
    auto col = out.values.col(j);
    if (col.maxCoeff() == col.minCoeff()) {
      col.setZero();
      continue;
    }
    const double mean = col.mean();
    col.array() -= mean;
    const double sd = std::sqrt(col.squaredNorm() / (n - 1.0));
    col /= sd;
  }
  return out;
}

Metric parse_metric(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "manhattan") return Metric::manhattan;
  if (name == "maximum") return Metric::maximum;
  throw ValidationError("unknown distance '" + name +
                        "' (expected euclidean, manhattan or maximum)");
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::euclidean: return "euclidean";
    case Metric::manhattan: return "manhattan";
    case Metric::maximum: return "maximum";
    case Metric::custom: return "custom";
  }
  return "unknown";
}

DistanceMatrix compute_distance(const DataMatrix& data, Metric metric, const DistanceHook& hook) {
  validate(data);
  if (metric == Metric::custom && !hook) {
    throw ValidationError("custom metric requested without a distance function");
  }
  const Index n = data.rows();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);

  auto checked_hook = [&](Index a, Index b) {
    const double v = hook(data.values.row(a), data.values.row(b));
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream msg;
      msg << "custom distance returned " << v << " for pair ('"
          << data.row_labels[static_cast<std::size_t>(a)] << "', '"
          << data.row_labels[static_cast<std::size_t>(b)] << "')";
      throw ValidationError(msg.str());
    }
    return v;
  };

  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      double d = 0.0;
      const auto diff = (data.values.row(i) - data.values.row(j)).array();
      switch (metric) {
        case Metric::euclidean: d = std::sqrt(diff.square().sum()); break;
        case Metric::manhattan: d = diff.abs().sum(); break;
        case Metric::maximum: d = diff.abs().maxCoeff(); break;
        case Metric::custom: d = 0.5 * (checked_hook(i, j) + checked_hook(j, i)); break;
      }
      w(i, j) = d;
      w(j, i) = d;
    }
  }
  return DistanceMatrix(std::move(w), data.row_labels);
}

SymmetrizeResult validate_or_symmetrize(const Eigen::MatrixXd& raw,
                                        std::vector<std::string> labels, SymmetryMode mode) {
  const Index n = raw.rows();
  if (raw.cols() != n) {
    throw ValidationError("distance matrix is not square (" + std::to_string(raw.rows()) + "x" +
                          std::to_string(raw.cols()) + ")");
  }
  if (labels.empty()) labels = default_labels(n);
  if (static_cast<Index>(labels.size()) != n) {
    throw ValidationError("label count does not match distance matrix size");
  }
  auto label = [&](Index i) { return "'" + labels[static_cast<std::size_t>(i)] + "'"; };
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!std::isfinite(raw(i, j))) {
        throw ValidationError("distance between " + label(i) + " and " + label(j) +
                              " is missing or not finite");
      }
      if (raw(i, j) < 0.0) {
        throw ValidationError("distance between " + label(i) + " and " + label(j) +
                              " is negative");
      }
    }
    if (raw(i, i) != 0.0) throw ValidationError("nonzero diagonal at " + label(i));
  }

  SymmetrizeResult result;
  Eigen::MatrixXd w = raw;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(raw(i, j) - raw(j, i)) > DistanceMatrix::kSymmetryTolerance) {
        result.asymmetric_pairs.push_back({i, j, raw(i, j), raw(j, i)});
        const double mean = 0.5 * (raw(i, j) + raw(j, i));
        w(i, j) = mean;
        w(j, i) = mean;
      }
    }
  }
  if (mode == SymmetryMode::strict && !result.asymmetric_pairs.empty()) {
    std::ostringstream msg;
    msg << "distance matrix is not symmetric (" << result.asymmetric_pairs.size()
        << " pair(s)); rerun with symmetrization to average them:";
    for (const auto& p : result.asymmetric_pairs) {
      msg << "\n  " << label(p.i) << " -> " << label(p.j) << " = " << p.w_ij << ", " << label(p.j)
          << " -> " << label(p.i) << " = " << p.w_ji;
    }
    throw ValidationError(msg.str());
  }
  result.distances = DistanceMatrix(std::move(w), std::move(labels));
  return result;
}

}  // namespace czek
