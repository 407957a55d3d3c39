#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace czek {

using Index = Eigen::Index;

/// Raised when user-supplied input breaks a documented contract.
/// The CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bijection on {0..n-1}. Position p holds the observation shown p-th.
/// One-based views exist only at the I/O boundary.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Index> order);

  static Permutation identity(Index n);
  static Permutation from_one_based(std::span<const long long> order);

  Index size() const { return static_cast<Index>(order_.size()); }
  Index operator[](Index pos) const { return order_[static_cast<std::size_t>(pos)]; }
  std::span<const Index> indices() const { return order_; }

  Permutation reversed() const;
  /// Position of every observation: inverse()[order[p]] == p.
  std::vector<Index> inverse() const;
  std::vector<long long> one_based() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<Index> order_;
};

/// Throws ValidationError unless `order` is a bijection on {0..n-1}.
void check_bijection(std::span<const Index> order, Index n);

struct DataMatrix {
  Eigen::MatrixXd values;  // observations in rows
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

/// Throws ValidationError unless n >= 2, p >= 1, every value is finite and
/// row labels are unique with matching counts.
void validate(const DataMatrix& data);

/// Symmetric, finite, nonnegative, zero-diagonal. Construction validates.
class DistanceMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-9;

  DistanceMatrix() = default;
  DistanceMatrix(Eigen::MatrixXd values, std::vector<std::string> labels);

  Index size() const { return values_.rows(); }
  double operator()(Index i, Index j) const { return values_(i, j); }
  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Rows/columns `keep`, in the given order.
  DistanceMatrix submatrix(std::span<const Index> keep) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> labels_;
};

/// Labels "1".."n", used when an input carries none.
std::vector<std::string> default_labels(Index n);

}  // namespace czek
