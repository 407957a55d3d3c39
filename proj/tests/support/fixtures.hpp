#pragma once

#include "oracles.hpp"

#include <czek/seriation.hpp>
#include <czek/types.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fixture {

// Uniform in [0, 1) from the raw 64-bit engine output, so the fixtures do
// not depend on the standard library's distribution implementations.
inline double unit(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

inline int between(std::mt19937_64& g, int lo, int hi) {
  return lo + static_cast<int>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Symmetric random distances in (0, scale).
inline czek::DistanceMatrix random_distances(int n, std::uint64_t seed, double scale = 10.0) {
  std::mt19937_64 g(seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = scale * (0.001 + unit(g));
  return czek::DistanceMatrix(w, czek::default_labels(n));
}

// Multiples of 1/64 below 32: sums of up to 2^40 of them are exact in
// double arithmetic, so path lengths can be compared with ==.
inline czek::DistanceMatrix dyadic_distances(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = double(1 + g() % 2047) / 64.0;
  return czek::DistanceMatrix(w, czek::default_labels(n));
}

inline std::vector<czek::Index> random_order(int n, std::mt19937_64& g) {
  std::vector<czek::Index> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[g() % static_cast<std::uint64_t>(i + 1)]);
  return p;
}

inline oracle::Matrix to_oracle(const czek::DistanceMatrix& w) {
  oracle::Matrix m(static_cast<std::size_t>(w.size()), std::vector<double>(static_cast<std::size_t>(w.size())));
  for (czek::Index i = 0; i < w.size(); ++i)
    for (czek::Index j = 0; j < w.size(); ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = w(i, j);
  return m;
}

inline oracle::Order to_oracle(const czek::Permutation& p) {
  oracle::Order o;
  for (czek::Index v : p.indices()) o.push_back(static_cast<int>(v) + 1);
  return o;
}

inline oracle::Order to_oracle(const std::vector<czek::Index>& p) {
  oracle::Order o;
  for (czek::Index v : p) o.push_back(static_cast<int>(v) + 1);
  return o;
}

inline oracle::Tree to_oracle(const czek::Dendrogram& d) {
  oracle::Tree t;
  t.n_leaves = static_cast<int>(d.leaf_count());
  t.nodes.resize(static_cast<std::size_t>(d.node_count()) + 1);
  for (czek::Index id = d.leaf_count(); id < d.node_count(); ++id) {
    const auto& nd = d.node(id);
    t.nodes[static_cast<std::size_t>(id) + 1] = {static_cast<int>(nd.left) + 1, static_cast<int>(nd.right) + 1};
  }
  t.root = static_cast<int>(d.root()) + 1;
  return t;
}

inline czek::DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                      std::vector<std::string> labels = {}) {
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  if (labels.empty()) labels = czek::default_labels(n);
  return czek::DistanceMatrix(w, std::move(labels));
}

}  // namespace fixture
