#include "czek/seriation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace czek {

namespace {

bool near(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Range {
  Index lo;
  Index hi;  // exclusive
};

// Dynamic program over (subtree, first leaf, last leaf). For leaves i and j
// whose lowest common ancestor is v, best(i, j) is the shortest path through
// all leaves of v that starts at i and ends at j. Every node's leaves occupy
// a contiguous range of the tree's left-to-right leaf sequence, so
// membership tests are range checks.
class LeafOrderSolver {
 public:
  LeafOrderSolver(const DistanceMatrix& w, const Dendrogram& tree)
      : w_(w.values()), tree_(tree), n_(tree.leaf_count()) {
    sequence_ = tree.leaves_of(tree.root());
    pos_.resize(static_cast<std::size_t>(n_));
    for (Index p = 0; p < n_; ++p) pos_[static_cast<std::size_t>(sequence_[static_cast<std::size_t>(p)])] = p;
    ranges_.resize(static_cast<std::size_t>(tree.node_count()));
    for (Index v = 0; v < tree.node_count(); ++v) {
      if (tree.is_leaf(v)) {
        ranges_[static_cast<std::size_t>(v)] = {pos_[static_cast<std::size_t>(v)], pos_[static_cast<std::size_t>(v)] + 1};
      } else {
        const Range l = range(tree.node(v).left);
        const Range r = range(tree.node(v).right);
        ranges_[static_cast<std::size_t>(v)] = {l.lo, r.hi};
      }
    }
    best_ = Eigen::MatrixXd::Constant(n_, n_, std::numeric_limits<double>::infinity());
    for (Index i = 0; i < n_; ++i) best_(i, i) = 0.0;
  }

  Permutation solve() {
    if (n_ == 1) return Permutation::identity(1);
    for (Index v = n_; v < tree_.node_count(); ++v) fill(v);

    const Index root = tree_.root();
    double optimum = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n_; ++i) {
      for (Index e : leaves(partner(root, i))) optimum = std::min(optimum, best_(i, e));
    }
    for (Index i = 0; i < n_; ++i) {
      std::vector<Index> ends;
      for (Index e : leaves(partner(root, i))) {
        if (near(best_(i, e), optimum)) ends.push_back(e);
      }
      if (!ends.empty()) return Permutation(reconstruct(root, i, ends));
    }
    throw std::logic_error("leaf ordering found no optimal start");
  }

 private:
  Range range(Index node) const { return ranges_[static_cast<std::size_t>(node)]; }

  std::vector<Index> leaves(Range r) const {
    return {sequence_.begin() + r.lo, sequence_.begin() + r.hi};
  }

  bool contains(Index node, Index leaf) const {
    const Index p = pos_[static_cast<std::size_t>(leaf)];
    return p >= range(node).lo && p < range(node).hi;
  }

  Index child_with(Index node, Index leaf) const {
    return contains(tree_.node(node).left, leaf) ? tree_.node(node).left : tree_.node(node).right;
  }

  // Subtree holding the leaves that can end an ordering of `node` which
  // starts at `leaf`.
  Index partner_node(Index node, Index leaf) const {
    if (tree_.is_leaf(node)) return node;
    const Dendrogram::Node& nd = tree_.node(node);
    return contains(nd.left, leaf) ? nd.right : nd.left;
  }

  Range partner(Index node, Index leaf) const { return range(partner_node(node, leaf)); }

  void fill(Index v) {
    const Index a = tree_.node(v).left;
    const Index b = tree_.node(v).right;
    const auto left_leaves = leaves(range(a));
    const auto right_leaves = leaves(range(b));

    // via(i, m): best path through a starting at i, then stepping to m in b.
    Eigen::MatrixXd via(static_cast<Index>(left_leaves.size()), static_cast<Index>(right_leaves.size()));
    for (std::size_t x = 0; x < left_leaves.size(); ++x) {
      const Index i = left_leaves[x];
      const auto ends = leaves(partner(a, i));
      for (std::size_t y = 0; y < right_leaves.size(); ++y) {
        const Index m = right_leaves[y];
        double v_best = std::numeric_limits<double>::infinity();
        for (Index h : ends) v_best = std::min(v_best, best_(i, h) + w_(h, m));
        via(static_cast<Index>(x), static_cast<Index>(y)) = v_best;
      }
    }
    const Index b_lo = range(b).lo;
    for (std::size_t x = 0; x < left_leaves.size(); ++x) {
      const Index i = left_leaves[x];
      for (Index j : right_leaves) {
        double v_best = std::numeric_limits<double>::infinity();
        for (Index m : leaves(partner(b, j))) {
          v_best = std::min(v_best, via(static_cast<Index>(x), pos_[static_cast<std::size_t>(m)] - b_lo) + best_(m, j));
        }
        best_(i, j) = v_best;
        best_(j, i) = v_best;
      }
    }
  }

  // Lexicographically smallest optimal ordering of `node` that starts at
  // `start` and ends at one of `ends`, each end e meeting best(start, e).
  std::vector<Index> reconstruct(Index node, Index start, const std::vector<Index>& ends) {
    if (tree_.is_leaf(node)) return {start};
    const Index a = child_with(node, start);
    const Index b = a == tree_.node(node).left ? tree_.node(node).right : tree_.node(node).left;

    auto joins = [&](Index h, Index m, Index e) {
      return contains(b, e) && near(best_(start, h) + w_(h, m) + best_(m, e), best_(start, e));
    };

    std::vector<Index> left_ends;
    for (Index h : leaves(partner(a, start))) {
      bool ok = false;
      for (Index e : ends) {
        for (Index m : leaves(partner(b, e))) {
          if (joins(h, m, e)) {
            ok = true;
            break;
          }
        }
        if (ok) break;
      }
      if (ok) left_ends.push_back(h);
    }
    std::vector<Index> out = reconstruct(a, start, left_ends);
    const Index h = out.back();

    Index next = -1;
    for (Index e : ends) {
      for (Index m : leaves(partner(b, e))) {
        if ((next < 0 || m < next) && joins(h, m, e)) next = m;
      }
    }
    std::vector<Index> right_ends;
    for (Index e : ends) {
      if (contains(partner_node(b, e), next) && joins(h, next, e)) right_ends.push_back(e);
    }
    const auto tail = reconstruct(b, next, right_ends);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  }

  const Eigen::MatrixXd& w_;
  const Dendrogram& tree_;
  Index n_;
  std::vector<Index> sequence_;
  std::vector<Index> pos_;
  std::vector<Range> ranges_;
  Eigen::MatrixXd best_;
};

}  // namespace

Permutation optimal_leaf_order(const DistanceMatrix& w, const Dendrogram& tree) {
  if (tree.leaf_count() != w.size()) {
    throw ValidationError("dendrogram has " + std::to_string(tree.leaf_count()) +
                          " leaves but the distance matrix has " + std::to_string(w.size()) +
                          " observations");
  }
  tree.validate();
  return LeafOrderSolver(w, tree).solve();
}

}  // namespace czek
