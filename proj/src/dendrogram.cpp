#include "czek/seriation.hpp"

#include <limits>

namespace czek {

Linkage parse_linkage(const std::string& name) {
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  if (name == "single") return Linkage::single;
  throw ValidationError("unknown linkage '" + name + "' (expected complete, average or single)");
}

std::string to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
    case Linkage::single: return "single";
  }
  return "unknown";
}

Dendrogram::Dendrogram(Index leaves) : leaves_(leaves), nodes_(static_cast<std::size_t>(leaves)) {
  if (leaves < 1) throw ValidationError("a dendrogram needs at least one leaf");
}

Index Dendrogram::merge(Index left, Index right, double height) {
  const Index id = node_count();
  if (left < 0 || right < 0 || left >= id || right >= id || left == right) {
    throw ValidationError("invalid dendrogram merge");
  }
  nodes_.push_back({left, right, height});
  return id;
}

std::vector<Index> Dendrogram::leaves_of(Index node) const {
  std::vector<Index> out;
  std::vector<Index> stack{node};
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    if (is_leaf(v)) {
      out.push_back(v);
    } else {
      stack.push_back(this->node(v).right);
      stack.push_back(this->node(v).left);
    }
  }
  return out;
}

void Dendrogram::validate() const {
  if (node_count() != 2 * leaves_ - 1) throw ValidationError("dendrogram is incomplete");
  std::vector<int> parents(nodes_.size(), 0);
  for (Index v = leaves_; v < node_count(); ++v) {
    for (Index child : {node(v).left, node(v).right}) {
      if (child >= v) throw ValidationError("dendrogram child created after its parent");
      ++parents[static_cast<std::size_t>(child)];
      if (!is_leaf(child) && node(child).height > node(v).height + 1e-12) {
        throw ValidationError("dendrogram merge heights decrease towards the root");
      }
    }
  }
  for (Index v = 0; v + 1 < node_count(); ++v) {
    if (parents[static_cast<std::size_t>(v)] != 1) {
      throw ValidationError("dendrogram node has " +
                            std::to_string(parents[static_cast<std::size_t>(v)]) + " parents");
    }
  }
}

Dendrogram hierarchical_cluster(const DistanceMatrix& w, Linkage linkage) {
  const Index n = w.size();
  Dendrogram tree(n);
  if (n == 1) return tree;

  // Cluster slots are keyed by their smallest member, so scanning i < j in
  // order with a strict comparison gives the lexicographic tie-break.
  Eigen::MatrixXd d = w.values();
  std::vector<bool> active(static_cast<std::size_t>(n), true);
  std::vector<Index> node_of(static_cast<std::size_t>(n));
  std::vector<double> size(static_cast<std::size_t>(n), 1.0);
  for (Index i = 0; i < n; ++i) node_of[static_cast<std::size_t>(i)] = i;

  for (Index step = 0; step + 1 < n; ++step) {
    Index best_i = -1;
    Index best_j = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      for (Index j = i + 1; j < n; ++j) {
        if (!active[static_cast<std::size_t>(j)]) continue;
        if (d(i, j) < best || best_i < 0) {
          best = d(i, j);
          best_i = i;
          best_j = j;
        }
      }
    }

    const auto si = static_cast<std::size_t>(best_i);
    const auto sj = static_cast<std::size_t>(best_j);
    node_of[si] = tree.merge(node_of[si], node_of[sj], best);
    for (Index k = 0; k < n; ++k) {
      if (!active[static_cast<std::size_t>(k)] || k == best_i || k == best_j) continue;
      double merged = 0.0;
      switch (linkage) {
        case Linkage::complete: merged = std::max(d(best_i, k), d(best_j, k)); break;
        case Linkage::single: merged = std::min(d(best_i, k), d(best_j, k)); break;
        case Linkage::average:
          merged = (size[si] * d(best_i, k) + size[sj] * d(best_j, k)) / (size[si] + size[sj]);
          break;
      }
      d(best_i, k) = merged;
      d(k, best_i) = merged;
    }
    size[si] += size[sj];
    active[sj] = false;
  }
  return tree;
}

}  // namespace czek
