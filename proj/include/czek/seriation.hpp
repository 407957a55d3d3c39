#pragma once

#include "czek/criteria.hpp"
#include "czek/types.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

namespace czek {

// ---------------------------------------------------------------------------
// Random numbers

/// Seeded generator with platform-independent draws (the standard
/// distributions are implementation-defined, which would break
/// seed-determinism across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound).
  Index below(Index bound);
  /// Uniform real in [0, 1).
  double unit();
  std::vector<Index> permutation(Index n);

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Dendrogram and agglomerative clustering

enum class Linkage { complete, average, single };

Linkage parse_linkage(const std::string& name);
std::string to_string(Linkage linkage);

/// Leaves are nodes 0..n-1 (observation index == node id); merge m creates
/// node n+m. The root is the last node.
class Dendrogram {
 public:
  struct Node {
    Index left = -1;
    Index right = -1;
    double height = 0.0;
  };

  explicit Dendrogram(Index leaves);

  /// Appends a merge of two current roots and returns the new node id.
  Index merge(Index left, Index right, double height);

  Index leaf_count() const { return leaves_; }
  Index node_count() const { return static_cast<Index>(nodes_.size()); }
  Index root() const { return node_count() - 1; }
  bool is_leaf(Index node) const { return node < leaves_; }
  const Node& node(Index id) const { return nodes_[static_cast<std::size_t>(id)]; }

  /// Leaves of `node` in left-to-right order.
  std::vector<Index> leaves_of(Index node) const;
  /// Throws unless the tree is complete and heights never decrease upwards.
  void validate() const;

 private:
  Index leaves_;
  std::vector<Node> nodes_;
};

/// Agglomerative clustering; among equal-distance candidates the pair whose
/// (smallest member, smallest member) is lexicographically smallest merges
/// first. The cluster with the smaller member becomes the left child.
Dendrogram hierarchical_cluster(const DistanceMatrix& w, Linkage linkage);

// ---------------------------------------------------------------------------
// Seriation methods

/// Among all orderings reachable by flipping internal nodes of `tree`,
/// returns one of minimum path length; ties resolve to the lexicographically
/// smallest ordering.
Permutation optimal_leaf_order(const DistanceMatrix& w, const Dendrogram& tree);

struct GaParams {
  int population_size = 50;
  int generations = 500;
  double crossover_prob = 0.8;
  double mutation_prob = 0.2;
  int stagnation_limit = 150;
};

struct QapParams {
  double sa_initial_temp = 1.0;  // multiple of the mean |delta| of random swaps
  double sa_cooling = 0.95;
  int sa_sweeps = 120;
  int restarts = 10;
};

/// Spectral seed: observations sorted by the Fiedler vector of the
/// Laplacian of S_ij = 1 / (W_ij + 1).
Permutation spectral_order(const DistanceMatrix& w);

/// Change of two_sum when the observations at positions p and q swap.
double two_sum_swap_delta(const DistanceMatrix& w, std::span<const Index> order, Index p, Index q);

Permutation seriate_qap2sum(const DistanceMatrix& w, const QapParams& params, std::uint64_t seed);

struct GaResult {
  Permutation best;
  std::vector<double> best_um_per_generation;  // entry 0 = initial population
};

GaResult run_genetic(const DistanceMatrix& w, const GaParams& params, std::uint64_t seed);
Permutation seriate_ga(const DistanceMatrix& w, const GaParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Configuration, focal objects, custom methods

enum class Method { olo, qap2sum, ga, identity, user, custom };

struct SeriationConfig {
  Method method = Method::olo;
  Linkage linkage = Linkage::complete;
  std::uint64_t seed = 0;
  GaParams ga;
  QapParams qap;
  std::optional<Permutation> user_order;  // Method::user
  std::string custom_name;                // Method::custom

  void validate() const;
};

/// The criterion each method optimizes (identity, user and custom orderings
/// report path length).
std::string criterion_for(Method method);

using InnerSeriation = std::function<Permutation(const DistanceMatrix&)>;

/// Runs `inner` on the observations outside `focal` and appends the focal
/// observations in their original relative order.
Permutation apply_focal(const DistanceMatrix& w, std::span<const Index> focal,
                        const InnerSeriation& inner);

/// User-defined method: receives the distances and the active configuration
/// (the `control` list) and returns 0-based observation indices.
using SeriationFn =
    std::function<std::vector<Index>(const DistanceMatrix&, const SeriationConfig&)>;

class SeriationRegistry {
 public:
  void register_method(const std::string& name, SeriationFn fn, bool overwrite = false);
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;
  /// Runs the named method and validates its output as a permutation.
  Permutation run(const std::string& name, const DistanceMatrix& w,
                  const SeriationConfig& cfg) const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, SeriationFn> methods_;
};

SeriationRegistry& default_registry();

/// Convenience wrapper over default_registry().register_method.
void register_method(const std::string& name, SeriationFn fn, bool overwrite = false);

struct SeriationResult {
  Permutation order;
  CriterionReport report;
};

SeriationResult seriate(const DistanceMatrix& w, const SeriationConfig& cfg,
                        const SeriationRegistry& registry = default_registry());

/// seriate() with `focal` observations held out and placed last.
SeriationResult seriate(const DistanceMatrix& w, const SeriationConfig& cfg,
                        std::span<const Index> focal,
                        const SeriationRegistry& registry = default_registry());

}  // namespace czek
