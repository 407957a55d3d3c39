#include "czek/seriation.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace czek {

void SeriationConfig::validate() const {
  auto probability = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + " must lie in [0, 1]");
  };
  probability(ga.crossover_prob, "GA crossover probability");
  probability(ga.mutation_prob, "GA mutation probability");
  if (ga.population_size < 2) throw ValidationError("GA population must hold at least 2");
  if (ga.generations < 1 || ga.stagnation_limit < 1) {
    throw ValidationError("GA generation budget must be positive");
  }
  if (!(qap.sa_cooling > 0.0 && qap.sa_cooling < 1.0)) {
    throw ValidationError("annealing cooling factor must lie in (0, 1)");
  }
  if (!(qap.sa_initial_temp > 0.0)) throw ValidationError("annealing temperature must be positive");
  if (qap.sa_sweeps < 1 || qap.restarts < 1) {
    throw ValidationError("annealing sweeps and restarts must be positive");
  }
  if (method == Method::user && !user_order) {
    throw ValidationError("user ordering requested without a permutation");
  }
  if (method == Method::custom && custom_name.empty()) {
    throw ValidationError("custom seriation requested without a method name");
  }
}

std::string criterion_for(Method method) {
  switch (method) {
    case Method::qap2sum: return kCriterionTwoSum;
    case Method::ga: return kCriterionUm;
    default: return kCriterionPath;
  }
}

Permutation apply_focal(const DistanceMatrix& w, std::span<const Index> focal,
                        const InnerSeriation& inner) {
  const Index n = w.size();
  std::set<Index> held(focal.begin(), focal.end());
  if (held.size() != focal.size()) throw ValidationError("focal objects contain duplicates");
  for (Index f : held) {
    if (f < 0 || f >= n) {
      throw ValidationError("focal object " + std::to_string(f + 1) + " is out of range 1.." +
                            std::to_string(n));
    }
  }
  if (held.empty()) return inner(w);
  if (static_cast<Index>(held.size()) >= n) {
    throw ValidationError("focal objects cover every observation; nothing is left to seriate");
  }

  std::vector<Index> kept;
  for (Index i = 0; i < n; ++i) {
    if (!held.contains(i)) kept.push_back(i);
  }
  const Permutation sub_order = inner(w.submatrix(kept));
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  for (Index p = 0; p < sub_order.size(); ++p) order.push_back(kept[static_cast<std::size_t>(sub_order[p])]);
  order.insert(order.end(), held.begin(), held.end());
  return Permutation(std::move(order));
}

// ---------------------------------------------------------------------------

void SeriationRegistry::register_method(const std::string& name, SeriationFn fn, bool overwrite) {
  if (name.empty()) throw ValidationError("seriation method name must not be empty");
  if (!fn) throw ValidationError("seriation method '" + name + "' has no definition");
  std::unique_lock lock(mutex_);
  if (!overwrite && methods_.contains(name)) {
    throw ValidationError("seriation method '" + name + "' is already registered");
  }
  methods_[name] = std::move(fn);
}

bool SeriationRegistry::contains(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return methods_.contains(name);
}

std::vector<std::string> SeriationRegistry::names() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, fn] : methods_) out.push_back(name);
  return out;
}

Permutation SeriationRegistry::run(const std::string& name, const DistanceMatrix& w,
                                   const SeriationConfig& cfg) const {
  SeriationFn fn;
  {
    std::shared_lock lock(mutex_);
    const auto it = methods_.find(name);
    if (it != methods_.end()) fn = it->second;
  }
  if (!fn) {
    std::string listing;
    for (const auto& registered : names()) listing += (listing.empty() ? "" : ", ") + registered;
    throw ValidationError("unknown seriation method '" + name + "'; registered methods: " +
                          (listing.empty() ? "(none)" : listing));
  }
  std::vector<Index> order = fn(w, cfg);
  try {
    return Permutation(std::move(order));
  } catch (const ValidationError& e) {
    throw ValidationError("seriation method '" + name + "' returned an invalid ordering: " +
                          e.what());
  }
}

SeriationRegistry& default_registry() {
  static SeriationRegistry registry;
  return registry;
}

void register_method(const std::string& name, SeriationFn fn, bool overwrite) {
  default_registry().register_method(name, std::move(fn), overwrite);
}

// ---------------------------------------------------------------------------

namespace {

Permutation run_method(const DistanceMatrix& w, const SeriationConfig& cfg,
                       const SeriationRegistry& registry) {
  switch (cfg.method) {
    case Method::olo:
      return optimal_leaf_order(w, hierarchical_cluster(w, cfg.linkage));
    case Method::qap2sum:
      return seriate_qap2sum(w, cfg.qap, cfg.seed);
    case Method::ga:
      return seriate_ga(w, cfg.ga, cfg.seed);
    case Method::identity:
      return Permutation::identity(w.size());
    case Method::user:
      return *cfg.user_order;
    case Method::custom:
      return registry.run(cfg.custom_name, w, cfg);
  }
  throw std::logic_error("unhandled seriation method");
}

}  // namespace

SeriationResult seriate(const DistanceMatrix& w, const SeriationConfig& cfg,
                        const SeriationRegistry& registry) {
  return seriate(w, cfg, {}, registry);
}

SeriationResult seriate(const DistanceMatrix& w, const SeriationConfig& cfg,
                        std::span<const Index> focal, const SeriationRegistry& registry) {
  cfg.validate();
  if (cfg.method == Method::user) {
    check_bijection(cfg.user_order->indices(), w.size());
    if (!focal.empty()) {
      throw ValidationError("focal objects cannot be combined with a user-supplied ordering");
    }
  }
  Permutation order = apply_focal(
      w, focal, [&](const DistanceMatrix& sub) { return run_method(sub, cfg, registry); });
  CriterionReport report = make_report(w, order, criterion_for(cfg.method));
  return {std::move(order), std::move(report)};
}

}  // namespace czek
