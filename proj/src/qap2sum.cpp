#include "czek/seriation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace czek {

Index Rng::below(Index bound) {
  // Rejection sampling keeps draws identical on every platform.
  const auto range = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = engine_.max() - engine_.max() % range;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<Index>(x % range);
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<Index> Rng::permutation(Index n) {
  std::vector<Index> out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), Index{0});
  for (Index i = n - 1; i > 0; --i) {
    std::swap(out[static_cast<std::size_t>(i)], out[static_cast<std::size_t>(below(i + 1))]);
  }
  return out;
}

Permutation spectral_order(const DistanceMatrix& w) {
  const Index n = w.size();
  if (n < 3) return Permutation::identity(n);
  Eigen::MatrixXd s = (w.values().array() + 1.0).inverse().matrix();
  s.diagonal().setZero();
  Eigen::MatrixXd laplacian = -s;
  laplacian.diagonal() = s.rowwise().sum();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Laplacian eigensolver failed");
  Eigen::VectorXd fiedler = solver.eigenvectors().col(1);

  // Canonical sign: the largest-magnitude component (first on ties) is positive.
  Index anchor = 0;
  for (Index i = 1; i < n; ++i) {
    if (std::abs(fiedler(i)) > std::abs(fiedler(anchor)) + 1e-12) anchor = i;
  }
  if (fiedler(anchor) < 0) fiedler = -fiedler;

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return fiedler(a) < fiedler(b); });
  return Permutation(std::move(order));
}

double two_sum_swap_delta(const DistanceMatrix& w, std::span<const Index> order, Index p, Index q) {
  if (p == q) return 0.0;
  const Index n = w.size();
  const Index a = order[static_cast<std::size_t>(p)];
  const Index b = order[static_cast<std::size_t>(q)];
  double delta = 0.0;
  for (Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const Index c = order[static_cast<std::size_t>(k)];
    const double dp = static_cast<double>(p - k);
    const double dq = static_cast<double>(q - k);
    delta += (dp * dp - dq * dq) * (1.0 / (w(b, c) + 1.0) - 1.0 / (w(a, c) + 1.0));
  }
  return 2.0 * delta;
}

namespace {

// splitmix64 finalizer; gives each restart its own stream.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Applies the best improving swap until none is left.
void polish(const DistanceMatrix& w, std::vector<Index>& order, double& energy) {
  const Index n = w.size();
  for (;;) {
    double best_delta = 0.0;
    Index best_p = -1;
    Index best_q = -1;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double d = two_sum_swap_delta(w, order, p, q);
        if (d < best_delta - 1e-12 * std::max(1.0, energy)) {
          best_delta = d;
          best_p = p;
          best_q = q;
        }
      }
    }
    if (best_p < 0) return;
    std::swap(order[static_cast<std::size_t>(best_p)], order[static_cast<std::size_t>(best_q)]);
    energy = two_sum(w.values(), order);
  }
}

std::vector<Index> anneal(const DistanceMatrix& w, std::vector<Index> order, const QapParams& params,
                          Rng& rng) {
  const Index n = w.size();
  double energy = two_sum(w.values(), order);
  std::vector<Index> best = order;
  double best_energy = energy;

  double mean_delta = 0.0;
  const Index samples = std::max<Index>(n, 16);
  for (Index s = 0; s < samples; ++s) {
    const Index p = rng.below(n);
    const Index q = (p + 1 + rng.below(n - 1)) % n;
    mean_delta += std::abs(two_sum_swap_delta(w, order, p, q));
  }
  mean_delta /= static_cast<double>(samples);
  double temperature = params.sa_initial_temp * mean_delta;

  const Index moves_per_sweep = n * (n - 1) / 2;
  for (int sweep = 0; sweep < params.sa_sweeps && temperature > 0.0; ++sweep) {
    for (Index move = 0; move < moves_per_sweep; ++move) {
      const Index p = rng.below(n);
      const Index q = (p + 1 + rng.below(n - 1)) % n;
      const double delta = two_sum_swap_delta(w, order, p, q);
      const double u = rng.unit();
      if (delta <= 0.0 || u < std::exp(-delta / temperature)) {
        std::swap(order[static_cast<std::size_t>(p)], order[static_cast<std::size_t>(q)]);
        energy += delta;
        if (energy < best_energy) {
          best_energy = energy;
          best = order;
        }
      }
    }
    // Resynchronize the running sum against drift.
    energy = two_sum(w.values(), order);
    temperature *= params.sa_cooling;
  }
  return best;
}

}  // namespace

Permutation seriate_qap2sum(const DistanceMatrix& w, const QapParams& params, std::uint64_t seed) {
  const Index n = w.size();
  const Permutation seed_order = spectral_order(w);
  if (n < 3) return seed_order;

  const std::vector<Index> start(seed_order.indices().begin(), seed_order.indices().end());
  std::vector<Index> best = start;
  double best_energy = two_sum(w.values(), best);
  for (int r = 0; r < params.restarts; ++r) {
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<Index> candidate = anneal(w, start, params, rng);
    double energy = two_sum(w.values(), candidate);
    polish(w, candidate, energy);
    if (energy < best_energy) {
      best_energy = energy;
      best = std::move(candidate);
    }
  }
  polish(w, best, best_energy);
  return Permutation(std::move(best));
}

}  // namespace czek
