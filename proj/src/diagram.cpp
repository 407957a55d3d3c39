#include "czek/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace czek {

void validate(const ClassificationScheme& scheme) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EqualCount>) {
          if (s.n_classes < 2) throw ValidationError("number of classes must be at least 2");
        } else if constexpr (std::is_same_v<T, Proportions>) {
          if (s.fractions.empty()) throw ValidationError("class proportions are empty");
          double total = 0.0;
          for (double f : s.fractions) {
            if (!(f > 0.0)) throw ValidationError("class proportions must be positive");
            total += f;
          }
          if (std::abs(total - 1.0) > 1e-9) {
            throw ValidationError("class proportions must sum to one");
          }
        } else if constexpr (std::is_same_v<T, ExplicitBreaks>) {
          if (s.breaks.size() < 2) throw ValidationError("at least two interval breaks are needed");
          for (std::size_t k = 1; k < s.breaks.size(); ++k) {
            if (!(s.breaks[k] > s.breaks[k - 1])) {
              throw ValidationError("interval breaks must be strictly increasing");
            }
          }
        } else {
          if (s.grouping.empty()) throw ValidationError("column grouping is empty");
          for (std::size_t k = 0; k < s.grouping.size(); ++k) {
            if (s.grouping[k] < 1 || (k > 0 && s.grouping[k] <= s.grouping[k - 1])) {
              throw ValidationError("column grouping must be strictly increasing positive ranks");
            }
          }
        }
      },
      scheme);
}

namespace {

std::vector<double> off_diagonal_sorted(const DistanceMatrix& w) {
  std::vector<double> values;
  const Index n = w.size();
  values.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) values.push_back(w(i, j));
  }
  std::sort(values.begin(), values.end());
  return values;
}

double quantile(const std::vector<double>& sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

Breaks compute_breaks(const DistanceMatrix& w, const ClassificationScheme& scheme) {
  validate(scheme);
  if (w.size() < 2) throw ValidationError("at least two observations are needed for class breaks");
  const auto sorted = off_diagonal_sorted(w);

  Breaks out;
  if (const auto* explicit_breaks = std::get_if<ExplicitBreaks>(&scheme)) {
    const auto& b = explicit_breaks->breaks;
    if (b.front() > sorted.front()) {
      throw ValidationError("first interval break exceeds the smallest distance");
    }
    if (b.back() < sorted.back()) {
      throw ValidationError("last interval break is below the largest distance");
    }
    out.values = b;
    return out;
  }

  std::vector<double> cumulative;
  if (const auto* eq = std::get_if<EqualCount>(&scheme)) {
    for (int c = 1; c < eq->n_classes; ++c) {
      cumulative.push_back(static_cast<double>(c) / eq->n_classes);
    }
  } else if (const auto* prop = std::get_if<Proportions>(&scheme)) {
    double acc = 0.0;
    for (std::size_t c = 0; c + 1 < prop->fractions.size(); ++c) {
      acc += prop->fractions[c];
      cumulative.push_back(std::min(acc, 1.0));
    }
  } else {
    throw ValidationError("column-rank schemes have no distance breaks");
  }

  std::vector<double> raw{std::min(0.0, sorted.front())};
  for (double p : cumulative) raw.push_back(quantile(sorted, p));
  raw.push_back(sorted.back());

  out.values.push_back(raw.front());
  std::size_t merged = 0;
  for (std::size_t k = 1; k < raw.size(); ++k) {
    if (raw[k] > out.values.back()) {
      out.values.push_back(raw[k]);
    } else {
      ++merged;
    }
  }
  if (out.values.size() < 2) {
    // every distance is zero
    out.values.push_back(0.0);
  }
  if (merged > 0) {
    std::ostringstream msg;
    msg << "tied distances produced duplicate class breaks; " << merged
        << " class(es) merged, " << out.n_classes() << " remain";
    out.warnings.push_back(msg.str());
  }
  return out;
}

ClassMatrix encode_symmetric(const DistanceMatrix& w, std::span<const double> breaks) {
  if (breaks.size() < 2) throw ValidationError("at least two interval breaks are needed");
  const Index n = w.size();
  ClassMatrix classes(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j; i < n; ++i) {
      const double d = w(i, j);
      int cls = 0;
      if (d == 0.0 || d <= breaks[1]) {
        cls = 1;
      } else {
        const auto it = std::lower_bound(breaks.begin() + 1, breaks.end(), d);
        if (it == breaks.end()) {
          std::ostringstream msg;
          msg << "distance " << d << " between '" << w.labels()[static_cast<std::size_t>(i)]
              << "' and '" << w.labels()[static_cast<std::size_t>(j)]
              << "' lies above the last interval break " << breaks.back();
          throw ValidationError(msg.str());
        }
        cls = static_cast<int>(it - breaks.begin());
      }
      if (d < breaks.front() && d != 0.0) {
        throw ValidationError("distance lies below the first interval break");
      }
      classes(i, j) = cls;
      classes(j, i) = cls;
    }
  }
  return classes;
}

ClassMatrix encode_asymmetric(const DistanceMatrix& w, std::span<const int> grouping) {
  validate(ClassificationScheme{ColumnRank{{grouping.begin(), grouping.end()}}});
  const Index n = w.size();
  if (grouping.back() >= n) {
    throw ValidationError("column grouping rank " + std::to_string(grouping.back()) +
                          " must be below the number of observations (" + std::to_string(n) + ")");
  }
  const int blank = static_cast<int>(grouping.size()) + 1;
  ClassMatrix classes(n, n);
  std::vector<Index> rows;
  for (Index j = 0; j < n; ++j) {
    rows.clear();
    for (Index i = 0; i < n; ++i) {
      if (i != j) rows.push_back(i);
    }
    std::stable_sort(rows.begin(), rows.end(), [&](Index a, Index b) { return w(a, j) < w(b, j); });
    classes(j, j) = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto rank = static_cast<int>(r + 1);
      const auto it = std::lower_bound(grouping.begin(), grouping.end(), rank);
      classes(rows[r], j) = it == grouping.end() ? blank : static_cast<int>(it - grouping.begin()) + 1;
    }
  }
  return classes;
}

// ---------------------------------------------------------------------------

BuiltDiagram build_diagram(const DiagramInput& input, const DiagramOptions& options,
                           const SeriationRegistry& registry) {
  validate(options.scheme);
  DistanceMatrix distances = std::visit(
      [&](const auto& in) -> DistanceMatrix {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, DataMatrix>) {
          const DataMatrix prepared = options.scale_data ? standardize(in) : in;
          return compute_distance(prepared, options.metric, options.distance_hook);
        } else {
          return in;
        }
      },
      input);

  SeriationResult seriation = seriate(distances, options.seriation, options.focal, registry);

  CzekanowskiDiagram d;
  d.order = std::move(seriation.order);
  d.report = std::move(seriation.report);
  d.labels = distances.labels();
  d.symmetric = is_symmetric(options.scheme);
  if (const auto* rank = std::get_if<ColumnRank>(&options.scheme)) {
    d.grouping = rank->grouping;
    d.classes = encode_asymmetric(distances, rank->grouping);
    d.n_classes = static_cast<int>(rank->grouping.size()) + 1;
  } else {
    Breaks breaks = compute_breaks(distances, options.scheme);
    d.classes = encode_symmetric(distances, breaks.values);
    d.n_classes = breaks.n_classes();
    d.breaks = std::move(breaks.values);
    d.warnings = std::move(breaks.warnings);
  }
  return {std::move(d), std::move(distances)};
}

CzekanowskiDiagram manual_reorder(const CzekanowskiDiagram& d, const Permutation& new_order,
                                  const DistanceMatrix& w) {
  if (w.size() != d.size()) {
    throw ValidationError("distance matrix does not match the diagram size");
  }
  check_bijection(new_order.indices(), d.size());
  CzekanowskiDiagram out = d;
  out.order = new_order;
  out.report = make_report(w, new_order, d.report.criterion_name);
  return out;
}

}  // namespace czek
