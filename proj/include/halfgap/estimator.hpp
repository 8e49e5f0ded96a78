#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "halfgap/exact_distance.hpp"
#include "halfgap/geometry.hpp"
#include "halfgap/rng.hpp"

namespace halfgap {

/// Sampling plus query access to a labeled distribution (D, f). The
/// estimator below only ever samples; the query channel exists because the
/// access model grants it and adversarial callers use it.
struct SampleAccess {
  std::function<void(Rng&, Point&, int&)> draw;
  std::function<int(const Point&)> query;
  uint64_t rng_seed = 0;
};

/// VC-style sample size: ceil(C * (d + 1 + ln(2/delta)) / eps^2) with C = 64.
/// C is a conservative constant; the calibration tests check the resulting
/// empirical failure rate directly.
inline long long sample_size(int d, const Rat& eps, const Rat& delta) {
  if (d < 1) throw input_error("sample_size: d must be >= 1");
  if (!(eps > Rat(0) && eps < Rat(1))) throw input_error("sample_size: eps outside (0,1)");
  if (!(delta > Rat(0) && delta < Rat(1))) throw input_error("sample_size: delta outside (0,1)");
  double e = eps.to_double();
  double dl = delta.to_double();
  double raw = 64.0 * (static_cast<double>(d) + 1.0 + std::log(2.0 / dl)) / (e * e);
  return static_cast<long long>(std::ceil(raw));
}

struct Estimate {
  Rat value;
  long long samples = 0;
  DistanceReport report;
  LabeledDataset empirical;
};

/// Draw s = sample_size(d, eps, delta) labeled samples, merge exact
/// duplicates into multiplicity weights (conflicting labels signal a
/// non-function input and are rejected), and return the exact distance of
/// the empirical dataset. Always the exact distance of SOME finite dataset,
/// hence a rational in [0,1].
inline Estimate approx_distance(const SampleAccess& acc, int d, const Rat& eps,
                                const Rat& delta) {
  const long long s = sample_size(d, eps, delta);
  Rng rng(acc.rng_seed);

  struct Cell {
    uint8_t label;
    long long count;
  };
  std::unordered_map<Point, Cell, PointHash> merged;
  merged.reserve(1024);
  Point buf;
  int label = 0;
  for (long long i = 0; i < s; ++i) {
    acc.draw(rng, buf, label);
    auto [it, inserted] = merged.try_emplace(buf, Cell{static_cast<uint8_t>(label), 1});
    if (!inserted) {
      if (it->second.label != label)
        throw input_error("sample access returned conflicting labels for one point");
      ++it->second.count;
    }
  }

  std::vector<std::pair<Point, Cell>> cells(merged.begin(), merged.end());
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  LabeledDataset ds;
  ds.d = static_cast<size_t>(d);
  ds.points.reserve(cells.size());
  ds.labels.reserve(cells.size());
  ds.weights.reserve(cells.size());
  for (auto& [pt, cell] : cells) {
    ds.points.push_back(pt);
    ds.labels.push_back(cell.label);
    ds.weights.emplace_back(Int(cell.count), Int(s));
  }
  ds.validate();

  Estimate est;
  est.samples = s;
  est.report = exact_distance(ds);
  est.value = est.report.distance;
  est.empirical = std::move(ds);
  return est;
}

/// Access object for a finitely supported dataset: draws follow the weights,
/// queries return the stored labels (unknown points default to 0).
inline SampleAccess make_dataset_access(const LabeledDataset& ds, uint64_t seed) {
  ds.validate();
  ds.reject_conflicting_duplicates();
  auto sw = scale_weights(ds);
  if (!(sw.denom <= Int(static_cast<long long>(1) << 62)))
    throw input_error("dataset weights too fine-grained for sampling");
  auto denom = static_cast<uint64_t>(sw.denom.raw());
  std::vector<uint64_t> cumulative(ds.size());
  uint64_t acc = 0;
  for (size_t i = 0; i < ds.size(); ++i) {
    acc += static_cast<uint64_t>(sw.w[i].raw());
    cumulative[i] = acc;
  }
  auto points = ds.points;
  auto labels = ds.labels;
  SampleAccess a;
  a.rng_seed = seed;
  a.draw = [cumulative, denom, points, labels](Rng& rng, Point& out, int& label) {
    uint64_t u = rng.below(denom);
    size_t idx = static_cast<size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    out = points[idx];
    label = labels[idx];
  };
  a.query = [points, labels](const Point& x) {
    for (size_t i = 0; i < points.size(); ++i) {
      if (points[i] == x) return static_cast<int>(labels[i]);
    }
    return 0;
  };
  return a;
}

}  // namespace halfgap
