#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "halfgap/checked_int.hpp"
#include "halfgap/rational.hpp"

namespace halfgap {

/// A point of the integer grid Z^d.
struct Point {
  std::vector<Int> coords;

  Point() = default;
  explicit Point(std::vector<Int> c) : coords(std::move(c)) {}
  Point(std::initializer_list<long long> c) {
    coords.reserve(c.size());
    for (long long v : c) coords.emplace_back(v);
  }

  size_t dim() const { return coords.size(); }
  const Int& operator[](size_t i) const { return coords[i]; }
  Int& operator[](size_t i) { return coords[i]; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
  friend bool operator<(const Point& a, const Point& b) {
    for (size_t i = 0; i < a.coords.size() && i < b.coords.size(); ++i) {
      if (a.coords[i] != b.coords[i]) return a.coords[i] < b.coords[i];
    }
    return a.coords.size() < b.coords.size();
  }

  size_t hash() const {
    size_t h = 0x811c9dc5u ^ coords.size();
    for (const Int& c : coords) h = (h ^ c.hash()) * 0x100000001b3ULL;
    return h;
  }
};

struct PointHash {
  size_t operator()(const Point& p) const noexcept { return p.hash(); }
};

/// The classifier x |-> 1{<w,x> + theta >= 0}. The boundary is inclusive;
/// w = 0 is legal and yields a constant classifier.
struct Halfspace {
  std::vector<Int> w;
  Int theta;

  Halfspace() : theta(0) {}
  Halfspace(std::vector<Int> weights, Int t) : w(std::move(weights)), theta(t) {}
  Halfspace(std::initializer_list<long long> weights, long long t) : theta(t) {
    w.reserve(weights.size());
    for (long long v : weights) w.emplace_back(v);
  }

  size_t dim() const { return w.size(); }

  friend bool operator==(const Halfspace& a, const Halfspace& b) {
    return a.w == b.w && a.theta == b.theta;
  }
};

inline int eval_halfspace(const Halfspace& h, const Point& x) {
  if (h.dim() != x.dim()) throw input_error("halfspace/point dimension mismatch");
  Int acc = h.theta;
  for (size_t i = 0; i < x.dim(); ++i) acc += h.w[i] * x[i];
  return acc.sign() >= 0 ? 1 : 0;
}

/// Exact complement classifier: on integer points, not(<w,x>+theta >= 0)
/// is <-w,x> + (-theta-1) >= 0.
inline Halfspace complement(const Halfspace& h) {
  Halfspace r;
  r.w.reserve(h.w.size());
  for (const Int& c : h.w) r.w.push_back(-c);
  r.theta = -h.theta - Int(1);
  return r;
}

/// Divide (w, theta) by the gcd of all entries, keeping orientation.
inline Halfspace normalize_halfspace(Halfspace h) {
  Int g = h.theta.abs();
  for (const Int& c : h.w) g = gcd(g, c);
  if (g > Int(1)) {
    for (Int& c : h.w) c = div_exact(c, g);
    h.theta = div_exact(h.theta, g);
  }
  return h;
}

inline bool lex_less(const Halfspace& a, const Halfspace& b) {
  for (size_t i = 0; i < a.w.size(); ++i) {
    if (a.w[i] != b.w[i]) return a.w[i] < b.w[i];
  }
  return a.theta < b.theta;
}

/// Finitely supported labeled distribution: points with {0,1} labels and
/// positive rational weights summing to exactly 1. Duplicate points are
/// permitted only with identical labels; conflicting duplicates are data
/// about a non-function and are rejected by the distance solvers.
struct LabeledDataset {
  size_t d = 0;
  std::vector<Point> points;
  std::vector<uint8_t> labels;
  std::vector<Rat> weights;

  size_t size() const { return points.size(); }

  void validate() const {
    if (points.empty()) throw input_error("dataset is empty");
    if (labels.size() != points.size() || weights.size() != points.size())
      throw input_error("dataset arrays have mismatched lengths");
    Rat total(0);
    for (size_t i = 0; i < points.size(); ++i) {
      if (points[i].dim() != d) throw input_error("dataset point dimension mismatch");
      if (labels[i] > 1) throw input_error("dataset label outside {0,1}");
      if (weights[i].sign() <= 0) throw input_error("dataset weight not positive");
      total += weights[i];
    }
    if (total != Rat(1)) throw input_error("dataset weights do not sum to 1");
  }

  /// Throws if some point appears with two different labels.
  void reject_conflicting_duplicates() const {
    std::unordered_map<Point, uint8_t, PointHash> seen;
    for (size_t i = 0; i < points.size(); ++i) {
      auto [it, inserted] = seen.emplace(points[i], labels[i]);
      if (!inserted && it->second != labels[i])
        throw input_error("duplicate point with conflicting labels");
    }
  }
};

inline Rat disagreement(const LabeledDataset& ds, const Halfspace& h) {
  if (h.dim() != ds.d) throw input_error("halfspace/dataset dimension mismatch");
  Rat total(0);
  for (size_t i = 0; i < ds.size(); ++i) {
    if (eval_halfspace(h, ds.points[i]) != ds.labels[i]) total += ds.weights[i];
  }
  return total;
}

inline std::vector<Rat> normalize_weights(const std::vector<Int>& counts) {
  if (counts.empty()) throw input_error("normalize_weights: empty input");
  Int total(0);
  for (const Int& c : counts) {
    if (c.sign() <= 0) throw input_error("normalize_weights: nonpositive count");
    total += c;
  }
  std::vector<Rat> out;
  out.reserve(counts.size());
  for (const Int& c : counts) out.emplace_back(c, total);
  return out;
}

/// Weights as integers over one common denominator; every solver does its
/// accumulation in Int and converts back to Rat once at the end.
struct ScaledWeights {
  std::vector<Int> w;
  Int denom{1};
};

inline ScaledWeights scale_weights(const LabeledDataset& ds) {
  ScaledWeights s;
  s.denom = Int(1);
  for (const Rat& r : ds.weights) s.denom = lcm(s.denom, r.den());
  s.w.reserve(ds.size());
  for (const Rat& r : ds.weights) s.w.push_back(r.num() * div_exact(s.denom, r.den()));
  return s;
}

inline LabeledDataset make_dataset(size_t d, std::vector<Point> points,
                                   std::vector<uint8_t> labels, std::vector<Rat> weights) {
  LabeledDataset ds;
  ds.d = d;
  ds.points = std::move(points);
  ds.labels = std::move(labels);
  ds.weights = std::move(weights);
  ds.validate();
  return ds;
}

/// Uniform-weight dataset, the common case.
inline LabeledDataset make_uniform_dataset(size_t d, std::vector<Point> points,
                                           std::vector<uint8_t> labels) {
  std::vector<Int> counts(points.size(), Int(1));
  return make_dataset(d, std::move(points), std::move(labels), normalize_weights(counts));
}

}  // namespace halfgap
