#pragma once

#include <algorithm>
#include <optional>
#include <unordered_set>
#include <vector>

#include "halfgap/checked_int.hpp"
#include "halfgap/rng.hpp"

namespace halfgap {

/// k lists of n distinct integers; asks whether a_1 + ... + a_{k-1} = a_k
/// has a solution with a_i taken from list i. The generator keeps values in
/// the range [-n^{2k}, n^{2k}]; loaded instances may sit outside it (see
/// in_range), since the solvers and the reduction only need integrality.
struct KSumInstance {
  int k = 0;
  int n = 0;
  std::vector<std::vector<Int>> lists;

  void validate() const {
    if (k < 2) throw input_error("k-SUM instance needs k >= 2");
    if (n < 1) throw input_error("k-SUM instance needs n >= 1");
    if (lists.size() != static_cast<size_t>(k)) throw input_error("k-SUM instance needs k lists");
    for (const auto& list : lists) {
      if (list.size() != static_cast<size_t>(n))
        throw input_error("k-SUM lists must each hold n values");
      std::unordered_set<Int> seen;
      for (const Int& v : list) {
        if (!seen.insert(v).second) throw input_error("k-SUM list values must be distinct");
      }
    }
  }

  Int range_bound() const { return Int::pow(Int(n), static_cast<unsigned>(2 * k)); }

  bool in_range() const {
    Int r = range_bound();
    for (const auto& list : lists) {
      for (const Int& v : list) {
        if (v.abs() > r) return false;
      }
    }
    return true;
  }
};

struct KSumWitness {
  std::vector<size_t> indices;  // one index per list
  std::vector<Int> values;      // the chosen values, same order

  bool satisfies() const {
    if (values.empty()) return false;
    Int sum(0);
    for (size_t i = 0; i + 1 < values.size(); ++i) sum += values[i];
    return sum == values.back();
  }
};

/// Exhaustive solver: every choice tuple over the first k-1 lists, with a
/// sorted-membership lookup in the last list. First witness in tuple
/// enumeration order, so the result is deterministic.
inline std::optional<KSumWitness> solve_brute(const KSumInstance& inst) {
  inst.validate();
  const int k = inst.k;
  std::vector<std::pair<Int, size_t>> last;
  last.reserve(inst.n);
  for (size_t i = 0; i < inst.lists[k - 1].size(); ++i) last.emplace_back(inst.lists[k - 1][i], i);
  std::sort(last.begin(), last.end());

  std::vector<size_t> idx(k - 1, 0);
  while (true) {
    Int sum(0);
    for (int i = 0; i < k - 1; ++i) sum += inst.lists[i][idx[i]];
    auto it = std::lower_bound(last.begin(), last.end(), std::make_pair(sum, size_t{0}));
    if (it != last.end() && it->first == sum) {
      KSumWitness w;
      for (int i = 0; i < k - 1; ++i) {
        w.indices.push_back(idx[i]);
        w.values.push_back(inst.lists[i][idx[i]]);
      }
      w.indices.push_back(it->second);
      w.values.push_back(it->first);
      return w;
    }
    int pos = k - 2;
    while (pos >= 0 && ++idx[pos] == static_cast<size_t>(inst.n)) idx[pos--] = 0;
    if (pos < 0) return std::nullopt;
  }
}

/// Meet in the middle: rewrite the equation as a zero-sum over
/// {A_1, ..., A_{k-1}, -A_k}, index all partial sums of the first floor(k/2)
/// lists in a sorted table, and scan the tuples of the remaining lists.
/// O(n^ceil(k/2)) time up to logarithmic factors, O(n^floor(k/2)) space.
inline std::optional<KSumWitness> solve_mitm(const KSumInstance& inst) {
  inst.validate();
  const int k = inst.k;
  auto value_of = [&](int list, size_t i) {
    return list == k - 1 ? -inst.lists[list][i] : inst.lists[list][i];
  };

  const int left = k / 2;
  const int right = k - left;

  struct Entry {
    Int sum;
    std::vector<size_t> idx;
    bool operator<(const Entry& o) const {
      if (sum != o.sum) return sum < o.sum;
      return idx < o.idx;
    }
  };
  std::vector<Entry> table;
  {
    std::vector<size_t> idx(left, 0);
    while (true) {
      Entry e;
      e.sum = Int(0);
      e.idx = idx;
      for (int i = 0; i < left; ++i) e.sum += value_of(i, idx[i]);
      table.push_back(std::move(e));
      int pos = left - 1;
      while (pos >= 0 && ++idx[pos] == static_cast<size_t>(inst.n)) idx[pos--] = 0;
      if (pos < 0) break;
    }
    std::sort(table.begin(), table.end());
  }

  std::vector<size_t> idx(right, 0);
  while (true) {
    Int sum(0);
    for (int i = 0; i < right; ++i) sum += value_of(left + i, idx[i]);
    Int need = -sum;
    auto it = std::lower_bound(table.begin(), table.end(), Entry{need, {}});
    if (it != table.end() && it->sum == need) {
      KSumWitness w;
      for (int i = 0; i < left; ++i) {
        w.indices.push_back(it->idx[i]);
        w.values.push_back(inst.lists[i][it->idx[i]]);
      }
      for (int i = 0; i < right; ++i) {
        w.indices.push_back(idx[i]);
        w.values.push_back(inst.lists[left + i][idx[i]]);
      }
      return w;
    }
    int pos = right - 1;
    while (pos >= 0 && ++idx[pos] == static_cast<size_t>(inst.n)) idx[pos--] = 0;
    if (pos < 0) return std::nullopt;
  }
}

namespace detail {

/// Uniform 128-bit value below m, by bitmask rejection over u64 pairs.
inline unsigned __int128 below_u128(Rng& rng, unsigned __int128 m) {
  if (m == 0) throw input_error("below_u128(0)");
  unsigned __int128 mask = m - 1;
  for (int s = 1; s < 128; s <<= 1) mask |= mask >> s;
  while (true) {
    unsigned __int128 r =
        (static_cast<unsigned __int128>(rng.next_u64()) << 64) | rng.next_u64();
    r &= mask;
    if (r < m) return r;
  }
}

inline Int uniform_in_range(Rng& rng, const Int& bound) {
  unsigned __int128 span = 2 * static_cast<unsigned __int128>(bound.raw()) + 1;
  unsigned __int128 u = below_u128(rng, span);
  return Int::from_i128(static_cast<__int128>(u) - bound.raw());
}

}  // namespace detail

/// Seeded instance generator. Values are uniform and distinct per list in
/// [-n^{2k}, n^{2k}]. Planted: a random choice tuple is drawn first and its
/// sum is inserted into the last list (resampled while it collides or falls
/// out of range). Not planted: whole instances are resampled until a solver
/// certifies NO (brute force for n <= 12, meet in the middle above).
inline KSumInstance gen_instance(int n, int k, bool planted, uint64_t seed) {
  if (k < 2 || n < 1) throw input_error("gen_instance: bad parameters");
  KSumInstance inst;
  inst.k = k;
  inst.n = n;
  Int bound = inst.range_bound();
  Rng rng(seed);

  auto fill_list = [&](std::vector<Int>& list, const std::optional<Int>& avoid) {
    list.clear();
    std::unordered_set<Int> seen;
    if (avoid) seen.insert(*avoid);
    while (list.size() < static_cast<size_t>(n)) {
      Int v = detail::uniform_in_range(rng, bound);
      if (seen.insert(v).second) list.push_back(v);
    }
  };

  for (int attempt = 0; attempt < 100000; ++attempt) {
    inst.lists.assign(k, {});
    for (int i = 0; i < k - 1; ++i) fill_list(inst.lists[i], std::nullopt);

    if (planted) {
      Int target(0);
      bool ok = false;
      for (int t = 0; t < 1000 && !ok; ++t) {
        target = Int(0);
        for (int i = 0; i < k - 1; ++i)
          target += inst.lists[i][rng.below(static_cast<uint64_t>(n))];
        ok = target.abs() <= bound;
      }
      if (!ok) continue;
      std::vector<Int> rest;
      fill_list(rest, target);
      size_t pos = rng.below(static_cast<uint64_t>(n));
      auto& last = inst.lists[k - 1];
      last.assign(rest.begin(), rest.begin() + (n - 1));
      last.insert(last.begin() + static_cast<long>(pos % n), target);
      inst.validate();
      return inst;
    }

    fill_list(inst.lists[k - 1], std::nullopt);
    inst.validate();
    bool has = n <= 12 ? solve_brute(inst).has_value() : solve_mitm(inst).has_value();
    if (!has) return inst;
  }
  throw input_error("gen_instance: could not produce a NO instance in this range");
}

}  // namespace halfgap
