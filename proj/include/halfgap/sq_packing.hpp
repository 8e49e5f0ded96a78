#pragma once

#include <cmath>
#include <vector>

#include "halfgap/rng.hpp"
#include "halfgap/sq_core.hpp"

namespace halfgap {

inline UnitVector random_unit_vector(Rng& rng, int d) {
  UnitVector u;
  u.c.resize(d);
  while (true) {
    double norm2 = 0;
    for (double& x : u.c) {
      x = rng.normal();
      norm2 += x * x;
    }
    if (norm2 > 1e-24) {
      double inv = 1.0 / std::sqrt(norm2);
      for (double& x : u.c) x *= inv;
      return u;
    }
  }
}

inline double max_abs_pairwise_dot(const std::vector<UnitVector>& vs) {
  double worst = 0;
  for (size_t i = 0; i < vs.size(); ++i) {
    for (size_t j = i + 1; j < vs.size(); ++j) worst = std::max(worst, std::abs(dot(vs[i], vs[j])));
  }
  return worst;
}

struct PackingOutcome {
  bool ok = false;
  std::vector<UnitVector> vectors;
  int retries_used = 0;
  double best_max_abs_dot = 1.0;  // smallest max |<u,v>| seen over attempts
};

/// Repeatedly sample m i.i.d. uniform unit vectors until all pairwise
/// |<u,v>| <= threshold; gives up after max_retries and reports the best
/// attempt. The returned set is re-checked against its own threshold before
/// being handed out.
inline PackingOutcome try_sample_packing(int d, int m, double threshold, int max_retries,
                                         uint64_t seed) {
  if (d < 2 || m < 2) throw input_error("sample_packing needs d >= 2 and m >= 2");
  PackingOutcome out;
  if (threshold < 0) return out;  // |dot| >= 0, nothing to sample
  Rng rng(seed);
  for (int retry = 1; retry <= max_retries; ++retry) {
    std::vector<UnitVector> vs;
    vs.reserve(m);
    for (int i = 0; i < m; ++i) vs.push_back(random_unit_vector(rng, d));
    double worst = max_abs_pairwise_dot(vs);
    out.best_max_abs_dot = std::min(out.best_max_abs_dot, worst);
    if (worst <= threshold) {
      for (const UnitVector& v : vs) v.validate();
      if (max_abs_pairwise_dot(vs) > threshold)
        throw invariant_violation("packing post-check failed");
      out.ok = true;
      out.vectors = std::move(vs);
      out.retries_used = retry;
      return out;
    }
  }
  out.retries_used = max_retries;
  return out;
}

class packing_error : public std::runtime_error {
 public:
  packing_error(const std::string& msg, double best) : std::runtime_error(msg), best_max_abs_dot(best) {}
  double best_max_abs_dot;
};

inline std::vector<UnitVector> sample_packing(int d, int m, double threshold, int max_retries,
                                              uint64_t seed) {
  PackingOutcome out = try_sample_packing(d, m, threshold, max_retries, seed);
  if (!out.ok)
    throw packing_error("sample_packing: retries exhausted; best max |<u,v>| was " +
                            std::to_string(out.best_max_abs_dot),
                        out.best_max_abs_dot);
  return std::move(out.vectors);
}

struct AngleStats {
  double theta_min = 0;
  double theta_max = 0;
  double scaled_min = 0;  // n^{2/(d-1)} * theta_min
  double scaled_max = 0;  // n^{2/(d-1)} * (pi - theta_max)
};

inline AngleStats angle_stats(const std::vector<UnitVector>& vs) {
  if (vs.size() < 2) throw input_error("angle_stats needs at least two vectors");
  const double pi = std::acos(-1.0);
  double tmin = pi, tmax = 0;
  for (size_t i = 0; i < vs.size(); ++i) {
    for (size_t j = i + 1; j < vs.size(); ++j) {
      double c = std::clamp(dot(vs[i], vs[j]), -1.0, 1.0);
      double theta = std::acos(c);
      tmin = std::min(tmin, theta);
      tmax = std::max(tmax, theta);
    }
  }
  AngleStats st;
  st.theta_min = tmin;
  st.theta_max = tmax;
  double n = static_cast<double>(vs.size());
  double d = static_cast<double>(vs[0].dim());
  double scale = std::pow(n, 2.0 / (d - 1.0));
  st.scaled_min = scale * tmin;
  st.scaled_max = scale * (pi - tmax);
  return st;
}

/// Extreme-angle law report: over repeated draws of n uniform unit vectors,
/// the scaled minimum angle (and pi minus the maximum) should follow
/// F(x) = 1 - exp(-K x^{d-1}) for some d-dependent constant K. K is fitted
/// by maximum likelihood (K = T / sum x^{d-1}) and the Kolmogorov-Smirnov
/// statistic against the fitted CDF is reported, never asserted here.
struct AngleLawReport {
  double k_min_fit = 0;  // fitted K for the scaled-min sample
  double k_max_fit = 0;  // fitted K for the scaled (pi - max) sample
  double ks_min = 1;
  double ks_max = 1;
  std::vector<double> scaled_min_samples;
  std::vector<double> scaled_max_samples;
};

namespace detail {

inline std::pair<double, double> fit_angle_law(std::vector<double> xs, double dim) {
  std::sort(xs.begin(), xs.end());
  double denom = 0;
  for (double x : xs) denom += std::pow(x, dim - 1.0);
  double k = denom > 0 ? static_cast<double>(xs.size()) / denom : 0.0;
  double ks = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double fx = 1.0 - std::exp(-k * std::pow(xs[i], dim - 1.0));
    double lo = static_cast<double>(i) / xs.size();
    double hi = static_cast<double>(i + 1) / xs.size();
    ks = std::max({ks, std::abs(fx - lo), std::abs(fx - hi)});
  }
  return {k, ks};
}

}  // namespace detail

inline AngleLawReport angle_law_report(int d, int n, int trials, uint64_t seed) {
  if (d < 2 || n < 2 || trials < 1) throw input_error("angle_law_report: bad parameters");
  AngleLawReport rep;
  Rng rng(seed);
  rep.scaled_min_samples.reserve(trials);
  rep.scaled_max_samples.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    std::vector<UnitVector> vs;
    vs.reserve(n);
    for (int i = 0; i < n; ++i) vs.push_back(random_unit_vector(rng, d));
    AngleStats st = angle_stats(vs);
    rep.scaled_min_samples.push_back(st.scaled_min);
    rep.scaled_max_samples.push_back(st.scaled_max);
  }
  auto [kmin, ksmin] = detail::fit_angle_law(rep.scaled_min_samples, d);
  auto [kmax, ksmax] = detail::fit_angle_law(rep.scaled_max_samples, d);
  rep.k_min_fit = kmin;
  rep.ks_min = ksmin;
  rep.k_max_fit = kmax;
  rep.ks_max = ksmax;
  return rep;
}

}  // namespace halfgap
