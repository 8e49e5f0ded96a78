#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "halfgap/sq_core.hpp"
#include "halfgap/sq_packing.hpp"

namespace halfgap {

/// k-alternating profile along u: signs alternate across the k+1 intervals
/// cut at the standard normal quantiles j/(k+1), ending with +1 on the top
/// interval (so k = 1 is exactly the halfspace sign(<u,x>)).
inline QuerySpec make_projection_profile(const UnitVector& u, int k) {
  if (k < 1) throw input_error("projection profile needs k >= 1");
  QuerySpec q;
  q.kind = QuerySpec::Kind::PROJECTION_PROFILE;
  q.u = u;
  q.breakpoints.reserve(k);
  for (int j = 1; j <= k; ++j)
    q.breakpoints.push_back(inverse_normal_cdf(static_cast<double>(j) / (k + 1)));
  q.signs.resize(k + 1);
  for (int j = 0; j <= k; ++j) q.signs[j] = static_cast<int8_t>((k - j) % 2 == 0 ? 1 : -1);
  q.k_alternating = true;
  return q;
}

struct ProjectionFamily {
  std::vector<SignFunction> funcs;
  std::vector<QuerySpec> profiles;  // the generating profiles, pair-constant
};

inline ProjectionFamily build_projection_family(const std::vector<UnitVector>& vectors, int k,
                                                const GaussianSupport& support) {
  if (support.base_count < 1) throw input_error("degenerate support");
  ProjectionFamily fam;
  for (const UnitVector& u : vectors) {
    QuerySpec q = make_projection_profile(u, k);
    q.validate(support);
    SignFunction f;
    f.v.resize(support.atoms());
    for (size_t b = 0; b < static_cast<size_t>(support.base_count); ++b) {
      auto v = static_cast<int8_t>(q.eval_base(support, b));
      f.v[2 * b] = v;
      f.v[2 * b + 1] = v;
    }
    fam.funcs.push_back(std::move(f));
    fam.profiles.push_back(std::move(q));
  }
  return fam;
}

/// Measured family report: each member's best correlation with an aligned
/// threshold halfspace sign(<u,x> - t) over a quantile grid of t, plus all
/// pairwise correlations. These are empirical observations about the
/// quantile-split profiles, not guarantees.
struct FamilyReport {
  std::vector<double> best_halfspace_corr;
  std::vector<std::vector<double>> pairwise;
};

inline FamilyReport family_report(const GaussianSupport& support, const ProjectionFamily& fam,
                                  const std::vector<UnitVector>& vectors, int grid = 199) {
  FamilyReport rep;
  rep.best_halfspace_corr.resize(fam.funcs.size(), -1.0);
  for (size_t i = 0; i < fam.funcs.size(); ++i) {
    std::vector<double> fv = eval_atoms(support, fam.funcs[i]);
    for (int g = 1; g <= grid; ++g) {
      double t = inverse_normal_cdf(static_cast<double>(g) / (grid + 1));
      std::vector<double> w(vectors[i].c.begin(), vectors[i].c.end());
      QuerySpec h = make_halfspace_query(std::move(w), -t);
      double c = correlation_values(support, fv, eval_atoms(support, h));
      rep.best_halfspace_corr[i] = std::max(rep.best_halfspace_corr[i], c);
    }
  }
  rep.pairwise.assign(fam.funcs.size(), std::vector<double>(fam.funcs.size(), 0.0));
  for (size_t i = 0; i < fam.funcs.size(); ++i) {
    std::vector<double> fi = eval_atoms(support, fam.funcs[i]);
    for (size_t j = i + 1; j < fam.funcs.size(); ++j) {
      double c = correlation_values(support, fi, eval_atoms(support, fam.funcs[j]));
      rep.pairwise[i][j] = rep.pairwise[j][i] = c;
    }
  }
  return rep;
}

struct F0Result {
  SignFunction f0;
  size_t color_classes = 0;
};

/// The pseudorandom function: color every base point by the tuple of
/// (tau/2)-rounded query values and reference-halfspace labels, then give
/// the two atoms of each pair opposite signs. Every color class is a union
/// of whole pairs, so the split is exactly balanced within each class; the
/// correlation with any pair-constant query therefore cancels to exactly 0,
/// and |corr(f0, g)| <= tau/2 for raw queries follows from the pointwise
/// rounding error bound alone.
inline F0Result build_f0(const GaussianSupport& support, const std::vector<QuerySpec>& queries,
                         const std::vector<QuerySpec>& references, double tau) {
  if (!(tau > 0)) throw input_error("build_f0 needs tau > 0");
  if (support.atoms() != 2 * static_cast<size_t>(support.base_count) || support.base_count < 1)
    throw input_error("build_f0 needs the paired-atom support");
  for (const QuerySpec& g : queries) {
    g.validate(support);
    if (!g.pair_constant(support))
      throw input_error("build_f0: queries must be functions of the point (pair-constant)");
  }
  for (const QuerySpec& r : references) {
    if (r.kind != QuerySpec::Kind::HALFSPACE_SIGN)
      throw input_error("build_f0: references must be halfspace signs");
    r.validate(support);
  }

  std::unordered_map<std::string, size_t> colors;
  for (size_t b = 0; b < static_cast<size_t>(support.base_count); ++b) {
    std::string key;
    key.reserve(16 * (queries.size() + references.size()));
    for (const QuerySpec& g : queries) {
      long long idx = round_multiple_index(g.eval_base(support, b), tau / 2);
      key += std::to_string(idx);
      key.push_back(',');
    }
    for (const QuerySpec& r : references) {
      key.push_back(r.eval_base(support, b) > 0 ? '+' : '-');
    }
    colors.try_emplace(std::move(key), colors.size());
  }

  F0Result out;
  out.color_classes = colors.size();
  out.f0.v.resize(support.atoms());
  for (size_t b = 0; b < static_cast<size_t>(support.base_count); ++b) {
    out.f0.v[2 * b] = 1;
    out.f0.v[2 * b + 1] = -1;
  }
  return out;
}

struct BadSetCount {
  long long above = 0;  // members with corr(g, f) >= tau
  long long below = 0;  // members with corr(g, f) <= -tau
};

/// Size of the bad set {f in family : <g,f> >= tau} and its mirror. The
/// Cauchy-Schwarz bound s/(s tau^2 - 1) is only meaningful for
/// tau > s^{-1/2}; the counts themselves are well defined for any tau > 0,
/// so only the pairwise-correlation precondition |<f_i,f_j>| <= 1/s is
/// enforced here.
inline BadSetCount count_bad(const std::vector<SignFunction>& family, const QuerySpec& g,
                             double tau, const GaussianSupport& support) {
  const size_t s = family.size();
  if (s == 0) throw input_error("count_bad: empty family");
  if (!(tau > 0)) throw input_error("count_bad needs tau > 0");
  std::vector<std::vector<double>> fv;
  fv.reserve(s);
  for (const SignFunction& f : family) fv.push_back(eval_atoms(support, f));
  for (size_t i = 0; i < s; ++i) {
    for (size_t j = i + 1; j < s; ++j) {
      if (std::abs(correlation_values(support, fv[i], fv[j])) > 1.0 / static_cast<double>(s))
        throw input_error("count_bad: family violates the pairwise 1/s correlation bound");
    }
  }
  std::vector<double> gv = eval_atoms(support, g);
  BadSetCount out;
  for (size_t i = 0; i < s; ++i) {
    double c = correlation_values(support, fv[i], gv);
    if (c >= tau) ++out.above;
    if (c <= -tau) ++out.below;
  }
  return out;
}

/// Pairwise exactly-orthogonal +-1 family on a synthetic paired support:
/// rows of the Sylvester-Hadamard matrix over the base points, replicated
/// to both atoms of each pair. Used as the concrete high-SQ-dimension
/// object in the counting experiments.
struct OrthogonalFamily {
  GaussianSupport support;
  std::vector<SignFunction> funcs;
};

inline OrthogonalFamily make_orthogonal_family(int s, uint64_t seed) {
  if (s < 1) throw input_error("make_orthogonal_family needs s >= 1");
  int m = 1;
  while (m < s) m <<= 1;  // Hadamard order, power of two
  OrthogonalFamily fam;
  fam.support = make_gaussian_support(/*d=*/2, /*base_count=*/m, seed);
  for (int i = 0; i < s; ++i) {
    SignFunction f;
    f.v.resize(fam.support.atoms());
    for (int b = 0; b < m; ++b) {
      auto v = static_cast<int8_t>(__builtin_popcount(static_cast<unsigned>(i & b)) % 2 == 0
                                       ? 1
                                       : -1);
      f.v[2 * b] = v;
      f.v[2 * b + 1] = v;
    }
    fam.funcs.push_back(std::move(f));
  }
  return fam;
}

struct Transcript {
  size_t query_count = 0;
  std::vector<size_t> survivors;  // indices of family members never hit at tau
  bool f0_survives = false;
  double estimate = 0;
  bool estimate_consistent_with_f0 = false;
  bool estimate_consistent_with_survivor = false;
};

/// Run an SQ procedure against the always-zero adversarial oracle and
/// report which family members stay consistent with every logged answer.
/// The distance checks use the exact support facts: f0 is at distance 1/2
/// from every pair-constant reference, while each family member is within
/// 1/2 - eps/4 of a halfspace by the family's construction target.
inline Transcript adversary_run(
    const std::function<double(const std::function<double(const QuerySpec&)>&)>& algorithm,
    const std::vector<SignFunction>& family, const SignFunction& f0, double tau,
    const GaussianSupport& support, double eps = 0.04) {
  StatOracleConfig cfg;
  cfg.tau = tau;
  cfg.mode = OracleMode::ADVERSARIAL_ZERO;
  auto ask = [&](const QuerySpec& g) { return stat_query(cfg, support, f0, g); };

  Transcript tr;
  tr.estimate = algorithm(ask);
  tr.query_count = cfg.query_log.size();

  std::vector<std::vector<double>> logged;
  logged.reserve(cfg.query_log.size());
  for (const QuerySpec& g : cfg.query_log) logged.push_back(eval_atoms(support, g));

  auto survives = [&](const std::vector<double>& fv) {
    for (const auto& gv : logged) {
      if (std::abs(correlation_values(support, fv, gv)) >= tau) return false;
    }
    return true;
  };
  for (size_t i = 0; i < family.size(); ++i) {
    if (survives(eval_atoms(support, family[i]))) tr.survivors.push_back(i);
  }
  tr.f0_survives = survives(eval_atoms(support, f0));
  tr.estimate_consistent_with_f0 = tr.estimate >= 0.5 - eps / 100 - 1e-9;
  tr.estimate_consistent_with_survivor =
      !tr.survivors.empty() && tr.estimate <= 0.5 - eps / 4 + 1e-9;
  return tr;
}

/// Parameter plumbing of the deterministic lower bound: for a given
/// (gamma, d, eps), the derived family size, pairwise bound, alternation
/// count, and oracle tolerance, plus the chain check 2 rho^{k+1} <= 1/s.
struct SqLowerBoundParams {
  double s = 0;
  double rho = 0;
  double k = 0;
  double tau = 0;
  bool chain_ok = false;
};

inline SqLowerBoundParams sq_lower_bound_params(double gamma, int d, double eps) {
  if (!(gamma > 0 && gamma < 1) || d < 2 || !(eps > 0 && eps < 1))
    throw input_error("sq_lower_bound_params: bad parameters");
  SqLowerBoundParams p;
  p.s = std::pow(1.0 / eps, gamma * (d - 1) / 4.0);
  p.rho = std::pow(eps, d * eps);
  p.k = 1.0 / eps - 1.0;
  p.tau = std::pow(p.s, -1.0 / 3.0);
  // 2 rho^{k+1} = 2 eps^d must not exceed 1/s = eps^{gamma (d-1)/4}.
  double lhs = 2.0 * std::pow(p.rho, p.k + 1.0);
  double rhs = 1.0 / p.s;
  p.chain_ok = lhs <= rhs;
  return p;
}

}  // namespace halfgap
