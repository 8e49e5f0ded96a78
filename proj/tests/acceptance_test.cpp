// Acceptance suite: one test per criterion, each printing a pass/fail line.
// Everything here is pinned: tolerances, trial counts, and thresholds are
// fixed in code, and randomized parts run from fixed seeds.

#include <gtest/gtest.h>

#include <cmath>
#include <iostream>

#include "halfgap/bench.hpp"
#include "halfgap/estimator.hpp"
#include "halfgap/exact_distance.hpp"
#include "halfgap/ksum.hpp"
#include "halfgap/reduction.hpp"
#include "halfgap/rng.hpp"
#include "halfgap/sq_core.hpp"
#include "halfgap/sq_family.hpp"
#include "halfgap/sq_packing.hpp"

namespace halfgap {
namespace {

void criterion_line(int k, bool pass, const std::string& detail) {
  std::cout << "[criterion " << k << "] " << (pass ? "PASS" : "FAIL") << " - " << detail
            << std::endl;
}

// ---------------------------------------------------------------------------
// Shared reduction suites (computed once, used by criteria 1, 2 and 6).

struct InstanceOutcome {
  int d = 0;
  int n = 0;
  Rat exact;
  GapReport::Side side = GapReport::Side::NO;
  bool brute_yes = false;
  bool decide_exact_yes = false;
  bool coord_ok = false;
  bool eps_ok = false;
  double exponent = 0;  // log(max coord bound) / log(1/eps)
};

InstanceOutcome evaluate_instance(const KSumInstance& inst) {
  ReducedInstance red = build_reduction(inst);
  InstanceOutcome out;
  out.d = red.d;
  out.n = red.n;
  out.exact = exact_distance(red.dataset).distance;  // one exact solve per instance
  if (out.exact <= red.yes_bound) {
    out.side = GapReport::Side::YES;
  } else if (out.exact >= red.no_bound) {
    out.side = GapReport::Side::NO;
  } else {
    throw invariant_violation("gap dichotomy violated in acceptance suite");
  }
  out.brute_yes = solve_brute(inst).has_value();
  out.decide_exact_yes = out.exact <= red.threshold;
  out.coord_ok = red.max_abs_coord() <= red.coord_bound;
  out.eps_ok = red.eps < Rat(1, Int(2) * Int(static_cast<long long>(red.support_size())));
  out.exponent = std::log(red.coord_bound.to_double()) / std::log(1.0 / red.eps.to_double());
  return out;
}

struct ReductionSuites {
  std::vector<InstanceOutcome> exhaustive;
  std::vector<KSumInstance> random_instances;
  std::vector<InstanceOutcome> random_outcomes;
  bool dichotomy_violated = false;
};

const ReductionSuites& reduction_suites() {
  static const ReductionSuites suites = [] {
    ReductionSuites s;
    // Exhaustive d=2 grid: every choice of three n-subsets of [-3, 3].
    std::vector<Int> alphabet;
    for (long long v = -3; v <= 3; ++v) alphabet.emplace_back(v);
    for (int n = 1; n <= 3; ++n) {
      std::vector<std::vector<Int>> subsets;
      std::vector<int> idx(n);
      for (int i = 0; i < n; ++i) idx[i] = i;
      while (true) {
        std::vector<Int> sub;
        for (int i : idx) sub.push_back(alphabet[i]);
        subsets.push_back(std::move(sub));
        int pos = n - 1;
        while (pos >= 0 && idx[pos] == 7 - n + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
      }
      for (const auto& l1 : subsets) {
        for (const auto& l2 : subsets) {
          for (const auto& l3 : subsets) {
            KSumInstance inst;
            inst.k = 3;
            inst.n = n;
            inst.lists = {l1, l2, l3};
            try {
              s.exhaustive.push_back(evaluate_instance(inst));
            } catch (const invariant_violation&) {
              s.dichotomy_violated = true;
            }
          }
        }
      }
    }
    // 500 random planted / non-planted instances, d in {2,3}, n <= 3.
    Rng rng(20260810);
    for (int t = 0; t < 500; ++t) {
      int d = 2 + static_cast<int>(rng.below(2));
      int n = 1 + static_cast<int>(rng.below(3));
      bool planted = rng.coin();
      KSumInstance inst = gen_instance(n, d + 1, planted, rng.next_u64());
      try {
        s.random_instances.push_back(inst);
        s.random_outcomes.push_back(evaluate_instance(inst));
      } catch (const invariant_violation&) {
        s.dichotomy_violated = true;
      }
    }
    return s;
  }();
  return suites;
}

TEST(Acceptance, Criterion1_ReductionGapExactness) {
  const ReductionSuites& s = reduction_suites();
  size_t yes = 0, no = 0;
  bool sides_match_bounds = true;
  for (const auto& suite : {s.exhaustive, s.random_outcomes}) {
    for (const InstanceOutcome& o : suite) {
      (o.side == GapReport::Side::YES ? yes : no)++;
      // Side semantics re-checked against the brute-force ground truth:
      // YES instances must sit at or below the YES bound, NO at or above.
      if (o.brute_yes != (o.side == GapReport::Side::YES)) sides_match_bounds = false;
    }
  }
  bool pass = !s.dichotomy_violated && sides_match_bounds &&
              s.exhaustive.size() == 343u + 9261u + 42875u && s.random_outcomes.size() == 500u;
  criterion_line(1, pass,
                 "gap dichotomy exact on " + std::to_string(s.exhaustive.size()) +
                     " exhaustive + " + std::to_string(s.random_outcomes.size()) +
                     " random instances (" + std::to_string(yes) + " YES / " +
                     std::to_string(no) + " NO, zero in-between)");
  EXPECT_FALSE(s.dichotomy_violated);
  EXPECT_TRUE(sides_match_bounds);
  EXPECT_EQ(s.exhaustive.size(), 343u + 9261u + 42875u);
  EXPECT_EQ(s.random_outcomes.size(), 500u);
}

TEST(Acceptance, Criterion2_EndToEndHardnessEquivalence) {
  const ReductionSuites& s = reduction_suites();
  size_t mismatches = 0, total = 0;
  for (const auto& suite : {s.exhaustive, s.random_outcomes}) {
    for (const InstanceOutcome& o : suite) {
      ++total;
      if (o.decide_exact_yes != o.brute_yes) ++mismatches;
    }
  }

  // Sampled solver: 50 instances spanning (d, n), 30 seeded trials each,
  // per-instance agreement with brute force at least 2/3.
  size_t weak_instances = 0;
  int measured = 0;
  Rng rng(77001);
  for (int i = 0; i < 50; ++i) {
    int d = 2 + i % 2;
    int n = 1 + (i / 2) % 3;
    KSumInstance inst = gen_instance(n, d + 1, i % 4 < 2, 99000 + i);
    ReducedInstance red = build_reduction(inst);
    bool truth = solve_brute(inst).has_value();
    int agree = 0;
    for (int trial = 0; trial < 30; ++trial) {
      auto solver = estimate_solver(Rat(1, 3), rng.next_u64());
      if ((decide_via_distance(red, solver) == Decision::YES) == truth) ++agree;
    }
    ++measured;
    if (agree * 3 < 2 * 30) ++weak_instances;
  }

  bool pass = mismatches == 0 && weak_instances == 0 && measured == 50;
  criterion_line(2, pass,
                 "exact-oracle decisions match brute force on " + std::to_string(total) +
                     "/" + std::to_string(total) + " instances; sampled solver reached >= 2/3 " +
                     "agreement on " + std::to_string(measured - weak_instances) + "/" +
                     std::to_string(measured) + " instances");
  EXPECT_EQ(mismatches, 0u);
  EXPECT_EQ(weak_instances, 0u);
}

// ---------------------------------------------------------------------------

LabeledDataset planted_noisy(Rng& rng, size_t d, size_t n, int flips, long long coord,
                             bool uniform) {
  Halfspace target;
  for (size_t j = 0; j < d; ++j) target.w.emplace_back(rng.range_i64(-4, 4));
  target.theta = Int(rng.range_i64(-6, 6));
  std::vector<Point> points;
  std::vector<uint8_t> labels;
  for (size_t i = 0; i < n; ++i) {
    Point p;
    for (size_t j = 0; j < d; ++j) p.coords.emplace_back(rng.range_i64(-coord, coord));
    labels.push_back(static_cast<uint8_t>(eval_halfspace(target, p)));
    points.push_back(std::move(p));
  }
  for (int f = 0; f < flips; ++f) {
    size_t i = rng.below(n);
    labels[i] = static_cast<uint8_t>(1 - labels[i]);
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) labels[i] = labels[j];
    }
  }
  if (uniform) return make_uniform_dataset(d, std::move(points), std::move(labels));
  std::vector<Int> counts;
  for (size_t i = 0; i < n; ++i) counts.emplace_back(rng.range_i64(1, 4));
  return make_dataset(d, std::move(points), std::move(labels), normalize_weights(counts));
}

bool cross_validate(const LabeledDataset& ds) {
  DistanceReport sep = exact_distance_sep(ds);
  DistanceReport cand = exact_distance_cand(ds);
  bool ok = sep.distance == cand.distance;
  ok = ok && disagreement(ds, sep.witness) == sep.distance;
  ok = ok && disagreement(ds, cand.witness) == cand.distance;
  if (ds.d == 1) {
    DistanceReport fast = exact_distance_1d(ds);
    ok = ok && fast.distance == sep.distance && disagreement(ds, fast.witness) == fast.distance;
  }
  if (ds.d == 2) {
    DistanceReport fast = exact_distance_2d(ds);
    ok = ok && fast.distance == sep.distance && disagreement(ds, fast.witness) == fast.distance;
  }
  return ok;
}

TEST(Acceptance, Criterion3_OracleCrossValidation) {
  Rng rng(31415926);
  size_t failures = 0, total = 0;

  // 1000 random datasets, d <= 3, n <= 14.
  for (int t = 0; t < 1000; ++t) {
    size_t d = 1 + rng.below(3);
    LabeledDataset ds;
    if (t % 5 < 3) {
      ds = planted_noisy(rng, d, 4 + rng.below(11), static_cast<int>(rng.below(4)), 9,
                         t % 2 == 0);
    } else if (t % 5 == 3) {
      // fully random labels on a small set
      ds = planted_noisy(rng, d, 2 + rng.below(9), 12, 8, true);
    } else {
      // tiny alphabet: heavy on duplicates and collinear structure
      ds = planted_noisy(rng, d, 3 + rng.below(10), static_cast<int>(rng.below(5)), 2, true);
    }
    ++total;
    if (!cross_validate(ds)) ++failures;
  }

  // Degenerate suite: the vertical stacks the reduction produces.
  for (int t = 0; t < 30; ++t) {
    int d = 2 + t % 2;
    int n = 1 + t % 2;  // |S| = 2(d+1)n <= 16 stays under the sep cap
    KSumInstance inst = gen_instance(n, d + 1, t % 3 == 0, 5500 + t);
    ++total;
    if (!cross_validate(build_reduction(inst).dataset)) ++failures;
  }
  // Collinear stacks.
  for (int t = 0; t < 40; ++t) {
    size_t n = 3 + rng.below(9);
    long long dx = rng.range_i64(-3, 3), dy = rng.range_i64(-3, 3);
    if (dx == 0 && dy == 0) dx = 1;
    long long x0 = rng.range_i64(-4, 4), y0 = rng.range_i64(-4, 4);
    std::vector<Point> points;
    std::vector<uint8_t> labels;
    for (size_t i = 0; i < n; ++i) {
      points.push_back(Point({x0 + static_cast<long long>(i) * dx,
                              y0 + static_cast<long long>(i) * dy}));
      labels.push_back(static_cast<uint8_t>(rng.coin()));
    }
    ++total;
    if (!cross_validate(make_uniform_dataset(2, std::move(points), std::move(labels))))
      ++failures;
  }
  // Repeated coordinates.
  for (int t = 0; t < 30; ++t) {
    size_t n = 4 + rng.below(9);
    std::vector<Point> points;
    std::vector<uint8_t> labels;
    for (size_t i = 0; i < n; ++i) {
      points.push_back(Point({rng.range_i64(-1, 1), rng.range_i64(-1, 1), rng.range_i64(0, 1)}));
      labels.push_back(static_cast<uint8_t>(rng.coin()));
    }
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < i; ++j) {
        if (points[i] == points[j]) labels[i] = labels[j];
      }
    }
    ++total;
    if (!cross_validate(make_uniform_dataset(3, std::move(points), std::move(labels))))
      ++failures;
  }

  bool pass = failures == 0;
  criterion_line(3, pass,
                 "candidate, separability and fast-path oracles agree exactly on " +
                     std::to_string(total - failures) + "/" + std::to_string(total) +
                     " datasets (1000 random + degenerate suite)");
  EXPECT_EQ(failures, 0u);
}

TEST(Acceptance, Criterion4_KSumSolverEquivalence) {
  Rng rng(271828);
  size_t mismatches = 0, bad_witnesses = 0;
  for (int t = 0; t < 500; ++t) {
    int k = 3 + t % 3;
    int n = k == 5 ? 3 + static_cast<int>(rng.below(14)) : 3 + static_cast<int>(rng.below(38));
    KSumInstance inst = gen_instance(n, k, rng.coin(), rng.next_u64());
    auto bw = solve_brute(inst);
    auto mw = solve_mitm(inst);
    if (bw.has_value() != mw.has_value()) ++mismatches;
    if (bw && !bw->satisfies()) ++bad_witnesses;
    if (mw && !mw->satisfies()) ++bad_witnesses;
  }
  bool pass = mismatches == 0 && bad_witnesses == 0;
  criterion_line(4, pass,
                 "meet-in-the-middle matches brute force on 500 instances (k in {3,4,5}, "
                 "n <= 40); every witness satisfies its equation exactly");
  EXPECT_EQ(mismatches, 0u);
  EXPECT_EQ(bad_witnesses, 0u);
}

TEST(Acceptance, Criterion5_EstimatorCalibration) {
  LabeledDataset xorset = make_uniform_dataset(
      2, {Point({0, 0}), Point({1, 1}), Point({0, 1}), Point({1, 0})}, {1, 1, 0, 0});
  Rat truth = exact_distance_sep(xorset).distance;  // criterion 3's reference oracle
  ASSERT_EQ(truth, Rat(1, 4));

  const Rat eps(1, 10), delta(1, 10);
  int failures = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    SampleAccess acc = make_dataset_access(xorset, 42000 + static_cast<uint64_t>(t));
    Rat est = approx_distance(acc, 2, eps, delta).value;
    if ((est - truth).abs() > eps) ++failures;
  }
  double rate = static_cast<double>(failures) / trials;
  bool pass = rate <= 0.15;
  criterion_line(5, pass,
                 "estimator failure fraction " + std::to_string(rate) + " over 200 trials at "
                 "eps = delta = 0.1 (limit 0.15; true distance 1/4)");
  EXPECT_LE(rate, 0.15);
}

TEST(Acceptance, Criterion6_CoordinateBound) {
  const ReductionSuites& s = reduction_suites();
  size_t coord_bad = 0, eps_bad = 0;
  double max_exponent = 0;
  for (const InstanceOutcome& o : s.random_outcomes) {
    if (!o.coord_ok) ++coord_bad;
    if (!o.eps_ok) ++eps_bad;
    max_exponent = std::max(max_exponent, o.exponent);
  }
  bool pass = coord_bad == 0 && eps_bad == 0 && !s.random_outcomes.empty();
  criterion_line(6, pass,
                 "all " + std::to_string(s.random_outcomes.size()) +
                     " generated instances keep |coordinates| <= 4d n^{2(d+1)} + d + 1 and "
                     "eps < 1/(2|S|); max observed exponent of (1/eps) is " +
                     std::to_string(max_exponent));
  EXPECT_EQ(coord_bad, 0u);
  EXPECT_EQ(eps_bad, 0u);
}

TEST(Acceptance, Criterion7_SqExactInvariants) {
  bool f0_ok = true;
  // f0 invariants on supports of 10^3 and 10^4 base points, <= 20 queries.
  for (int m : {1000, 10000}) {
    const double tau = 0.06;
    GaussianSupport s = make_gaussian_support(3, m, 1300 + m);
    Rng rng(1700 + m);
    std::vector<QuerySpec> queries, refs;
    for (int i = 0; i < 20; ++i) {
      if (i % 4 == 3) {
        queries.push_back(make_projection_profile(random_unit_vector(rng, 3),
                                                  1 + static_cast<int>(rng.below(5))));
      } else {
        std::vector<double> w(3);
        for (double& x : w) x = rng.normal();
        queries.push_back(make_halfspace_query(std::move(w), rng.normal()));
      }
    }
    for (int i = 0; i < 8; ++i) {
      std::vector<double> w(3);
      for (double& x : w) x = rng.normal();
      refs.push_back(make_halfspace_query(std::move(w), rng.normal()));
    }
    F0Result r = build_f0(s, queries, refs, tau);
    for (const QuerySpec& ref : refs) f0_ok = f0_ok && correlation(s, r.f0, ref) == 0.0;
    for (const QuerySpec& g : queries) {
      std::vector<double> rounded = eval_atoms(s, g);
      for (double& v : rounded) v = round_toward_zero(v, tau / 2);
      f0_ok = f0_ok && correlation_values(s, eval_atoms(s, r.f0), rounded) == 0.0;
      f0_ok = f0_ok && std::abs(correlation(s, r.f0, g)) <= tau / 2;
    }
  }

  // Rounding oracle properties on 10^4 fuzz cases.
  bool rounding_ok = true;
  Rng rng(606060);
  for (int t = 0; t < 10000; ++t) {
    double x = 2.0 * rng.uniform() - 1.0;
    double tau = 1e-3 + rng.uniform() * 0.4;
    double r = round_toward_zero(x, tau);
    double ratio = r / tau;
    rounding_ok = rounding_ok && std::abs(ratio - std::round(ratio)) <= 1e-9;
    rounding_ok = rounding_ok && std::abs(r - x) <= tau + 1e-15;
    rounding_ok = rounding_ok && ((r == 0.0) == (std::abs(x) < tau));
  }

  // Counting bound on explicit orthogonal families, 10^3 random queries.
  bool counting_ok = true;
  for (int s_size : {27, 64}) {
    OrthogonalFamily fam = make_orthogonal_family(s_size, 4242 + s_size);
    double tau = std::pow(static_cast<double>(s_size), -1.0 / 3.0);
    auto bound = static_cast<long long>(std::floor(s_size / (s_size * tau * tau - 1.0)));
    for (int q = 0; q < 500; ++q) {
      std::vector<double> values(fam.support.atoms());
      for (size_t b = 0; b < static_cast<size_t>(fam.support.base_count); ++b) {
        double v = 2.0 * rng.uniform() - 1.0;
        values[2 * b] = values[2 * b + 1] = v;
      }
      BadSetCount c = count_bad(fam.funcs, make_table_query(values), tau, fam.support);
      counting_ok = counting_ok && c.above <= bound && c.below <= bound;
    }
  }

  bool pass = f0_ok && rounding_ok && counting_ok;
  criterion_line(7, pass,
                 std::string("f0 exact zeros and tau/2 bounds held (M in {1e3,1e4}); ") +
                     "rounding-oracle fuzz 10^4 cases ok; bad-set counts stayed under "
                     "floor(s/(s tau^2 - 1)) for 10^3 random queries");
  EXPECT_TRUE(f0_ok);
  EXPECT_TRUE(rounding_ok);
  EXPECT_TRUE(counting_ok);
}

TEST(Acceptance, Criterion8_PackingAndAngleLaw) {
  // (d=3, m=3, threshold 0.502): expected to succeed essentially always.
  int ok3 = 0;
  bool postcheck_ok = true;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    PackingOutcome out = try_sample_packing(3, 3, 0.502, 50, 81000 + seed);
    if (out.ok) {
      ++ok3;
      postcheck_ok = postcheck_ok && max_abs_pairwise_dot(out.vectors) <= 0.502;
    }
  }
  bool pass3 = ok3 >= 95;

  // (d=2, m=4, threshold 0.3): four unit vectors in the plane define four
  // lines inside a half-turn, so some pair of lines sits within pi/4 and
  // has |<u,v>| >= cos(pi/4) ~ 0.707 > 0.3. No sample can ever pass; the
  // criterion is checked as stated and reports an honest failure.
  int ok2 = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    PackingOutcome out = try_sample_packing(2, 4, 0.3, 50, 82000 + seed);
    if (out.ok) ++ok2;
  }
  bool pass2 = ok2 >= 95;

  AngleLawReport rep = angle_law_report(3, 50, 1000, 9100);
  double ks = std::max(rep.ks_min, rep.ks_max);
  if (ks > 0.1) {
    std::cout << "[criterion 8] note - angle-law KS " << ks
              << " above the 0.1 soft threshold (hard limit 0.2)" << std::endl;
  }
  bool pass_angle = ks <= 0.2;

  bool pass = pass3 && pass2 && postcheck_ok && pass_angle;
  criterion_line(8, pass,
                 "packing (d=3,m=3,0.502): " + std::to_string(ok3) +
                     "/100 seeds ok; packing (d=2,m=4,0.3): " + std::to_string(ok2) +
                     "/100 seeds ok (infeasible by the pigeonhole argument above); angle-law "
                     "KS " + std::to_string(ks) + " vs fitted K = " +
                     std::to_string(rep.k_min_fit));
  EXPECT_GE(ok3, 95);
  EXPECT_TRUE(postcheck_ok);
  EXPECT_GE(ok2, 95) << "four plane vectors cannot be pairwise |dot| <= 0.3; "
                        "kept as stated and expected to fail";
  EXPECT_LE(ks, 0.2);
}

TEST(Acceptance, Criterion9_AsymptoticStatementsCoveredByProxies) {
  // The conditional (1/eps)^{ceil((d+1)/2)-gamma} time bound and the
  // (1/eps)^{Omega(d)} SQ query bound quantify over all algorithms and
  // cannot be executed. Their finite-scale proxies run here: the adversary
  // leaves survivors below the query budget, and the solver scaling slope
  // is reported against its loose window.
  OrthogonalFamily fam = make_orthogonal_family(64, 33);
  double tau = 0.25;  // 64^{-1/3}
  SignFunction f0 = build_f0(fam.support, {}, {}, tau).f0;
  auto algo = [&](const std::function<double(const QuerySpec&)>& ask) {
    ask(make_table_query(eval_atoms(fam.support, fam.funcs[0])));  // 1 < (s^{1/3}-1)/2
    return 0.5;
  };
  Transcript tr = adversary_run(algo, fam.funcs, f0, tau, fam.support);
  bool survivors_ok = !tr.survivors.empty() && tr.f0_survives;

  BenchOutput mitm = bench_mitm({256, 512, 1024, 2048}, 4, 54321);
  bool slope_ok = mitm.fit.defined && mitm.fit.slope >= 1.5 && mitm.fit.slope <= 2.5;

  bool pass = survivors_ok && slope_ok;
  criterion_line(9, pass,
                 "asymptotic lower bounds are statements about all algorithms and are not "
                 "directly runnable; proxies: dichotomy (criterion 1), counting bound "
                 "(criterion 7), adversary survivors " + std::to_string(tr.survivors.size()) +
                     "/64 after 1 query, mitm slope " + std::to_string(mitm.fit.slope) +
                     " in [1.5, 2.5]");
  EXPECT_TRUE(survivors_ok);
  EXPECT_TRUE(slope_ok) << "measured slope " << mitm.fit.slope;
}

}  // namespace
}  // namespace halfgap
