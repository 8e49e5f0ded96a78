#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "halfgap/bench.hpp"
#include "halfgap/estimator.hpp"
#include "halfgap/serialize.hpp"
#include "halfgap/sq_family.hpp"
#include "halfgap/sq_packing.hpp"

namespace halfgap::cli {

namespace detail {

inline void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(out_path);
    if (!f) throw input_error("cannot write " + out_path);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }
}

inline void emit_json(const std::string& out_path, const json& j) { emit(out_path, j.dump(2)); }

struct CsvRow {
  long long trial;
  double value;
  double bound;
  bool pass;
};

inline void emit_csv_rows(const std::string& out_path, const std::vector<CsvRow>& rows) {
  std::ostringstream os;
  os << "trial,value,bound,pass\n";
  os.precision(12);
  for (const CsvRow& r : rows)
    os << r.trial << ',' << r.value << ',' << r.bound << ',' << (r.pass ? 1 : 0) << "\n";
  emit(out_path, os.str());
}

inline std::vector<int> parse_grid(const std::string& grid_arg) {
  std::vector<int> grid;
  std::stringstream ss(grid_arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    grid.push_back(std::stoi(item));
  }
  if (grid.empty()) throw input_error("empty --grid");
  return grid;
}

inline Rat prob_from_double(double x) {
  if (!(x > 0.0 && x < 1.0)) throw input_error("probability parameters must lie in (0,1)");
  return Rat(Int(static_cast<long long>(x * 1000000 + 0.5)), Int(1000000));
}

}  // namespace detail

inline int run(int argc, const char* const* argv) {
  CLI::App app{"halfgap: exact and sampled distance to halfspaces over the integer grid"};
  app.require_subcommand(1);
  app.fallthrough();

  uint64_t seed = 0;
  std::string out_path;
  std::string format = "json";
  app.add_option("--seed", seed, "64-bit seed for every random choice");
  app.add_option("--out", out_path, "output file (stdout when omitted)");
  app.add_option("--format", format, "json|csv where both make sense")
      ->check(CLI::IsMember({"json", "csv"}));

  // gen-ksum
  auto* gen = app.add_subcommand("gen-ksum", "generate a k-SUM instance");
  int gen_n = 8, gen_k = 3;
  bool gen_planted = false;
  gen->add_option("--n", gen_n, "list length")->required();
  gen->add_option("--k", gen_k, "number of lists")->required();
  gen->add_flag("--planted", gen_planted, "plant a solution");
  gen->callback(
      [&] { detail::emit_json(out_path, to_json(gen_instance(gen_n, gen_k, gen_planted, seed))); });

  // solve-ksum
  auto* solve = app.add_subcommand("solve-ksum", "solve a k-SUM instance file");
  std::string solve_file, solve_method = "mitm";
  solve->add_option("--ksum", solve_file, "instance JSON")->required();
  solve->add_option("--method", solve_method, "brute|mitm")
      ->check(CLI::IsMember({"brute", "mitm"}));
  solve->callback([&] {
    KSumInstance inst = ksum_from_json(load_json_file(solve_file));
    auto w = solve_method == "brute" ? solve_brute(inst) : solve_mitm(inst);
    json j{{"method", solve_method}, {"has_witness", w.has_value()}};
    if (w) j["witness"] = to_json(*w);
    detail::emit_json(out_path, j);
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "map a (d+1)-SUM instance to a labeled dataset");
  std::string reduce_file;
  reduce->add_option("--ksum", reduce_file, "instance JSON")->required();
  reduce->callback([&] {
    KSumInstance inst = ksum_from_json(load_json_file(reduce_file));
    detail::emit_json(out_path, to_json(build_reduction(inst)));
  });

  // verify-gap
  auto* vgap = app.add_subcommand("verify-gap", "exact distance of a reduced instance vs the gap");
  std::string vgap_ksum, vgap_reduced;
  vgap->add_option("--ksum", vgap_ksum, "instance JSON (reduced on the fly)");
  vgap->add_option("--reduced", vgap_reduced, "reduced-instance JSON");
  vgap->callback([&] {
    if (vgap_ksum.empty() == vgap_reduced.empty())
      throw input_error("verify-gap needs exactly one of --ksum / --reduced");
    ReducedInstance red = vgap_ksum.empty()
                              ? reduced_from_json(load_json_file(vgap_reduced))
                              : build_reduction(ksum_from_json(load_json_file(vgap_ksum)));
    GapReport rep = verify_gap(red);
    json j{{"exact", to_json(rep.exact)},
           {"side", rep.side == GapReport::Side::YES ? "YES" : "NO"},
           {"yes_bound", to_json(rep.yes_bound)},
           {"no_bound", to_json(rep.no_bound)}};
    detail::emit_json(out_path, j);
    std::cerr << "exact " << rep.exact.to_string() << ", "
              << (rep.side == GapReport::Side::YES ? "YES" : "NO") << " side\n";
  });

  // decide
  auto* decide = app.add_subcommand("decide", "decide k-SUM through the distance reduction");
  std::string decide_file, decide_solver = "exact";
  double decide_delta = 1.0 / 3.0;
  decide->add_option("--ksum", decide_file, "instance JSON")->required();
  decide->add_option("--solver", decide_solver, "exact|estimate")
      ->check(CLI::IsMember({"exact", "estimate"}));
  decide->add_option("--delta", decide_delta, "failure probability for the estimate solver");
  decide->callback([&] {
    KSumInstance inst = ksum_from_json(load_json_file(decide_file));
    ReducedInstance red = build_reduction(inst);
    auto solver = decide_solver == "exact"
                      ? exact_solver()
                      : estimate_solver(detail::prob_from_double(decide_delta), seed);
    Decision dec = decide_via_distance(red, solver);
    detail::emit(out_path, dec == Decision::YES ? "YES" : "NO");
  });

  // dist-exact
  auto* dexact = app.add_subcommand("dist-exact", "exact distance of a dataset to the halfspaces");
  std::string dexact_file, dexact_method = "auto";
  dexact->add_option("--dataset", dexact_file, "dataset JSON")->required();
  dexact->add_option("--method", dexact_method, "auto|sep|cand|1d|2d")
      ->check(CLI::IsMember({"auto", "sep", "cand", "1d", "2d"}));
  dexact->callback([&] {
    LabeledDataset ds = dataset_from_json(load_json_file(dexact_file));
    ds.reject_conflicting_duplicates();
    DistanceReport rep;
    if (dexact_method == "sep") {
      rep = exact_distance_sep(ds);
    } else if (dexact_method == "cand") {
      rep = exact_distance_cand(ds);
    } else if (dexact_method == "1d") {
      rep = exact_distance_1d(ds);
    } else if (dexact_method == "2d") {
      rep = exact_distance_2d(ds);
    } else {
      rep = exact_distance(ds);
    }
    detail::emit_json(out_path, to_json(rep));
  });

  // dist-est
  auto* dest = app.add_subcommand("dist-est", "sampled distance estimate of a dataset");
  std::string dest_file;
  double dest_eps = 0.1, dest_delta = 1.0 / 3.0;
  dest->add_option("--dataset", dest_file, "dataset JSON defining (D, f)")->required();
  dest->add_option("--eps", dest_eps, "additive error")->required();
  dest->add_option("--delta", dest_delta, "failure probability");
  dest->callback([&] {
    LabeledDataset ds = dataset_from_json(load_json_file(dest_file));
    SampleAccess acc = make_dataset_access(ds, seed);
    Estimate est = approx_distance(acc, static_cast<int>(ds.d),
                                   detail::prob_from_double(dest_eps),
                                   detail::prob_from_double(dest_delta));
    if (format == "csv") {
      detail::emit(out_path, "estimate,samples\n" + est.value.to_string() + "," +
                                 std::to_string(est.samples));
    } else {
      detail::emit_json(out_path,
                        json{{"estimate", to_json(est.value)}, {"samples", est.samples}});
    }
  });

  // bench
  auto* bench = app.add_subcommand("bench", "wall-clock scaling with a fitted log-log slope");
  std::string bench_task = "mitm", bench_grid = "256,512,1024,2048", bench_svg;
  int bench_k = 4, bench_d = 2;
  bench->add_option("--task", bench_task, "mitm|exact_cand|reduction_e2e")
      ->check(CLI::IsMember({"mitm", "exact_cand", "reduction_e2e"}));
  bench->add_option("--grid", bench_grid, "comma-separated n values");
  bench->add_option("--k", bench_k, "k for the mitm task");
  bench->add_option("--d", bench_d, "d for the reduction task");
  bench->add_option("--svg", bench_svg, "write a log-log SVG chart here");
  bench->callback([&] {
    std::vector<int> grid = detail::parse_grid(bench_grid);
    BenchOutput res;
    if (bench_task == "mitm") {
      res = bench_mitm(grid, bench_k, seed);
    } else if (bench_task == "exact_cand") {
      res = bench_exact_cand(grid, seed);
    } else {
      res = bench_reduction_e2e(grid, bench_d, seed);
    }
    if (!out_path.empty()) {
      write_bench_csv(out_path, res.records);
    } else {
      for (const BenchRecord& r : res.records)
        std::cout << r.command << " n=" << r.parameters.at("n") << " " << r.wall_time_ns << "ns "
                  << r.result << "\n";
    }
    if (!bench_svg.empty()) {
      std::vector<std::pair<double, double>> pts;
      for (const BenchRecord& r : res.records)
        pts.emplace_back(std::stod(r.parameters.at("n")),
                         std::max<double>(1.0, static_cast<double>(r.wall_time_ns)));
      write_scaling_svg(bench_svg, pts, bench_task);
    }
    if (res.fit.defined) {
      std::cerr << "slope " << res.fit.slope << " (max log-residual " << res.fit.max_residual
                << ")\n";
    } else {
      std::cerr << "slope undefined (need at least two grid points)\n";
    }
  });

  // sq-pack
  auto* pack = app.add_subcommand("sq-pack", "sample a low-correlation packing on the sphere");
  int pack_d = 3, pack_m = 3, pack_retries = 50;
  double pack_threshold = 0.5;
  pack->add_option("--d", pack_d, "sphere dimension d (vectors on S^{d-1})")->required();
  pack->add_option("--m", pack_m, "number of vectors")->required();
  pack->add_option("--threshold", pack_threshold, "max |<u,v>| allowed")->required();
  pack->add_option("--retries", pack_retries, "resampling budget");
  pack->callback([&] {
    PackingOutcome res = try_sample_packing(pack_d, pack_m, pack_threshold, pack_retries, seed);
    detail::emit_csv_rows(out_path, {{0, res.best_max_abs_dot, pack_threshold, res.ok}});
    std::cerr << (res.ok ? "packed" : "exhausted") << " after " << res.retries_used
              << " retries; best max |<u,v>| " << res.best_max_abs_dot << "\n";
  });

  // sq-f0
  auto* f0cmd = app.add_subcommand("sq-f0", "pseudorandom function against a random query set");
  int f0_d = 3, f0_m = 1000, f0_queries = 10, f0_refs = 5;
  double f0_tau = 0.05;
  f0cmd->add_option("--d", f0_d, "ambient dimension");
  f0cmd->add_option("--support", f0_m, "base points in the Gaussian surrogate");
  f0cmd->add_option("--queries", f0_queries, "number of registered queries");
  f0cmd->add_option("--refs", f0_refs, "number of reference halfspaces");
  f0cmd->add_option("--tau", f0_tau, "oracle tolerance")->required();
  f0cmd->callback([&] {
    GaussianSupport s = make_gaussian_support(f0_d, f0_m, seed);
    Rng rng(seed ^ 0x5151515151515151ULL);
    std::vector<QuerySpec> queries, refs;
    for (int i = 0; i < f0_queries; ++i) {
      if (i % 3 == 2) {
        queries.push_back(make_projection_profile(random_unit_vector(rng, f0_d),
                                                  1 + static_cast<int>(rng.below(4))));
      } else {
        std::vector<double> w(f0_d);
        for (double& x : w) x = rng.normal();
        queries.push_back(make_halfspace_query(std::move(w), rng.normal()));
      }
    }
    for (int i = 0; i < f0_refs; ++i) {
      std::vector<double> w(f0_d);
      for (double& x : w) x = rng.normal();
      refs.push_back(make_halfspace_query(std::move(w), rng.normal()));
    }
    F0Result r = build_f0(s, queries, refs, f0_tau);
    std::vector<detail::CsvRow> rows;
    long long trial = 0;
    for (const QuerySpec& g : queries) {
      double c = std::abs(correlation(s, r.f0, g));
      rows.push_back({trial++, c, f0_tau / 2, c <= f0_tau / 2});
    }
    for (const QuerySpec& ref : refs) {
      double c = std::abs(correlation(s, r.f0, ref));
      rows.push_back({trial++, c, 0.0, c == 0.0});
    }
    detail::emit_csv_rows(out_path, rows);
    std::cerr << "color classes: " << r.color_classes << "\n";
  });

  // sq-adversary
  auto* adv = app.add_subcommand("sq-adversary", "survivor counts against the zero oracle");
  int adv_s = 27, adv_q = 2;
  adv->add_option("--s", adv_s, "family size (pairwise orthogonal)");
  adv->add_option("--queries", adv_q, "member-table queries the algorithm issues");
  adv->callback([&] {
    OrthogonalFamily fam = make_orthogonal_family(adv_s, seed);
    double tau = std::pow(static_cast<double>(adv_s), -1.0 / 3.0);
    SignFunction f0 = build_f0(fam.support, {}, {}, tau).f0;
    std::vector<detail::CsvRow> rows;
    for (int q = 0; q <= adv_q; ++q) {
      auto algo = [&](const std::function<double(const QuerySpec&)>& ask) {
        for (int i = 0; i < q; ++i)
          ask(make_table_query(eval_atoms(fam.support, fam.funcs[i % fam.funcs.size()])));
        return 0.5;
      };
      Transcript tr = adversary_run(algo, fam.funcs, f0, tau, fam.support);
      double cbrt_s = std::pow(static_cast<double>(adv_s), 1.0 / 3.0);
      double lower = cbrt_s > 1.0 ? std::max(0.0, adv_s - q * 2.0 * adv_s / (cbrt_s - 1.0)) : 0.0;
      rows.push_back({q, static_cast<double>(tr.survivors.size()), lower,
                      static_cast<double>(tr.survivors.size()) >= lower && tr.f0_survives});
    }
    detail::emit_csv_rows(out_path, rows);
  });

  // sq-angles
  auto* angles = app.add_subcommand("sq-angles", "extreme-angle law of random unit vectors");
  int ang_d = 3, ang_n = 50, ang_trials = 1000;
  angles->add_option("--d", ang_d, "sphere dimension");
  angles->add_option("--n", ang_n, "vectors per trial");
  angles->add_option("--trials", ang_trials, "number of trials");
  angles->callback([&] {
    AngleLawReport rep = angle_law_report(ang_d, ang_n, ang_trials, seed);
    std::vector<detail::CsvRow> rows;
    bool pass = rep.ks_min <= 0.2;
    for (size_t i = 0; i < rep.scaled_min_samples.size(); ++i)
      rows.push_back({static_cast<long long>(i), rep.scaled_min_samples[i], 0.2, pass});
    detail::emit_csv_rows(out_path, rows);
    std::cerr << "fitted K " << rep.k_min_fit << " (min side), KS " << rep.ks_min << "; K "
              << rep.k_max_fit << " (max side), KS " << rep.ks_max << "\n";
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const arithmetic_error& e) {
    std::cerr << "arithmetic error: " << e.what() << "\n";
    return 2;
  } catch (const invariant_violation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace halfgap::cli
