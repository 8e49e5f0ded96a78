#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "halfgap/exact_distance.hpp"
#include "halfgap/ksum.hpp"
#include "halfgap/reduction.hpp"
#include "halfgap/rng.hpp"

namespace halfgap {

/// Wall-clock timing record. The clock runs around the algorithm only,
/// never around file IO; records are append-only.
struct BenchRecord {
  std::string command;
  std::map<std::string, std::string> parameters;
  long long wall_time_ns = 0;
  long long queries_or_samples = 0;
  std::string result;
};

namespace detail {

template <typename F>
long long time_ns(F&& f) {
  auto start = std::chrono::steady_clock::now();
  f();
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
}

}  // namespace detail

struct LogLogFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double max_residual = std::numeric_limits<double>::quiet_NaN();
  bool defined = false;
};

/// Least-squares slope of log(time) against log(n); undefined with fewer
/// than two distinct grid points.
inline LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& pts) {
  LogLogFit fit;
  if (pts.size() < 2) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [n, t] : pts) {
    double x = std::log(n), y = std::log(t);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = static_cast<double>(pts.size());
  double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) return fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  fit.max_residual = 0;
  for (auto [n, t] : pts) {
    double pred = fit.intercept + fit.slope * std::log(n);
    fit.max_residual = std::max(fit.max_residual, std::abs(std::log(t) - pred));
  }
  fit.defined = true;
  return fit;
}

struct BenchOutput {
  std::vector<BenchRecord> records;
  LogLogFit fit;
};

inline BenchOutput bench_mitm(const std::vector<int>& grid, int k, uint64_t seed) {
  BenchOutput out;
  std::vector<std::pair<double, double>> pts;
  Rng rng(seed);
  for (int n : grid) {
    KSumInstance inst = gen_instance(n, k, /*planted=*/true, rng.next_u64());
    bool found = false;
    long long ns = detail::time_ns([&] { found = solve_mitm(inst).has_value(); });
    BenchRecord rec;
    rec.command = "bench mitm";
    rec.parameters = {{"k", std::to_string(k)}, {"n", std::to_string(n)}};
    rec.wall_time_ns = ns;
    rec.queries_or_samples = static_cast<long long>(n);
    rec.result = found ? "witness" : "none";
    out.records.push_back(rec);
    pts.emplace_back(n, std::max<double>(1.0, static_cast<double>(ns)));
  }
  out.fit = fit_loglog(pts);
  return out;
}

inline LabeledDataset bench_random_dataset(Rng& rng, size_t d, size_t n) {
  std::vector<Point> points;
  std::vector<uint8_t> labels;
  Halfspace target;
  for (size_t j = 0; j < d; ++j) target.w.emplace_back(rng.range_i64(-5, 5));
  target.theta = Int(rng.range_i64(-8, 8));
  for (size_t i = 0; i < n; ++i) {
    Point p;
    for (size_t j = 0; j < d; ++j) p.coords.emplace_back(rng.range_i64(-1000, 1000));
    labels.push_back(static_cast<uint8_t>(eval_halfspace(target, p)));
    points.push_back(std::move(p));
  }
  for (size_t f = 0; f < n / 10 + 1; ++f) {
    size_t i = rng.below(n);
    labels[i] = static_cast<uint8_t>(1 - labels[i]);
  }
  return make_uniform_dataset(d, std::move(points), std::move(labels));
}

/// Times both the polynomial candidate oracle and the rotational sweep on
/// the same planted d=2 datasets, one record per (method, n).
inline BenchOutput bench_exact_cand(const std::vector<int>& grid, uint64_t seed) {
  BenchOutput out;
  std::vector<std::pair<double, double>> cand_pts;
  Rng rng(seed);
  for (int n : grid) {
    LabeledDataset ds = bench_random_dataset(rng, 2, static_cast<size_t>(n));
    Rat dc, dsw;
    long long cand_ns = detail::time_ns([&] { dc = exact_distance_cand(ds).distance; });
    long long sweep_ns = detail::time_ns([&] { dsw = exact_distance_2d(ds).distance; });
    if (dc != dsw) throw invariant_violation("bench: candidate and sweep distances differ");
    BenchRecord rec;
    rec.command = "bench exact_cand";
    rec.parameters = {{"d", "2"}, {"n", std::to_string(n)}, {"method", "CANDIDATES"}};
    rec.wall_time_ns = cand_ns;
    rec.queries_or_samples = n;
    rec.result = dc.to_string();
    out.records.push_back(rec);
    rec.parameters["method"] = "SWEEP_2D";
    rec.wall_time_ns = sweep_ns;
    out.records.push_back(rec);
    cand_pts.emplace_back(n, std::max<double>(1.0, static_cast<double>(cand_ns)));
  }
  out.fit = fit_loglog(cand_pts);
  return out;
}

inline BenchOutput bench_reduction_e2e(const std::vector<int>& grid, int d, uint64_t seed) {
  BenchOutput out;
  std::vector<std::pair<double, double>> pts;
  Rng rng(seed);
  for (int n : grid) {
    KSumInstance inst = gen_instance(n, d + 1, rng.coin(), rng.next_u64());
    GapReport rep;
    long long ns = detail::time_ns([&] {
      ReducedInstance red = build_reduction(inst);
      rep = verify_gap(red);
    });
    BenchRecord rec;
    rec.command = "bench reduction_e2e";
    rec.parameters = {{"d", std::to_string(d)}, {"n", std::to_string(n)}};
    rec.wall_time_ns = ns;
    rec.queries_or_samples = 2LL * (d + 1) * n;
    rec.result = rep.side == GapReport::Side::YES ? "YES" : "NO";
    out.records.push_back(rec);
    pts.emplace_back(n, std::max<double>(1.0, static_cast<double>(ns)));
  }
  out.fit = fit_loglog(pts);
  return out;
}

inline void write_bench_csv(const std::string& path, const std::vector<BenchRecord>& records) {
  std::ofstream outf(path);
  if (!outf) throw input_error("cannot write " + path);
  outf << "command,parameters,wall_time_ns,queries_or_samples,result\n";
  for (const BenchRecord& r : records) {
    outf << r.command << ',';
    bool first = true;
    for (const auto& [k, v] : r.parameters) {
      if (!first) outf << ';';
      outf << k << '=' << v;
      first = false;
    }
    outf << ',' << r.wall_time_ns << ',' << r.queries_or_samples << ',' << r.result << "\n";
  }
}

/// Self-contained log-log SVG line chart; no external renderer involved.
inline void write_scaling_svg(const std::string& path,
                              const std::vector<std::pair<double, double>>& pts,
                              const std::string& title) {
  if (pts.empty()) throw input_error("write_scaling_svg: no points");
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto [x, y] : pts) {
    xmin = std::min(xmin, std::log10(x));
    xmax = std::max(xmax, std::log10(x));
    ymin = std::min(ymin, std::log10(y));
    ymax = std::max(ymax, std::log10(y));
  }
  if (xmax - xmin < 1e-9) xmax = xmin + 1;
  if (ymax - ymin < 1e-9) ymax = ymin + 1;
  const double w = 640, h = 420, pad = 50;
  auto px = [&](double x) { return pad + (std::log10(x) - xmin) / (xmax - xmin) * (w - 2 * pad); };
  auto py = [&](double y) { return h - pad - (std::log10(y) - ymin) / (ymax - ymin) * (h - 2 * pad); };
  std::ofstream svg(path);
  if (!svg) throw input_error("cannot write " + path);
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << w / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
      << " (log-log)</text>\n";
  svg << "<line x1='" << pad << "' y1='" << h - pad << "' x2='" << w - pad << "' y2='" << h - pad
      << "' stroke='black'/>\n";
  svg << "<line x1='" << pad << "' y1='" << pad << "' x2='" << pad << "' y2='" << h - pad
      << "' stroke='black'/>\n";
  svg << "<polyline fill='none' stroke='steelblue' stroke-width='2' points='";
  for (auto [x, y] : pts) svg << px(x) << ',' << py(y) << ' ';
  svg << "'/>\n";
  for (auto [x, y] : pts)
    svg << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='3' fill='crimson'/>\n";
  svg << "</svg>\n";
}

}  // namespace halfgap
