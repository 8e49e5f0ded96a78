#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "halfgap/checked_int.hpp"
#include "halfgap/rng.hpp"

namespace halfgap {

/// Unit vector on S^{d-1}; the norm must be 1 up to 1e-12.
struct UnitVector {
  std::vector<double> c;

  size_t dim() const { return c.size(); }

  void validate() const {
    double norm2 = 0;
    for (double x : c) norm2 += x * x;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
      throw input_error("UnitVector norm deviates from 1 by more than 1e-12");
  }
};

inline double dot(const UnitVector& a, const UnitVector& b) {
  double s = 0;
  for (size_t i = 0; i < a.c.size(); ++i) s += a.c[i] * b.c[i];
  return s;
}

/// Finite surrogate for the standard Gaussian: M seeded N(0, I) base points,
/// each present as two tagged atoms of weight 1/(2M). The pairing is what
/// makes exactly balanced +-1 splits possible downstream, so anything that
/// relies on exact-zero correlations assumes it.
struct GaussianSupport {
  int d = 0;
  int base_count = 0;
  std::vector<double> base;  // base_count * d, row major
  uint64_t seed = 0;

  size_t atoms() const { return 2 * static_cast<size_t>(base_count); }
  const double* base_point(size_t b) const { return base.data() + b * static_cast<size_t>(d); }
  static size_t base_of_atom(size_t atom) { return atom >> 1; }
  double atom_weight() const { return 1.0 / static_cast<double>(atoms()); }
};

inline GaussianSupport make_gaussian_support(int d, int base_count, uint64_t seed) {
  if (d < 1 || base_count < 1) throw input_error("make_gaussian_support: bad parameters");
  GaussianSupport s;
  s.d = d;
  s.base_count = base_count;
  s.seed = seed;
  s.base.resize(static_cast<size_t>(d) * base_count);
  Rng rng(seed);
  for (double& x : s.base) x = rng.normal();
  return s;
}

/// A +-1 function given per atom.
struct SignFunction {
  std::vector<int8_t> v;  // one entry per atom, each +1 or -1

  void validate(const GaussianSupport& s) const {
    if (v.size() != s.atoms()) throw input_error("SignFunction does not cover the support");
    for (int8_t x : v) {
      if (x != 1 && x != -1) throw input_error("SignFunction value outside {-1,+1}");
    }
  }
};

inline SignFunction negate(const SignFunction& f) {
  SignFunction g = f;
  for (int8_t& x : g.v) x = static_cast<int8_t>(-x);
  return g;
}

/// Query language of the oracle: halfspace signs, k-alternating projection
/// profiles, or explicit per-atom tables with values in [-1, 1].
struct QuerySpec {
  enum class Kind { HALFSPACE_SIGN, PROJECTION_PROFILE, TABLE };

  Kind kind = Kind::TABLE;
  // HALFSPACE_SIGN: sign(<w, x> + theta), +1 on the boundary.
  std::vector<double> w;
  double theta = 0;
  // PROJECTION_PROFILE: signs[i] on the i-th interval cut by breakpoints.
  UnitVector u;
  std::vector<double> breakpoints;  // sorted ascending
  std::vector<int8_t> signs;        // breakpoints.size() + 1 entries
  bool k_alternating = false;       // when set, signs must alternate
  // TABLE: explicit atom values.
  std::vector<double> table;

  void validate(const GaussianSupport& s) const {
    switch (kind) {
      case Kind::HALFSPACE_SIGN:
        if (w.size() != static_cast<size_t>(s.d)) throw input_error("query dimension mismatch");
        return;
      case Kind::PROJECTION_PROFILE: {
        if (u.dim() != static_cast<size_t>(s.d)) throw input_error("query dimension mismatch");
        u.validate();
        if (signs.size() != breakpoints.size() + 1)
          throw input_error("profile needs one sign per interval");
        if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
          throw input_error("profile breakpoints must be sorted");
        for (int8_t x : signs) {
          if (x != 1 && x != -1) throw input_error("profile sign outside {-1,+1}");
        }
        if (k_alternating) {
          for (size_t i = 0; i + 1 < signs.size(); ++i) {
            if (signs[i] == signs[i + 1])
              throw input_error("k-alternating profile must switch sign at every breakpoint");
          }
        }
        return;
      }
      case Kind::TABLE:
        if (table.size() != s.atoms()) throw input_error("table does not cover the support");
        for (double x : table) {
          if (!(x >= -1.0 && x <= 1.0)) throw input_error("table value outside [-1,1]");
        }
        return;
    }
  }

  double eval_base(const GaussianSupport& s, size_t b) const {
    const double* x = s.base_point(b);
    if (kind == Kind::HALFSPACE_SIGN) {
      double acc = theta;
      for (size_t j = 0; j < w.size(); ++j) acc += w[j] * x[j];
      return acc >= 0 ? 1.0 : -1.0;
    }
    double t = 0;
    for (size_t j = 0; j < u.c.size(); ++j) t += u.c[j] * x[j];
    size_t idx = static_cast<size_t>(
        std::upper_bound(breakpoints.begin(), breakpoints.end(), t) - breakpoints.begin());
    return signs[idx];
  }

  double eval_atom(const GaussianSupport& s, size_t atom) const {
    if (kind == Kind::TABLE) return table[atom];
    return eval_base(s, GaussianSupport::base_of_atom(atom));
  }

  /// True when both atoms of every pair get the same value, i.e. the query
  /// is a function of the point rather than of the atom.
  bool pair_constant(const GaussianSupport& s) const {
    if (kind != Kind::TABLE) return true;
    for (size_t b = 0; b < static_cast<size_t>(s.base_count); ++b) {
      if (table[2 * b] != table[2 * b + 1]) return false;
    }
    return true;
  }
};

inline QuerySpec make_halfspace_query(std::vector<double> w, double theta) {
  QuerySpec q;
  q.kind = QuerySpec::Kind::HALFSPACE_SIGN;
  q.w = std::move(w);
  q.theta = theta;
  return q;
}

inline QuerySpec make_table_query(std::vector<double> values) {
  QuerySpec q;
  q.kind = QuerySpec::Kind::TABLE;
  q.table = std::move(values);
  return q;
}

inline std::vector<double> eval_atoms(const GaussianSupport& s, const QuerySpec& q) {
  q.validate(s);
  std::vector<double> out(s.atoms());
  if (q.kind == QuerySpec::Kind::TABLE) return q.table;
  for (size_t b = 0; b < static_cast<size_t>(s.base_count); ++b) {
    double v = q.eval_base(s, b);
    out[2 * b] = v;
    out[2 * b + 1] = v;
  }
  return out;
}

inline std::vector<double> eval_atoms(const GaussianSupport& s, const SignFunction& f) {
  f.validate(s);
  std::vector<double> out(s.atoms());
  for (size_t a = 0; a < s.atoms(); ++a) out[a] = f.v[a];
  return out;
}

/// Integer multiple of tau closest to x, rounding towards zero:
/// sign(x) * tau * floor(|x| / tau). The multiplier is corrected after the
/// floating floor so that k is exactly max{k : k * tau <= |x|}; that makes
/// "answer is 0 iff |x| < tau" exact.
inline long long round_multiple_index(double x, double tau) {
  if (!(tau > 0)) throw input_error("rounding tolerance must be positive");
  double ax = std::abs(x);
  long long k = static_cast<long long>(std::floor(ax / tau));
  while (static_cast<double>(k + 1) * tau <= ax) ++k;
  while (k > 0 && static_cast<double>(k) * tau > ax) --k;
  return x < 0 ? -k : k;
}

inline double round_toward_zero(double x, double tau) {
  return static_cast<double>(round_multiple_index(x, tau)) * tau;
}

/// Correlation E[a(x) b(x)] over the support, summed pair by pair so that
/// anti-paired functions cancel exactly in floating point (each pair
/// contributes v + (-v) = 0 with no rounding), then Kahan-compensated.
inline double correlation_values(const GaussianSupport& s, const std::vector<double>& a,
                                 const std::vector<double>& b) {
  if (a.size() != s.atoms() || b.size() != s.atoms())
    throw input_error("correlation over mismatched supports");
  double sum = 0, comp = 0;
  for (size_t p = 0; p < static_cast<size_t>(s.base_count); ++p) {
    double term = a[2 * p] * b[2 * p] + a[2 * p + 1] * b[2 * p + 1];
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(s.atoms());
}

template <typename A, typename B>
double correlation(const GaussianSupport& s, const A& a, const B& b) {
  return correlation_values(s, eval_atoms(s, a), eval_atoms(s, b));
}

enum class OracleMode { EXACT, ROUNDING, ADVERSARIAL_ZERO };

/// Stat oracle with three answer modes. Every query is appended to the log
/// regardless of mode; ADVERSARIAL_ZERO answers 0 and only logs.
struct StatOracleConfig {
  double tau = 0.1;
  OracleMode mode = OracleMode::EXACT;
  std::vector<QuerySpec> query_log;
};

inline double stat_query(StatOracleConfig& cfg, const GaussianSupport& s, const SignFunction& f,
                         const QuerySpec& g) {
  if (!(cfg.tau > 0)) throw input_error("stat oracle needs tau > 0");
  g.validate(s);
  cfg.query_log.push_back(g);
  if (cfg.mode == OracleMode::ADVERSARIAL_ZERO) return 0.0;
  double c = correlation(s, f, g);
  return cfg.mode == OracleMode::EXACT ? c : round_toward_zero(c, cfg.tau);
}

/// Inverse standard normal CDF (Acklam's rational approximation, |rel err|
/// around 1e-9; plenty for quantile breakpoints).
inline double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw input_error("inverse_normal_cdf needs p in (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
  }
  if (p > phigh) {
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace halfgap
