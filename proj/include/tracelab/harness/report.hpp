#ifndef TRACELAB_HARNESS_REPORT_HPP
#define TRACELAB_HARNESS_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracelab/eigen.hpp"
#include "tracelab/random.hpp"

namespace tracelab::harness {

struct SuiteConfig {
  std::string suite;
  std::vector<int> dims{2, 4, 8};
  int tupleArity = 3;
  int trials = 500;
  std::uint64_t seed = 42;
  double absTol = 1e-9;
  double relTol = 1e-8;
  bool tensorMode = true;
  std::optional<std::string> reportPath;
  // Test hook: corrupts one trial of the block-equivalence suite. Not echoed.
  bool injectFault = false;
};

inline void validate(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.dims.empty()) throw std::invalid_argument("dims must be nonempty");
  for (int d : cfg.dims) {
    if (d < 1 || d > 64) throw std::invalid_argument("dims must lie in [1, 64]");
  }
  if (cfg.tupleArity < 1 || cfg.tupleArity > 4) throw std::invalid_argument("arity must lie in [1, 4]");
  if (!(cfg.absTol > 0.0) || !(cfg.relTol > 0.0)) throw std::invalid_argument("tolerances must be positive");
}

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  int trials = 0;
  int failures = 0;
  double maxViolation = -std::numeric_limits<double>::infinity();
  std::uint64_t worstCaseSeed = 0;
  double elapsedSeconds = 0.0;
  bool pass() const { return failures == 0; }
};

/// Signed, scale-normalized violations collected during one trial. Every
/// check reduces to lhs <= rhs (or its strict negation for adversarial
/// checks); the trial fails when the largest violation is positive.
class TrialLedger {
 public:
  TrialLedger(double abs_tol, double rel_tol) : abs_(abs_tol), rel_(rel_tol) {}

  double tolerance(double scale) const { return std::max(abs_, rel_ * scale); }

  /// lhs <= rhs up to max(absTol, relTol scale), or up to `tol` if given.
  void leq(double lhs, double rhs, std::optional<double> tol = std::nullopt) {
    const double scale = scale_of(lhs, rhs);
    const double t = tol ? *tol : tolerance(scale);
    record((lhs - rhs - t) / scale);
  }
  void geq(double lhs, double rhs, std::optional<double> tol = std::nullopt) { leq(rhs, lhs, tol); }

  /// |a - b| within the tolerance.
  void near(double a, double b, std::optional<double> tol = std::nullopt) {
    const double scale = scale_of(a, b);
    const double t = tol ? *tol : tolerance(scale);
    record((std::abs(a - b) - t) / scale);
  }

  /// Relative closeness: |a - b| <= rel max(1, |a|, |b|).
  void near_relative(double a, double b, double rel) { near(a, b, rel * scale_of(a, b)); }

  /// lhs > rhs beyond tolerance: the inequality lhs <= rhs must be broken.
  void violates(double lhs, double rhs, std::optional<double> tol = std::nullopt) {
    const double scale = scale_of(lhs, rhs);
    const double t = tol ? *tol : tolerance(scale);
    record((rhs + t - lhs) / scale);
  }

  /// a <= b in the Loewner order: lambda_min(b - a) >= -tol.
  void loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b) {
    const double scale = std::max({1.0, operator_norm(a), operator_norm(b)});
    record((-min_eigenvalue(b - a) - tolerance(scale)) / scale);
  }

  /// a <= b fails: lambda_min(b - a) < -tol.
  void loewner_violated(const HermitianMatrix& a, const HermitianMatrix& b) {
    const double scale = std::max({1.0, operator_norm(a), operator_norm(b)});
    record((min_eigenvalue(b - a) + tolerance(scale)) / scale);
  }

  void psd(const HermitianMatrix& x) {
    const double scale = std::max(1.0, operator_norm(x));
    record((-min_eigenvalue(x) - tolerance(scale)) / scale);
  }

  void holds(bool condition) { record(condition ? -1.0 : 1.0); }

  void record(double violation) {
    if (std::isnan(violation)) violation = std::numeric_limits<double>::max();
    worst_ = std::max(worst_, violation);
  }
  void record_exception() { worst_ = std::numeric_limits<double>::max(); }

  double worst() const { return worst_; }
  bool failed() const { return worst_ > 0.0; }

 private:
  static double scale_of(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

  double abs_;
  double rel_;
  double worst_ = -std::numeric_limits<double>::infinity();
};

namespace detail {

inline std::string number(double v) {
  if (!std::isfinite(v)) v = v > 0 ? std::numeric_limits<double>::max() : -std::numeric_limits<double>::max();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

}  // namespace detail

inline std::string config_json(const SuiteConfig& c) {
  std::string dims = "[";
  for (std::size_t i = 0; i < c.dims.size(); ++i) dims += (i ? "," : "") + std::to_string(c.dims[i]);
  dims += "]";
  return "{\"suite\":" + detail::quoted(c.suite) + ",\"dims\":" + dims +
         ",\"tupleArity\":" + std::to_string(c.tupleArity) + ",\"trials\":" + std::to_string(c.trials) +
         ",\"seed\":" + std::to_string(c.seed) + ",\"absTol\":" + detail::number(c.absTol) +
         ",\"relTol\":" + detail::number(c.relTol) + ",\"tensorMode\":" + (c.tensorMode ? "true" : "false") + "}";
}

inline std::string to_json(const SuiteReport& r) {
  return "{\"suite\":" + detail::quoted(r.suite) + ",\"config\":" + config_json(r.config) +
         ",\"trials\":" + std::to_string(r.trials) + ",\"failures\":" + std::to_string(r.failures) +
         ",\"maxViolation\":" + detail::number(r.maxViolation) +
         ",\"worstCaseSeed\":" + std::to_string(r.worstCaseSeed) + ",\"verdict\":" +
         (r.pass() ? "\"pass\"" : "\"fail\"") + ",\"elapsedSeconds\":" + detail::number(r.elapsedSeconds) +
         ",\"generator\":" + detail::quoted(Rng::kName) + "}";
}

inline std::string to_json(const std::vector<SuiteReport>& reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) out += (i ? ",\n" : "\n") + to_json(reports[i]);
  return out + "\n]";
}

}  // namespace tracelab::harness

#endif  // TRACELAB_HARNESS_REPORT_HPP
