#ifndef TRACELAB_ELL_CONVEXITY_HPP
#define TRACELAB_ELL_CONVEXITY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracelab/functional_calculus.hpp"
#include "tracelab/random.hpp"

namespace tracelab {

using RealMap = std::function<double(double)>;

/// A strictly increasing convex e and its inverse l, both with closed-form
/// first and second derivatives. f is l-convex when l(f) is convex, i.e.
/// when f = e(h) for a convex h.
struct EllPair {
  std::string name;
  Interval ell_domain;
  Interval e_domain;  // l(ell_domain)
  // Finite closed windows strictly inside the domains, used for grids.
  Interval ell_window;
  Interval e_window;
  RealMap ell, ell_prime, ell_second;
  RealMap e, e_prime, e_second;
  // gamma with l'(t)/l''(t) = gamma * t, when the pair is homogeneous.
  std::optional<double> homogeneous_gamma;
};

struct EllParams {
  double p = 2.0;
  double alpha = 1.0;
};

namespace ell {

inline void require_p(double p, double min_exclusive, const char* who) {
  if (!(p > min_exclusive) || !std::isfinite(p)) {
    throw std::invalid_argument(std::string(who) + ": parameter p out of range");
  }
}

inline void require_alpha(double a, const char* who) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument(std::string(who) + ": alpha must be positive");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

/// l = log t, e = exp.
inline EllPair log_pair() {
  return {"log",
          Interval::open(0.0, kInf),
          Interval::real_line(),
          Interval::closed(0.05, 20.0),
          Interval::closed(-2.0, 2.0),
          [](double t) { return std::log(t); },
          [](double t) { return 1.0 / t; },
          [](double t) { return -1.0 / (t * t); },
          [](double s) { return std::exp(s); },
          [](double s) { return std::exp(s); },
          [](double s) { return std::exp(s); },
          -1.0};
}

/// l = t^{1/p}, e = s^p, p > 1.
inline EllPair root_pair(double p) {
  require_p(p, 1.0, "root_pair");
  const double q = 1.0 / p;
  return {"root(p=" + std::to_string(p) + ")",
          Interval::right_open(0.0, kInf),
          Interval::right_open(0.0, kInf),
          Interval::closed(0.01, 20.0),
          Interval::closed(0.1, 2.0),
          [q](double t) { return std::pow(t, q); },
          [q](double t) { return q * std::pow(t, q - 1.0); },
          [q](double t) { return q * (q - 1.0) * std::pow(t, q - 2.0); },
          [p](double s) { return std::pow(s, p); },
          [p](double s) { return p * std::pow(s, p - 1.0); },
          [p](double s) { return p * (p - 1.0) * std::pow(s, p - 2.0); },
          -p / (p - 1.0)};
}

/// l = -t^{-alpha}, e = (-s)^{-1/alpha}.
inline EllPair inverse_power_pair(double alpha) {
  require_alpha(alpha, "inverse_power_pair");
  const double b = 1.0 / alpha;
  return {"inverse-power(alpha=" + std::to_string(alpha) + ")",
          Interval::open(0.0, kInf),
          Interval::open(-kInf, 0.0),
          Interval::closed(0.05, 20.0),
          Interval::closed(-2.0, -0.2),
          [alpha](double t) { return -std::pow(t, -alpha); },
          [alpha](double t) { return alpha * std::pow(t, -alpha - 1.0); },
          [alpha](double t) { return -alpha * (alpha + 1.0) * std::pow(t, -alpha - 2.0); },
          [b](double s) { return std::pow(-s, -b); },
          [b](double s) { return b * std::pow(-s, -b - 1.0); },
          [b](double s) { return b * (b + 1.0) * std::pow(-s, -b - 2.0); },
          -1.0 / (1.0 + alpha)};
}

/// l = -(-t)^p on t <= 0, e = -(-s)^{1/p}.
inline EllPair negative_power_pair(double p) {
  require_p(p, 1.0, "negative_power_pair");
  const double q = 1.0 / p;
  return {"negative-power(p=" + std::to_string(p) + ")",
          Interval::left_open(-kInf, 0.0),
          Interval::left_open(-kInf, 0.0),
          Interval::closed(-20.0, -0.01),
          Interval::closed(-2.0, -0.05),
          [p](double t) { return -std::pow(-t, p); },
          [p](double t) { return p * std::pow(-t, p - 1.0); },
          [p](double t) { return -p * (p - 1.0) * std::pow(-t, p - 2.0); },
          [q](double s) { return -std::pow(-s, q); },
          [q](double s) { return q * std::pow(-s, q - 1.0); },
          [q](double s) { return q * (1.0 - q) * std::pow(-s, q - 2.0); },
          1.0 / (p - 1.0)};
}

/// l = -exp(-alpha t), e = -log(-s)/alpha.
inline EllPair negative_exp_pair(double alpha) {
  require_alpha(alpha, "negative_exp_pair");
  return {"negative-exp(alpha=" + std::to_string(alpha) + ")",
          Interval::real_line(),
          Interval::open(-kInf, 0.0),
          Interval::closed(-5.0, 5.0),
          Interval::closed(-3.0, -0.1),
          [alpha](double t) { return -std::exp(-alpha * t); },
          [alpha](double t) { return alpha * std::exp(-alpha * t); },
          [alpha](double t) { return -alpha * alpha * std::exp(-alpha * t); },
          [alpha](double s) { return -std::log(-s) / alpha; },
          [alpha](double s) { return 1.0 / (alpha * -s); },
          [alpha](double s) { return 1.0 / (alpha * s * s); },
          std::nullopt};
}

/// l = log log t on (1, e], e = exp(exp s) on s <= 0.
inline EllPair loglog_pair() {
  return {"loglog",
          Interval::left_open(1.0, std::numbers::e),
          Interval::left_open(-kInf, 0.0),
          Interval::closed(1.0 + 1e-3, std::numbers::e),
          Interval::closed(-3.0, 0.0),
          [](double t) { return std::log(std::log(t)); },
          [](double t) { return 1.0 / (t * std::log(t)); },
          [](double t) {
            const double l = std::log(t);
            return -(l + 1.0) / (t * l * t * l);
          },
          [](double s) { return std::exp(std::exp(s)); },
          [](double s) { return std::exp(s + std::exp(s)); },
          [](double s) { return std::exp(s + std::exp(s)) * (1.0 + std::exp(s)); },
          std::nullopt};
}

/// l = (log t)^{1/p} on [1, exp(1 + 1/p)], e = exp(s^p).
inline EllPair log_root_pair(double p) {
  require_p(p, 1.0, "log_root_pair");
  const double q = 1.0 / p;
  const double t_max = std::exp(1.0 + q);
  const double s_max = std::pow(1.0 + q, q);
  const double s_window = std::min((1.0 + p) / (p * p), s_max);
  return {"log-root(p=" + std::to_string(p) + ")",
          Interval::closed(1.0, t_max),
          Interval::closed(0.0, s_max),
          Interval::closed(1.0 + 1e-4, t_max - 1e-6),
          Interval::closed(0.02, s_window),
          [q](double t) { return std::pow(std::log(t), q); },
          [q](double t) { return q * std::pow(std::log(t), q - 1.0) / t; },
          [q](double t) {
            const double l = std::log(t);
            return q * std::pow(l, q - 2.0) / (t * t) * ((q - 1.0) - l);
          },
          [p](double s) { return std::exp(std::pow(s, p)); },
          [p](double s) { return p * std::pow(s, p - 1.0) * std::exp(std::pow(s, p)); },
          [p](double s) {
            return std::exp(std::pow(s, p)) *
                   (p * (p - 1.0) * std::pow(s, p - 2.0) + p * p * std::pow(s, 2.0 * p - 2.0));
          },
          std::nullopt};
}

/// l = (1 - (1-t)^p)^{1/p} on [0, 1], e = 1 - (1 - s^p)^{1/p}.
inline EllPair circle_pair(double p) {
  require_p(p, 1.0, "circle_pair");
  const double q = 1.0 / p;
  return {"circle(p=" + std::to_string(p) + ")",
          Interval::closed(0.0, 1.0),
          Interval::closed(0.0, 1.0),
          Interval::closed(1e-3, 1.0 - 1e-3),
          Interval::closed(0.05, 0.95),
          [p, q](double t) { return std::pow(1.0 - std::pow(1.0 - t, p), q); },
          [p, q](double t) {
            const double v = 1.0 - std::pow(1.0 - t, p);
            return std::pow(v, q - 1.0) * std::pow(1.0 - t, p - 1.0);
          },
          [p, q](double t) {
            const double v = 1.0 - std::pow(1.0 - t, p);
            return -(p - 1.0) * std::pow(v, q - 2.0) * std::pow(1.0 - t, p - 2.0);
          },
          [p, q](double s) { return 1.0 - std::pow(1.0 - std::pow(s, p), q); },
          [p, q](double s) {
            const double u = 1.0 - std::pow(s, p);
            return std::pow(s, p - 1.0) * std::pow(u, q - 1.0);
          },
          [p, q](double s) {
            const double u = 1.0 - std::pow(s, p);
            return (p - 1.0) * std::pow(s, p - 2.0) * std::pow(u, q - 2.0);
          },
          std::nullopt};
}

/// l = t^{1/p} / (1 + t^{1/p}) on t >= 0, e = (s / (1 - s))^p, p >= 1.
inline EllPair ratio_root_pair(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("ratio_root_pair: p must be >= 1");
  const double q = 1.0 / p;
  return {"ratio-root(p=" + std::to_string(p) + ")",
          Interval::right_open(0.0, kInf),
          Interval::right_open(0.0, 1.0),
          Interval::closed(1e-3, 50.0),
          Interval::closed(0.05, 0.9),
          [q](double t) {
            const double u = std::pow(t, q);
            return u / (1.0 + u);
          },
          [q](double t) {
            const double u = std::pow(t, q);
            return q * std::pow(t, q - 1.0) / ((1.0 + u) * (1.0 + u));
          },
          [q](double t) {
            const double u = std::pow(t, q);
            const double u1 = q * std::pow(t, q - 1.0);
            const double u2 = q * (q - 1.0) * std::pow(t, q - 2.0);
            return u2 / ((1.0 + u) * (1.0 + u)) - 2.0 * u1 * u1 / ((1.0 + u) * (1.0 + u) * (1.0 + u));
          },
          [p](double s) { return std::pow(s / (1.0 - s), p); },
          [p](double s) { return p * std::pow(s, p - 1.0) * std::pow(1.0 - s, -p - 1.0); },
          [p](double s) { return p * std::pow(s, p - 2.0) * std::pow(1.0 - s, -p - 2.0) * (p - 1.0 + 2.0 * s); },
          std::nullopt};
}

}  // namespace ell

/// The nine standard pairs, in order: log, root, inverse power, negative
/// power, negative exponential, log log, log root, circle, ratio root.
inline std::vector<EllPair> catalog(const EllParams& params = {}) {
  return {ell::log_pair(),
          ell::root_pair(params.p),
          ell::inverse_power_pair(params.alpha),
          ell::negative_power_pair(params.p),
          ell::negative_exp_pair(params.alpha),
          ell::loglog_pair(),
          ell::log_root_pair(params.p),
          ell::circle_pair(params.p),
          ell::ratio_root_pair(params.p)};
}

namespace detail {

/// -l'(t) / l''(t) without the domain check; errors only where l'' vanishes.
inline double raw_phi(const EllPair& pair, double t) {
  const double second = pair.ell_second(t);
  if (!(std::abs(second) > 1e-12)) {
    throw DomainError("ratio_phi: second derivative of l vanishes at t = " + std::to_string(t));
  }
  return -pair.ell_prime(t) / second;
}

}  // namespace detail

/// phi(t) = -l'(t) / l''(t). Throws DomainError outside the interior of
/// the domain of l or where |l''(t)| <= 1e-12.
inline double ratio_phi(const EllPair& pair, double t) {
  if (!pair.ell_domain.interior(t)) {
    throw DomainError("ratio_phi: t = " + std::to_string(t) + " not interior to " + pair.ell_domain.describe());
  }
  return detail::raw_phi(pair, t);
}

namespace detail {

inline std::vector<double> uniform_grid(const Interval& window, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = window.lo + window.width() * static_cast<double>(i) / (n - 1);
  }
  out.back() = window.hi;
  return out;
}

/// Tracks the midpoint test with the largest relative deficit.
struct MidpointTracker {
  double worst_relative = std::numeric_limits<double>::infinity();
  double worst_gap = std::numeric_limits<double>::infinity();
  double worst_point = std::numeric_limits<double>::quiet_NaN();
  bool ok = true;

  /// gap = (h(a) + h(b)) / 2 - h(mid), scaled by 1 + max|h|.
  void record(double gap, double scale, double point) {
    const double rel = gap / (1.0 + scale);
    if (rel < worst_relative) {
      worst_relative = rel;
      worst_gap = gap;
      worst_point = point;
    }
    if (gap < -1e-8 * (1.0 + scale)) ok = false;
  }
};

inline double max3(double a, double b, double c) { return std::max({std::abs(a), std::abs(b), std::abs(c)}); }

}  // namespace detail

struct RatioConvexityVerdict {
  bool convex_on_domain = true;
  double worst_second_difference = 0.0;  // most deficient (h(a)+h(b))/2 - h(mid)
  double worst_point = 0.0;
};

/// Discrete convexity of l'/l'' on `window` (default: the pair's grid
/// window): uniform-grid second differences plus 200 seeded random
/// midpoint tests, tolerance 1e-8 (1 + |values|). An explicit window may
/// reach past the validity interval of the pair, as long as l is defined there.
inline RatioConvexityVerdict check_ratio_convexity(const EllPair& pair, int grid_size,
                                                   std::optional<Interval> window = std::nullopt,
                                                   std::uint64_t seed = 0x726174696fULL) {
  if (grid_size < 5) throw std::invalid_argument("check_ratio_convexity: grid size must be at least 5");
  const Interval w = window.value_or(pair.ell_window);
  if (!w.bounded() || !(w.width() > 0.0)) throw std::invalid_argument("check_ratio_convexity: window must be bounded");
  const auto ratio = [&](double t) { return -detail::raw_phi(pair, t); };

  const std::vector<double> grid = detail::uniform_grid(w, grid_size);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid) values.push_back(ratio(t));

  // Second differences at strides 1, 2, 4, ... so that mild curvature over
  // a short stretch of the window still clears the tolerance.
  detail::MidpointTracker on_grid;
  for (std::size_t stride = 1; 2 * stride < grid.size(); stride *= 2) {
    for (std::size_t i = stride; i + stride < grid.size(); ++i) {
      const double lo = values[i - stride], mid = values[i], hi = values[i + stride];
      on_grid.record(0.5 * (lo + hi) - mid, detail::max3(lo, mid, hi), grid[i]);
    }
  }
  detail::MidpointTracker on_segments;
  Rng rng(seed);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(w.lo, w.hi);
    const double b = rng.uniform(w.lo, w.hi);
    const double m = 0.5 * (a + b);
    const double ra = ratio(a), rb = ratio(b), rm = ratio(m);
    on_segments.record(0.5 * (ra + rb) - rm, detail::max3(ra, rb, rm), m);
  }
  // Grid centres localize curvature better than the midpoints of long
  // random segments, so the grid supplies the reported location.
  const bool grid_has_deficit = on_grid.worst_relative < 0.0;
  const detail::MidpointTracker& where =
      grid_has_deficit || on_grid.worst_relative <= on_segments.worst_relative ? on_grid : on_segments;
  return {on_grid.ok && on_segments.ok, where.worst_gap, where.worst_point};
}

struct HomogeneityVerdict {
  bool homogeneous = false;
  std::optional<double> gamma;
};

/// Least-squares fit of l'(t)/l''(t) = gamma t over the grid window; the
/// pair is homogeneous when the fit residual is within 1e-8 of max|ratio|.
inline HomogeneityVerdict check_homogeneity(const EllPair& pair, int grid_size) {
  if (grid_size < 5) throw std::invalid_argument("check_homogeneity: grid size must be at least 5");
  const std::vector<double> grid = detail::uniform_grid(pair.ell_window, grid_size);
  std::vector<double> values;
  double rt = 0.0, tt = 0.0, top = 0.0;
  for (double t : grid) {
    const double r = -detail::raw_phi(pair, t);
    values.push_back(r);
    rt += r * t;
    tt += t * t;
    top = std::max(top, std::abs(r));
  }
  const double gamma = rt / tt;
  double residual = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) residual = std::max(residual, std::abs(values[i] - gamma * grid[i]));
  if (residual <= 1e-8 * top && gamma != 0.0) return {true, gamma};
  return {false, std::nullopt};
}

namespace detail {

/// Finite sampling box for one domain interval: infinite ends become a
/// window of width 20 and open ends are pulled in by 1e-6 of the width.
inline Interval sampling_box(const Interval& iv) {
  double lo = iv.lo, hi = iv.hi;
  if (!std::isfinite(lo) && !std::isfinite(hi)) {
    lo = -10.0;
    hi = 10.0;
  } else if (!std::isfinite(lo)) {
    lo = hi - 20.0;
  } else if (!std::isfinite(hi)) {
    hi = lo + 20.0;
  }
  const double inset = 1e-6 * (hi - lo);
  if (iv.lo_open || !std::isfinite(iv.lo)) lo += inset;
  if (iv.hi_open || !std::isfinite(iv.hi)) hi -= inset;
  return Interval::closed(lo, hi);
}

}  // namespace detail

/// Discrete midpoint convexity of l(f) over the domain cube of f: grid
/// lines along every axis (through seeded base points when arity >= 2)
/// and 200 seeded random segments. Throws DomainError when f leaves the
/// domain of l.
inline bool is_ell_convex_scalar(const EllPair& pair, const MultivariateFunction& f, int grid_size,
                                 std::uint64_t seed = 0x656c6cULL) {
  if (grid_size < 5) throw std::invalid_argument("is_ell_convex_scalar: grid size must be at least 5");
  const std::size_t k = f.arity();
  if (k == 0) throw DomainError("is_ell_convex_scalar: function has no arguments");
  std::vector<Interval> box;
  for (const auto& iv : f.domain) box.push_back(detail::sampling_box(iv));

  const auto h = [&](const std::vector<double>& point) {
    const double v = f(point);
    if (!pair.ell_domain.contains(v, tol::kDomainSlack)) {
      throw DomainError("is_ell_convex_scalar: value " + std::to_string(v) + " of '" + f.name +
                        "' outside the domain of l " + pair.ell_domain.describe());
    }
    return pair.ell(pair.ell_domain.clamp(v));
  };

  Rng rng(seed);
  detail::MidpointTracker tracker;
  const auto random_point = [&] {
    std::vector<double> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = rng.uniform(box[i].lo, box[i].hi);
    return p;
  };

  const int lines_per_axis = k == 1 ? 1 : 8;
  for (std::size_t axis = 0; axis < k; ++axis) {
    const std::vector<double> grid = detail::uniform_grid(box[axis], grid_size);
    for (int line = 0; line < lines_per_axis; ++line) {
      std::vector<double> base = random_point();
      std::vector<double> values;
      for (double g : grid) {
        base[axis] = g;
        values.push_back(h(base));
      }
      for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double gap = 0.5 * (values[i - 1] + values[i + 1]) - values[i];
        tracker.record(gap, detail::max3(values[i - 1], values[i], values[i + 1]), grid[i]);
      }
    }
  }
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> a = random_point();
    const std::vector<double> b = random_point();
    std::vector<double> m(k);
    for (std::size_t j = 0; j < k; ++j) m[j] = 0.5 * (a[j] + b[j]);
    const double ha = h(a), hb = h(b), hm = h(m);
    tracker.record(0.5 * (ha + hb) - hm, detail::max3(ha, hb, hm), m[0]);
  }
  return tracker.ok;
}

}  // namespace tracelab

#endif  // TRACELAB_ELL_CONVEXITY_HPP
