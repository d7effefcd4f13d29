#ifndef TRACELAB_HARNESS_PROBE_HPP
#define TRACELAB_HARNESS_PROBE_HPP

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tracelab/hermitian.hpp"

namespace tracelab::harness {

enum class Sense { convex, concave };

inline double mix(double a, double b, double lambda) { return lambda * a + (1.0 - lambda) * b; }

inline std::vector<double> mix(const std::vector<double>& a, const std::vector<double>& b, double lambda) {
  if (a.size() != b.size()) throw DimensionError("mix: points of different length");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mix(a[i], b[i], lambda);
  return out;
}

inline HermitianMatrix mix(const HermitianMatrix& a, const HermitianMatrix& b, double lambda) {
  return a * lambda + b * (1.0 - lambda);
}

inline std::vector<HermitianMatrix> mix(const std::vector<HermitianMatrix>& a, const std::vector<HermitianMatrix>& b,
                                        double lambda) {
  if (a.size() != b.size()) throw DimensionError("mix: tuples of different length");
  std::vector<HermitianMatrix> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(mix(a[i], b[i], lambda));
  return out;
}

inline const std::vector<double>& default_lambdas() {
  static const std::vector<double> lambdas{0.25, 0.5, 0.75};
  return lambdas;
}

/// One point of a segment test. For convex sense lhs = v(mix) and
/// rhs = lambda v(A) + (1 - lambda) v(B); for concave sense the two swap,
/// so lhs <= rhs is always the inequality under test.
struct SegmentSample {
  double lambda;
  double lhs;
  double rhs;
  double gap() const { return lhs - rhs; }
};

template <class Point, class ValueMap>
std::vector<SegmentSample> probe_segment(const ValueMap& value, const Point& a, const Point& b,
                                         const std::vector<double>& lambdas = default_lambdas(),
                                         Sense sense = Sense::convex) {
  if (lambdas.empty()) throw std::invalid_argument("probe_segment: no lambdas");
  for (double l : lambdas) {
    if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("probe_segment: lambdas must lie in (0, 1)");
  }
  const double va = value(a);
  const double vb = value(b);
  std::vector<SegmentSample> out;
  for (double l : lambdas) {
    const double on_segment = value(mix(a, b, l));
    const double chord = mix(va, vb, l);
    out.push_back(sense == Sense::convex ? SegmentSample{l, on_segment, chord} : SegmentSample{l, chord, on_segment});
  }
  return out;
}

/// Worst signed violation max_lambda (lhs - rhs). Nonpositive values
/// certify convexity (or concavity) along the segment. Domain escapes
/// surface as the DomainError thrown by `value`.
template <class Point, class ValueMap>
double run_convexity_probe(const ValueMap& value, const Point& a, const Point& b,
                           const std::vector<double>& lambdas = default_lambdas(), Sense sense = Sense::convex) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& s : probe_segment(value, a, b, lambdas, sense)) worst = std::max(worst, s.gap());
  return worst;
}

}  // namespace tracelab::harness

#endif  // TRACELAB_HARNESS_PROBE_HPP
