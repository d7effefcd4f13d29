#ifndef TRACELAB_TOLERANCE_HPP
#define TRACELAB_TOLERANCE_HPP

#include <algorithm>

namespace tracelab {

/// Hybrid tolerance: max(abs, rel * scale).
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-8;

  double bound(double scale) const { return std::max(abs, rel * scale); }
};

namespace tol {

inline constexpr double kHermitian = 1e-12;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kReconstruction = 1e-10;
inline constexpr double kCommutator = 1e-10;
inline constexpr double kJointResidual = 1e-8;
inline constexpr double kDomainSlack = 1e-9;
inline constexpr double kSingular = 1e-12;
inline constexpr double kClusterGap = 1e-7;
inline constexpr double kTraceRoutes = 1e-9;

}  // namespace tol
}  // namespace tracelab

#endif  // TRACELAB_TOLERANCE_HPP
