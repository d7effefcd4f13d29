// Small tour of the library: spectral calculus, trace functions, a
// determinant, operator means and one verification suite.
#include <cstdio>

#include "tracelab/tracelab.hpp"

using namespace tracelab;

int main() {
  const HermitianMatrix x = harness::random_psd(3, 0.5, 2.0, 7);
  const HermitianMatrix y = harness::random_psd(3, 0.5, 2.0, 8);

  const auto tr = TraceFunctional::standard(3);
  const auto state = TraceFunctional::normalized(3);
  std::printf("Tr exp(x)          = %.12f\n", tr(matrix_exp(x)));

  const auto sq = MultivariateFunction::scalar("square", Interval::real_line(), [](double t) { return t * t; });
  std::printf("Tr x^2             = %.12f\n", trace_of_function(tr, sq, x));
  std::printf("best frame surrogate = %.12f\n", surrogate_supremum_probe(tr, sq, as_tuple(x), 16, 1));

  std::printf("det(x) under Tr/n  = %.12f\n", kf_determinant(state, x));

  const HermitianMatrix h = harmonic_mean({x, y});
  const HermitianMatrix g = geometric_mean(x, y);
  std::printf("Tr(x ! y) = %.12f  <=  Tr x ! Tr y = %.12f\n", tr(h), 2 * tr(x) * tr(y) / (tr(x) + tr(y)));
  std::printf("Tr(x # y) = %.12f  <=  Tr x # Tr y = %.12f\n", tr(g), std::sqrt(tr(x) * tr(y)));

  const auto pair = ell::log_pair();
  const auto verdict = check_ratio_convexity(pair, 200);
  std::printf("%s: ratio convex = %s\n", pair.name.c_str(), verdict.convex_on_domain ? "yes" : "no");

  harness::SuiteConfig cfg;
  cfg.suite = "theorem2-convexity";
  cfg.trials = 50;
  const auto report = harness::run_suite(cfg);
  std::printf("%s\n", harness::to_json(report).c_str());
  return report.pass() ? 0 : 1;
}
