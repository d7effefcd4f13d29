#ifndef TRACELAB_TRACELAB_HPP
#define TRACELAB_TRACELAB_HPP

#include "tracelab/error.hpp"
#include "tracelab/tolerance.hpp"
#include "tracelab/hermitian.hpp"
#include "tracelab/eigen.hpp"
#include "tracelab/random.hpp"
#include "tracelab/functional_calculus.hpp"
#include "tracelab/trace.hpp"
#include "tracelab/ell_convexity.hpp"
#include "tracelab/operator_means.hpp"
#include "tracelab/harness/generators.hpp"
#include "tracelab/harness/probe.hpp"
#include "tracelab/harness/report.hpp"
#include "tracelab/harness/suites.hpp"

#endif  // TRACELAB_TRACELAB_HPP
