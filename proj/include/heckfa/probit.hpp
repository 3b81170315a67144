#pragma once

#include "heckfa/types.hpp"

namespace heckfa {

struct ProbitOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;  // convergence on the score max-norm
  int max_step_halvings = 30;
};

// Maximum-likelihood probit of s on [1 | x_sel] over all n samples, by
// Fisher scoring (IRLS) with step-halving on likelihood decrease. Phi values
// are clamped to [1e-12, 1 - 1e-12] inside the likelihood so that
// quasi-separated data plateaus instead of producing -inf.
//
// Throws DegenerateSelection when s is all-zero/all-one and NonConvergence
// when the iteration budget is exhausted or the information matrix is
// numerically singular.
ProbitFit fit_probit(const Dataset& data, const ProbitOptions& opts = {});

// Probit log-likelihood of the given coefficients (intercept first); exposed
// for the grid-search oracles in the tests.
double probit_log_likelihood(const Dataset& data, const Eigen::VectorXd& gamma);

}  // namespace heckfa
