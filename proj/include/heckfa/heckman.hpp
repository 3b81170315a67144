#pragma once

#include <optional>
#include <utility>

#include "heckfa/probit.hpp"
#include "heckfa/types.hpp"

namespace heckfa {

// The probit stage depends only on (x_sel, s), never on the feature mask, so
// training/extraction compute it once and fit many masks against it. The
// results are identical to calling fit_heckman directly.
struct HeckmanContext {
  ProbitFit probit;
  Eigen::VectorXd sel_index;  // x_i^(s) gamma_hat for the m observed samples
  Eigen::VectorXd lambda;     // inverse Mills ratio per observed sample
};

HeckmanContext make_heckman_context(const Dataset& data,
                                    const ProbitOptions& opts = {});

// Step 2 given a precomputed probit stage: least squares of y on
// [1 | assigned features | lambda] over the observed samples, solved by
// column-pivoted QR on the compressed design (unassigned columns dropped,
// which realizes beta_k = 0 exactly). Throws SingularDesign when the design
// condition number exceeds 1e12, InsufficientSamples when m < J + 2.
HeckmanFit fit_heckman_with(const HeckmanContext& ctx, const Dataset& data,
                            const FeatureMask& mask);

// Full two-step fit: probit over all n samples, then step 2.
HeckmanFit fit_heckman(const Dataset& data, const FeatureMask& mask,
                       const ProbitOptions& opts = {});

// Moment estimator of the prediction-noise variance and the implied noise
// correlation: sigma_sq = MSE - (beta_H^2/m) sum[lambda_i*(-index_i) -
// lambda_i^2]; rho = beta_H / sqrt(sigma_sq) when sigma_sq > 0, otherwise
// the correlation is flagged undefined (empty optional).
std::pair<double, std::optional<double>> estimate_sigma_rho(
    const Eigen::VectorXd& residuals, double beta_h_hat,
    const Eigen::VectorXd& lambda, const Eigen::VectorXd& sel_index);

// R^2 penalized by the prediction-feature count: 1 - (1-r2)(m-1)/(m-j-1).
// Throws InsufficientSamples when m <= j + 1.
double adjusted_r2(double r2, Eigen::Index m, Eigen::Index j);

// R^2 of observed outcomes against fitted values (1 when the outcome is
// constant and perfectly fitted).
double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted);

}  // namespace heckfa
