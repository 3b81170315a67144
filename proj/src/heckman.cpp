#include "heckfa/heckman.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "heckfa/errors.hpp"
#include "heckfa/simd/kernels.hpp"

namespace heckfa {

HeckmanContext make_heckman_context(const Dataset& data,
                                    const ProbitOptions& opts) {
  HeckmanContext ctx;
  ctx.probit = fit_probit(data, opts);

  const auto m = static_cast<std::size_t>(data.m);
  ctx.sel_index.resize(data.m);
  kernels::row_dots(data.x_sel.data(), m, static_cast<std::size_t>(data.k()),
                    static_cast<std::size_t>(data.k()),
                    ctx.probit.gamma_hat.data() + 1, ctx.sel_index.data());
  ctx.sel_index.array() += ctx.probit.gamma_hat[0];

  ctx.lambda.resize(data.m);
  kernels::inverse_mills(ctx.sel_index.data(), m, ctx.lambda.data());
  return ctx;
}

HeckmanFit fit_heckman_with(const HeckmanContext& ctx, const Dataset& data,
                            const FeatureMask& mask) {
  mask.validate();
  if (mask.k() != data.k())
    throw InvalidArgument("mask length does not match feature count");

  const Eigen::Index m = data.m;
  const Eigen::Index j = mask.j_count;
  const Eigen::Index cols = j + 2;  // intercept | assigned | lambda
  if (m < cols)
    throw InsufficientSamples("need at least J + 2 observed samples");

  MatrixRM design(m, cols);
  design.col(0).setOnes();
  Eigen::Index pos = 1;
  std::vector<Eigen::Index> positions(static_cast<std::size_t>(data.k()), -1);
  for (Eigen::Index k = 0; k < data.k(); ++k) {
    if (!mask.assigned[static_cast<std::size_t>(k)]) continue;
    design.col(pos) = data.x_sel.col(k).head(m);
    positions[static_cast<std::size_t>(k)] = pos;
    ++pos;
  }
  design.col(cols - 1) = ctx.lambda;

  // condition number from the singular values of R (same as the design's)
  const Eigen::MatrixXd design_cm = design;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(design_cm);
  const Eigen::MatrixXd r_factor =
      qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r_factor);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(cols - 1);
  const double cond =
      smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12))
    throw SingularDesign("augmented design condition number " +
                         std::to_string(cond) +
                         " exceeds 1e12 (IMR collinearity or duplicate "
                         "features)");

  const Eigen::VectorXd y_obs = data.y.head(m);
  const Eigen::VectorXd coef =
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(design_cm).solve(y_obs);

  HeckmanFit fit;
  fit.mask = mask;
  fit.beta_hat = Eigen::VectorXd::Zero(data.k() + 1);
  fit.beta_hat[0] = coef[0];
  for (Eigen::Index k = 0; k < data.k(); ++k) {
    const Eigen::Index p = positions[static_cast<std::size_t>(k)];
    if (p >= 0) fit.beta_hat[k + 1] = coef[p];
  }
  fit.beta_h_hat = coef[cols - 1];
  fit.lambda_hat = ctx.lambda;
  fit.imr_condition_number = cond;

  fit.fitted.resize(m);
  kernels::row_dots(design.data(), static_cast<std::size_t>(m),
                    static_cast<std::size_t>(cols),
                    static_cast<std::size_t>(cols), coef.data(),
                    fit.fitted.data());
  fit.residuals = y_obs - fit.fitted;

  fit.r2 = r_squared(y_obs, fit.fitted);
  fit.r2_adj = adjusted_r2(fit.r2, m, j);
  std::tie(fit.sigma_sq_hat, fit.rho_hat) = estimate_sigma_rho(
      fit.residuals, fit.beta_h_hat, ctx.lambda, ctx.sel_index);
  return fit;
}

HeckmanFit fit_heckman(const Dataset& data, const FeatureMask& mask,
                       const ProbitOptions& opts) {
  const HeckmanContext ctx = make_heckman_context(data, opts);
  return fit_heckman_with(ctx, data, mask);
}

std::pair<double, std::optional<double>> estimate_sigma_rho(
    const Eigen::VectorXd& residuals, double beta_h_hat,
    const Eigen::VectorXd& lambda, const Eigen::VectorXd& sel_index) {
  const Eigen::Index m = residuals.size();
  const double mse =
      kernels::sum_sq(residuals.data(), static_cast<std::size_t>(m)) /
      static_cast<double>(m);
  double correction = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    correction += lambda[i] * (-sel_index[i]) - lambda[i] * lambda[i];
  }
  correction /= static_cast<double>(m);
  const double sigma_sq = mse - beta_h_hat * beta_h_hat * correction;
  std::optional<double> rho;
  if (sigma_sq > 0.0) rho = beta_h_hat / std::sqrt(sigma_sq);
  return {sigma_sq, rho};
}

double adjusted_r2(double r2, Eigen::Index m, Eigen::Index j) {
  if (m <= j + 1)
    throw InsufficientSamples(
        "adjusted R^2 needs m > J + 1 observed samples");
  return 1.0 - (1.0 - r2) * static_cast<double>(m - 1) /
                   static_cast<double>(m - j - 1);
}

double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted) {
  const Eigen::VectorXd resid = y - fitted;
  const double ssr =
      kernels::sum_sq(resid.data(), static_cast<std::size_t>(resid.size()));
  const Eigen::VectorXd centered = y.array() - y.mean();
  const double sst = kernels::sum_sq(centered.data(),
                                     static_cast<std::size_t>(centered.size()));
  if (sst == 0.0) return ssr == 0.0 ? 1.0 : 0.0;
  return 1.0 - ssr / sst;
}

}  // namespace heckfa
