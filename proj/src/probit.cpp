#include "heckfa/probit.hpp"

#include <cmath>

#include "heckfa/errors.hpp"
#include "heckfa/simd/kernels.hpp"

namespace heckfa {
namespace {

constexpr double kProbClip = 1e-12;

MatrixRM design_with_intercept(const Dataset& data) {
  MatrixRM design(data.n(), data.k() + 1);
  design.col(0).setOnes();
  design.rightCols(data.k()) = data.x_sel;
  return design;
}

double log_likelihood_of_index(const Dataset& data,
                               const Eigen::VectorXd& index,
                               Eigen::VectorXd& pdf, Eigen::VectorXd& cdf) {
  const auto n = static_cast<std::size_t>(data.n());
  kernels::norm_pdf_cdf(index.data(), n, pdf.data(), cdf.data());
  double ll = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double p =
        std::min(std::max(cdf[i], kProbClip), 1.0 - kProbClip);
    ll += data.s[i] ? std::log(p) : std::log1p(-p);
  }
  return ll;
}

}  // namespace

double probit_log_likelihood(const Dataset& data, const Eigen::VectorXd& gamma) {
  const MatrixRM design = design_with_intercept(data);
  Eigen::VectorXd index(data.n());
  kernels::row_dots(design.data(), static_cast<std::size_t>(design.rows()),
                    static_cast<std::size_t>(design.cols()),
                    static_cast<std::size_t>(design.cols()), gamma.data(),
                    index.data());
  Eigen::VectorXd pdf(data.n()), cdf(data.n());
  return log_likelihood_of_index(data, index, pdf, cdf);
}

ProbitFit fit_probit(const Dataset& data, const ProbitOptions& opts) {
  data.validate();
  bool any_zero = false, any_one = false;
  for (std::uint8_t si : data.s) (si ? any_one : any_zero) = true;
  if (!any_zero || !any_one)
    throw DegenerateSelection(
        "probit requires both selected and unselected samples");

  const MatrixRM design = design_with_intercept(data);
  const auto n = static_cast<std::size_t>(design.rows());
  const auto p = static_cast<std::size_t>(design.cols());

  Eigen::VectorXd gamma = Eigen::VectorXd::Zero(design.cols());
  Eigen::VectorXd index(data.n()), pdf(data.n()), cdf(data.n());
  Eigen::VectorXd score_w(data.n()), info_w(data.n());
  Eigen::VectorXd gradient(design.cols());
  MatrixRM hessian(design.cols(), design.cols());

  auto eval_index = [&](const Eigen::VectorXd& g, Eigen::VectorXd& out) {
    kernels::row_dots(design.data(), n, p, p, g.data(), out.data());
  };

  eval_index(gamma, index);
  double ll = log_likelihood_of_index(data, index, pdf, cdf);

  ProbitFit fit;
  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    for (Eigen::Index i = 0; i < data.n(); ++i) {
      const double pc = std::min(std::max(cdf[i], kProbClip), 1.0 - kProbClip);
      const double denom = pc * (1.0 - pc);
      score_w[i] = pdf[i] * (static_cast<double>(data.s[i]) - pc) / denom;
      info_w[i] = pdf[i] * pdf[i] / denom;
    }
    kernels::col_weighted_sums(design.data(), n, p, p, score_w.data(),
                               gradient.data());

    if (gradient.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance) {
      fit.gamma_hat = gamma;
      fit.log_likelihood = ll;
      fit.iterations = iter - 1;
      fit.converged = true;
      return fit;
    }

    kernels::weighted_gram(design.data(), n, p, p, info_w.data(),
                           hessian.data());
    const Eigen::MatrixXd info = hessian;  // column-major copy for the solver
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    Eigen::VectorXd step = ldlt.solve(gradient);
    if (ldlt.info() != Eigen::Success || !step.allFinite())
      throw NonConvergence(
          "probit information matrix numerically singular (collinear "
          "features or separation)");

    // step-halving keeps the likelihood non-decreasing
    double scale = 1.0;
    Eigen::VectorXd candidate;
    Eigen::VectorXd cand_index(data.n());
    double cand_ll = 0.0;
    int halvings = 0;
    for (;; ++halvings) {
      candidate = gamma + scale * step;
      eval_index(candidate, cand_index);
      cand_ll = log_likelihood_of_index(data, cand_index, pdf, cdf);
      if (cand_ll >= ll || halvings >= opts.max_step_halvings) break;
      scale *= 0.5;
    }
    gamma = candidate;
    index = cand_index;
    ll = cand_ll;
  }

  throw NonConvergence("probit did not converge within the iteration budget");
}

}  // namespace heckfa
