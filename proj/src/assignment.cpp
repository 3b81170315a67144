#include "heckfa/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heckfa/errors.hpp"
#include "heckfa/simd/kernels.hpp"

namespace heckfa {
namespace {

void project_column(double& p0, double& p1) {
  p0 = std::clamp(p0, kPiEpsilon, 1.0 - kPiEpsilon);
  p1 = std::clamp(p1, kPiEpsilon, 1.0 - kPiEpsilon);
  const double sum = p0 + p1;
  p0 /= sum;
  p1 /= sum;
}

// sign with sign(0) := 0, the MAE subgradient convention
inline double sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Shared chain tail of the pi gradient: given the per-feature residual
// factor S_k (already scaled), multiply in beta_k and the softmax partials.
Eigen::Matrix2Xd chain_gradient(const Eigen::VectorXd& s_factor,
                                const HeckmanFit& fit, const GumbelDraw& draw,
                                const AssignmentProbabilities& pi) {
  const Eigen::Index k = pi.features();
  Eigen::Matrix2Xd grad(2, k);
  const double tau = draw.tau;
  for (Eigen::Index c = 0; c < k; ++c) {
    const double beta_k = fit.beta_hat[c + 1];
    const double base = s_factor[c] * beta_k;
    // Eq-style softmax partial: prod_r exp(l_r) / (sum_r exp(l_r))^2 equals
    // z_soft(0,c) * z_soft(1,c).
    const double dz = draw.z_soft(0, c) * draw.z_soft(1, c);
    grad(1, c) = base * dz / (tau * pi.pi(1, c));
    grad(0, c) = -base * dz / (tau * pi.pi(0, c));
  }
  return grad;
}

}  // namespace

AssignmentProbabilities AssignmentProbabilities::constant_init(Eigen::Index k,
                                                               double c) {
  if (!(c > 0.0 && c < 1.0))
    throw InvalidArgument("initial assignment probability must be in (0, 1)");
  AssignmentProbabilities out;
  out.pi.resize(2, k);
  out.pi.row(0).setConstant(1.0 - c);
  out.pi.row(1).setConstant(c);
  for (Eigen::Index i = 0; i < k; ++i) project_column(out.pi(0, i), out.pi(1, i));
  return out;
}

void AssignmentProbabilities::validate() const {
  for (Eigen::Index c = 0; c < pi.cols(); ++c) {
    for (int q = 0; q < 2; ++q) {
      const double v = pi(q, c);
      if (!(v >= kPiEpsilon && v <= 1.0 - kPiEpsilon))
        throw InvalidArgument("assignment probability outside [eps, 1-eps]");
    }
    if (std::fabs(pi(0, c) + pi(1, c) - 1.0) > 1e-12)
      throw InvalidArgument("assignment probability column does not sum to 1");
  }
}

GumbelDraw make_draw(const AssignmentProbabilities& pi,
                     const Eigen::Matrix2Xd& g, double tau) {
  if (!(tau > 0.0)) throw InvalidArgument("softmax temperature must be > 0");
  const Eigen::Index k = pi.features();
  GumbelDraw draw;
  draw.g = g;
  draw.tau = tau;
  draw.z_hard.setZero(2, k);
  draw.z_soft.resize(2, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const double l0 = (std::log(pi.pi(0, c)) + g(0, c)) / tau;
    const double l1 = (std::log(pi.pi(1, c)) + g(1, c)) / tau;
    draw.z_hard(l1 > l0 ? 1 : 0, c) = 1.0;
    const double mx = std::max(l0, l1);
    const double e0 = std::exp(l0 - mx);
    const double e1 = std::exp(l1 - mx);
    draw.z_soft(0, c) = e0 / (e0 + e1);
    draw.z_soft(1, c) = e1 / (e0 + e1);
  }
  return draw;
}

GumbelDraw draw_gumbel(const AssignmentProbabilities& pi, double tau,
                       rng::Stream& stream) {
  Eigen::Matrix2Xd g(2, pi.features());
  for (Eigen::Index c = 0; c < pi.features(); ++c) {
    g(0, c) = stream.gumbel();
    g(1, c) = stream.gumbel();
  }
  return make_draw(pi, g, tau);
}

FeatureMask mask_from_draw(const GumbelDraw& draw) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(draw.z_hard.cols()));
  for (Eigen::Index c = 0; c < draw.z_hard.cols(); ++c)
    bits[static_cast<std::size_t>(c)] = draw.z_hard(1, c) > 0.5 ? 1 : 0;
  return FeatureMask::from_bits(std::move(bits));
}

MatrixRM masked_features(const Dataset& data, const FeatureMask& mask) {
  mask.validate();  // throws AllZeroMask on empty assignments
  MatrixRM x_pred = data.x_sel;
  for (Eigen::Index c = 0; c < data.k(); ++c) {
    if (!mask.assigned[static_cast<std::size_t>(c)]) x_pred.col(c).setZero();
  }
  return x_pred;
}

double mae_loss(const HeckmanFit& fit, const Dataset& data) {
  const Eigen::Index m = data.m;
  if (fit.residuals.size() != m)
    throw InvalidArgument("fit residuals do not match dataset");
  return kernels::sum_abs(fit.residuals.data(), static_cast<std::size_t>(m)) /
         static_cast<double>(m);
}

Eigen::Matrix2Xd mae_gradient(const Dataset& data, const HeckmanFit& fit,
                              const GumbelDraw& draw,
                              const AssignmentProbabilities& pi) {
  const Eigen::Index m = data.m;
  const Eigen::Index k = data.k();

  // relaxed forward pass: column weights z_soft(1,k) * beta_k
  Eigen::VectorXd col_w(k);
  for (Eigen::Index c = 0; c < k; ++c)
    col_w[c] = draw.z_soft(1, c) * fit.beta_hat[c + 1];
  Eigen::VectorXd yhat(m);
  kernels::row_dots(data.x_sel.data(), static_cast<std::size_t>(m),
                    static_cast<std::size_t>(k), static_cast<std::size_t>(k),
                    col_w.data(), yhat.data());
  yhat.array() += fit.beta_hat[0];
  yhat += fit.beta_h_hat * fit.lambda_hat;

  Eigen::VectorXd signs(m);
  for (Eigen::Index i = 0; i < m; ++i) signs[i] = sgn(data.y[i] - yhat[i]);

  Eigen::VectorXd s_factor(k);
  kernels::col_weighted_sums(data.x_sel.data(), static_cast<std::size_t>(m),
                             static_cast<std::size_t>(k),
                             static_cast<std::size_t>(k), signs.data(),
                             s_factor.data());
  s_factor *= -1.0 / static_cast<double>(m);

  return chain_gradient(s_factor, fit, draw, pi);
}

Eigen::Matrix2Xd mse_gradient_probe(const Dataset& data, const HeckmanFit& fit,
                                    const GumbelDraw& draw,
                                    const AssignmentProbabilities& pi) {
  const Eigen::Index m = data.m;
  const Eigen::Index k = data.k();
  Eigen::VectorXd s_factor(k);
  kernels::col_weighted_sums(data.x_sel.data(), static_cast<std::size_t>(m),
                             static_cast<std::size_t>(k),
                             static_cast<std::size_t>(k),
                             fit.residuals.data(), s_factor.data());
  s_factor *= -2.0 / static_cast<double>(m);
  return chain_gradient(s_factor, fit, draw, pi);
}

TrainResult train_assignment(const Dataset& data, const TrainOptions& opts) {
  data.validate();
  if (opts.epochs < 0) throw InvalidArgument("epoch count must be >= 0");
  if (!(opts.alpha >= 0.0)) throw InvalidArgument("learning rate must be >= 0");

  const HeckmanContext ctx = make_heckman_context(data);
  AssignmentProbabilities pi =
      AssignmentProbabilities::constant_init(data.k(), opts.c);
  rng::Stream stream(rng::derive(opts.seed, {rng::kTagTrain}));

  TrainResult result;
  result.trace.epochs.reserve(static_cast<std::size_t>(opts.epochs));

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    GumbelDraw draw;
    FeatureMask mask;
    bool fitted = false;
    HeckmanFit fit;
    std::optional<SingularDesign> pending_singular;

    for (int attempt = 0; attempt <= opts.redraw_budget; ++attempt) {
      draw = draw_gumbel(pi, opts.tau, stream);
      mask = mask_from_draw(draw);
      if (mask.j_count == 0) continue;
      try {
        fit = fit_heckman_with(ctx, data, mask);
        fitted = true;
        break;
      } catch (const SingularDesign& e) {
        pending_singular = e;
      }
    }

    EpochRecord record;
    record.epoch = epoch;
    if (!fitted) {
      if (saw_singular) throw pending_singular;
      // every redraw produced an all-zero mask: skip this epoch's update
      record.skipped = true;
      record.mae = std::numeric_limits<double>::quiet_NaN();
      record.mask = mask;
      if (opts.record_pi) record.pi_snapshot = pi.pi;
      result.trace.epochs.push_back(std::move(record));
      continue;
    }

    record.mae = mae_loss(fit, data);
    record.mask = mask;

    const Eigen::Matrix2Xd grad = mae_gradient(data, fit, draw, pi);
    pi.pi -= opts.alpha * grad;
    for (Eigen::Index c = 0; c < pi.features(); ++c)
      project_column(pi.pi(0, c), pi.pi(1, c));
    pi.validate();

    if (opts.record_pi) record.pi_snapshot = pi.pi;
    result.trace.epochs.push_back(std::move(record));
  }

  result.pi_hat = std::move(pi);
  return result;
}

}  // namespace heckfa
