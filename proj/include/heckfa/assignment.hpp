#pragma once

#include <optional>
#include <vector>

#include "heckfa/heckman.hpp"
#include "heckfa/rng.hpp"
#include "heckfa/types.hpp"

namespace heckfa {

// 2 x K probability matrix: row 0 = not assigned, row 1 = assigned. Columns
// sum to one; entries are kept inside [kPiEpsilon, 1 - kPiEpsilon] so that
// log(pi) and the 1/(tau pi) gradient factor stay finite.
inline constexpr double kPiEpsilon = 1e-6;

struct AssignmentProbabilities {
  Eigen::Matrix2Xd pi;

  static AssignmentProbabilities constant_init(Eigen::Index k, double c);

  Eigen::Index features() const { return pi.cols(); }
  void validate() const;
};

// One Gumbel-Max / Gumbel-Softmax sample: the hard one-hot columns drive the
// forward pass, the tempered softmax drives the backward pass.
struct GumbelDraw {
  Eigen::Matrix2Xd g;       // standard Gumbel noise
  Eigen::Matrix2Xd z_hard;  // one-hot columns
  Eigen::Matrix2Xd z_soft;  // softmax((log pi + g)/tau) columns
  double tau = 1.0;
};

// Deterministic transform of (pi, g, tau); split out so tests can inject g.
GumbelDraw make_draw(const AssignmentProbabilities& pi,
                     const Eigen::Matrix2Xd& g, double tau);

GumbelDraw draw_gumbel(const AssignmentProbabilities& pi, double tau,
                       rng::Stream& stream);

// psi(k) = z_hard(1, k); may be all-zero, callers decide whether to redraw.
FeatureMask mask_from_draw(const GumbelDraw& draw);

// Prediction feature matrix: column k equals the selection column when
// psi(k) = 1, otherwise the zero column. Throws AllZeroMask when every
// feature is unassigned.
MatrixRM masked_features(const Dataset& data, const FeatureMask& mask);

// Mean absolute error of the fitted model on the observed samples, using the
// fit's own (hard-mask) predictions including the IMR term.
double mae_loss(const HeckmanFit& fit, const Dataset& data);

// Gradient of the MAE objective with respect to pi, chaining through the
// relaxed assignment: residual-sign factor, beta_k, x_ik, and the softmax
// partials. psi depends on z_soft(1, k) alone; the "not assigned" row couples
// in through the softmax denominator, which contributes the opposite sign.
// beta, beta_H and lambda are treated as constants; sign(0) := 0.
Eigen::Matrix2Xd mae_gradient(const Dataset& data, const HeckmanFit& fit,
                              const GumbelDraw& draw,
                              const AssignmentProbabilities& pi);

// Same chain with the MSE residual factor and the fit's least-squares
// residuals. Step-2 orthogonality forces this to a zero matrix; it exists to
// verify that fact numerically (and to show the probe reacts when the
// coefficients are perturbed away from the least-squares solution).
Eigen::Matrix2Xd mse_gradient_probe(const Dataset& data, const HeckmanFit& fit,
                                    const GumbelDraw& draw,
                                    const AssignmentProbabilities& pi);

struct EpochRecord {
  int epoch = 0;
  double mae = 0.0;
  FeatureMask mask;
  bool skipped = false;  // all-zero draws exhausted the redraw budget
  std::optional<Eigen::Matrix2Xd> pi_snapshot;
};

struct TrainTrace {
  std::vector<EpochRecord> epochs;
};

struct TrainOptions {
  double c = 0.75;       // initial assignment probability
  int epochs = 4000;     // T
  double alpha = 0.1;    // learning rate
  double tau = 1.0;      // softmax temperature
  std::uint64_t seed = 0;
  int redraw_budget = 16;
  bool record_pi = false;
};

struct TrainResult {
  AssignmentProbabilities pi_hat;
  TrainTrace trace;
};

// Learns pi by plain gradient descent on the MAE objective: fresh Gumbel
// noise every epoch, hard-mask Heckman fit, gradient step, then projection
// back to valid column distributions (clamp to [eps, 1-eps], renormalize).
TrainResult train_assignment(const Dataset& data, const TrainOptions& opts);

}  // namespace heckfa
