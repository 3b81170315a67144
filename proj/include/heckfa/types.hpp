#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace heckfa {

// Row-major so that sample rows are contiguous for the batch kernels.
using MatrixRM =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Biased training set: n samples with K selection features each; the first m
// rows carry an observed outcome (s_i = 1), the remaining n - m rows have the
// outcome hidden (stored as NaN so accidental reads poison downstream math).
struct Dataset {
  MatrixRM x_sel;                          // n x K selection features
  Eigen::VectorXd y;                       // length n; entries >= m are NaN
  std::vector<std::uint8_t> s;             // selection indicator, 0/1
  Eigen::Index m = 0;                      // observed-outcome count
  std::vector<std::string> feature_names;  // K names

  Eigen::Index n() const { return x_sel.rows(); }
  Eigen::Index k() const { return x_sel.cols(); }

  // Throws InvalidArgument / NonFinite when an invariant is broken:
  // observed-first ordering, 1 <= m <= n, K >= 2, finite features, finite
  // observed outcomes.
  void validate() const;
};

// Which selection features are assigned as prediction features. An all-zero
// mask may exist in memory (a Gumbel draw can produce one) but is rejected
// before any fit.
struct FeatureMask {
  std::vector<std::uint8_t> assigned;
  int j_count = 0;

  static FeatureMask all_ones(Eigen::Index k);
  static FeatureMask from_bits(std::vector<std::uint8_t> bits);
  static FeatureMask from_indices(Eigen::Index k,
                                  const std::vector<int>& indices);

  Eigen::Index k() const { return static_cast<Eigen::Index>(assigned.size()); }
  bool operator==(const FeatureMask& other) const = default;

  // Throws AllZeroMask when empty, InvalidArgument on j_count mismatch.
  void validate() const;
};

struct ProbitFit {
  Eigen::VectorXd gamma_hat;  // K+1 coefficients, intercept first
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Two-step fit: probit stage, IMR column, augmented least squares, and the
// post-fit diagnostics used by the extraction gate.
struct HeckmanFit {
  Eigen::VectorXd beta_hat;    // K+1, intercept first, zeros at unassigned k
  double beta_h_hat = 0.0;     // coefficient on the IMR column (= rho * sigma)
  Eigen::VectorXd lambda_hat;  // IMR per observed sample, length m
  double sigma_sq_hat = 0.0;
  std::optional<double> rho_hat;  // empty when sigma_sq_hat <= 0
  double r2 = 0.0;
  double r2_adj = 0.0;
  FeatureMask mask;
  double imr_condition_number = 0.0;  // condition of the augmented design

  // Fitted values / residuals on the observed samples (include the IMR term).
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;

  // Population-level prediction x^(p) beta_hat; the IMR term is a selected-
  // sample correction and is not part of out-of-sample prediction.
  Eigen::VectorXd predict_population(const MatrixRM& x) const;
};

}  // namespace heckfa
