#include "heckfa/types.hpp"

#include <cmath>
#include <numeric>

#include "heckfa/errors.hpp"
#include "heckfa/simd/kernels.hpp"

namespace heckfa {

void Dataset::validate() const {
  const Eigen::Index rows = n();
  if (rows == 0) throw InvalidArgument("dataset has no samples");
  if (k() < 2) throw InvalidArgument("dataset needs at least 2 selection features");
  if (m < 1 || m > rows)
    throw InvalidArgument("observed count m must satisfy 1 <= m <= n");
  if (static_cast<Eigen::Index>(s.size()) != rows)
    throw InvalidArgument("selection indicator length != n");
  if (!feature_names.empty() &&
      static_cast<Eigen::Index>(feature_names.size()) != k())
    throw InvalidArgument("feature_names length != K");
  if (y.size() != rows) throw InvalidArgument("outcome length != n");
  for (Eigen::Index i = 0; i < rows; ++i) {
    const bool observed = i < m;
    if ((s[i] != 0) != observed)
      throw InvalidArgument("samples must be ordered observed-first with s matching");
  }
  if (!x_sel.allFinite())
    throw NonFinite("selection feature matrix contains non-finite values");
  if (!y.head(m).allFinite())
    throw NonFinite("observed outcomes contain non-finite values");
}

FeatureMask FeatureMask::all_ones(Eigen::Index k) {
  FeatureMask mask;
  mask.assigned.assign(static_cast<std::size_t>(k), 1);
  mask.j_count = static_cast<int>(k);
  return mask;
}

FeatureMask FeatureMask::from_bits(std::vector<std::uint8_t> bits) {
  FeatureMask mask;
  mask.assigned = std::move(bits);
  mask.j_count = static_cast<int>(
      std::accumulate(mask.assigned.begin(), mask.assigned.end(), 0));
  return mask;
}

FeatureMask FeatureMask::from_indices(Eigen::Index k,
                                      const std::vector<int>& indices) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(k), 0);
  for (int idx : indices) bits.at(static_cast<std::size_t>(idx)) = 1;
  return from_bits(std::move(bits));
}

void FeatureMask::validate() const {
  int ones = 0;
  for (std::uint8_t b : assigned) {
    if (b > 1) throw InvalidArgument("mask entries must be 0/1");
    ones += b;
  }
  if (ones != j_count) throw InvalidArgument("mask j_count does not match bits");
  if (j_count == 0) throw AllZeroMask("all-zero feature mask cannot be fitted");
}

Eigen::VectorXd HeckmanFit::predict_population(const MatrixRM& x) const {
  if (x.cols() + 1 != beta_hat.size())
    throw InvalidArgument("feature count does not match fitted coefficients");
  Eigen::VectorXd out(x.rows());
  kernels::row_dots(x.data(), static_cast<std::size_t>(x.rows()),
                    static_cast<std::size_t>(x.cols()),
                    static_cast<std::size_t>(x.cols()),
                    beta_hat.data() + 1, out.data());
  out.array() += beta_hat[0];
  return out;
}

}  // namespace heckfa
