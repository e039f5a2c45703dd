#include "ll/vdc.hpp"

#include <random>

#include "ll/errors.hpp"

namespace ll {

VectorSequence::VectorSequence(Eigen::MatrixXd columns) : cols_(std::move(columns)) {
  if (cols_.rows() < 1 || cols_.cols() < 1)
    throw ParamError("vector sequence needs dim >= 1 and length >= 1");
  norm_bound_ = 0.0;
  for (Eigen::Index j = 0; j < cols_.cols(); ++j)
    norm_bound_ = std::max(norm_bound_, cols_.col(j).norm());
}

VectorSequence VectorSequence::orthonormal(std::int64_t dim, std::int64_t length) {
  if (length > dim)
    throw ParamError("orthonormal sequence needs dim >= length (got dim " +
                     std::to_string(dim) + ", length " + std::to_string(length) + ")");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, length);
  for (Eigen::Index j = 0; j < length; ++j) m(j, j) = 1.0;
  return VectorSequence(std::move(m));
}

VectorSequence VectorSequence::constant(std::int64_t dim, std::int64_t length) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, length);
  for (Eigen::Index j = 0; j < length; ++j) m(0, j) = 1.0;
  return VectorSequence(std::move(m));
}

VectorSequence VectorSequence::alternating(std::int64_t dim, std::int64_t length) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, length);
  for (Eigen::Index j = 0; j < length; ++j) m(0, j) = (j % 2 == 0) ? 1.0 : -1.0;
  return VectorSequence(std::move(m));
}

VectorSequence VectorSequence::random(std::int64_t dim, std::int64_t length,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(dim, length);
  for (Eigen::Index j = 0; j < length; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = gauss(rng);
    const double norm = m.col(j).norm();
    if (norm > 0) m.col(j) /= norm;
  }
  return VectorSequence(std::move(m));
}

std::vector<ShiftedCorrelationRow> shifted_correlations(const VectorSequence& xs,
                                                        std::int64_t d_max) {
  const std::int64_t m = xs.length();
  if (d_max < 1 || d_max >= m)
    throw ParamError("d_max must lie in [1, M-1], got " + std::to_string(d_max));
  std::vector<ShiftedCorrelationRow> rows;
  const Eigen::MatrixXd& x = xs.columns();
  for (std::int64_t d = 1; d <= d_max; ++d) {
    double sum = 0.0;
    for (std::int64_t n = 1; n + d <= m; ++n) sum += x.col(n + d - 1).dot(x.col(n - 1));
    rows.push_back({d, sum / static_cast<double>(m - d)});
  }
  return rows;
}

VdcBound vdc_bound(const VectorSequence& xs, std::int64_t block) {
  const std::int64_t m = xs.length();
  if (block < 1 || block > m)
    throw ParamError("block must lie in [1, M], got " + std::to_string(block));
  const std::int64_t n = block;
  const Eigen::MatrixXd x = xs.columns().leftCols(n);
  const Eigen::MatrixXd gram = x.transpose() * x;

  VdcBound out;
  out.lhs = gram.sum() / (static_cast<double>(n) * static_cast<double>(n));

  double max_diag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) max_diag = std::max(max_diag, gram(i, i));
  double cross = 0.0;
  for (std::int64_t d = 1; d < n; ++d) {
    double sup = 0.0;
    for (std::int64_t k = 0; k + d < n; ++k) sup = std::max(sup, std::abs(gram(k + d, k)));
    cross += static_cast<double>(n - d) * sup;
  }
  out.rhs = max_diag / static_cast<double>(n) +
            2.0 * cross / (static_cast<double>(n) * static_cast<double>(n));
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

}  // namespace ll
