#ifndef LL_VDC_HPP
#define LL_VDC_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace ll {

/// A finite sequence x_1 .. x_M of real vectors, stored column-wise.
class VectorSequence {
public:
  explicit VectorSequence(Eigen::MatrixXd columns);

  std::int64_t dim() const { return cols_.rows(); }
  std::int64_t length() const { return cols_.cols(); }
  double norm_bound() const { return norm_bound_; }
  const Eigen::MatrixXd& columns() const { return cols_; }
  Eigen::VectorXd vector(std::int64_t n) const { return cols_.col(n - 1); }  // 1-based

  static VectorSequence orthonormal(std::int64_t dim, std::int64_t length);
  static VectorSequence constant(std::int64_t dim, std::int64_t length);
  static VectorSequence alternating(std::int64_t dim, std::int64_t length);
  /// Seeded unit-norm gaussian directions.
  static VectorSequence random(std::int64_t dim, std::int64_t length, std::uint64_t seed);

private:
  Eigen::MatrixXd cols_;
  double norm_bound_ = 0.0;
};

struct ShiftedCorrelationRow {
  std::int64_t d = 0;
  double average = 0.0;  // (1/(M-d)) * sum_n <x_{n+d}, x_n>
};

/// Averaged shifted inner products for d = 1 .. d_max; requires d_max < M.
std::vector<ShiftedCorrelationRow> shifted_correlations(const VectorSequence& xs,
                                                        std::int64_t d_max);

struct VdcBound {
  double lhs = 0.0;  // || (1/N) sum_{n<=N} x_n ||^2
  double rhs = 0.0;  // (1/N) max ||x||^2 + (2/N^2) sum_d (N-d) sup_n |<x_{n+d}, x_n>|
  bool holds = false;  // lhs <= rhs + 1e-9
};

/// Finitary mirror of the Cauchy-Schwarz telescoping bound: the average's
/// squared norm against the diagonal term plus worst-case cross terms.
VdcBound vdc_bound(const VectorSequence& xs, std::int64_t block);

}  // namespace ll

#endif
