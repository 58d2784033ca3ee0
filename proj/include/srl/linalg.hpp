#ifndef SRL_LINALG_HPP
#define SRL_LINALG_HPP

#include <Eigen/Dense>
#include <cmath>

namespace srl {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic, Eigen::RowMajor>;

using Matrix = MatrixX<double>;
using RowVector = RowVectorX<double>;

/// Row-wise softmax with max subtraction.
template <typename Derived>
MatrixX<typename Derived::Scalar> softmax_rows(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> y = x;
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    auto row = y.row(i);
    const Scalar m = row.maxCoeff();
    row = (row.array() - m).exp();
    row /= row.sum();
  }
  return y;
}

template <typename Derived>
MatrixX<typename Derived::Scalar> sigmoid(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return x.unaryExpr([](Scalar v) {
    if (v >= 0) return Scalar(1) / (Scalar(1) + std::exp(-v));
    const Scalar e = std::exp(v);
    return e / (Scalar(1) + e);
  });
}

/// Index of the largest entry of each row; ties resolve to the lowest index.
template <typename Derived>
Eigen::Index argmax_row(const Eigen::MatrixBase<Derived>& x, Eigen::Index row) {
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < x.cols(); ++j)
    if (x(row, j) > x(row, best)) best = j;
  return best;
}

}  // namespace srl

#endif  // SRL_LINALG_HPP
