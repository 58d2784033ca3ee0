#ifndef SRL_ADAM_HPP
#define SRL_ADAM_HPP

#include <cmath>
#include <vector>

#include "srl/tape.hpp"

namespace srl {

struct AdamConfig {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam update of one tensor, in place. `step` is 1-based.
template <typename Derived, typename G>
void adam_update(Eigen::MatrixBase<Derived>& x, const Eigen::MatrixBase<G>& grad,
                 MatrixX<typename Derived::Scalar>& m, MatrixX<typename Derived::Scalar>& v, long step,
                 const AdamConfig& c) {
  using Scalar = typename Derived::Scalar;
  m = c.beta1 * m + (1 - c.beta1) * grad;
  v = c.beta2 * v + (1 - c.beta2) * grad.cwiseAbs2();
  const Scalar m_corr = 1 - std::pow(c.beta1, static_cast<Scalar>(step));
  const Scalar v_corr = 1 - std::pow(c.beta2, static_cast<Scalar>(step));
  x.array() -= c.lr * (m.array() / m_corr) / ((v.array() / v_corr).sqrt() + c.eps);
}

struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  long step = 0;
};

/// One optimizer step over every trainable parameter. Parameters without a
/// gradient buffer are updated with a zero gradient.
void adam_step(ParamStore& params, const Gradients& grads, AdamState& state, const AdamConfig& config);

}  // namespace srl

#endif  // SRL_ADAM_HPP
