#include "srl/adam.hpp"

#include "srl/error.hpp"

namespace srl {

void adam_step(ParamStore& params, const Gradients& grads, AdamState& state, const AdamConfig& config) {
  if (grads.size() != params.size()) throw ShapeError("adam_step: gradient count differs from parameter count");
  if (state.m.empty()) {
    state.m.resize(params.size());
    state.v.resize(params.size());
  }
  if (state.m.size() != params.size() || state.v.size() != params.size())
    throw ShapeError("adam_step: optimizer state does not match parameters");
  ++state.step;
  for (ParamId i = 0; i < params.size(); ++i) {
    auto& p = params[i];
    if (!p.trainable) continue;
    auto& m = state.m[i];
    auto& v = state.v[i];
    if (m.size() == 0) {
      m = Matrix::Zero(p.value.rows(), p.value.cols());
      v = Matrix::Zero(p.value.rows(), p.value.cols());
    }
    if (m.rows() != p.value.rows() || m.cols() != p.value.cols())
      throw ShapeError("adam_step: moment shape differs for '" + p.name + "'");
    if (grads.has(i)) {
      const auto& g = grads.get(i);
      if (g.rows() != p.value.rows() || g.cols() != p.value.cols())
        throw ShapeError("adam_step: gradient shape differs for '" + p.name + "'");
      adam_update(p.value, g, m, v, state.step, config);
    } else {
      adam_update(p.value, Matrix::Zero(p.value.rows(), p.value.cols()), m, v, state.step, config);
    }
  }
}

}  // namespace srl
