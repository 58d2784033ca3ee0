#include "srl/tape.hpp"

#include <cmath>

#include "srl/error.hpp"

namespace srl {

ParamId ParamStore::add(std::string name, Matrix value, bool trainable) {
  if (contains(name)) throw Error("duplicate parameter name '" + name + "'");
  params_.push_back({std::move(name), std::move(value), trainable});
  return params_.size() - 1;
}

ParamId ParamStore::find(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i].name == name) return i;
  throw Error("unknown parameter '" + name + "'");
}

bool ParamStore::contains(const std::string& name) const {
  for (const auto& p : params_)
    if (p.name == name) return true;
  return false;
}

std::size_t ParamStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += static_cast<std::size_t>(p.value.size());
  return n;
}

Gradients::Gradients(const ParamStore& store) : store_(&store), grads_(store.size()) {}

Matrix& Gradients::at(ParamId id) {
  auto& g = grads_.at(id);
  if (g.size() == 0) {
    const auto& v = (*store_)[id].value;
    g = Matrix::Zero(v.rows(), v.cols());
  }
  return g;
}

void Gradients::zero() {
  for (auto& g : grads_) g.setZero();
}

void Gradients::add(const Gradients& other) {
  if (other.grads_.size() != grads_.size()) throw ShapeError("gradient sets differ in size");
  for (std::size_t i = 0; i < grads_.size(); ++i)
    if (other.has(i)) at(i) += other.grads_[i];
}

void Gradients::scale(double s) {
  for (auto& g : grads_) g *= s;
}

double Gradients::global_norm() const {
  double sq = 0;
  for (const auto& g : grads_) sq += g.squaredNorm();
  return std::sqrt(sq);
}

const Matrix& Var::value() const { return tape->value(id); }
const Matrix& Var::grad() const { return tape->grad(id); }

Var Tape::constant(Matrix value) { return record("constant", std::move(value), false, nullptr); }

Var Tape::input(Matrix value) { return record("input", std::move(value), true, nullptr); }

Var Tape::param(const ParamStore& store, ParamId id) {
  Node n;
  n.ref = &store[id].value;
  n.requires_grad = store[id].trainable;
  n.param = id;
  nodes_.push_back(std::move(n));
  return {this, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Var Tape::record(const char* op, Matrix value, bool requires_grad, BackwardFn backward) {
  if (!value.allFinite()) throw NumericError(std::string("non-finite value produced by ") + op);
  Node n;
  n.own = std::move(value);
  n.requires_grad = requires_grad;
  if (requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return {this, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

const Matrix& Tape::value(std::uint32_t id) const { return nodes_.at(id).value(); }

const Matrix& Tape::grad(std::uint32_t id) const {
  const auto& n = nodes_.at(id);
  if (n.grad.size() == 0 && n.value().size() != 0)
    throw Error("no gradient recorded for this value");
  return n.grad;
}

Matrix& Tape::grad_buffer(std::uint32_t id) {
  auto& n = nodes_[id];
  if (n.grad.size() == 0) n.grad = Matrix::Zero(n.value().rows(), n.value().cols());
  return n.grad;
}

void Tape::backward(Var loss, Gradients* sink) {
  if (loss.tape != this) throw Error("loss is not recorded on this tape");
  const auto& lv = value(loss.id);
  if (lv.rows() != 1 || lv.cols() != 1) throw ShapeError("backward needs a scalar loss");
  sink_ = sink;
  for (auto& n : nodes_) n.grad.resize(0, 0);
  if (!nodes_[loss.id].requires_grad) return;
  grad_buffer(loss.id)(0, 0) = 1.0;
  for (std::uint32_t i = loss.id + 1; i-- > 0;) {
    auto& n = nodes_[i];
    if (!n.requires_grad || n.grad.size() == 0) continue;
    if (n.backward) {
      n.backward(*this, i);
    } else if (n.ref && sink_) {
      sink_->at(n.param) += n.grad;
    }
  }
  sink_ = nullptr;
}

}  // namespace srl
