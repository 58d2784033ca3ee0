#ifndef SRL_TAPE_HPP
#define SRL_TAPE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "srl/linalg.hpp"

namespace srl {

using ParamId = std::size_t;

/// Named model tensor. Frozen parameters never receive gradients.
struct Parameter {
  std::string name;
  Matrix value;
  bool trainable = true;
};

/// Ordered parameter registry; order and names define the checkpoint layout.
class ParamStore {
 public:
  ParamId add(std::string name, Matrix value, bool trainable = true);

  std::size_t size() const { return params_.size(); }
  Parameter& operator[](ParamId id) { return params_.at(id); }
  const Parameter& operator[](ParamId id) const { return params_.at(id); }
  /// Throws Error when the name is unknown.
  ParamId find(const std::string& name) const;
  bool contains(const std::string& name) const;

  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

  std::size_t scalar_count() const;

 private:
  std::vector<Parameter> params_;
};

/// Gradient accumulators aligned with a ParamStore. Buffers are allocated on first use.
class Gradients {
 public:
  explicit Gradients(const ParamStore& store);

  Matrix& at(ParamId id);
  bool has(ParamId id) const { return id < grads_.size() && grads_[id].size() > 0; }
  const Matrix& get(ParamId id) const { return grads_.at(id); }
  std::size_t size() const { return grads_.size(); }

  void zero();
  void add(const Gradients& other);
  void scale(double s);
  double global_norm() const;

 private:
  const ParamStore* store_;
  std::vector<Matrix> grads_;
};

class Tape;

/// Handle to a value recorded on a Tape.
struct Var {
  Tape* tape = nullptr;
  std::uint32_t id = 0;

  const Matrix& value() const;
  const Matrix& grad() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
};

/// Records forward operations in execution order and replays them in reverse.
///
/// A tape serves exactly one forward/backward pass; instances processed in
/// parallel each own a tape.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::uint32_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Leaf without gradient.
  Var constant(Matrix value);
  /// Leaf whose gradient is readable through Var::grad after backward.
  Var input(Matrix value);
  /// Leaf referencing a stored parameter without copying it.
  Var param(const ParamStore& store, ParamId id);

  /// Records an op result. `backward` receives the node's accumulated gradient
  /// through grad(self) and pushes contributions into its inputs.
  Var record(const char* op, Matrix value, bool requires_grad, BackwardFn backward);

  const Matrix& value(std::uint32_t id) const;
  const Matrix& grad(std::uint32_t id) const;
  bool requires_grad(std::uint32_t id) const { return nodes_.at(id).requires_grad; }
  /// Adds `g` into the gradient buffer of `id` if it requires grad.
  template <typename Derived>
  void accumulate(std::uint32_t id, const Eigen::MatrixBase<Derived>& g);
  /// Gradient buffer of `id`, allocated as zeros on first access.
  Matrix& grad_buffer(std::uint32_t id);

  Gradients* sink() { return sink_; }

  /// Populates gradients from a scalar loss; parameter gradients are added to `sink`.
  void backward(Var loss, Gradients* sink = nullptr);

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix own;
    const Matrix* ref = nullptr;
    Matrix grad;
    bool requires_grad = false;
    ParamId param = std::numeric_limits<ParamId>::max();
    BackwardFn backward;
    const Matrix& value() const { return ref ? *ref : own; }
  };

  std::vector<Node> nodes_;
  Gradients* sink_ = nullptr;
};

template <typename Derived>
void Tape::accumulate(std::uint32_t id, const Eigen::MatrixBase<Derived>& g) {
  if (!nodes_[id].requires_grad) return;
  grad_buffer(id) += g;
}

}  // namespace srl

#endif  // SRL_TAPE_HPP
