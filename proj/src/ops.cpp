#include "srl/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srl/error.hpp"

namespace srl {

namespace {

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const char* op, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
}

bool any_grad(Var a) { return a.tape->requires_grad(a.id); }
bool any_grad(Var a, Var b) { return any_grad(a) || any_grad(b); }

}  // namespace

Var matmul(Var a, Var b) {
  const auto& av = a.value();
  const auto& bv = b.value();
  if (av.cols() != bv.rows())
    throw ShapeError("matmul: inner dimensions differ " + shape_str(av) + " * " + shape_str(bv));
  Matrix c = av * bv;
  return a.tape->record("matmul", std::move(c), any_grad(a, b), [a, b](Tape& t, std::uint32_t self) {
    const auto& g = t.grad(self);
    if (t.requires_grad(a.id)) t.accumulate(a.id, g * t.value(b.id).transpose());
    if (t.requires_grad(b.id)) t.accumulate(b.id, t.value(a.id).transpose() * g);
  });
}

Var add(Var a, Var b) {
  require_same_shape("add", a.value(), b.value());
  Matrix c = a.value() + b.value();
  return a.tape->record("add", std::move(c), any_grad(a, b), [a, b](Tape& t, std::uint32_t self) {
    t.accumulate(a.id, t.grad(self));
    t.accumulate(b.id, t.grad(self));
  });
}

Var add_row(Var a, Var row) {
  const auto& av = a.value();
  const auto& rv = row.value();
  if (rv.rows() != 1 || rv.cols() != av.cols())
    throw ShapeError("add_row: " + shape_str(rv) + " cannot broadcast over " + shape_str(av));
  Matrix c = av.rowwise() + rv.row(0);
  return a.tape->record("add_row", std::move(c), any_grad(a, row), [a, row](Tape& t, std::uint32_t self) {
    const auto& g = t.grad(self);
    t.accumulate(a.id, g);
    if (t.requires_grad(row.id)) t.accumulate(row.id, g.colwise().sum());
  });
}

Var hadamard(Var a, Var b) {
  require_same_shape("hadamard", a.value(), b.value());
  Matrix c = a.value().cwiseProduct(b.value());
  return a.tape->record("hadamard", std::move(c), any_grad(a, b), [a, b](Tape& t, std::uint32_t self) {
    const auto& g = t.grad(self);
    if (t.requires_grad(a.id)) t.accumulate(a.id, g.cwiseProduct(t.value(b.id)));
    if (t.requires_grad(b.id)) t.accumulate(b.id, g.cwiseProduct(t.value(a.id)));
  });
}

Var scale(Var a, double s) {
  Matrix c = a.value() * s;
  return a.tape->record("scale", std::move(c), any_grad(a), [a, s](Tape& t, std::uint32_t self) {
    t.accumulate(a.id, t.grad(self) * s);
  });
}

Var sigmoid(Var x) {
  Matrix y = srl::sigmoid(x.value());
  return x.tape->record("sigmoid", std::move(y), any_grad(x), [x](Tape& t, std::uint32_t self) {
    const auto& y = t.value(self);
    t.accumulate(x.id, t.grad(self).cwiseProduct(y.cwiseProduct((1.0 - y.array()).matrix())));
  });
}

Var tanh(Var x) {
  Matrix y = x.value().array().tanh().matrix();
  return x.tape->record("tanh", std::move(y), any_grad(x), [x](Tape& t, std::uint32_t self) {
    const auto& y = t.value(self);
    t.accumulate(x.id, (t.grad(self).array() * (1.0 - y.array().square())).matrix());
  });
}

Var transpose(Var x) {
  Matrix y = x.value().transpose();
  return x.tape->record("transpose", std::move(y), any_grad(x), [x](Tape& t, std::uint32_t self) {
    t.accumulate(x.id, t.grad(self).transpose());
  });
}

Var softmax_rows(Var x) {
  if (x.cols() == 0) throw ShapeError("softmax_rows: empty row");
  Matrix y = srl::softmax_rows(x.value());
  return x.tape->record("softmax_rows", std::move(y), any_grad(x), [x](Tape& t, std::uint32_t self) {
    const auto& y = t.value(self);
    const auto& g = t.grad(self);
    Eigen::VectorXd dots = g.cwiseProduct(y).rowwise().sum();
    Matrix dx = y.cwiseProduct(g - dots.replicate(1, g.cols()));
    t.accumulate(x.id, dx);
  });
}

Var sum(Var x) {
  Matrix s(1, 1);
  s(0, 0) = x.value().sum();
  return x.tape->record("sum", std::move(s), any_grad(x), [x](Tape& t, std::uint32_t self) {
    const double g = t.grad(self)(0, 0);
    const auto& v = t.value(x.id);
    t.accumulate(x.id, Matrix::Constant(v.rows(), v.cols(), g));
  });
}

Var concat(std::span<const Var> parts, int axis) {
  if (parts.empty()) throw ShapeError("concat: no inputs");
  if (axis != 0 && axis != 1) throw ShapeError("concat: axis must be 0 or 1");
  Tape* tape = parts.front().tape;
  Eigen::Index rows = 0, cols = 0;
  bool grad = false;
  // Empty tensors contribute nothing and skip the off-axis check.
  for (const auto& p : parts) {
    const auto& v = p.value();
    grad = grad || any_grad(p);
    if (v.size() == 0) continue;
    if (axis == 1) {
      if (rows != 0 && v.rows() != rows)
        throw ShapeError("concat: row counts differ (" + shape_str(v) + ")");
      rows = v.rows();
      cols += v.cols();
    } else {
      if (cols != 0 && v.cols() != cols)
        throw ShapeError("concat: column counts differ (" + shape_str(v) + ")");
      cols = v.cols();
      rows += v.rows();
    }
  }
  Matrix out(rows, cols);
  std::vector<Eigen::Index> offsets;
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    const auto& v = p.value();
    offsets.push_back(off);
    if (v.size() == 0) continue;
    if (axis == 1) {
      out.middleCols(off, v.cols()) = v;
      off += v.cols();
    } else {
      out.middleRows(off, v.rows()) = v;
      off += v.rows();
    }
  }
  std::vector<Var> inputs(parts.begin(), parts.end());
  return tape->record("concat", std::move(out), grad,
                      [inputs, offsets, axis](Tape& t, std::uint32_t self) {
                        const auto& g = t.grad(self);
                        for (std::size_t i = 0; i < inputs.size(); ++i) {
                          const auto& v = t.value(inputs[i].id);
                          if (v.size() == 0 || !t.requires_grad(inputs[i].id)) continue;
                          if (axis == 1) t.accumulate(inputs[i].id, g.middleCols(offsets[i], v.cols()));
                          else t.accumulate(inputs[i].id, g.middleRows(offsets[i], v.rows()));
                        }
                      });
}

Var slice_rows(Var x, Eigen::Index begin, Eigen::Index count) {
  const auto& v = x.value();
  if (begin < 0 || count < 0 || begin + count > v.rows())
    throw ShapeError("slice_rows: range out of bounds for " + shape_str(v));
  Matrix y = v.middleRows(begin, count);
  return x.tape->record("slice_rows", std::move(y), any_grad(x),
                        [x, begin, count](Tape& t, std::uint32_t self) {
                          t.grad_buffer(x.id).middleRows(begin, count) += t.grad(self);
                        });
}

Var slice_cols(Var x, Eigen::Index begin, Eigen::Index count) {
  const auto& v = x.value();
  if (begin < 0 || count < 0 || begin + count > v.cols())
    throw ShapeError("slice_cols: range out of bounds for " + shape_str(v));
  Matrix y = v.middleCols(begin, count);
  return x.tape->record("slice_cols", std::move(y), any_grad(x),
                        [x, begin, count](Tape& t, std::uint32_t self) {
                          t.grad_buffer(x.id).middleCols(begin, count) += t.grad(self);
                        });
}

Var flatten(Var x) {
  const auto& v = x.value();
  Matrix y = Eigen::Map<const Matrix>(v.data(), 1, v.size());
  const auto rows = v.rows(), cols = v.cols();
  return x.tape->record("flatten", std::move(y), any_grad(x), [x, rows, cols](Tape& t, std::uint32_t self) {
    t.accumulate(x.id, Eigen::Map<const Matrix>(t.grad(self).data(), rows, cols));
  });
}

Var repeat_rows(Var row, Eigen::Index n) {
  const auto& v = row.value();
  if (v.rows() != 1) throw ShapeError("repeat_rows: expected a single row, got " + shape_str(v));
  Matrix y = v.replicate(n, 1);
  return row.tape->record("repeat_rows", std::move(y), any_grad(row), [row](Tape& t, std::uint32_t self) {
    t.accumulate(row.id, t.grad(self).colwise().sum());
  });
}

Var gather_rows(Tape& tape, const ParamStore& store, ParamId table, std::span<const std::size_t> indices) {
  const auto& p = store[table];
  Matrix y(static_cast<Eigen::Index>(indices.size()), p.value.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= static_cast<std::size_t>(p.value.rows()))
      throw ShapeError("gather_rows: index out of range for '" + p.name + "'");
    y.row(static_cast<Eigen::Index>(i)) = p.value.row(static_cast<Eigen::Index>(indices[i]));
  }
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  return tape.record("gather_rows", std::move(y), p.trainable, [table, idx](Tape& t, std::uint32_t self) {
    auto* sink = t.sink();
    if (!sink) return;
    auto& g = sink->at(table);
    const auto& gy = t.grad(self);
    for (std::size_t i = 0; i < idx.size(); ++i)
      g.row(static_cast<Eigen::Index>(idx[i])) += gy.row(static_cast<Eigen::Index>(i));
  });
}

Var dropout(Var x, double keep_prob, Rng& rng, bool training) {
  if (!(keep_prob > 0.0 && keep_prob <= 1.0)) throw ConfigError("keep probability must lie in (0, 1]");
  if (!training || keep_prob == 1.0) return x;
  const auto& v = x.value();
  Matrix mask(v.rows(), v.cols());
  const double inv = 1.0 / keep_prob;
  for (Eigen::Index i = 0; i < mask.size(); ++i) mask.data()[i] = rng.bernoulli(keep_prob) ? inv : 0.0;
  Matrix y = v.cwiseProduct(mask);
  return x.tape->record("dropout", std::move(y), any_grad(x), [x, mask](Tape& t, std::uint32_t self) {
    t.accumulate(x.id, t.grad(self).cwiseProduct(mask));
  });
}

Var cross_entropy(Var logits, std::span<const std::size_t> targets, const std::vector<bool>& mask) {
  const auto& z = logits.value();
  const auto n = static_cast<std::size_t>(z.rows());
  if (targets.size() != n || mask.size() != n)
    throw ShapeError("cross_entropy: targets/mask length must equal logits rows");
  for (auto t : targets)
    if (t >= static_cast<std::size_t>(z.cols())) throw ShapeError("cross_entropy: target index out of range");
  const auto count = std::count(mask.begin(), mask.end(), true);
  if (count == 0) throw ShapeError("cross_entropy: every position is masked");
  Matrix p = srl::softmax_rows(z);
  double loss = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (mask[i]) loss -= std::log(std::max(p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(targets[i])), 1e-12));
  Matrix out(1, 1);
  out(0, 0) = loss / static_cast<double>(count);
  std::vector<std::size_t> tgt(targets.begin(), targets.end());
  return logits.tape->record(
      "cross_entropy", std::move(out), any_grad(logits),
      [logits, p = std::move(p), tgt, mask, count](Tape& t, std::uint32_t self) {
        const double g = t.grad(self)(0, 0) / static_cast<double>(count);
        Matrix dz = Matrix::Zero(p.rows(), p.cols());
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
          if (!mask[static_cast<std::size_t>(i)]) continue;
          dz.row(i) = p.row(i) * g;
          dz(i, static_cast<Eigen::Index>(tgt[static_cast<std::size_t>(i)])) -= g;
        }
        t.accumulate(logits.id, dz);
      });
}

}  // namespace srl
