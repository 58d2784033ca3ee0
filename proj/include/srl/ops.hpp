#ifndef SRL_OPS_HPP
#define SRL_OPS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "srl/rng.hpp"
#include "srl/tape.hpp"

namespace srl {

// Differentiable operations over tape values. Every op validates shapes and
// throws ShapeError on mismatch.

Var matmul(Var a, Var b);
Var add(Var a, Var b);
/// a (n x m) plus a 1 x m row added to every row.
Var add_row(Var a, Var row);
Var hadamard(Var a, Var b);
Var scale(Var a, double s);
Var sigmoid(Var x);
Var tanh(Var x);
Var transpose(Var x);
Var softmax_rows(Var x);
Var sum(Var x);

/// axis 0 stacks rows, axis 1 joins columns. Empty tensors are allowed.
Var concat(std::span<const Var> parts, int axis);
Var slice_rows(Var x, Eigen::Index begin, Eigen::Index count);
Var slice_cols(Var x, Eigen::Index begin, Eigen::Index count);
/// Row-major flatten into a single row.
Var flatten(Var x);
/// Repeats a 1 x m row n times.
Var repeat_rows(Var row, Eigen::Index n);

/// Rows `indices` of a stored table; sparse gradient into the sink.
Var gather_rows(Tape& tape, const ParamStore& store, ParamId table, std::span<const std::size_t> indices);

/// Inverted dropout. Identity in eval mode or when keep_prob is 1.
Var dropout(Var x, double keep_prob, Rng& rng, bool training);

/// Mean over unmasked rows of -log softmax(logits)[target], log clamped at 1e-12.
Var cross_entropy(Var logits, std::span<const std::size_t> targets, const std::vector<bool>& mask);

inline Var operator+(Var a, Var b) { return add(a, b); }

}  // namespace srl

#endif  // SRL_OPS_HPP
