#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "srl/error.hpp"
#include "srl/linalg.hpp"
#include "srl/ops.hpp"
#include "srl/tape.hpp"

using namespace srl;

namespace {

using UnaryOp = std::function<Var(Tape&, Var)>;

// Gradient of sum(w ⊙ op(x)) for a fixed random weighting w, by the tape and by
// central differences.
void check_unary(const UnaryOp& op, const Matrix& x0, std::uint64_t seed) {
  Rng rng(seed);
  Matrix w;
  {
    Tape t;
    w = test::random_matrix(op(t, t.constant(x0)).rows(), op(t, t.constant(x0)).cols(), rng);
  }
  Tape tape;
  const Var x = tape.input(x0);
  const Var loss = sum(hadamard(op(tape, x), tape.constant(w)));
  tape.backward(loss);
  const auto f = [&](const Matrix& xv) {
    Tape t;
    return sum(hadamard(op(t, t.constant(xv)), t.constant(w))).value()(0, 0);
  };
  const Matrix numeric = test::numeric_gradient(f, x0, 1e-5);
  CHECK(test::max_relative_error(x.grad(), numeric) < 1e-6);
}

}  // namespace

TEST_CASE("softmax rows") {
  Matrix x(3, 3);
  x << 0, 0, 0, 1000, 1000, 1000, 1, 2, 3;
  const Matrix y = softmax_rows(x);
  CHECK(y(0, 0) == doctest::Approx(1.0 / 3));
  CHECK(y(1, 2) == doctest::Approx(1.0 / 3));
  CHECK(std::abs(y(2, 0) - 0.09003) < 1e-5);
  CHECK(std::abs(y(2, 1) - 0.24473) < 1e-5);
  CHECK(std::abs(y(2, 2) - 0.66524) < 1e-5);
  Matrix two(1, 2);
  two << 0, 0;
  CHECK(softmax_rows(two)(0, 1) == 0.5);
}

TEST_CASE("property: softmax rows sum to one") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = rng.uniform_int(1, 12), c = rng.uniform_int(1, 12);
    const Matrix x = test::random_matrix(r, c, rng, rng.uniform(0.1, 800.0));
    const Matrix y = softmax_rows(x);
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      CHECK(std::abs(y.row(i).sum() - 1.0) <= 1e-9);
      CHECK(y.row(i).minCoeff() >= 0.0);
    }
    Tape tape;
    const Matrix z = softmax_rows(tape.constant(x)).value();
    CHECK((z - y).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("elementwise nonlinearities") {
  Matrix big(1, 2);
  big << 50, -50;
  Tape tape;
  const Matrix t = tanh(tape.constant(big)).value();
  CHECK(std::abs(t(0, 0) - 1) < 1e-9);
  CHECK(std::abs(t(0, 1) + 1) < 1e-9);
  Matrix zero = Matrix::Zero(1, 1);
  CHECK(sigmoid(tape.constant(zero)).value()(0, 0) == 0.5);
  Matrix extreme(1, 2);
  extreme << 800, -800;
  const Matrix s = srl::sigmoid(extreme);
  CHECK(s(0, 0) == 1.0);
  CHECK(s(0, 1) >= 0.0);
  CHECK(std::isfinite(s(0, 1)));
}

TEST_CASE("matmul") {
  Matrix a(2, 2), b(2, 1);
  a << 1, 2, 3, 4;
  b << 5, 6;
  Tape tape;
  const Matrix c = matmul(tape.constant(a), tape.constant(b)).value();
  CHECK(c(0, 0) == 17);
  CHECK(c(1, 0) == 39);
  CHECK_THROWS_AS(matmul(tape.constant(a), tape.constant(Matrix::Zero(3, 1))), ShapeError);
  CHECK_THROWS_AS(add(tape.constant(a), tape.constant(b)), ShapeError);
}

TEST_CASE("concat and slicing shapes") {
  Tape tape;
  const Var a = tape.constant(Matrix::Ones(1, 2));
  const Var b = tape.constant(Matrix::Zero(1, 3));
  const Var joined = concat(std::vector<Var>{a, b}, 1);
  CHECK(joined.rows() == 1);
  CHECK(joined.cols() == 5);
  CHECK_THROWS_AS(concat(std::vector<Var>{a, tape.constant(Matrix::Zero(2, 3))}, 1), ShapeError);
  const Var empty = tape.constant(Matrix::Zero(1, 0));
  CHECK(concat(std::vector<Var>{a, empty, b}, 1).cols() == 5);
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const Matrix f = flatten(tape.constant(m)).value();
  CHECK(f.rows() == 1);
  CHECK(f(0, 3) == 4);
  CHECK(slice_cols(tape.constant(m), 1, 2).value()(1, 1) == 6);
  CHECK(slice_rows(tape.constant(m), 1, 1).value()(0, 0) == 4);
  CHECK(repeat_rows(flatten(tape.constant(m)), 3).rows() == 3);
}

TEST_CASE("gradients of each op match finite differences") {
  Rng rng(3);
  const Matrix x = test::random_matrix(3, 4, rng);
  const Matrix other = test::random_matrix(3, 4, rng);
  const Matrix right = test::random_matrix(4, 2, rng);
  const Matrix row = test::random_matrix(1, 4, rng);
  check_unary([&](Tape& t, Var v) { return matmul(v, t.constant(right)); }, x, 1);
  check_unary([&](Tape& t, Var v) { return matmul(t.constant(right.transpose()), transpose(v)); }, x, 2);
  check_unary([&](Tape& t, Var v) { return add(v, t.constant(other)); }, x, 3);
  check_unary([&](Tape& t, Var v) { return add_row(t.constant(other), slice_rows(v, 1, 1)); }, x, 4);
  check_unary([&](Tape& t, Var v) { return hadamard(v, t.constant(other)); }, x, 5);
  check_unary([&](Tape&, Var v) { return hadamard(v, v); }, x, 6);
  check_unary([&](Tape&, Var v) { return scale(v, -2.5); }, x, 7);
  check_unary([&](Tape&, Var v) { return sigmoid(v); }, x, 8);
  check_unary([&](Tape&, Var v) { return tanh(v); }, x, 9);
  check_unary([&](Tape&, Var v) { return softmax_rows(v); }, x, 10);
  check_unary([&](Tape&, Var v) { return sum(v); }, x, 11);
  check_unary([&](Tape& t, Var v) { return concat(std::vector<Var>{v, t.constant(other)}, 0); }, x, 12);
  check_unary([&](Tape& t, Var v) { return concat(std::vector<Var>{t.constant(other), v}, 1); }, x, 13);
  check_unary([&](Tape&, Var v) { return slice_cols(v, 1, 2); }, x, 14);
  check_unary([&](Tape&, Var v) { return flatten(v); }, x, 15);
  check_unary([&](Tape&, Var v) { return repeat_rows(slice_rows(v, 2, 1), 4); }, x, 16);
  check_unary([&](Tape& t, Var v) { return add_row(v, t.constant(row)); }, x, 17);
  check_unary([&](Tape&, Var v) { return tanh(matmul(v, transpose(v))); }, x, 18);
}

TEST_CASE("reused values accumulate gradient") {
  Tape tape;
  const Var x = tape.input(Matrix::Constant(1, 1, 3.0));
  tape.backward(sum(x + x));
  CHECK(x.grad()(0, 0) == 2.0);

  Tape t2;
  const Var y = t2.input(Matrix::Ones(2, 2));
  CHECK_THROWS_AS(t2.backward(y), ShapeError);
}

TEST_CASE("non-finite results raise") {
  Tape tape;
  Matrix bad(1, 1);
  bad << std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(tape.constant(bad), NumericError);
  const Var huge = tape.constant(Matrix::Constant(1, 2, 1e308));
  CHECK_THROWS_AS(scale(huge, 10.0), NumericError);
  CHECK_THROWS_AS(add(huge, huge), NumericError);
}

TEST_CASE("parameters and the gradient sink") {
  ParamStore store;
  Rng rng(2);
  const auto w = store.add("w", test::random_matrix(3, 2, rng));
  const auto table = store.add("table", test::random_matrix(5, 2, rng));
  CHECK_THROWS(store.add("w", Matrix::Zero(1, 1)));
  CHECK(store.find("table") == table);
  CHECK(store.scalar_count() == 16);

  Gradients grads(store);
  Tape tape;
  const std::vector<std::size_t> rows{4, 1, 4};
  const Var e = gather_rows(tape, store, table, rows);
  CHECK(e.value().row(0) == store[table].value.row(4));
  const Var out = matmul(e, transpose(tape.param(store, w)));
  tape.backward(sum(out), &grads);
  REQUIRE(grads.has(table));
  // Untouched rows receive no gradient; a row used twice accumulates.
  CHECK(grads.get(table).row(0).isZero());
  CHECK(grads.get(table).row(2).isZero());
  const RowVector colsum = store[w].value.colwise().sum();
  CHECK((grads.get(table).row(4) - 2 * colsum).norm() < 1e-12);
  CHECK((grads.get(table).row(1) - colsum).norm() < 1e-12);
  // d/dW sum(E W^T) = 1^T E summed over rows.
  const RowVector esum = e.value().colwise().sum();
  for (int r = 0; r < 3; ++r) CHECK((grads.get(w).row(r) - esum).norm() < 1e-12);

  Gradients other(store);
  other.add(grads);
  other.scale(0.5);
  CHECK(other.global_norm() == doctest::Approx(0.5 * grads.global_norm()));
  other.zero();
  CHECK(other.global_norm() == 0.0);
}

TEST_CASE("dropout") {
  Tape tape;
  Rng rng(8);
  const Var x = tape.constant(Matrix::Ones(1000, 100));
  CHECK((dropout(x, 1.0, rng, true).value() - x.value()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((dropout(x, 0.3, rng, false).value() - x.value()).cwiseAbs().maxCoeff() == 0.0);
  const Matrix d = dropout(x, 0.9, rng, true).value();
  const double kept = static_cast<double>((d.array() != 0).count()) / static_cast<double>(d.size());
  CHECK(kept >= 0.89);
  CHECK(kept <= 0.91);
  // Inverted scaling keeps the expectation.
  CHECK(d.mean() == doctest::Approx(1.0).epsilon(0.01));
  CHECK_THROWS_AS(dropout(x, 0.0, rng, true), ConfigError);
  CHECK_THROWS_AS(dropout(x, 1.5, rng, true), ConfigError);
}

TEST_CASE("cross entropy") {
  Rng rng(21);
  const Matrix logits = test::random_matrix(5, 4, rng, 3.0);
  const std::vector<std::size_t> targets{0, 3, 2, 2, 1};
  const std::vector<bool> mask{true, true, false, true, true};
  // Naive oracle: explicit exponentials and a loop.
  double total = 0;
  int count = 0;
  for (int i = 0; i < 5; ++i) {
    if (!mask[i]) continue;
    double z = 0;
    for (int j = 0; j < 4; ++j) z += std::exp(logits(i, j));
    total += -std::log(std::exp(logits(i, static_cast<int>(targets[i]))) / z);
    ++count;
  }
  Tape tape;
  const Var x = tape.input(logits);
  const Var loss = cross_entropy(x, targets, mask);
  CHECK(std::abs(loss.value()(0, 0) - total / count) < 1e-10);
  tape.backward(loss);
  CHECK(x.grad().row(2).isZero());
  const auto f = [&](const Matrix& l) {
    Tape t;
    return cross_entropy(t.constant(l), targets, mask).value()(0, 0);
  };
  CHECK(test::max_relative_error(x.grad(), test::numeric_gradient(f, logits, 1e-5)) < 1e-6);

  Tape t2;
  const Var uniform = t2.constant(Matrix::Zero(3, 7));
  const std::vector<std::size_t> t3{0, 1, 6};
  CHECK(cross_entropy(uniform, t3, {true, true, true}).value()(0, 0) == doctest::Approx(std::log(7.0)));
  Matrix peaked = Matrix::Zero(1, 3);
  peaked(0, 1) = 60;
  CHECK(cross_entropy(t2.constant(peaked), std::vector<std::size_t>{1}, {true}).value()(0, 0) < 1e-20);
  CHECK_THROWS_AS(cross_entropy(uniform, t3, {false, false, false}), ShapeError);
}

TEST_CASE("argmax ties go to the lowest index") {
  Matrix m(1, 4);
  m << 0.1, 0.4, 0.4, 0.1;
  CHECK(argmax_row(m, 0) == 1);
}
