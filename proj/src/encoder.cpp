#include "srl/encoder.hpp"

#include <string>

#include "srl/error.hpp"

namespace srl {

namespace {

Matrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, double scale, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-scale, scale);
  return m;
}

LstmCell make_cell(ParamStore& store, const std::string& prefix, int in, int d, double scale, Rng& rng) {
  LstmCell c;
  c.input_width = in;
  c.hidden = d;
  c.input_weights = store.add(prefix + ".wx", uniform_matrix(in, 4 * d, scale, rng));
  c.recurrent_weights = store.add(prefix + ".wh", uniform_matrix(d, 4 * d, scale, rng));
  Matrix b = Matrix::Zero(1, 4 * d);
  b.middleCols(d, d).setOnes();
  c.bias = store.add(prefix + ".b", std::move(b));
  return c;
}

LstmCell bind_cell(const ParamStore& store, const std::string& prefix, int in, int d) {
  LstmCell c;
  c.input_width = in;
  c.hidden = d;
  c.input_weights = store.find(prefix + ".wx");
  c.recurrent_weights = store.find(prefix + ".wh");
  c.bias = store.find(prefix + ".b");
  if (store[c.input_weights].value.rows() != in || store[c.recurrent_weights].value.cols() != 4 * d)
    throw ShapeError("stored LSTM weights '" + prefix + "' do not match the configuration");
  return c;
}

std::string layer_prefix(int layer, const char* dir) { return "lstm.l" + std::to_string(layer) + "." + dir; }

}  // namespace

BiLstmStack make_bilstm(ParamStore& store, int input_width, const TrainConfig& config, Rng& rng) {
  BiLstmStack s;
  s.hidden = config.hidden;
  s.keep_prob = config.keep_prob;
  int in = input_width;
  for (int l = 0; l < config.layers; ++l) {
    BiLstmLayer layer;
    layer.forward = make_cell(store, layer_prefix(l, "fwd"), in, config.hidden, config.init_scale, rng);
    layer.backward = make_cell(store, layer_prefix(l, "bwd"), in, config.hidden, config.init_scale, rng);
    s.layers.push_back(layer);
    in = 2 * config.hidden;
  }
  return s;
}

BiLstmStack bind_bilstm(const ParamStore& store, int input_width, const TrainConfig& config) {
  BiLstmStack s;
  s.hidden = config.hidden;
  s.keep_prob = config.keep_prob;
  int in = input_width;
  for (int l = 0; l < config.layers; ++l) {
    s.layers.push_back({bind_cell(store, layer_prefix(l, "fwd"), in, config.hidden),
                        bind_cell(store, layer_prefix(l, "bwd"), in, config.hidden)});
    in = 2 * config.hidden;
  }
  return s;
}

Var lstm_run(const ParamStore& store, const LstmCell& cell, Var x, bool reverse) {
  Tape& tape = *x.tape;
  const auto n = x.rows();
  if (n < 1) throw ShapeError("LSTM input has no rows");
  if (x.cols() != cell.input_width)
    throw ShapeError("LSTM input width " + std::to_string(x.cols()) + " != " + std::to_string(cell.input_width));
  const int d = cell.hidden;
  Var projected = add_row(matmul(x, tape.param(store, cell.input_weights)), tape.param(store, cell.bias));
  Var wh = tape.param(store, cell.recurrent_weights);
  Var h = tape.constant(Matrix::Zero(1, d));
  Var c = tape.constant(Matrix::Zero(1, d));
  std::vector<Var> outputs(static_cast<std::size_t>(n));
  for (Eigen::Index step = 0; step < n; ++step) {
    const Eigen::Index t = reverse ? n - 1 - step : step;
    Var z = add(slice_rows(projected, t, 1), matmul(h, wh));
    Var i = sigmoid(slice_cols(z, 0, d));
    Var f = sigmoid(slice_cols(z, d, d));
    Var o = sigmoid(slice_cols(z, 2 * d, d));
    Var g = tanh(slice_cols(z, 3 * d, d));
    c = add(hadamard(f, c), hadamard(i, g));
    h = hadamard(o, tanh(c));
    outputs[static_cast<std::size_t>(t)] = h;
  }
  return concat(outputs, 0);
}

Var bilstm_encode(const ParamStore& store, const BiLstmStack& stack, Var embeddings, Rng& rng, bool training) {
  if (stack.layers.empty()) throw ShapeError("BiLSTM stack has no layers");
  Var x = embeddings;
  for (const auto& layer : stack.layers) {
    x = dropout(x, stack.keep_prob, rng, training);
    Var fwd = lstm_run(store, layer.forward, x, false);
    Var bwd = lstm_run(store, layer.backward, x, true);
    const Var parts[] = {fwd, bwd};
    x = concat(parts, 1);
  }
  return dropout(x, stack.keep_prob, rng, training);
}

AttentionParams make_attention(ParamStore& store, int hidden2, const TrainConfig& config, Rng& rng) {
  AttentionParams a;
  a.hops = config.hops;
  a.width = config.attention_width();
  a.w1 = store.add("attn.w1", uniform_matrix(a.width, hidden2, config.init_scale, rng));
  a.w2 = store.add("attn.w2", uniform_matrix(a.hops, a.width, config.init_scale, rng));
  return a;
}

AttentionParams bind_attention(const ParamStore& store, const TrainConfig& config) {
  AttentionParams a;
  a.hops = config.hops;
  a.width = config.attention_width();
  a.w1 = store.find("attn.w1");
  a.w2 = store.find("attn.w2");
  if (store[a.w2].value.rows() != a.hops || store[a.w1].value.rows() != a.width)
    throw ShapeError("stored attention weights do not match the configuration");
  return a;
}

Attention attend(const ParamStore& store, const AttentionParams& params, Var hidden) {
  Tape& tape = *hidden.tape;
  if (hidden.rows() < 1) throw ShapeError("attention over an empty sequence");
  Var w1 = tape.param(store, params.w1);
  Var w2 = tape.param(store, params.w2);
  if (w1.cols() != hidden.cols())
    throw ShapeError("attention W1 expects width " + std::to_string(w1.cols()) + ", hidden states have " +
                     std::to_string(hidden.cols()));
  Var scores = matmul(w2, tanh(matmul(w1, transpose(hidden))));
  Var m = softmax_rows(scores);
  return {m, matmul(m, hidden)};
}

Var fuse(Var hidden, Var representation) {
  if (representation.cols() != hidden.cols())
    throw ShapeError("sentence representation width differs from hidden width");
  const Var parts[] = {hidden, repeat_rows(flatten(representation), hidden.rows())};
  return concat(parts, 1);
}

}  // namespace srl
