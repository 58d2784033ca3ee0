#ifndef SRL_ENCODER_HPP
#define SRL_ENCODER_HPP

#include <vector>

#include "srl/ops.hpp"
#include "srl/rng.hpp"
#include "srl/tape.hpp"
#include "srl/train_config.hpp"

namespace srl {

/// One LSTM direction. Gate blocks are laid out [input, forget, output, candidate]
/// along the columns of `input_weights` (in x 4d), `recurrent_weights` (d x 4d)
/// and `bias` (1 x 4d).
struct LstmCell {
  ParamId input_weights = 0;
  ParamId recurrent_weights = 0;
  ParamId bias = 0;
  int input_width = 0;
  int hidden = 0;
};

struct BiLstmLayer {
  LstmCell forward;
  LstmCell backward;
};

struct BiLstmStack {
  std::vector<BiLstmLayer> layers;
  int hidden = 0;
  double keep_prob = 1.0;

  int output_width() const { return 2 * hidden; }
};

/// Registers `layers` bidirectional layers; forget-gate bias starts at 1.
BiLstmStack make_bilstm(ParamStore& store, int input_width, const TrainConfig& config, Rng& rng);
BiLstmStack bind_bilstm(const ParamStore& store, int input_width, const TrainConfig& config);

/// Runs one direction over the rows of `x` from zero initial state and returns
/// the hidden states in input order.
Var lstm_run(const ParamStore& store, const LstmCell& cell, Var x, bool reverse);

/// n x D -> n x 2d. In training mode each layer's input and the final output pass
/// through dropout with fresh masks.
Var bilstm_encode(const ParamStore& store, const BiLstmStack& stack, Var embeddings, Rng& rng, bool training);

struct AttentionParams {
  ParamId w1 = 0;  // k x 2d
  ParamId w2 = 0;  // r x k
  int hops = 0;
  int width = 0;
};

AttentionParams make_attention(ParamStore& store, int hidden2, const TrainConfig& config, Rng& rng);
AttentionParams bind_attention(const ParamStore& store, const TrainConfig& config);

struct Attention {
  Var weights;          // M, r x n
  Var representation;   // S = M H, r x 2d
};

/// M = softmax_rows(W2 tanh(W1 H^T)), S = M H.
Attention attend(const ParamStore& store, const AttentionParams& params, Var hidden);

/// Row i = [h_i, flatten(S)] with S flattened hop-major.
Var fuse(Var hidden, Var representation);

}  // namespace srl

#endif  // SRL_ENCODER_HPP
