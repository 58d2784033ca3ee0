#ifndef SRL_TRAIN_CONFIG_HPP
#define SRL_TRAIN_CONFIG_HPP

#include <cstdint>
#include <string>

#include "srl/config_file.hpp"

namespace srl {

enum class LossWindow { full_sequence, window_only };

LossWindow parse_loss_window(const std::string& s);
std::string to_string(LossWindow w);

/// Model shape and optimization settings. Defaults are the full-size labeler.
struct TrainConfig {
  // optimization
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  int batch_size = 64;
  int max_epochs = 20;
  double keep_prob = 0.9;
  /// Global gradient-norm cap; 0 disables clipping.
  double clip_norm = 0.0;
  std::uint64_t seed = 1;
  int workers = 1;

  // encoder
  int hidden = 512;
  int layers = 4;
  int hops = 10;
  /// Attention width k; 0 means k = hidden.
  int attention_dim = 0;
  double init_scale = 0.1;

  // embeddings
  int word_dim = 100;
  int pretrained_dim = 100;
  int lemma_dim = 100;
  int pos_dim = 32;
  int indicator_dim = 16;
  int external_dim = 300;
  bool use_external = false;

  // ablations
  LossWindow loss_window = LossWindow::full_sequence;
  bool use_aux_tags = true;
  bool use_attention = true;

  int attention_width() const { return attention_dim > 0 ? attention_dim : hidden; }
  int embedding_width() const {
    return word_dim + pretrained_dim + lemma_dim + pos_dim + indicator_dim + (use_external ? external_dim : 0);
  }
  int fused_width() const { return 2 * hidden * (use_attention ? 1 + hops : 1); }

  /// Small model used for desk-scale training runs.
  static TrainConfig desk();
  /// Tiny model for finite-difference checks: d=4, r=2, one layer, embeddings <= 8 wide.
  static TrainConfig toy();
  static TrainConfig preset(const std::string& name);

  /// Applies `key=value` overrides; unknown keys are a ConfigError.
  void apply(const KeyValues& kv);
  KeyValues to_key_values() const;
  void validate() const;
};

}  // namespace srl

#endif  // SRL_TRAIN_CONFIG_HPP
