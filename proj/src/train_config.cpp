#include "srl/train_config.hpp"

#include <cstdio>
#include <map>

#include "srl/error.hpp"

namespace srl {

LossWindow parse_loss_window(const std::string& s) {
  if (s == "full_sequence") return LossWindow::full_sequence;
  if (s == "window_only") return LossWindow::window_only;
  throw ConfigError("unknown loss window '" + s + "' (expected full_sequence or window_only)");
}

std::string to_string(LossWindow w) { return w == LossWindow::full_sequence ? "full_sequence" : "window_only"; }

TrainConfig TrainConfig::desk() {
  TrainConfig c;
  c.hidden = 32;
  c.layers = 2;
  c.hops = 2;
  c.word_dim = 32;
  c.pretrained_dim = 0;
  c.lemma_dim = 32;
  c.pos_dim = 16;
  c.indicator_dim = 8;
  c.batch_size = 8;
  c.lr = 0.003;
  c.max_epochs = 300;
  return c;
}

TrainConfig TrainConfig::toy() {
  TrainConfig c;
  c.hidden = 4;
  c.layers = 1;
  c.hops = 2;
  c.word_dim = 8;
  c.pretrained_dim = 4;
  c.lemma_dim = 8;
  c.pos_dim = 6;
  c.indicator_dim = 4;
  c.external_dim = 5;
  c.batch_size = 1;
  c.max_epochs = 1;
  c.init_scale = 0.5;
  return c;
}

TrainConfig TrainConfig::preset(const std::string& name) {
  if (name == "default") return {};
  if (name == "desk") return desk();
  if (name == "toy") return toy();
  throw ConfigError("unknown preset '" + name + "' (expected default, desk or toy)");
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::map<std::string, double TrainConfig::*>& double_fields() {
  static const std::map<std::string, double TrainConfig::*> m{
      {"lr", &TrainConfig::lr},           {"beta1", &TrainConfig::beta1},
      {"beta2", &TrainConfig::beta2},     {"adam_eps", &TrainConfig::adam_eps},
      {"keep_prob", &TrainConfig::keep_prob}, {"clip_norm", &TrainConfig::clip_norm},
      {"init_scale", &TrainConfig::init_scale}};
  return m;
}

const std::map<std::string, int TrainConfig::*>& int_fields() {
  static const std::map<std::string, int TrainConfig::*> m{
      {"batch_size", &TrainConfig::batch_size}, {"max_epochs", &TrainConfig::max_epochs},
      {"workers", &TrainConfig::workers},       {"hidden", &TrainConfig::hidden},
      {"layers", &TrainConfig::layers},         {"hops", &TrainConfig::hops},
      {"attention_dim", &TrainConfig::attention_dim}, {"word_dim", &TrainConfig::word_dim},
      {"pretrained_dim", &TrainConfig::pretrained_dim}, {"lemma_dim", &TrainConfig::lemma_dim},
      {"pos_dim", &TrainConfig::pos_dim},       {"indicator_dim", &TrainConfig::indicator_dim},
      {"external_dim", &TrainConfig::external_dim}};
  return m;
}

const std::map<std::string, bool TrainConfig::*>& bool_fields() {
  static const std::map<std::string, bool TrainConfig::*> m{{"use_external", &TrainConfig::use_external},
                                                            {"use_aux_tags", &TrainConfig::use_aux_tags},
                                                            {"use_attention", &TrainConfig::use_attention}};
  return m;
}

}  // namespace

void TrainConfig::apply(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (auto it = double_fields().find(key); it != double_fields().end()) this->*(it->second) = parse_double(key, value);
    else if (auto it = int_fields().find(key); it != int_fields().end())
      this->*(it->second) = static_cast<int>(parse_int(key, value));
    else if (auto it = bool_fields().find(key); it != bool_fields().end())
      this->*(it->second) = parse_bool(key, value);
    else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "loss_window") loss_window = parse_loss_window(value);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

KeyValues TrainConfig::to_key_values() const {
  KeyValues kv;
  for (const auto& [k, m] : double_fields()) kv[k] = fmt_double(this->*m);
  for (const auto& [k, m] : int_fields()) kv[k] = std::to_string(this->*m);
  for (const auto& [k, m] : bool_fields()) kv[k] = this->*m ? "true" : "false";
  kv["seed"] = std::to_string(seed);
  kv["loss_window"] = to_string(loss_window);
  return kv;
}

void TrainConfig::validate() const {
  if (!(lr >= 0)) throw ConfigError("lr must be non-negative");
  if (!(keep_prob > 0 && keep_prob <= 1)) throw ConfigError("keep_prob must lie in (0, 1]");
  if (batch_size < 1 || max_epochs < 1 || workers < 1) throw ConfigError("batch_size, max_epochs and workers must be positive");
  if (hidden < 1 || layers < 1 || hops < 1 || attention_dim < 0) throw ConfigError("hidden, layers and hops must be positive");
  if (attention_width() > 65536) throw ConfigError("attention_dim is unreasonably large");
  for (int d : {word_dim, pretrained_dim, lemma_dim, pos_dim, indicator_dim, external_dim})
    if (d < 0) throw ConfigError("embedding dimensions must be non-negative");
  if (embedding_width() < 1) throw ConfigError("embedding width must be positive");
  if (clip_norm < 0) throw ConfigError("clip_norm must be non-negative");
  if (!use_aux_tags && loss_window == LossWindow::window_only)
    throw ConfigError("loss_window=window_only needs auxiliary tags");
}

}  // namespace srl
