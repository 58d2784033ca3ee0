#ifndef SRL_MODEL_HPP
#define SRL_MODEL_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srl/embedding.hpp"
#include "srl/encoder.hpp"
#include "srl/labels.hpp"
#include "srl/train_config.hpp"

namespace srl {

/// Per-token label distributions, n x |labels|; rows sum to 1.
using PredictionMatrix = Matrix;

/// Intermediate values of one forward pass.
struct ForwardTrace {
  Var embeddings;
  Var hidden;
  std::optional<Attention> attention;
  Var fused;
  Var logits;
};

/// Embeddings, BiLSTM stack, optional multi-hop attention and the output layer,
/// together with the vocabularies and label inventory they were built for.
class SrlModel {
 public:
  /// Fresh parameters. `labels` is the corpus inventory; the model drops the
  /// boundary tags from it when auxiliary tags are disabled.
  SrlModel(const TrainConfig& config, const LabelSet& labels, VocabMaps vocabs,
           const PretrainedVectors* pretrained = nullptr);

  ForwardTrace trace(Tape& tape, const PredicateInstance& instance, const ExternalVectors* external, Rng& rng,
                     bool training) const;
  Var logits(Tape& tape, const PredicateInstance& instance, const ExternalVectors* external, Rng& rng,
             bool training) const {
    return trace(tape, instance, external, rng, training).logits;
  }
  /// Eval-mode forward: deterministic, no dropout.
  PredictionMatrix predict(const PredicateInstance& instance, const ExternalVectors* external = nullptr) const;

  /// Gold label indices; unknown labels are a DataError.
  std::vector<std::size_t> targets(std::span<const std::string> gold_labels) const;

  const TrainConfig& config() const { return config_; }
  const LabelSet& labels() const { return labels_; }
  const EmbeddingLayer& embedding() const { return embedding_; }
  ParamStore& params() { return params_; }
  const ParamStore& params() const { return params_; }

  /// Writes the binary checkpoint to `path` and a JSON sidecar to `path.json`.
  void save(const std::filesystem::path& path) const;
  static SrlModel load(const std::filesystem::path& path);

 private:
  SrlModel() = default;
  void bind();

  TrainConfig config_;
  LabelSet labels_;
  ParamStore params_;
  EmbeddingLayer embedding_;
  BiLstmStack lstm_;
  std::optional<AttentionParams> attention_;
  ParamId out_w_ = 0;
  ParamId out_b_ = 0;
};

/// Positions contributing to the loss: every position, or the tagged region
/// around the predicate (sentence edges stand in for missing tags).
std::vector<bool> loss_mask(std::span<const std::string> gold_labels, std::size_t predicate_index, LossWindow window);

/// Mean negative log-likelihood of the gold labels over the loss window.
double compute_loss(const PredictionMatrix& pred, std::span<const std::size_t> targets, const std::vector<bool>& mask);

}  // namespace srl

#endif  // SRL_MODEL_HPP
