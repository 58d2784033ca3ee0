#ifndef SRL_TRAINER_HPP
#define SRL_TRAINER_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "srl/adam.hpp"
#include "srl/model.hpp"
#include "srl/scorer.hpp"

namespace srl {

/// A training instance with its label targets and loss mask resolved.
struct TrainExample {
  PredicateInstance instance;
  std::vector<std::size_t> targets;
  std::vector<bool> mask;
};

/// Augments (or strips) the gold labels as the model's config requires, then
/// resolves targets and the loss mask.
TrainExample make_example(const SrlModel& model, const PredicateInstance& instance);

struct TrainOptions {
  const PretrainedVectors* pretrained = nullptr;
  const ExternalVectors* train_external = nullptr;
  const ExternalVectors* dev_external = nullptr;
};

/// Minibatch gradient steps on one model.
class Trainer {
 public:
  Trainer(SrlModel& model, const ExternalVectors* external = nullptr);

  /// Forward/backward over the batch, averages gradients, optionally clips them,
  /// and applies one Adam step. `key` selects the dropout streams. Returns the
  /// mean loss of the batch before the update.
  double step(std::span<const TrainExample> batch, std::uint64_t key);

  const AdamState& optimizer_state() const { return adam_; }

 private:
  SrlModel& model_;
  const ExternalVectors* external_;
  AdamState adam_;
  std::vector<Gradients> worker_grads_;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0;
  EvalReport dev;
};

struct TrainResult {
  SrlModel model;
  std::vector<EpochRecord> history;
  int best_epoch = 0;
};

struct TrainCallbacks {
  std::function<void(const EpochRecord&)> on_epoch;
};

/// Argument sets predicted for every instance of `corpus`.
std::vector<ArgumentSet> predict_arguments(const SrlModel& model, std::span<const PredicateInstance> instances,
                                           const ExternalVectors* external = nullptr);

/// Full training run: seeded shuffling, minibatches, Adam, and per-epoch dev F1.
/// Returns the parameters of the epoch with the highest dev F1 (earliest on ties).
TrainResult train(const Corpus& train_corpus, const Corpus& dev_corpus, const TrainConfig& config,
                  const TrainOptions& options = {}, const TrainCallbacks& callbacks = {});

std::string format_history(std::span<const EpochRecord> history);

}  // namespace srl

#endif  // SRL_TRAINER_HPP
