#include "srl/trainer.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <thread>

#include "srl/boundary_tags.hpp"
#include "srl/decoder.hpp"
#include "srl/error.hpp"
#include "srl/ops.hpp"

namespace srl {

TrainExample make_example(const SrlModel& model, const PredicateInstance& instance) {
  TrainExample ex;
  const auto& cfg = model.config();
  if (cfg.use_aux_tags) ex.instance = has_boundary_tags(instance.gold_labels) ? instance : augment_labels(instance);
  else ex.instance = strip_tags(instance);
  ex.targets = model.targets(ex.instance.gold_labels);
  ex.mask = loss_mask(ex.instance.gold_labels, ex.instance.predicate_index, cfg.loss_window);
  return ex;
}

Trainer::Trainer(SrlModel& model, const ExternalVectors* external) : model_(model), external_(external) {
  for (int w = 0; w < model.config().workers; ++w) worker_grads_.emplace_back(model.params());
}

double Trainer::step(std::span<const TrainExample> batch, std::uint64_t key) {
  if (batch.empty()) throw DataError("empty training batch");
  const auto& cfg = model_.config();
  const auto workers = std::min<std::size_t>(worker_grads_.size(), batch.size());
  std::vector<double> losses(batch.size(), 0.0);
  const Rng base = Rng(cfg.seed).split(key);

  auto run = [&](std::size_t worker) {
    auto& grads = worker_grads_[worker];
    grads.zero();
    for (std::size_t i = worker; i < batch.size(); i += workers) {
      Tape tape;
      Rng rng = base.split(i);
      const auto& ex = batch[i];
      Var logits = model_.logits(tape, ex.instance, external_, rng, true);
      Var loss = cross_entropy(logits, ex.targets, ex.mask);
      losses[i] = loss.value()(0, 0);
      tape.backward(loss, &grads);
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w)
      threads.emplace_back([&, w] {
        try {
          run(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (std::size_t w = 1; w < workers; ++w) worker_grads_[0].add(worker_grads_[w]);
  }
  auto& grads = worker_grads_[0];
  grads.scale(1.0 / static_cast<double>(batch.size()));
  if (cfg.clip_norm > 0) {
    const double norm = grads.global_norm();
    if (norm > cfg.clip_norm) grads.scale(cfg.clip_norm / norm);
  }
  adam_step(model_.params(), grads, adam_, AdamConfig{cfg.lr, cfg.beta1, cfg.beta2, cfg.adam_eps});
  return std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(batch.size());
}

std::vector<ArgumentSet> predict_arguments(const SrlModel& model, std::span<const PredicateInstance> instances,
                                           const ExternalVectors* external) {
  std::vector<ArgumentSet> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) {
    auto a = decode(model.predict(inst, external), model.labels(), inst.predicate_index, model.config().use_aux_tags);
    a.sentence_id = inst.sentence_id;
    out.push_back(std::move(a));
  }
  return out;
}

TrainResult train(const Corpus& train_corpus, const Corpus& dev_corpus, const TrainConfig& config,
                  const TrainOptions& options, const TrainCallbacks& callbacks) {
  config.validate();
  const auto train_instances = extract_instances(train_corpus);
  if (train_instances.empty()) throw DataError("training corpus has no predicate instances");
  // Without dev predicates, selection falls back to the training set.
  auto dev_instances = extract_instances(dev_corpus);
  const ExternalVectors* dev_external = options.dev_external;
  if (dev_instances.empty()) {
    dev_instances = train_instances;
    dev_external = options.train_external;
  }
  std::vector<ArgumentSet> dev_gold;
  for (const auto& inst : dev_instances) dev_gold.push_back(gold_arguments(inst));

  SrlModel model(config, train_corpus.label_inventory, VocabMaps::build(train_corpus), options.pretrained);
  std::vector<TrainExample> examples;
  examples.reserve(train_instances.size());
  for (const auto& inst : train_instances) examples.push_back(make_example(model, inst));

  Trainer trainer(model, options.train_external);
  TrainResult result{model, {}, 0};
  double best_f1 = -1;
  std::vector<std::size_t> order(examples.size());
  std::vector<TrainExample> batch;
  const Rng shuffle_root = Rng(config.seed).split(0x5417);
  std::uint64_t step_key = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng = shuffle_root.split(static_cast<std::uint64_t>(epoch));
    shuffle(order, shuffle_rng);
    double loss_sum = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(config.batch_size)) {
      const auto stop = std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      batch.clear();
      for (auto i = start; i < stop; ++i) batch.push_back(examples[order[i]]);
      loss_sum += trainer.step(batch, ++step_key) * static_cast<double>(batch.size());
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(examples.size());
    rec.dev = evaluate(predict_arguments(model, dev_instances, dev_external), dev_gold);
    result.history.push_back(rec);
    if (rec.dev.f1 > best_f1) {
      best_f1 = rec.dev.f1;
      result.best_epoch = epoch;
      result.model = model;
    }
    if (callbacks.on_epoch) callbacks.on_epoch(rec);
  }
  return result;
}

std::string format_history(std::span<const EpochRecord> history) {
  std::string out = "epoch\ttrain_loss\tdev_precision\tdev_recall\tdev_f1\n";
  char buf[160];
  for (const auto& r : history) {
    std::snprintf(buf, sizeof buf, "%d\t%.10f\t%.6f\t%.6f\t%.6f\n", r.epoch, r.train_loss, r.dev.precision,
                  r.dev.recall, r.dev.f1);
    out += buf;
  }
  return out;
}

}  // namespace srl
