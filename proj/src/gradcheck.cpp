#include "srl/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "srl/boundary_tags.hpp"
#include "srl/ops.hpp"
#include "srl/trainer.hpp"

namespace srl {

double relative_error(double analytic, double numeric, double floor) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

GradCheckReport check_model_gradients(SrlModel& model, const PredicateInstance& instance,
                                      const ExternalVectors* external, double eps) {
  const auto ex = make_example(model, instance);
  auto loss_at = [&]() {
    Tape tape;
    Rng rng(0);
    return cross_entropy(model.logits(tape, ex.instance, external, rng, false), ex.targets, ex.mask).value()(0, 0);
  };

  auto& params = model.params();
  Gradients grads(params);
  {
    Tape tape;
    Rng rng(0);
    Var loss = cross_entropy(model.logits(tape, ex.instance, external, rng, false), ex.targets, ex.mask);
    tape.backward(loss, &grads);
  }

  GradCheckReport report;
  for (ParamId id = 0; id < params.size(); ++id) {
    if (!params[id].trainable) {
      if (grads.has(id) && grads.get(id).size() > 0 && grads.get(id).cwiseAbs().maxCoeff() > 0)
        report.frozen_untouched = false;
      continue;
    }
    ParamCheck pc;
    pc.name = params[id].name;
    auto& value = params[id].value;
    const Matrix analytic = grads.has(id) ? grads.get(id) : Matrix::Zero(value.rows(), value.cols());
    for (Eigen::Index i = 0; i < value.size(); ++i) {
      const double orig = value.data()[i];
      value.data()[i] = orig + eps;
      const double up = loss_at();
      value.data()[i] = orig - eps;
      const double down = loss_at();
      value.data()[i] = orig;
      const double numeric = (up - down) / (2 * eps);
      pc.max_rel_error = std::max(pc.max_rel_error, relative_error(analytic.data()[i], numeric));
      ++pc.elements;
    }
    report.max_rel_error = std::max(report.max_rel_error, pc.max_rel_error);
    report.params.push_back(pc);
  }
  return report;
}

GradCheckReport gradcheck_toy(const TrainConfig& config, std::uint64_t seed, double eps) {
  Rng rng = Rng(seed).split(0x6c);
  Sentence s;
  const char* forms[] = {"The", "cat", "sleeps"};
  const char* tags[] = {"DT", "NN", "VBZ"};
  for (int i = 0; i < 3; ++i) {
    Token t;
    t.form = forms[i];
    t.lemma = lowercase(forms[i]);
    t.pos = tags[i];
    t.is_predicate = i == 2;
    t.sense = i == 2 ? "sleep.01" : "_";
    s.tokens.push_back(t);
  }
  s.predicate_indices = {2};
  Corpus corpus;
  corpus.sentences.push_back(s);

  // Random gold labels over a small inventory, with one argument somewhere left
  // of the predicate so the boundary tag lands in the sequence.
  const char* arg_labels[] = {"A0", "A1"};
  for (int i = 0; i < 2; ++i)
    corpus.sentences[0].tokens[static_cast<std::size_t>(i)].arg_labels = {
        i == 1 ? arg_labels[rng.uniform_int(0, 1)] : std::string(kNullLabel)};
  corpus.sentences[0].tokens[2].arg_labels = {std::string(kNullLabel)};
  finalize_corpus(corpus);
  corpus.label_inventory = LabelSet({"A0", "A1"});

  PretrainedVectors pre;
  pre.dim = config.pretrained_dim;
  if (pre.dim > 0) {
    pre.words = {"the", "cat"};
    pre.table = Matrix(2, pre.dim);
    for (Eigen::Index i = 0; i < pre.table.size(); ++i) pre.table.data()[i] = rng.uniform(-1, 1);
    for (std::size_t i = 0; i < pre.words.size(); ++i) pre.index.emplace(pre.words[i], i);
  }
  ExternalVectors ext;
  ext.dim = config.external_dim;
  if (config.use_external) {
    Matrix m(3, config.external_dim);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-1, 1);
    ext.by_sentence[0] = m;
  }

  TrainConfig cfg = config;
  cfg.seed = seed;
  SrlModel model(cfg, corpus.label_inventory, VocabMaps::build(corpus), pre.dim > 0 ? &pre : nullptr);
  const auto instances = extract_instances(corpus);
  return check_model_gradients(model, instances.front(), cfg.use_external ? &ext : nullptr, eps);
}

}  // namespace srl
