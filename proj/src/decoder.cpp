#include "srl/decoder.hpp"

#include <cmath>
#include <map>

#include "srl/error.hpp"

namespace srl {

ArgumentSet decode_labels(std::span<const std::string> argmax_labels, std::size_t predicate_index, bool use_aux_tags) {
  const auto n = argmax_labels.size();
  if (predicate_index >= n) throw DataError("predicate index out of range");
  ArgumentSet out;
  out.predicate_index = predicate_index;
  auto record = [&](std::size_t i) {
    if (is_argument_label(argmax_labels[i])) out.arguments.emplace(i, argmax_labels[i]);
  };
  if (!use_aux_tags) {
    for (std::size_t i = 0; i < n; ++i) record(i);
    return out;
  }
  record(predicate_index);
  for (std::size_t i = predicate_index; i-- > 0;) {
    if (argmax_labels[i] == kBoaLabel) break;
    record(i);
  }
  for (std::size_t i = predicate_index + 1; i < n; ++i) {
    if (argmax_labels[i] == kEoaLabel) break;
    record(i);
  }
  return out;
}

ArgumentSet decode(const PredictionMatrix& pred, const LabelSet& labels, std::size_t predicate_index,
                   bool use_aux_tags) {
  if (pred.cols() != static_cast<Eigen::Index>(labels.size()))
    throw DataError("prediction width " + std::to_string(pred.cols()) + " does not match " +
                    std::to_string(labels.size()) + " labels");
  std::vector<std::string> argmax;
  argmax.reserve(static_cast<std::size_t>(pred.rows()));
  for (Eigen::Index i = 0; i < pred.rows(); ++i) {
    const auto row = pred.row(i);
    if (!row.allFinite() || row.minCoeff() < 0 || std::abs(row.sum() - 1.0) > 1e-6)
      throw DataError("prediction row " + std::to_string(i) + " is not a probability distribution");
    argmax.push_back(labels.label(static_cast<std::size_t>(argmax_row(pred, i))));
  }
  return decode_labels(argmax, predicate_index, use_aux_tags && labels.has_boundary());
}

Corpus apply_arguments(const Corpus& corpus, std::span<const ArgumentSet> arguments) {
  Corpus out = corpus;
  std::map<std::pair<std::size_t, std::size_t>, const ArgumentSet*> by_key;
  for (const auto& a : arguments) by_key[{a.sentence_id, a.predicate_index}] = &a;
  for (auto& s : out.sentences) {
    for (std::size_t j = 0; j < s.predicate_indices.size(); ++j) {
      auto it = by_key.find({s.id, s.predicate_indices[j]});
      if (it == by_key.end())
        throw DataError("no arguments for predicate " + std::to_string(s.predicate_indices[j]) + " of sentence " +
                        std::to_string(s.id));
      for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        auto a = it->second->arguments.find(i);
        s.tokens[i].arg_labels[j] = a == it->second->arguments.end() ? std::string(kNullLabel) : a->second;
      }
    }
  }
  out.label_inventory = collect_label_inventory(out);
  return out;
}

Corpus predict_corpus(const Corpus& corpus, const SrlModel& model, const ExternalVectors* external) {
  for (const auto& l : corpus.label_inventory.argument_labels())
    if (!model.labels().contains(l))
      throw DataError("corpus label '" + l + "' is not in the checkpoint's label inventory");
  std::vector<ArgumentSet> predicted;
  for (const auto& inst : extract_instances(corpus)) {
    auto args = decode(model.predict(inst, external), model.labels(), inst.predicate_index, model.config().use_aux_tags);
    args.sentence_id = inst.sentence_id;
    predicted.push_back(std::move(args));
  }
  return apply_arguments(corpus, predicted);
}

}  // namespace srl
