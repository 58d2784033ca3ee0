#include "srl/scorer.hpp"

#include <cstdio>
#include <utility>

#include "srl/error.hpp"

namespace srl {

ArgumentSet gold_arguments(const PredicateInstance& instance) {
  ArgumentSet a;
  a.sentence_id = instance.sentence_id;
  a.predicate_index = instance.predicate_index;
  for (std::size_t i = 0; i < instance.gold_labels.size(); ++i)
    if (is_argument_label(instance.gold_labels[i])) a.arguments.emplace(i, instance.gold_labels[i]);
  return a;
}

EvalReport evaluate(std::span<const ArgumentSet> predicted, std::span<const ArgumentSet> gold) {
  using Key = std::pair<std::size_t, std::size_t>;
  std::map<Key, const ArgumentSet*> gold_by_key;
  for (const auto& g : gold)
    if (!gold_by_key.emplace(Key{g.sentence_id, g.predicate_index}, &g).second)
      throw DataError("duplicate gold instance for sentence " + std::to_string(g.sentence_id));
  if (predicted.size() != gold.size())
    throw DataError("predicted and gold instance counts differ (" + std::to_string(predicted.size()) + " vs " +
                    std::to_string(gold.size()) + ")");
  EvalReport r;
  std::map<Key, bool> seen;
  for (const auto& p : predicted) {
    const Key key{p.sentence_id, p.predicate_index};
    auto it = gold_by_key.find(key);
    if (it == gold_by_key.end())
      throw DataError("predicted instance (sentence " + std::to_string(p.sentence_id) + ", predicate " +
                      std::to_string(p.predicate_index) + ") has no gold counterpart");
    if (!seen.emplace(key, true).second) throw DataError("duplicate predicted instance");
    const auto& g = it->second->arguments;
    r.predicted += p.arguments.size();
    for (const auto& [idx, label] : p.arguments) {
      auto git = g.find(idx);
      if (git != g.end() && git->second == label) ++r.correct;
    }
  }
  for (const auto& g : gold) r.gold += g.arguments.size();
  if (r.predicted == 0 && r.gold == 0) {
    r.precision = r.recall = r.f1 = 1.0;
    return r;
  }
  r.precision = r.predicted ? static_cast<double>(r.correct) / r.predicted : 0.0;
  r.recall = r.gold ? static_cast<double>(r.correct) / r.gold : 0.0;
  r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

EvalReport evaluate_corpora(const Corpus& predicted, const Corpus& gold) {
  if (predicted.sentences.size() != gold.sentences.size())
    throw DataError("predicted and gold corpora have different sentence counts");
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const auto& ps = predicted.sentences[s];
    const auto& gs = gold.sentences[s];
    if (ps.size() != gs.size() || ps.predicate_indices != gs.predicate_indices)
      throw DataError("sentence " + std::to_string(s) + " differs in length or predicates between corpora");
  }
  std::vector<ArgumentSet> p, g;
  for (const auto& inst : extract_instances(predicted)) p.push_back(gold_arguments(inst));
  for (const auto& inst : extract_instances(gold)) g.push_back(gold_arguments(inst));
  return evaluate(p, g);
}

std::string format_report(const EvalReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%-10s %9s %9s %9s\n%-10s %9.3f %9.3f %9.3f\n(argument-only; predicted=%zu gold=%zu correct=%zu)\n",
                "", "P", "R", "F1", "args", r.precision, r.recall, r.f1, r.predicted, r.gold, r.correct);
  return buf;
}

std::string format_report_kv(const EvalReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "precision=%.6f\nrecall=%.6f\nf1=%.6f\npredicted=%zu\ngold=%zu\ncorrect=%zu\n",
                r.precision, r.recall, r.f1, r.predicted, r.gold, r.correct);
  return buf;
}

}  // namespace srl
