#ifndef SRL_SCORER_HPP
#define SRL_SCORER_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "srl/conll_io.hpp"

namespace srl {

/// Labeled arguments of one predicate, keyed by token index.
struct ArgumentSet {
  std::size_t sentence_id = 0;
  std::size_t predicate_index = 0;
  std::map<std::size_t, std::string> arguments;

  bool operator==(const ArgumentSet&) const = default;
};

/// Arguments encoded in an instance's gold labels; boundary tags are ignored.
ArgumentSet gold_arguments(const PredicateInstance& instance);

struct EvalReport {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  std::size_t correct = 0;
};

/// Labeled argument P/R/F1 over (predicate, token, label) triples. Both lists must
/// cover the same (sentence, predicate) keys. 0/0 ratios are 0, except that an
/// evaluation with no predicted and no gold arguments scores 1.
EvalReport evaluate(std::span<const ArgumentSet> predicted, std::span<const ArgumentSet> gold);

/// Compares the argument columns of two corpora over the same sentences.
EvalReport evaluate_corpora(const Corpus& predicted, const Corpus& gold);

std::string format_report(const EvalReport& report);
std::string format_report_kv(const EvalReport& report);

}  // namespace srl

#endif  // SRL_SCORER_HPP
