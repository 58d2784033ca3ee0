#ifndef SRL_SYNTH_HPP
#define SRL_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "srl/conll_io.hpp"
#include "srl/config_file.hpp"

namespace srl {

/// Parameters of the synthetic corpus generator.
///
/// Each predicate draws k arguments uniformly from the tokens within `window` of
/// it. Arguments are nouns; other tokens inside any predicate's window are
/// non-noun fillers, and tokens outside every window are nouns with probability
/// `distractor_rate`. The label depends on the side (and distance) of the
/// argument relative to its predicate, flipped to a random label with probability
/// `label_noise`.
struct GenConfig {
  int sentence_count = 100;
  int min_length = 6;
  int max_length = 14;
  int min_predicates = 1;
  int max_predicates = 1;
  int min_arguments = 1;
  int max_arguments = 2;
  int window = 3;
  int noun_vocab = 30;
  int verb_vocab = 10;
  int filler_vocab = 20;
  std::vector<std::string> labels{"A0", "A1"};
  double label_noise = 0.0;
  double distractor_rate = 0.3;
  std::uint64_t seed = 1;

  /// Throws ConfigError for degenerate ranges or infeasible argument counts.
  void validate() const;
  void apply(const KeyValues& kv);
};

/// Deterministic for a given config; sentence i depends only on (seed, i).
Corpus generate(const GenConfig& config);

}  // namespace srl

#endif  // SRL_SYNTH_HPP
