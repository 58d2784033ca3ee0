#ifndef SRL_DECODER_HPP
#define SRL_DECODER_HPP

#include <cstddef>
#include <span>
#include <string>

#include "srl/model.hpp"
#include "srl/scorer.hpp"

namespace srl {

/// Greedy search outward from the predicate.
///
/// With auxiliary tags: the predicate position is classified on its own (a tag
/// there reads as `_`); the left scan stops at the first `<BOA>`, the right scan at
/// the first `<EOA>`; a tag seen in the other direction reads as `_`; sentence
/// edges stop both scans. Without tags every position is classified independently.
ArgumentSet decode_labels(std::span<const std::string> argmax_labels, std::size_t predicate_index, bool use_aux_tags);

/// Argmax per row, then decode_labels. Rows must be finite, non-negative
/// distributions over `labels`.
ArgumentSet decode(const PredictionMatrix& pred, const LabelSet& labels, std::size_t predicate_index,
                   bool use_aux_tags);

/// Decodes every predicate of every sentence and writes the argument sets back
/// into the argument columns. Boundary tags never reach the output.
Corpus predict_corpus(const Corpus& corpus, const SrlModel& model, const ExternalVectors* external = nullptr);

/// Writes argument sets into the frames of `corpus` (everything else becomes `_`).
Corpus apply_arguments(const Corpus& corpus, std::span<const ArgumentSet> arguments);

}  // namespace srl

#endif  // SRL_DECODER_HPP
