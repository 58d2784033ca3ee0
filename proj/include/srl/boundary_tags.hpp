#ifndef SRL_BOUNDARY_TAGS_HPP
#define SRL_BOUNDARY_TAGS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srl/conll_io.hpp"

namespace srl {

/// Inclusive token range spanned by a predicate and all of its arguments.
struct ArgumentWindow {
  std::size_t begin = 0;
  std::size_t end = 0;
};

ArgumentWindow argument_window(std::span<const std::string> labels, std::size_t predicate_index);

/// Marks the token just before the window `<BOA>` and the token just after it
/// `<EOA>`. A tag is omitted when the window touches the sentence edge.
/// Throws DataError if the labels already contain a boundary tag.
PredicateInstance augment_labels(const PredicateInstance& instance);
std::vector<std::string> augment_labels(std::span<const std::string> labels, std::size_t predicate_index);

/// Replaces every boundary tag with `_`.
PredicateInstance strip_tags(const PredicateInstance& instance);
std::vector<std::string> strip_tags(std::span<const std::string> labels);

bool has_boundary_tags(std::span<const std::string> labels);

/// Scan region delimited by the tags of an augmented sequence: from the `<BOA>`
/// left of the predicate (or the sentence start) to the `<EOA>` right of it (or the
/// sentence end), both inclusive.
ArgumentWindow tagged_region(std::span<const std::string> labels, std::size_t predicate_index);

enum class StatsScope { full_sequence, window_only };

StatsScope parse_stats_scope(const std::string& s);
std::string to_string(StatsScope s);

struct LabelStats {
  StatsScope scope = StatsScope::full_sequence;
  std::size_t arguments = 0;
  std::size_t non_arguments = 0;
  double arg_fraction = 0;
  double nonarg_fraction = 0;
  /// "1:x" with x = non_arguments / arguments to one decimal place.
  std::string ratio_string;
};

/// Argument vs non-argument label counts. `window_only` requires augmented
/// instances and counts positions inside the tagged region, tags as non-arguments.
LabelStats compute_label_stats(std::span<const PredicateInstance> instances, StatsScope scope);

std::string format_stats_table(std::span<const LabelStats> stats);
std::string format_stats_kv(const LabelStats& stats);

}  // namespace srl

#endif  // SRL_BOUNDARY_TAGS_HPP
