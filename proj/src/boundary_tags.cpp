#include "srl/boundary_tags.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "srl/error.hpp"

namespace srl {

ArgumentWindow argument_window(std::span<const std::string> labels, std::size_t predicate_index) {
  if (predicate_index >= labels.size()) throw DataError("predicate index out of range");
  ArgumentWindow w{predicate_index, predicate_index};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!is_argument_label(labels[i])) continue;
    w.begin = std::min(w.begin, i);
    w.end = std::max(w.end, i);
  }
  return w;
}

bool has_boundary_tags(std::span<const std::string> labels) {
  return std::any_of(labels.begin(), labels.end(), [](const auto& l) { return is_boundary_label(l); });
}

std::vector<std::string> augment_labels(std::span<const std::string> labels, std::size_t predicate_index) {
  if (has_boundary_tags(labels)) throw DataError("instance is already augmented");
  const auto w = argument_window(labels, predicate_index);
  std::vector<std::string> out(labels.begin(), labels.end());
  if (w.begin > 0) out[w.begin - 1] = kBoaLabel;
  if (w.end + 1 < out.size()) out[w.end + 1] = kEoaLabel;
  return out;
}

PredicateInstance augment_labels(const PredicateInstance& instance) {
  auto out = instance;
  out.gold_labels = augment_labels(instance.gold_labels, instance.predicate_index);
  return out;
}

std::vector<std::string> strip_tags(std::span<const std::string> labels) {
  std::vector<std::string> out(labels.begin(), labels.end());
  for (auto& l : out)
    if (is_boundary_label(l)) l = kNullLabel;
  return out;
}

PredicateInstance strip_tags(const PredicateInstance& instance) {
  auto out = instance;
  out.gold_labels = strip_tags(instance.gold_labels);
  return out;
}

ArgumentWindow tagged_region(std::span<const std::string> labels, std::size_t predicate_index) {
  if (predicate_index >= labels.size()) throw DataError("predicate index out of range");
  ArgumentWindow w{0, labels.size() - 1};
  for (std::size_t i = predicate_index; i-- > 0;)
    if (labels[i] == kBoaLabel) {
      w.begin = i;
      break;
    }
  for (std::size_t i = predicate_index + 1; i < labels.size(); ++i)
    if (labels[i] == kEoaLabel) {
      w.end = i;
      break;
    }
  return w;
}

StatsScope parse_stats_scope(const std::string& s) {
  if (s == "full_sequence") return StatsScope::full_sequence;
  if (s == "window_only") return StatsScope::window_only;
  throw ConfigError("unknown scope '" + s + "' (expected full_sequence or window_only)");
}

std::string to_string(StatsScope s) {
  return s == StatsScope::full_sequence ? "full_sequence" : "window_only";
}

LabelStats compute_label_stats(std::span<const PredicateInstance> instances, StatsScope scope) {
  if (instances.empty()) throw DataError("label statistics need at least one instance");
  LabelStats st;
  st.scope = scope;
  for (const auto& inst : instances) {
    ArgumentWindow w{0, inst.gold_labels.size() - 1};
    if (scope == StatsScope::window_only) w = tagged_region(inst.gold_labels, inst.predicate_index);
    for (std::size_t i = w.begin; i <= w.end; ++i) {
      if (is_argument_label(inst.gold_labels[i])) ++st.arguments;
      else ++st.non_arguments;
    }
  }
  const double total = static_cast<double>(st.arguments + st.non_arguments);
  st.arg_fraction = st.arguments / total;
  st.nonarg_fraction = st.non_arguments / total;
  char buf[64];
  if (st.arguments == 0) std::snprintf(buf, sizeof buf, "0:%zu", st.non_arguments);
  else std::snprintf(buf, sizeof buf, "1:%.1f", static_cast<double>(st.non_arguments) / st.arguments);
  st.ratio_string = buf;
  return st;
}

std::string format_stats_table(std::span<const LabelStats> stats) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %10s %10s %10s\n", "scope", "Args(%)", "NonArgs(%)", "Ratio");
  out << buf;
  for (const auto& s : stats) {
    std::snprintf(buf, sizeof buf, "%-14s %10.2f %10.2f %10s\n", to_string(s.scope).c_str(),
                  100 * s.arg_fraction, 100 * s.nonarg_fraction, s.ratio_string.c_str());
    out << buf;
  }
  return out.str();
}

std::string format_stats_kv(const LabelStats& s) {
  std::ostringstream out;
  char buf[256];
  const auto scope = to_string(s.scope);
  std::snprintf(buf, sizeof buf,
                "%s.arguments=%zu\n%s.non_arguments=%zu\n%s.arg_fraction=%.6f\n%s.nonarg_fraction=%.6f\n",
                scope.c_str(), s.arguments, scope.c_str(), s.non_arguments, scope.c_str(), s.arg_fraction,
                scope.c_str(), s.nonarg_fraction);
  out << buf << scope << ".ratio=" << s.ratio_string << '\n';
  return out.str();
}

}  // namespace srl
