#ifndef SRL_LABELS_HPP
#define SRL_LABELS_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace srl {

inline constexpr std::string_view kNullLabel = "_";
inline constexpr std::string_view kBoaLabel = "<BOA>";
inline constexpr std::string_view kEoaLabel = "<EOA>";

inline bool is_boundary_label(std::string_view l) { return l == kBoaLabel || l == kEoaLabel; }
inline bool is_argument_label(std::string_view l) { return l != kNullLabel && !is_boundary_label(l); }

/// Ordered label inventory with a dense integer index.
///
/// Layout: `_` at 0, then `<BOA>` and `<EOA>` (when present), then the argument
/// labels in lexicographic order. The boundary tags are always present in a corpus
/// inventory; a model trained without auxiliary tags uses a tag-free view.
class LabelSet {
 public:
  LabelSet() : LabelSet(std::set<std::string>{}) {}
  explicit LabelSet(const std::set<std::string>& observed, bool with_boundary = true);

  std::size_t size() const { return labels_.size(); }
  bool has_boundary() const { return with_boundary_; }

  bool contains(std::string_view label) const;
  /// Throws DataError for labels outside the inventory.
  std::size_t index(std::string_view label) const;
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t null_index() const { return 0; }
  std::size_t boa_index() const;
  std::size_t eoa_index() const;

  std::vector<std::string> argument_labels() const;
  LabelSet without_boundary() const;
  LabelSet with_boundary() const;

  bool operator==(const LabelSet& o) const { return labels_ == o.labels_; }

 private:
  bool with_boundary_;
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace srl

#endif  // SRL_LABELS_HPP
