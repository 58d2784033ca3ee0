#include "srl/labels.hpp"

#include "srl/error.hpp"

namespace srl {

LabelSet::LabelSet(const std::set<std::string>& observed, bool with_boundary)
    : with_boundary_(with_boundary) {
  labels_.emplace_back(kNullLabel);
  if (with_boundary_) {
    labels_.emplace_back(kBoaLabel);
    labels_.emplace_back(kEoaLabel);
  }
  for (const auto& l : observed)
    if (is_argument_label(l)) labels_.push_back(l);
  for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
}

bool LabelSet::contains(std::string_view label) const { return index_.find(label) != index_.end(); }

std::size_t LabelSet::index(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw DataError("label '" + std::string(label) + "' not in label inventory");
  return it->second;
}

std::size_t LabelSet::boa_index() const {
  if (!with_boundary_) throw DataError("label inventory has no boundary tags");
  return 1;
}

std::size_t LabelSet::eoa_index() const {
  if (!with_boundary_) throw DataError("label inventory has no boundary tags");
  return 2;
}

std::vector<std::string> LabelSet::argument_labels() const {
  return {labels_.begin() + (with_boundary_ ? 3 : 1), labels_.end()};
}

LabelSet LabelSet::without_boundary() const {
  auto args = argument_labels();
  return LabelSet({args.begin(), args.end()}, false);
}

LabelSet LabelSet::with_boundary() const {
  auto args = argument_labels();
  return LabelSet({args.begin(), args.end()}, true);
}

}  // namespace srl
