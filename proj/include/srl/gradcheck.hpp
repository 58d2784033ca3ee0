#ifndef SRL_GRADCHECK_HPP
#define SRL_GRADCHECK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "srl/model.hpp"

namespace srl {

/// |analytic - numeric| / max(|analytic|, |numeric|, floor).
double relative_error(double analytic, double numeric, double floor = 1e-6);

struct ParamCheck {
  std::string name;
  std::size_t elements = 0;
  double max_rel_error = 0;
};

struct GradCheckReport {
  std::vector<ParamCheck> params;
  double max_rel_error = 0;
  /// True when no frozen table (pretrained vectors) received a gradient.
  bool frozen_untouched = true;
};

/// Central-difference check of every trainable parameter of `model` against the
/// tape gradient of the eval-mode cross-entropy loss on one instance.
GradCheckReport check_model_gradients(SrlModel& model, const PredicateInstance& instance,
                                      const ExternalVectors* external, double eps = 1e-4);

/// Builds a 3-token instance and a model from `config` (pretrained and external
/// vectors included) and runs check_model_gradients.
GradCheckReport gradcheck_toy(const TrainConfig& config, std::uint64_t seed, double eps = 1e-4);

}  // namespace srl

#endif  // SRL_GRADCHECK_HPP
