#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "srl/boundary_tags.hpp"
#include "srl/error.hpp"
#include "srl/synth.hpp"

using namespace srl;

namespace {

// Direct restatement of the tagging rule: window over the predicate and every
// argument, tags on the two neighbours when they exist.
std::vector<std::string> augment_oracle(const std::vector<std::string>& labels, std::size_t pred) {
  std::size_t lo = pred, hi = pred;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != "_") {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  auto out = labels;
  if (lo > 0) out[lo - 1] = "<BOA>";
  if (hi + 1 < labels.size()) out[hi + 1] = "<EOA>";
  return out;
}

}  // namespace

TEST_CASE("augment the apple frame") {
  const auto gold = test::labels({"_", "_", "A1", "_", "A3", "_", "_"});
  CHECK(augment_labels(gold, 3) == test::labels({"_", "<BOA>", "A1", "_", "A3", "<EOA>", "_"}));
  const auto w = argument_window(gold, 3);
  CHECK(w.begin == 2);
  CHECK(w.end == 4);

  const auto corpus = parse_corpus(std::string(test::kAppleSentence));
  const auto inst = augment_labels(extract_instances(corpus)[0]);
  CHECK(inst.gold_labels == test::labels({"_", "<BOA>", "A1", "_", "A3", "<EOA>", "_"}));
  CHECK_THROWS_AS(augment_labels(inst), DataError);
}

TEST_CASE("predicate without arguments") {
  const auto out = augment_labels(test::labels({"_", "_", "_", "_", "_"}), 2);
  CHECK(out == test::labels({"_", "<BOA>", "_", "<EOA>", "_"}));
}

TEST_CASE("tags are clipped at the sentence edge") {
  CHECK(augment_labels(test::labels({"A0", "_", "_", "A1", "_"}), 1) ==
        test::labels({"A0", "_", "_", "A1", "<EOA>"}));
  CHECK(augment_labels(test::labels({"_", "A0", "_", "A1"}), 2) == test::labels({"<BOA>", "A0", "_", "A1"}));
  CHECK(augment_labels(test::labels({"_"}), 0) == test::labels({"_"}));
  // Arguments on one side only: the predicate stays inside the window.
  CHECK(augment_labels(test::labels({"_", "A0", "_", "_", "_", "_"}), 4) ==
        test::labels({"<BOA>", "A0", "_", "_", "_", "<EOA>"}));
}

TEST_CASE("strip tags") {
  CHECK(strip_tags(test::labels({"_", "<BOA>", "A1", "_", "A3", "<EOA>", "_"})) ==
        test::labels({"_", "_", "A1", "_", "A3", "_", "_"}));
  const auto plain = test::labels({"A0", "_", "A1"});
  CHECK(strip_tags(plain) == plain);
  CHECK_FALSE(has_boundary_tags(plain));
  CHECK(has_boundary_tags(test::labels({"<EOA>"})));
}

TEST_CASE("tagged region") {
  const auto aug = test::labels({"_", "<BOA>", "A1", "_", "A3", "<EOA>", "_"});
  const auto r = tagged_region(aug, 3);
  CHECK(r.begin == 1);
  CHECK(r.end == 5);
  const auto clipped = tagged_region(test::labels({"A0", "_", "A1", "<EOA>"}), 1);
  CHECK(clipped.begin == 0);
  CHECK(clipped.end == 3);
}

TEST_CASE("window-only statistics of the apple frame") {
  const auto corpus = parse_corpus(std::string(test::kAppleSentence));
  const std::vector<PredicateInstance> inst{augment_labels(extract_instances(corpus)[0])};
  const auto s = compute_label_stats(inst, StatsScope::window_only);
  CHECK(s.arguments == 2);
  CHECK(s.non_arguments == 3);
  CHECK(s.arg_fraction == doctest::Approx(0.4));
  CHECK(s.nonarg_fraction == doctest::Approx(0.6));
  CHECK(s.ratio_string == "1:1.5");

  const auto full = compute_label_stats(inst, StatsScope::full_sequence);
  CHECK(full.arguments == 2);
  CHECK(full.non_arguments == 5);

  CHECK_THROWS_AS(compute_label_stats(std::vector<PredicateInstance>{}, StatsScope::full_sequence), DataError);
  CHECK(parse_stats_scope("window_only") == StatsScope::window_only);
  CHECK_THROWS(parse_stats_scope("sideways"));
  CHECK(format_stats_kv(s).find("window_only.arg_fraction=") != std::string::npos);
}

TEST_CASE("property: augmentation matches the oracle and strip inverts it") {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 25));
    const auto pred = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    const auto gold = test::random_frame(n, pred, rng, rng.uniform(0.0, 0.6));
    const auto aug = augment_labels(gold, pred);
    CHECK(aug == augment_oracle(gold, pred));
    CHECK(strip_tags(aug) == gold);
    // Tags never overwrite an argument or the predicate.
    for (std::size_t i = 0; i < n; ++i)
      if (is_boundary_label(aug[i])) {
        CHECK(gold[i] == "_");
        CHECK(i != pred);
      }
    CHECK(std::count(aug.begin(), aug.end(), "<BOA>") <= 1);
    CHECK(std::count(aug.begin(), aug.end(), "<EOA>") <= 1);
  }
}

TEST_CASE("window-only share exceeds the full-sequence share") {
  GenConfig g;
  g.sentence_count = 300;
  g.seed = 12;
  const auto corpus = generate(g);
  auto inst = extract_instances(corpus);
  for (auto& i : inst) i = augment_labels(i);
  const auto full = compute_label_stats(inst, StatsScope::full_sequence);
  const auto win = compute_label_stats(inst, StatsScope::window_only);
  CHECK(full.arguments == win.arguments);
  CHECK(win.arg_fraction > full.arg_fraction);
}
