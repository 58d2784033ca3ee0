#include <doctest.h>

#include <algorithm>
#include <array>

#include "fixtures.hpp"
#include "srl/boundary_tags.hpp"
#include "srl/error.hpp"
#include "srl/synth.hpp"

using namespace srl;

TEST_CASE("generation is deterministic") {
  GenConfig g;
  g.sentence_count = 40;
  g.max_predicates = 2;
  g.min_length = 8;
  CHECK(generate(g) == generate(g));
  CHECK(serialize_corpus(generate(g)) == serialize_corpus(generate(g)));
  auto other = g;
  other.seed = 2;
  CHECK_FALSE(generate(other) == generate(g));
  // Sentence i depends only on (seed, i).
  auto longer = g;
  longer.sentence_count = 60;
  const auto a = generate(g);
  const auto b = generate(longer);
  for (std::size_t i = 0; i < a.sentences.size(); ++i) CHECK(a.sentences[i] == b.sentences[i]);
}

TEST_CASE("window of one with two arguments fixes their positions") {
  GenConfig g;
  g.window = 1;
  g.min_arguments = g.max_arguments = 2;
  g.sentence_count = 50;
  for (const auto& inst : extract_instances(generate(g))) {
    const auto p = inst.predicate_index;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const bool is_arg = inst.gold_labels[i] != "_";
      CHECK(is_arg == (i + 1 == p || i == p + 1));
    }
  }
}

TEST_CASE("structure of generated sentences") {
  GenConfig g;
  g.sentence_count = 200;
  g.max_predicates = 2;
  g.min_length = 9;
  g.labels = {"A0", "A1", "A2", "A3"};
  const auto corpus = generate(g);
  for (const auto& s : corpus.sentences) {
    CHECK(s.size() >= 9);
    CHECK(s.size() <= 14);
    CHECK(s.predicate_indices.size() >= 1);
    CHECK(s.predicate_indices.size() <= 2);
  }
  for (const auto& inst : extract_instances(corpus)) {
    const auto& toks = inst.sentence->tokens;
    CHECK(toks[inst.predicate_index].pos.substr(0, 2) == "VB");
    int args = 0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const auto& l = inst.gold_labels[i];
      if (l == "_") continue;
      ++args;
      const auto dist = static_cast<int>(i) - static_cast<int>(inst.predicate_index);
      CHECK(std::abs(dist) <= g.window);
      CHECK(dist != 0);
      // Left arguments take even label indices, right ones odd.
      const auto idx = static_cast<int>(std::find(g.labels.begin(), g.labels.end(), l) - g.labels.begin());
      CHECK(idx % 2 == (dist < 0 ? 0 : 1));
    }
    CHECK(args >= g.min_arguments);
    CHECK(args <= g.max_arguments);
  }
}

TEST_CASE("infeasible configurations raise") {
  GenConfig g;
  g.window = 1;
  g.max_arguments = 3;
  CHECK_THROWS_AS(generate(g), ConfigError);
  g = GenConfig{};
  g.min_length = 3;
  g.max_predicates = 5;
  CHECK_THROWS_AS(generate(g), ConfigError);
  g = GenConfig{};
  g.labels = {"<BOA>"};
  CHECK_THROWS_AS(generate(g), ConfigError);
  g = GenConfig{};
  CHECK_THROWS_AS(g.apply({{"colour", "red"}}), ConfigError);
  g.apply({{"labels", "A0,A1,A2"}, {"window", "2"}, {"sentences", "7"}});
  CHECK(g.labels.size() == 3);
  CHECK(g.window == 2);
  CHECK(generate(g).sentences.size() == 7);
}

TEST_CASE("full-sequence argument share matches the analytic expectation") {
  // Every instance spans its whole sentence and holds k arguments, with n and k
  // drawn independently, so the pooled share is E[k] / E[n].
  for (const auto& [lo, hi, kmin, kmax] : std::vector<std::array<int, 4>>{{6, 14, 1, 2}, {10, 30, 0, 4}}) {
    GenConfig g;
    g.sentence_count = 10000;
    g.min_length = lo;
    g.max_length = hi;
    g.min_arguments = kmin;
    g.max_arguments = kmax;
    g.max_predicates = 2;
    const double expected = (kmin + kmax) / 2.0 / ((lo + hi) / 2.0);
    auto inst = extract_instances(generate(g));
    const auto full = compute_label_stats(inst, StatsScope::full_sequence);
    CHECK(std::abs(full.arg_fraction - expected) / expected <= 0.10);
    for (auto& i : inst) i = augment_labels(i);
    CHECK(compute_label_stats(inst, StatsScope::window_only).arg_fraction > full.arg_fraction);
  }
}
