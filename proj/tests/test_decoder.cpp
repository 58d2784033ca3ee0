#include <doctest.h>

#include "fixtures.hpp"
#include "srl/boundary_tags.hpp"
#include "srl/decoder.hpp"
#include "srl/error.hpp"
#include "srl/synth.hpp"

using namespace srl;

namespace {

using Args = std::map<std::size_t, std::string>;

// Brute-force reading of the scan rules: walk left until a <BOA>, right until an
// <EOA>, keep argument labels, ignore everything else.
Args scan_oracle(const std::vector<std::string>& l, std::size_t pred) {
  Args out;
  if (is_argument_label(l[pred])) out[pred] = l[pred];
  for (std::size_t i = pred; i-- > 0;) {
    if (l[i] == "<BOA>") break;
    if (is_argument_label(l[i])) out[i] = l[i];
  }
  for (std::size_t i = pred + 1; i < l.size(); ++i) {
    if (l[i] == "<EOA>") break;
    if (is_argument_label(l[i])) out[i] = l[i];
  }
  return out;
}

Matrix one_hot(const std::vector<std::string>& labels, const LabelSet& set) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(set.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(set.index(labels[i]))) = 1;
  return m;
}

}  // namespace

TEST_CASE("decode the apple frame") {
  const auto s = decode_labels(test::labels({"_", "<BOA>", "A1", "_", "A3", "<EOA>", "_"}), 3, true);
  CHECK(s.arguments == Args{{2, "A1"}, {4, "A3"}});
}

TEST_CASE("immediate tags give no arguments") {
  const auto s = decode_labels(test::labels({"A0", "<BOA>", "_", "<EOA>", "A1"}), 2, true);
  CHECK(s.arguments.empty());
}

TEST_CASE("right scan stops at the first end tag") {
  const auto l = test::labels({"A0", "_", "A1", "_", "<EOA>", "A2", "_"});
  const auto s = decode_labels(l, 3, true);
  CHECK(s.arguments == Args{{0, "A0"}, {2, "A1"}});
  CHECK(s.arguments == scan_oracle(l, 3));
}

TEST_CASE("tags in the wrong direction read as null") {
  const auto s = decode_labels(test::labels({"A0", "<EOA>", "A1", "_", "<BOA>", "A2", "<EOA>", "A3"}), 3, true);
  CHECK(s.arguments == Args{{0, "A0"}, {2, "A1"}, {5, "A2"}});
  // A tag predicted on the predicate itself is ignored.
  const auto p = decode_labels(test::labels({"A0", "<EOA>", "A1"}), 1, true);
  CHECK(p.arguments == Args{{0, "A0"}, {2, "A1"}});
}

TEST_CASE("without tags every position is independent") {
  const auto s = decode_labels(test::labels({"A0", "<BOA>", "A1", "_", "<EOA>", "A2"}), 3, false);
  CHECK(s.arguments == Args{{0, "A0"}, {2, "A1"}, {5, "A2"}});
}

TEST_CASE("property: scan matches the brute-force oracle") {
  Rng rng(14);
  static const char* vocab[] = {"_", "_", "_", "A0", "A1", "<BOA>", "<EOA>"};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 15));
    const auto pred = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    std::vector<std::string> l(n);
    for (auto& x : l) x = vocab[rng.uniform_int(0, 6)];
    CHECK(decode_labels(l, pred, true).arguments == scan_oracle(l, pred));
  }
}

TEST_CASE("property: one-hot gold matrices decode to the gold arguments") {
  const LabelSet set({"A0", "A1", "A2", "AM-TMP"});
  Rng rng(15);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 30));
    const auto pred = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    const auto gold = test::random_frame(n, pred, rng, rng.uniform(0.0, 0.5));
    const auto aug = augment_labels(gold, pred);
    const auto s = decode(one_hot(aug, set), set, pred, true);
    Args expected;
    for (std::size_t i = 0; i < n; ++i)
      if (gold[i] != "_") expected[i] = gold[i];
    CHECK(s.arguments == expected);
  }
}

TEST_CASE("decode rejects malformed rows") {
  const LabelSet set({"A0"});
  Matrix m = Matrix::Constant(2, 4, 0.25);
  CHECK_NOTHROW(decode(m, set, 0, true));
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(decode(m, set, 0, true), DataError);
  m = Matrix::Constant(2, 4, 0.5);
  CHECK_THROWS_AS(decode(m, set, 0, true), DataError);
  m = Matrix::Constant(2, 3, 1.0 / 3);
  CHECK_THROWS(decode(m, set, 0, true));
}

TEST_CASE("apply arguments writes frames back") {
  const auto corpus = parse_corpus(std::string(test::kAppleSentence));
  ArgumentSet s{0, 3, {{0, "A0"}, {6, "A2"}}};
  const auto out = apply_arguments(corpus, std::vector<ArgumentSet>{s});
  const auto& t = out.sentences[0].tokens;
  CHECK(t[0].arg_labels == test::labels({"A0"}));
  CHECK(t[2].arg_labels == test::labels({"_"}));
  CHECK(t[6].arg_labels == test::labels({"A2"}));
  CHECK(t[3].sense == "drop.01");

  const auto gold = extract_instances(corpus);
  const auto same = apply_arguments(corpus, std::vector<ArgumentSet>{gold_arguments(gold[0])});
  CHECK(same == corpus);
}
