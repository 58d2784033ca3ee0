#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "srl/boundary_tags.hpp"
#include "srl/error.hpp"
#include "srl/gradcheck.hpp"
#include "srl/model.hpp"
#include "srl/synth.hpp"
#include "srl/trainer.hpp"

using namespace srl;

namespace {

Corpus small_corpus(int sentences, std::uint64_t seed) {
  GenConfig g;
  g.sentence_count = sentences;
  g.seed = seed;
  return generate(g);
}

TrainConfig tiny_config() {
  TrainConfig c = TrainConfig::desk();
  c.hidden = 8;
  c.layers = 1;
  c.word_dim = c.lemma_dim = 8;
  c.pos_dim = c.indicator_dim = 4;
  c.max_epochs = 3;
  c.batch_size = 4;
  return c;
}

std::vector<double> flat_params(const ParamStore& store) {
  std::vector<double> out;
  for (const auto& p : store) out.insert(out.end(), p.value.data(), p.value.data() + p.value.size());
  return out;
}

}  // namespace

TEST_CASE("loss mask") {
  const auto aug = test::labels({"_", "<BOA>", "A1", "_", "A3", "<EOA>", "_"});
  const auto window = loss_mask(aug, 3, LossWindow::window_only);
  CHECK(std::count(window.begin(), window.end(), true) == 5);
  CHECK_FALSE(window[0]);
  CHECK(window[1]);
  CHECK(window[5]);
  CHECK_FALSE(window[6]);
  const auto full = loss_mask(aug, 3, LossWindow::full_sequence);
  CHECK(std::count(full.begin(), full.end(), true) == 7);
}

TEST_CASE("loss on fixed prediction matrices") {
  const std::vector<std::size_t> targets{0, 2, 1};
  const std::vector<bool> all(3, true);
  Matrix onehot = Matrix::Zero(3, 4);
  for (int i = 0; i < 3; ++i) onehot(i, static_cast<int>(targets[i])) = 1;
  CHECK(compute_loss(onehot, targets, all) < 1e-10);
  const Matrix uniform = Matrix::Constant(3, 4, 0.25);
  CHECK(compute_loss(uniform, targets, all) == doctest::Approx(std::log(4.0)));
  // A zero probability is clamped, not infinite.
  Matrix wrong = Matrix::Zero(3, 4);
  wrong.col(3).setOnes();
  CHECK(compute_loss(wrong, targets, all) == doctest::Approx(-std::log(1e-12)));
}

TEST_CASE("model forward") {
  const auto corpus = small_corpus(10, 2);
  const auto config = tiny_config();
  SrlModel model(config, corpus.label_inventory, VocabMaps::build(corpus));
  CHECK(model.labels().has_boundary());
  const auto inst = extract_instances(corpus);
  const Matrix a = model.predict(inst[0]);
  const Matrix b = model.predict(inst[0]);
  CHECK(a == b);
  CHECK(a.rows() == static_cast<Eigen::Index>(inst[0].size()));
  CHECK(a.cols() == static_cast<Eigen::Index>(model.labels().size()));

  Tape tape;
  Rng rng(1);
  const auto trace = model.trace(tape, inst[0], nullptr, rng, false);
  REQUIRE(trace.attention.has_value());
  CHECK(trace.fused.cols() == config.fused_width());
  CHECK(trace.hidden.cols() == 2 * config.hidden);

  auto no_attn = config;
  no_attn.use_attention = false;
  SrlModel plain(no_attn, corpus.label_inventory, VocabMaps::build(corpus));
  Tape t2;
  const auto pt = plain.trace(t2, inst[0], nullptr, rng, false);
  CHECK_FALSE(pt.attention.has_value());
  CHECK(pt.fused.value() == pt.hidden.value());
  CHECK_FALSE(plain.params().contains("attn.w1"));

  CHECK_THROWS_AS(model.targets(test::labels({"A0", "A7"})), DataError);
}

TEST_CASE("property: prediction rows are distributions") {
  const auto corpus = small_corpus(100, 3);
  SrlModel model(tiny_config(), corpus.label_inventory, VocabMaps::build(corpus));
  for (const auto& inst : extract_instances(corpus)) {
    const Matrix p = model.predict(inst);
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      CHECK(std::abs(p.row(i).sum() - 1.0) <= 1e-9);
      CHECK(p.row(i).minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("training examples") {
  const auto corpus = parse_corpus(std::string(test::kAppleSentence));
  auto config = tiny_config();
  SrlModel model(config, corpus.label_inventory, VocabMaps::build(corpus));
  const auto inst = extract_instances(corpus)[0];
  const auto ex = make_example(model, inst);
  CHECK(ex.instance.gold_labels == test::labels({"_", "<BOA>", "A1", "_", "A3", "<EOA>", "_"}));
  CHECK(ex.targets[1] == model.labels().boa_index());

  config.use_aux_tags = false;
  SrlModel plain(config, corpus.label_inventory, VocabMaps::build(corpus));
  CHECK_FALSE(plain.labels().has_boundary());
  const auto ex2 = make_example(plain, augment_labels(inst));
  CHECK_FALSE(has_boundary_tags(ex2.instance.gold_labels));

  config.loss_window = LossWindow::window_only;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.use_aux_tags = true;
  SrlModel windowed(config, corpus.label_inventory, VocabMaps::build(corpus));
  const auto ex3 = make_example(windowed, inst);
  CHECK(std::count(ex3.mask.begin(), ex3.mask.end(), true) == 5);
}

TEST_CASE("zero learning rate leaves parameters unchanged") {
  const auto corpus = small_corpus(12, 4);
  auto config = tiny_config();
  config.lr = 0;
  config.max_epochs = 1;
  const auto result = train(corpus, Corpus{}, config);
  SrlModel fresh(config, corpus.label_inventory, VocabMaps::build(corpus));
  CHECK(flat_params(result.model.params()) == flat_params(fresh.params()));
}

TEST_CASE("loss on a fixed batch decreases") {
  const auto corpus = small_corpus(8, 5);
  auto config = tiny_config();
  config.lr = 0.01;
  config.keep_prob = 1.0;
  SrlModel model(config, corpus.label_inventory, VocabMaps::build(corpus));
  std::vector<TrainExample> batch;
  for (const auto& inst : extract_instances(corpus)) batch.push_back(make_example(model, inst));
  Trainer trainer(model);
  double prev = trainer.step(batch, 1);
  for (int s = 2; s <= 6; ++s) {
    const double loss = trainer.step(batch, static_cast<std::uint64_t>(s));
    CHECK(loss < prev);
    prev = loss;
  }
}

TEST_CASE("two sentences are memorized") {
  const auto corpus = small_corpus(2, 6);
  auto config = TrainConfig::desk();
  config.hidden = 16;
  config.layers = 1;
  config.hops = 2;
  SrlModel model(config, corpus.label_inventory, VocabMaps::build(corpus));
  std::vector<TrainExample> batch;
  for (const auto& inst : extract_instances(corpus)) batch.push_back(make_example(model, inst));
  Trainer trainer(model);
  for (int epoch = 1; epoch <= 300; ++epoch) trainer.step(batch, static_cast<std::uint64_t>(epoch));
  double loss = 0;
  for (const auto& ex : batch) loss += compute_loss(model.predict(ex.instance), ex.targets, ex.mask);
  CHECK(loss / static_cast<double>(batch.size()) < 0.01);
}

TEST_CASE("seeded training is bitwise reproducible") {
  const auto train_c = small_corpus(16, 7);
  const auto dev_c = small_corpus(6, 8);
  for (int workers : {1, 3}) {
    auto config = tiny_config();
    config.workers = workers;
    const auto a = train(train_c, dev_c, config);
    const auto b = train(train_c, dev_c, config);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
      CHECK(a.history[i].train_loss == b.history[i].train_loss);
      CHECK(a.history[i].dev.f1 == b.history[i].dev.f1);
    }
    CHECK(flat_params(a.model.params()) == flat_params(b.model.params()));
    CHECK(a.best_epoch == b.best_epoch);
  }
}

TEST_CASE("best epoch is the earliest maximum of dev F1") {
  const auto train_c = small_corpus(20, 9);
  const auto dev_c = small_corpus(8, 10);
  auto config = tiny_config();
  config.max_epochs = 6;
  int calls = 0;
  const auto r = train(train_c, dev_c, config, {}, {[&](const EpochRecord&) { ++calls; }});
  CHECK(calls == 6);
  REQUIRE(r.history.size() == 6);
  double best = -1;
  int expected = 0;
  for (const auto& h : r.history)
    if (h.dev.f1 > best) {
      best = h.dev.f1;
      expected = h.epoch;
    }
  CHECK(r.best_epoch == expected);
  // The returned parameters reproduce the recorded dev score.
  const auto dev_inst = extract_instances(dev_c);
  std::vector<ArgumentSet> gold;
  for (const auto& i : dev_inst) gold.push_back(gold_arguments(i));
  CHECK(evaluate(predict_arguments(r.model, dev_inst), gold).f1 == r.history[static_cast<std::size_t>(expected - 1)].dev.f1);
  CHECK(format_history(r.history).find("epoch") != std::string::npos);
}

TEST_CASE("empty training corpus raises") {
  CHECK_THROWS_AS(train(Corpus{}, Corpus{}, tiny_config()), DataError);
}

TEST_CASE("checkpoint save and load reproduce predictions") {
  const auto corpus = small_corpus(6, 11);
  auto config = tiny_config();
  std::istringstream in("nom1 1 2 3 4\n");
  config.pretrained_dim = 4;
  const auto pre = load_pretrained(in, 4);
  SrlModel model(config, corpus.label_inventory, VocabMaps::build(corpus), &pre);
  const auto dir = std::filesystem::temp_directory_path() / "srl_labeler_test";
  std::filesystem::create_directories(dir);
  model.save(dir / "m.ckpt");
  CHECK(std::filesystem::exists(dir / "m.ckpt.json"));
  const auto loaded = SrlModel::load(dir / "m.ckpt");
  CHECK(loaded.labels() == model.labels());
  CHECK(loaded.config().hidden == config.hidden);
  for (const auto& inst : extract_instances(corpus)) CHECK(loaded.predict(inst) == model.predict(inst));
  std::filesystem::remove_all(dir);
}

TEST_CASE("toy gradient check") {
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    const auto report = gradcheck_toy(TrainConfig::toy(), seed);
    CHECK(report.max_rel_error < 1e-4);
    CHECK(report.frozen_untouched);
    CHECK(report.params.size() >= 8);
  }
  CHECK(relative_error(1.0, 1.0) == 0.0);
  CHECK(relative_error(0.0, 1e-9) == doctest::Approx(1e-3));
}
