#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "srl/boundary_tags.hpp"
#include "srl/conll_io.hpp"
#include "srl/decoder.hpp"
#include "srl/error.hpp"
#include "srl/gradcheck.hpp"
#include "srl/scorer.hpp"
#include "srl/synth.hpp"
#include "srl/trainer.hpp"

namespace srl::cli {

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string format = "simple";

  // paths
  std::string data, dev, out, checkpoint, gold, pred, pretrained, external, dev_external, history;

  // gen-data
  std::optional<int> sentences, window, min_length, max_length, min_predicates, max_predicates, min_arguments,
      max_arguments;
  std::optional<std::string> labels;

  // stats
  std::string scope = "both";

  // train
  std::string preset = "default";
  std::optional<int> epochs, batch_size, hidden, layers, hops;
  std::optional<double> lr, keep_prob;
  std::optional<std::string> loss_window;
  bool no_aux_tags = false;
  bool no_self_attention = false;

  // gradcheck
  int seeds = 5;
};

FormatConfig format_of(const Options& o) { return FormatConfig::from_name(o.format); }

int cmd_gen_data(const Options& o, std::ostream& out) {
  GenConfig g;
  if (!o.config.empty()) g.apply(read_key_values(o.config));
  if (o.seed) g.seed = *o.seed;
  if (o.sentences) g.sentence_count = *o.sentences;
  if (o.window) g.window = *o.window;
  if (o.min_length) g.min_length = *o.min_length;
  if (o.max_length) g.max_length = *o.max_length;
  if (o.min_predicates) g.min_predicates = *o.min_predicates;
  if (o.max_predicates) g.max_predicates = *o.max_predicates;
  if (o.min_arguments) g.min_arguments = *o.min_arguments;
  if (o.max_arguments) g.max_arguments = *o.max_arguments;
  if (o.labels) g.apply({{"labels", *o.labels}});
  const auto corpus = generate(g);
  write_corpus(o.out, corpus, format_of(o));
  out << "sentences=" << corpus.sentences.size() << "\npredicates=" << corpus.predicate_count() << '\n';
  return 0;
}

int cmd_augment(const Options& o, std::ostream& out) {
  const auto fmt = format_of(o);
  auto corpus = read_corpus(o.data, fmt);
  std::size_t changed = 0;
  for (auto& s : corpus.sentences)
    for (std::size_t j = 0; j < s.predicate_indices.size(); ++j) {
      std::vector<std::string> labels;
      for (const auto& t : s.tokens) labels.push_back(t.arg_labels[j]);
      const auto augmented = augment_labels(labels, s.predicate_indices[j]);
      for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        changed += augmented[i] != labels[i];
        s.tokens[i].arg_labels[j] = augmented[i];
      }
    }
  write_corpus(o.out, corpus, fmt);
  out << "instances=" << corpus.predicate_count() << "\ntags_placed=" << changed << '\n';
  return 0;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const auto corpus = read_corpus(o.data, format_of(o));
  auto instances = extract_instances(corpus);
  std::vector<StatsScope> scopes;
  if (o.scope == "both") scopes = {StatsScope::full_sequence, StatsScope::window_only};
  else scopes = {parse_stats_scope(o.scope)};
  std::vector<PredicateInstance> stripped, augmented;
  for (const auto& inst : instances) {
    stripped.push_back(strip_tags(inst));
    augmented.push_back(has_boundary_tags(inst.gold_labels) ? inst : augment_labels(inst));
  }
  std::vector<LabelStats> stats;
  for (auto scope : scopes)
    stats.push_back(compute_label_stats(scope == StatsScope::full_sequence ? stripped : augmented, scope));
  out << format_stats_table(stats);
  for (const auto& s : stats) out << format_stats_kv(s);
  return 0;
}

TrainConfig train_config_of(const Options& o) {
  auto cfg = TrainConfig::preset(o.preset);
  if (!o.config.empty()) cfg.apply(read_key_values(o.config));
  if (o.seed) cfg.seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.epochs) cfg.max_epochs = *o.epochs;
  if (o.batch_size) cfg.batch_size = *o.batch_size;
  if (o.hidden) cfg.hidden = *o.hidden;
  if (o.layers) cfg.layers = *o.layers;
  if (o.hops) cfg.hops = *o.hops;
  if (o.lr) cfg.lr = *o.lr;
  if (o.keep_prob) cfg.keep_prob = *o.keep_prob;
  if (o.loss_window) cfg.loss_window = parse_loss_window(*o.loss_window);
  if (o.no_aux_tags) cfg.use_aux_tags = false;
  if (o.no_self_attention) cfg.use_attention = false;
  if (!o.external.empty()) cfg.use_external = true;
  cfg.validate();
  return cfg;
}

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  const auto cfg = train_config_of(o);
  const auto fmt = format_of(o);
  const auto train_corpus = read_corpus(o.data, fmt);
  Corpus dev_corpus;
  if (!o.dev.empty()) dev_corpus = read_corpus(o.dev, fmt);
  else err << "no --dev corpus; selecting the checkpoint on the training set\n";

  std::optional<PretrainedVectors> pre;
  if (!o.pretrained.empty()) pre = load_pretrained(o.pretrained, cfg.pretrained_dim);
  std::optional<ExternalVectors> ext, dev_ext;
  if (!o.external.empty()) ext = read_external_vectors(o.external, cfg.external_dim);
  if (!o.dev_external.empty()) dev_ext = read_external_vectors(o.dev_external, cfg.external_dim);
  if (cfg.use_external && !o.dev.empty() && !dev_ext) throw ConfigError("--external needs --dev-external for the dev corpus");

  TrainOptions opts;
  opts.pretrained = pre ? &*pre : nullptr;
  opts.train_external = ext ? &*ext : nullptr;
  opts.dev_external = dev_ext ? &*dev_ext : nullptr;
  TrainCallbacks cb;
  cb.on_epoch = [&](const EpochRecord& r) {
    err << "epoch " << r.epoch << " loss " << r.train_loss << " dev_f1 " << r.dev.f1 << '\n';
  };
  const auto result = train(train_corpus, dev_corpus, cfg, opts, cb);
  result.model.save(o.out);
  const auto history_path = o.history.empty() ? o.out + ".history.tsv" : o.history;
  write_file_atomic(history_path, format_history(result.history));
  const auto& best = result.history[static_cast<std::size_t>(result.best_epoch - 1)];
  out << "best_epoch=" << result.best_epoch << '\n' << format_report_kv(best.dev);
  return 0;
}

int cmd_predict(const Options& o, std::ostream& out) {
  const auto model = SrlModel::load(o.checkpoint);
  const auto fmt = format_of(o);
  const auto corpus = read_corpus(o.data, fmt);
  std::optional<ExternalVectors> ext;
  if (model.config().use_external) {
    if (o.external.empty()) throw ConfigError("this checkpoint needs --external vectors");
    ext = read_external_vectors(o.external, model.config().external_dim);
  }
  const auto predicted = predict_corpus(corpus, model, ext ? &*ext : nullptr);
  write_corpus(o.out, predicted, fmt);
  out << "instances=" << predicted.predicate_count() << '\n';
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto fmt = format_of(o);
  const auto report = evaluate_corpora(read_corpus(o.pred, fmt), read_corpus(o.gold, fmt));
  out << format_report(report) << format_report_kv(report);
  return 0;
}

int cmd_gradcheck(const Options& o, std::ostream& out) {
  auto cfg = TrainConfig::preset(o.preset);
  if (!o.config.empty()) cfg.apply(read_key_values(o.config));
  cfg.use_external = true;
  const std::uint64_t first = o.seed.value_or(1);
  double worst = 0;
  bool frozen_ok = true;
  for (int k = 0; k < o.seeds; ++k) {
    const auto report = gradcheck_toy(cfg, first + static_cast<std::uint64_t>(k));
    for (const auto& p : report.params)
      out << "seed=" << first + static_cast<std::uint64_t>(k) << " param=" << p.name << " elements=" << p.elements
          << " max_rel_err=" << p.max_rel_error << '\n';
    worst = std::max(worst, report.max_rel_error);
    frozen_ok = frozen_ok && report.frozen_untouched;
  }
  out << "max_rel_err=" << worst << '\n' << "frozen_untouched=" << (frozen_ok ? "true" : "false") << '\n';
  return worst < 1e-4 && frozen_ok ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary-constrained dependency semantic role labeling"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--config", o.config, "key=value config file");
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--format", o.format, "column layout: simple, conll2009 or a key=index file");
  };

  auto* gen = app.add_subcommand("gen-data", "write a synthetic corpus");
  common(gen);
  gen->add_option("--out", o.out, "output corpus")->required();
  gen->add_option("--sentences", o.sentences);
  gen->add_option("--window", o.window, "max argument distance from its predicate");
  gen->add_option("--min-length", o.min_length);
  gen->add_option("--max-length", o.max_length);
  gen->add_option("--min-predicates", o.min_predicates);
  gen->add_option("--max-predicates", o.max_predicates);
  gen->add_option("--min-arguments", o.min_arguments);
  gen->add_option("--max-arguments", o.max_arguments);
  gen->add_option("--labels", o.labels, "comma-separated label alphabet");

  auto* aug = app.add_subcommand("augment", "add <BOA>/<EOA> boundary tags to every frame");
  common(aug);
  aug->add_option("--data", o.data)->required();
  aug->add_option("--out", o.out)->required();

  auto* stats = app.add_subcommand("stats", "argument / non-argument label distribution");
  common(stats);
  stats->add_option("--data", o.data)->required();
  stats->add_option("--scope", o.scope)->check(CLI::IsMember({"full_sequence", "window_only", "both"}));

  auto* tr = app.add_subcommand("train", "train a labeler");
  common(tr);
  tr->add_option("--data", o.data, "training corpus")->required();
  tr->add_option("--dev", o.dev, "development corpus for checkpoint selection");
  tr->add_option("--out", o.out, "checkpoint path")->required();
  tr->add_option("--history", o.history, "per-epoch history (default <out>.history.tsv)");
  tr->add_option("--preset", o.preset)->check(CLI::IsMember({"default", "desk", "toy"}));
  tr->add_option("--epochs", o.epochs)->check(CLI::PositiveNumber);
  tr->add_option("--batch-size", o.batch_size)->check(CLI::PositiveNumber);
  tr->add_option("--hidden", o.hidden)->check(CLI::PositiveNumber);
  tr->add_option("--layers", o.layers)->check(CLI::PositiveNumber);
  tr->add_option("--hops", o.hops)->check(CLI::PositiveNumber);
  tr->add_option("--lr", o.lr);
  tr->add_option("--keep-prob", o.keep_prob);
  tr->add_option("--loss-window", o.loss_window)->check(CLI::IsMember({"full_sequence", "window_only"}));
  tr->add_option("--pretrained", o.pretrained, "word vectors, one 'word v1 .. vd' per line");
  tr->add_option("--external", o.external, "precomputed contextual vectors for the training corpus");
  tr->add_option("--dev-external", o.dev_external, "precomputed contextual vectors for the dev corpus");
  tr->add_flag("--no-aux-tags", o.no_aux_tags, "train without boundary tags");
  tr->add_flag("--no-self-attention", o.no_self_attention, "drop the attention block");

  auto* pr = app.add_subcommand("predict", "label a corpus with a trained checkpoint");
  common(pr);
  pr->add_option("--checkpoint", o.checkpoint)->required();
  pr->add_option("--data", o.data)->required();
  pr->add_option("--out", o.out)->required();
  pr->add_option("--external", o.external);

  auto* ev = app.add_subcommand("eval", "labeled argument precision / recall / F1");
  common(ev);
  ev->add_option("--gold", o.gold)->required();
  ev->add_option("--pred", o.pred)->required();

  auto* gc = app.add_subcommand("gradcheck", "finite-difference check of the full model");
  common(gc);
  gc->add_option("--preset", o.preset)->check(CLI::IsMember({"default", "desk", "toy"}));
  gc->add_option("--seeds", o.seeds)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return 1;
  }

  if (gc->parsed() && o.preset == "default") o.preset = "toy";
  try {
    if (gen->parsed()) return cmd_gen_data(o, out);
    if (aug->parsed()) return cmd_augment(o, out);
    if (stats->parsed()) return cmd_stats(o, out);
    if (tr->parsed()) return cmd_train(o, out, err);
    if (pr->parsed()) return cmd_predict(o, out);
    if (ev->parsed()) return cmd_eval(o, out);
    if (gc->parsed()) return cmd_gradcheck(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace srl::cli
