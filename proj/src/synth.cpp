#include "srl/synth.hpp"

#include <algorithm>
#include <sstream>

#include "srl/error.hpp"
#include "srl/rng.hpp"

namespace srl {

namespace {

/// Tokens within `w` of `pos` in a sentence of length n, excluding pos.
int slots(int pos, int n, int w) { return std::min(w, pos) + std::min(w, n - 1 - pos); }

int feasible_positions(int n, int w, int k) {
  int c = 0;
  for (int p = 0; p < n; ++p) c += slots(p, n, w) >= k;
  return c;
}

struct Word {
  std::string form;
  std::string lemma;
  std::string pos;
};

Word noun(Rng& rng, int vocab) {
  const auto id = std::to_string(rng.uniform_int(0, vocab - 1));
  if (rng.bernoulli(0.3)) return {"nom" + id + "s", "nom" + id, "NNS"};
  return {"nom" + id, "nom" + id, "NN"};
}

Word verb(Rng& rng, int vocab) {
  static const char* suffix[] = {"s", "ed", "ing"};
  static const char* tag[] = {"VBZ", "VBD", "VBG"};
  const auto id = "ver" + std::to_string(rng.uniform_int(0, vocab - 1));
  const auto form = rng.uniform_int(0, 2);
  return {id + suffix[form], id, tag[form]};
}

Word filler(Rng& rng, int vocab) {
  static const char* prefix[] = {"det", "pre", "adj", "adv"};
  static const char* tag[] = {"DT", "IN", "JJ", "RB"};
  const auto cls = rng.uniform_int(0, 3);
  const auto lemma = prefix[cls] + std::to_string(rng.uniform_int(0, vocab - 1));
  return {lemma, lemma, tag[cls]};
}

}  // namespace

void GenConfig::validate() const {
  if (sentence_count < 0) throw ConfigError("sentence_count must be non-negative");
  if (min_length < 1 || min_length > max_length) throw ConfigError("length range must satisfy 1 <= min <= max");
  if (max_length > 200) throw ConfigError("max_length above 200 exceeds the corpus length limit");
  if (min_predicates < 0 || min_predicates > max_predicates) throw ConfigError("invalid predicate count range");
  if (min_arguments < 0 || min_arguments > max_arguments) throw ConfigError("invalid argument count range");
  if (window < 1) throw ConfigError("window must be at least 1");
  if (noun_vocab < 1 || verb_vocab < 1 || filler_vocab < 1) throw ConfigError("vocabulary sizes must be positive");
  if (labels.empty()) throw ConfigError("label alphabet is empty");
  for (const auto& l : labels)
    if (!is_argument_label(l)) throw ConfigError("label '" + l + "' is reserved");
  if (!(label_noise >= 0 && label_noise <= 1) || !(distractor_rate >= 0 && distractor_rate <= 1))
    throw ConfigError("label_noise and distractor_rate must lie in [0, 1]");
  if (max_arguments > 2 * window)
    throw ConfigError("max_arguments exceeds the " + std::to_string(2 * window) + " slots of the window");
  if (feasible_positions(min_length, window, max_arguments) < max_predicates)
    throw ConfigError("sentences of length " + std::to_string(min_length) + " cannot host " +
                      std::to_string(max_predicates) + " predicates with " + std::to_string(max_arguments) +
                      " arguments each");
}

void GenConfig::apply(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "sentences" || key == "sentence_count") sentence_count = static_cast<int>(parse_int(key, value));
    else if (key == "min_length") min_length = static_cast<int>(parse_int(key, value));
    else if (key == "max_length") max_length = static_cast<int>(parse_int(key, value));
    else if (key == "min_predicates") min_predicates = static_cast<int>(parse_int(key, value));
    else if (key == "max_predicates") max_predicates = static_cast<int>(parse_int(key, value));
    else if (key == "min_arguments") min_arguments = static_cast<int>(parse_int(key, value));
    else if (key == "max_arguments") max_arguments = static_cast<int>(parse_int(key, value));
    else if (key == "window") window = static_cast<int>(parse_int(key, value));
    else if (key == "noun_vocab") noun_vocab = static_cast<int>(parse_int(key, value));
    else if (key == "verb_vocab") verb_vocab = static_cast<int>(parse_int(key, value));
    else if (key == "filler_vocab") filler_vocab = static_cast<int>(parse_int(key, value));
    else if (key == "label_noise") label_noise = parse_double(key, value);
    else if (key == "distractor_rate") distractor_rate = parse_double(key, value);
    else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "labels") {
      labels.clear();
      std::istringstream is(value);
      std::string l;
      while (std::getline(is, l, ',')) labels.push_back(l);
    } else {
      throw ConfigError("unknown generator key '" + key + "'");
    }
  }
}

Corpus generate(const GenConfig& config) {
  config.validate();
  const Rng root(config.seed);
  const int w = config.window;
  const int nlabels = static_cast<int>(config.labels.size());
  const int per_side = std::max(1, (nlabels + 1) / 2);
  Corpus corpus;
  for (int s = 0; s < config.sentence_count; ++s) {
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    const int n = static_cast<int>(rng.uniform_int(config.min_length, config.max_length));
    const int npred = static_cast<int>(rng.uniform_int(config.min_predicates, config.max_predicates));

    std::vector<int> predicates;
    std::vector<std::vector<std::string>> frames;
    std::vector<bool> is_arg(static_cast<std::size_t>(n), false);
    std::vector<bool> in_window(static_cast<std::size_t>(n), false);
    for (int j = 0; j < npred; ++j) {
      const int k = static_cast<int>(rng.uniform_int(config.min_arguments, config.max_arguments));
      std::vector<int> candidates;
      for (int p = 0; p < n; ++p)
        if (slots(p, n, w) >= k && std::find(predicates.begin(), predicates.end(), p) == predicates.end())
          candidates.push_back(p);
      const int pos = candidates[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(candidates.size()) - 1))];
      predicates.push_back(pos);

      std::vector<int> window_slots;
      for (int i = std::max(0, pos - w); i <= std::min(n - 1, pos + w); ++i) {
        in_window[static_cast<std::size_t>(i)] = true;
        if (i != pos) window_slots.push_back(i);
      }
      shuffle(window_slots, rng);
      std::vector<std::string> frame(static_cast<std::size_t>(n), std::string(kNullLabel));
      for (int a = 0; a < k; ++a) {
        const int i = window_slots[static_cast<std::size_t>(a)];
        const int side = i < pos ? 0 : 1;
        const int dist = std::abs(i - pos);
        int label = std::min(nlabels - 1, side + 2 * ((dist - 1) % per_side));
        if (rng.bernoulli(config.label_noise)) label = static_cast<int>(rng.uniform_int(0, nlabels - 1));
        frame[static_cast<std::size_t>(i)] = config.labels[static_cast<std::size_t>(label)];
        is_arg[static_cast<std::size_t>(i)] = true;
      }
      frames.push_back(std::move(frame));
    }

    // Frames are ordered by predicate position, as in the tabular format.
    std::vector<std::size_t> by_position(predicates.size());
    for (std::size_t j = 0; j < by_position.size(); ++j) by_position[j] = j;
    std::sort(by_position.begin(), by_position.end(),
              [&](std::size_t a, std::size_t b) { return predicates[a] < predicates[b]; });

    Sentence sent;
    for (int i = 0; i < n; ++i) {
      const bool pred = std::find(predicates.begin(), predicates.end(), i) != predicates.end();
      Word word;
      if (pred) word = verb(rng, config.verb_vocab);
      else if (is_arg[static_cast<std::size_t>(i)]) word = noun(rng, config.noun_vocab);
      else if (!in_window[static_cast<std::size_t>(i)] && rng.bernoulli(config.distractor_rate))
        word = noun(rng, config.noun_vocab);
      else word = filler(rng, config.filler_vocab);
      Token t;
      t.form = word.form;
      t.lemma = word.lemma;
      t.pos = word.pos;
      t.is_predicate = pred;
      t.sense = pred ? word.lemma + ".01" : std::string(kNullLabel);
      for (auto j : by_position) t.arg_labels.push_back(frames[j][static_cast<std::size_t>(i)]);
      sent.tokens.push_back(std::move(t));
    }
    corpus.sentences.push_back(std::move(sent));
  }
  finalize_corpus(corpus);
  return corpus;
}

}  // namespace srl
