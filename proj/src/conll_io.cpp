#include "srl/conll_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "srl/config_file.hpp"
#include "srl/error.hpp"

namespace srl {

namespace {

std::vector<std::string> split_columns(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    auto j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    cols.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return cols;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

class SentenceBuilder {
 public:
  explicit SentenceBuilder(const FormatConfig& fmt) : fmt_(fmt) {}

  bool empty() const { return rows_.empty(); }

  void add(std::vector<std::string> cols, std::size_t lineno) {
    if (rows_.empty()) {
      first_line_ = lineno;
      width_ = cols.size();
      if (width_ < static_cast<std::size_t>(fmt_.apred))
        throw ParseError("expected at least " + std::to_string(fmt_.apred) + " columns, got " +
                             std::to_string(width_),
                         lineno);
    } else if (cols.size() != width_) {
      throw ParseError("ragged row: expected " + std::to_string(width_) + " columns, got " +
                           std::to_string(cols.size()),
                       lineno);
    }
    rows_.push_back(std::move(cols));
  }

  Sentence build(std::size_t id) {
    Sentence s;
    s.id = id;
    const auto fixed = static_cast<std::size_t>(fmt_.apred);
    for (auto& cols : rows_) {
      Token t;
      t.form = cols[fmt_.form];
      t.lemma = cols[fmt_.lemma];
      t.pos = cols[fmt_.pos];
      t.sense = cols[fmt_.pred];
      t.is_predicate = fmt_.fillpred >= 0 ? cols[fmt_.fillpred] == "Y" : t.sense != "_";
      t.arg_labels.assign(cols.begin() + static_cast<std::ptrdiff_t>(fixed), cols.end());
      cols.resize(fixed);
      t.columns = std::move(cols);
      s.tokens.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < s.tokens.size(); ++i)
      if (s.tokens[i].is_predicate) s.predicate_indices.push_back(i);
    const auto frames = width_ - fixed;
    if (frames != s.predicate_indices.size())
      throw DataError("sentence starting at line " + std::to_string(first_line_) + ": " +
                      std::to_string(s.predicate_indices.size()) + " predicates but " +
                      std::to_string(frames) + " argument columns");
    if (s.tokens.size() > fmt_.max_length)
      throw DataError("sentence starting at line " + std::to_string(first_line_) + " has " +
                      std::to_string(s.tokens.size()) + " tokens, exceeding max length " +
                      std::to_string(fmt_.max_length));
    rows_.clear();
    return s;
  }

 private:
  const FormatConfig& fmt_;
  std::vector<std::vector<std::string>> rows_;
  std::size_t width_ = 0;
  std::size_t first_line_ = 0;
};

}  // namespace

FormatConfig FormatConfig::conll2009() {
  FormatConfig f;
  f.id = 0;
  f.form = 1;
  f.lemma = 2;
  f.pos = 4;
  f.fillpred = 12;
  f.pred = 13;
  f.apred = 14;
  return f;
}

FormatConfig FormatConfig::from_file(const std::filesystem::path& path) {
  FormatConfig f;
  for (const auto& [key, value] : read_key_values(path)) {
    if (key == "max_length") {
      f.max_length = static_cast<std::size_t>(parse_int(key, value));
      continue;
    }
    const int idx = static_cast<int>(parse_int(key, value));
    if (key == "id") f.id = idx;
    else if (key == "form") f.form = idx;
    else if (key == "lemma") f.lemma = idx;
    else if (key == "pos") f.pos = idx;
    else if (key == "fillpred") f.fillpred = idx;
    else if (key == "pred") f.pred = idx;
    else if (key == "apred") f.apred = idx;
    else throw ConfigError("unknown column role '" + key + "'");
  }
  f.validate();
  return f;
}

FormatConfig FormatConfig::from_name(const std::string& name_or_path) {
  if (name_or_path == "simple") return simple();
  if (name_or_path == "conll2009") return conll2009();
  return from_file(name_or_path);
}

void FormatConfig::validate() const {
  for (int c : {form, lemma, pos, pred})
    if (c < 0 || c >= apred) throw ConfigError("form/lemma/pos/pred columns must lie before apred");
  for (int c : {id, fillpred})
    if (c >= apred) throw ConfigError("id/fillpred columns must lie before apred");
  if (max_length < 1) throw ConfigError("max_length must be positive");
}

std::size_t Corpus::predicate_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.predicate_indices.size();
  return n;
}

Corpus parse_corpus(std::istream& in, const FormatConfig& fmt) {
  fmt.validate();
  Corpus corpus;
  SentenceBuilder builder(fmt);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) {
      if (!builder.empty()) corpus.sentences.push_back(builder.build(corpus.sentences.size()));
      continue;
    }
    builder.add(split_columns(line), lineno);
  }
  if (!builder.empty()) corpus.sentences.push_back(builder.build(corpus.sentences.size()));
  finalize_corpus(corpus, fmt);
  return corpus;
}

Corpus parse_corpus(const std::string& text, const FormatConfig& fmt) {
  std::istringstream in(text);
  return parse_corpus(in, fmt);
}

Corpus read_corpus(const std::filesystem::path& path, const FormatConfig& fmt) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_corpus(in, fmt);
}

void finalize_corpus(Corpus& corpus, const FormatConfig& fmt) {
  std::set<std::string> observed;
  for (std::size_t id = 0; id < corpus.sentences.size(); ++id) {
    auto& s = corpus.sentences[id];
    s.id = id;
    if (s.tokens.empty()) throw DataError("sentence " + std::to_string(id) + " is empty");
    if (s.tokens.size() > fmt.max_length)
      throw DataError("sentence " + std::to_string(id) + " exceeds max length " +
                      std::to_string(fmt.max_length));
    s.predicate_indices.clear();
    for (std::size_t i = 0; i < s.tokens.size(); ++i)
      if (s.tokens[i].is_predicate) s.predicate_indices.push_back(i);
    for (const auto& t : s.tokens) {
      if (t.form.empty() || t.lemma.empty() || t.pos.empty())
        throw DataError("sentence " + std::to_string(id) + " has an empty form/lemma/pos");
      if (t.arg_labels.size() != s.predicate_indices.size())
        throw DataError("sentence " + std::to_string(id) + ": argument columns do not match predicate count");
      observed.insert(t.arg_labels.begin(), t.arg_labels.end());
    }
  }
  corpus.label_inventory = LabelSet(observed);
}

std::string serialize_corpus(const Corpus& corpus, const FormatConfig& fmt) {
  fmt.validate();
  std::ostringstream out;
  const auto fixed = static_cast<std::size_t>(fmt.apred);
  for (const auto& s : corpus.sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& t = s.tokens[i];
      auto cols = t.columns;
      cols.resize(fixed, "_");
      if (fmt.id >= 0) cols[fmt.id] = std::to_string(i + 1);
      cols[fmt.form] = t.form;
      cols[fmt.lemma] = t.lemma;
      cols[fmt.pos] = t.pos;
      cols[fmt.pred] = t.is_predicate || fmt.fillpred >= 0 ? t.sense : "_";
      if (fmt.fillpred >= 0) cols[fmt.fillpred] = t.is_predicate ? "Y" : "_";
      cols.insert(cols.end(), t.arg_labels.begin(), t.arg_labels.end());
      for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "\t" : "") << cols[c];
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

void write_corpus(const std::filesystem::path& path, const Corpus& corpus, const FormatConfig& fmt) {
  write_file_atomic(path, serialize_corpus(corpus, fmt));
}

LabelSet collect_label_inventory(const Corpus& corpus) {
  std::set<std::string> observed;
  for (const auto& s : corpus.sentences)
    for (const auto& t : s.tokens) observed.insert(t.arg_labels.begin(), t.arg_labels.end());
  return LabelSet(observed);
}

std::vector<PredicateInstance> extract_instances(const Corpus& corpus) {
  std::vector<PredicateInstance> out;
  out.reserve(corpus.predicate_count());
  for (const auto& s : corpus.sentences) {
    auto shared = std::make_shared<const Sentence>(s);
    for (std::size_t j = 0; j < s.predicate_indices.size(); ++j) {
      PredicateInstance inst;
      inst.sentence = shared;
      inst.sentence_id = s.id;
      inst.predicate_index = s.predicate_indices[j];
      inst.frame = j;
      inst.gold_labels.reserve(s.size());
      for (const auto& t : s.tokens) inst.gold_labels.push_back(t.arg_labels[j]);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

}  // namespace srl
