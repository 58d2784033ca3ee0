#ifndef SRL_CONLL_IO_HPP
#define SRL_CONLL_IO_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "srl/labels.hpp"

namespace srl {

/// Column roles of a tabular corpus. A negative index means the role is absent.
///
/// Columns before `apred` are fixed per token; every column from `apred` on is one
/// predicate frame. Without a `fillpred` column a token is a predicate iff its
/// `pred` column is not `_`.
struct FormatConfig {
  int id = -1;
  int form = 0;
  int lemma = 1;
  int pos = 2;
  int fillpred = -1;
  int pred = 3;
  int apred = 4;
  std::size_t max_length = 200;

  /// FORM LEMMA POS PRED APRED...
  static FormatConfig simple() { return {}; }
  /// The 14 fixed CoNLL-2009 columns followed by APREDs.
  static FormatConfig conll2009();
  /// Overrides defaults (simple layout) from `key=index` pairs.
  static FormatConfig from_file(const std::filesystem::path& path);
  static FormatConfig from_name(const std::string& name_or_path);

  void validate() const;
};

struct Token {
  std::string form;
  std::string lemma;
  std::string pos;
  bool is_predicate = false;
  /// Opaque predicate sense, `_` for non-predicates.
  std::string sense = "_";
  /// One label per predicate frame of the sentence.
  std::vector<std::string> arg_labels;
  /// Raw fixed columns as read; non-role columns are written back verbatim.
  std::vector<std::string> columns;

  bool operator==(const Token& o) const {
    return form == o.form && lemma == o.lemma && pos == o.pos && is_predicate == o.is_predicate &&
           sense == o.sense && arg_labels == o.arg_labels;
  }
};

struct Sentence {
  std::size_t id = 0;
  std::vector<Token> tokens;
  std::vector<std::size_t> predicate_indices;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const Sentence& o) const {
    return tokens == o.tokens && predicate_indices == o.predicate_indices;
  }
};

struct Corpus {
  std::vector<Sentence> sentences;
  LabelSet label_inventory;

  std::size_t predicate_count() const;
  bool operator==(const Corpus& o) const {
    return sentences == o.sentences && label_inventory == o.label_inventory;
  }
};

/// One (sentence, predicate) labeling problem.
struct PredicateInstance {
  std::shared_ptr<const Sentence> sentence;
  std::size_t sentence_id = 0;
  std::size_t predicate_index = 0;
  /// Column of the predicate's frame in the source sentence.
  std::size_t frame = 0;
  std::vector<std::string> gold_labels;

  std::size_t size() const { return gold_labels.size(); }
};

Corpus parse_corpus(std::istream& in, const FormatConfig& fmt = FormatConfig::simple());
Corpus parse_corpus(const std::string& text, const FormatConfig& fmt = FormatConfig::simple());
Corpus read_corpus(const std::filesystem::path& path, const FormatConfig& fmt = FormatConfig::simple());

std::string serialize_corpus(const Corpus& corpus, const FormatConfig& fmt = FormatConfig::simple());
void write_corpus(const std::filesystem::path& path, const Corpus& corpus,
                  const FormatConfig& fmt = FormatConfig::simple());

/// Recomputes predicate indices and the label inventory after edits; validates.
void finalize_corpus(Corpus& corpus, const FormatConfig& fmt = FormatConfig::simple());

/// Closure of every argument label in the corpus plus the reserved labels.
LabelSet collect_label_inventory(const Corpus& corpus);

std::vector<PredicateInstance> extract_instances(const Corpus& corpus);

}  // namespace srl

#endif  // SRL_CONLL_IO_HPP
