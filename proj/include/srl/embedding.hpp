#ifndef SRL_EMBEDDING_HPP
#define SRL_EMBEDDING_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "srl/conll_io.hpp"
#include "srl/rng.hpp"
#include "srl/tape.hpp"
#include "srl/train_config.hpp"

namespace srl {

/// String-to-row map with the unknown entry reserved at index 0.
class Vocab {
 public:
  static constexpr std::size_t kUnk = 0;

  Vocab() : tokens_{"<UNK>"} {}
  explicit Vocab(const std::vector<std::string>& tokens);

  std::size_t add(const std::string& token);
  /// Row for `token`, or kUnk.
  std::size_t lookup(const std::string& token) const;
  bool contains(const std::string& token) const { return index_.count(token) != 0; }
  std::size_t size() const { return tokens_.size(); }
  /// Every entry including the reserved first one.
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct VocabMaps {
  Vocab words;
  Vocab lemmas;
  Vocab pos;

  static VocabMaps build(const Corpus& corpus);
};

/// Fixed word vectors read from `word v1 ... vdim` lines. Lookups lowercase the word.
struct PretrainedVectors {
  int dim = 0;
  std::vector<std::string> words;
  Matrix table;

  /// Row index for `word` (lowercased), or -1 when absent.
  long find(const std::string& word) const;

  std::unordered_map<std::string, std::size_t> index;
};

PretrainedVectors load_pretrained(std::istream& in, int dim);
PretrainedVectors load_pretrained(const std::filesystem::path& path, int dim);

/// Precomputed contextual vectors, one n x dim matrix per sentence id.
///
/// On disk: a record file of (u64 sentence id, u64 token count, count*dim f64)
/// little-endian records, and a sidecar `<file>.idx` text index with one
/// `sentence_id offset token_count` line per record.
struct ExternalVectors {
  int dim = 0;
  std::map<std::size_t, Matrix> by_sentence;

  const Matrix* find(std::size_t sentence_id) const;
};

ExternalVectors read_external_vectors(const std::filesystem::path& path, int dim);
void write_external_vectors(const std::filesystem::path& path, const ExternalVectors& vectors);

/// Input layer producing one row [word, pretrained, lemma, pos, indicator, external]
/// per token.
class EmbeddingLayer {
 public:
  EmbeddingLayer() = default;
  /// Registers the tables in `store`. A null `pretrained` gives an empty frozen table.
  EmbeddingLayer(ParamStore& store, const TrainConfig& config, VocabMaps vocabs,
                 const PretrainedVectors* pretrained, Rng& rng);
  /// Rebinds a layer to tables already registered in `store` (checkpoint restore).
  EmbeddingLayer(const ParamStore& store, const TrainConfig& config, VocabMaps vocabs,
                 std::vector<std::string> pretrained_words);

  /// n x width(); throws DataError when external vectors are enabled but missing.
  Var embed(Tape& tape, const ParamStore& store, const PredicateInstance& instance,
            const ExternalVectors* external) const;

  int width() const { return width_; }
  const VocabMaps& vocabs() const { return vocabs_; }
  const std::vector<std::string>& pretrained_words() const { return pretrained_words_; }

  ParamId word_table() const { return word_; }
  ParamId pretrained_table() const { return pretrained_; }
  ParamId lemma_table() const { return lemma_; }
  ParamId pos_table() const { return pos_; }
  ParamId indicator_table() const { return indicator_; }

 private:
  void index_pretrained();

  VocabMaps vocabs_;
  std::vector<std::string> pretrained_words_;
  std::unordered_map<std::string, std::size_t> pretrained_index_;
  int external_dim_ = 0;
  bool use_external_ = false;
  int width_ = 0;
  ParamId word_ = 0, pretrained_ = 0, lemma_ = 0, pos_ = 0, indicator_ = 0;
};

std::string lowercase(std::string s);

}  // namespace srl

#endif  // SRL_EMBEDDING_HPP
