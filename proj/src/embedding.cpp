#include "srl/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include "srl/config_file.hpp"
#include "srl/error.hpp"
#include "srl/ops.hpp"

namespace srl {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Vocab::Vocab(const std::vector<std::string>& tokens) : tokens_{} {
  if (tokens.empty()) throw DataError("vocabulary must contain the reserved unknown entry");
  tokens_ = tokens;
  for (std::size_t i = 1; i < tokens_.size(); ++i)
    if (!index_.emplace(tokens_[i], i).second) throw DataError("duplicate vocabulary entry '" + tokens_[i] + "'");
}

std::size_t Vocab::add(const std::string& token) {
  auto [it, inserted] = index_.emplace(token, tokens_.size());
  if (inserted) tokens_.push_back(token);
  return it->second;
}

std::size_t Vocab::lookup(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

VocabMaps VocabMaps::build(const Corpus& corpus) {
  VocabMaps v;
  for (const auto& s : corpus.sentences)
    for (const auto& t : s.tokens) {
      v.words.add(t.form);
      v.lemmas.add(t.lemma);
      v.pos.add(t.pos);
    }
  return v;
}

long PretrainedVectors::find(const std::string& word) const {
  auto it = index.find(lowercase(word));
  return it == index.end() ? -1 : static_cast<long>(it->second);
}

PretrainedVectors load_pretrained(std::istream& in, int dim) {
  if (dim < 1) throw ConfigError("pretrained dimension must be positive");
  PretrainedVectors out;
  out.dim = dim;
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream is(line);
    std::string word;
    if (!(is >> word)) continue;
    std::vector<double> row;
    std::string tok;
    while (is >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("invalid number '" + tok + "'", lineno);
      }
    }
    if (row.size() != static_cast<std::size_t>(dim))
      throw ParseError("expected " + std::to_string(dim) + " values, got " + std::to_string(row.size()), lineno);
    if (!out.index.emplace(lowercase(word), out.words.size()).second) continue;
    out.words.push_back(word);
    values.insert(values.end(), row.begin(), row.end());
  }
  out.table = Eigen::Map<const Matrix>(values.data(), static_cast<Eigen::Index>(out.words.size()), dim);
  return out;
}

PretrainedVectors load_pretrained(const std::filesystem::path& path, int dim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return load_pretrained(in, dim);
}

const Matrix* ExternalVectors::find(std::size_t sentence_id) const {
  auto it = by_sentence.find(sentence_id);
  return it == by_sentence.end() ? nullptr : &it->second;
}

static_assert(std::endian::native == std::endian::little, "external vector I/O assumes a little-endian host");

ExternalVectors read_external_vectors(const std::filesystem::path& path, int dim) {
  if (dim < 1) throw ConfigError("external vector dimension must be positive");
  const auto bytes = read_file(path);
  auto idx_path = path;
  idx_path += ".idx";
  std::ifstream idx(idx_path);
  if (!idx) throw DataError("missing external vector index " + idx_path.string());
  ExternalVectors out;
  out.dim = dim;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(idx, line)) {
    ++lineno;
    std::istringstream is(line);
    std::uint64_t sid = 0, offset = 0, count = 0;
    if (!(is >> sid)) continue;
    if (!(is >> offset >> count)) throw ParseError("expected 'sentence_id offset token_count'", lineno);
    const std::uint64_t payload = count * static_cast<std::uint64_t>(dim) * sizeof(double);
    if (offset + 16 + payload > bytes.size()) throw DataError("external vector record runs past end of file");
    std::uint64_t rec_sid = 0, rec_count = 0;
    std::memcpy(&rec_sid, bytes.data() + offset, 8);
    std::memcpy(&rec_count, bytes.data() + offset + 8, 8);
    if (rec_sid != sid || rec_count != count)
      throw ParseError("index entry disagrees with record header", lineno);
    Matrix m(static_cast<Eigen::Index>(count), dim);
    std::memcpy(m.data(), bytes.data() + offset + 16, payload);
    out.by_sentence[sid] = std::move(m);
  }
  return out;
}

void write_external_vectors(const std::filesystem::path& path, const ExternalVectors& vectors) {
  std::string data;
  std::ostringstream idx;
  for (const auto& [sid, m] : vectors.by_sentence) {
    if (m.cols() != vectors.dim) throw ShapeError("external vectors have inconsistent width");
    idx << sid << ' ' << data.size() << ' ' << m.rows() << '\n';
    const std::uint64_t header[2] = {sid, static_cast<std::uint64_t>(m.rows())};
    data.append(reinterpret_cast<const char*>(header), sizeof header);
    data.append(reinterpret_cast<const char*>(m.data()), static_cast<std::size_t>(m.size()) * sizeof(double));
  }
  write_file_atomic(path, data);
  auto idx_path = path;
  idx_path += ".idx";
  write_file_atomic(idx_path, idx.str());
}

namespace {

Matrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, double scale, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-scale, scale);
  return m;
}

}  // namespace

EmbeddingLayer::EmbeddingLayer(ParamStore& store, const TrainConfig& config, VocabMaps vocabs,
                               const PretrainedVectors* pretrained, Rng& rng)
    : vocabs_(std::move(vocabs)), external_dim_(config.external_dim), use_external_(config.use_external),
      width_(config.embedding_width()) {
  const double s = config.init_scale;
  word_ = store.add("embed.word", uniform_matrix(static_cast<Eigen::Index>(vocabs_.words.size()), config.word_dim, s, rng));
  Matrix pre(0, config.pretrained_dim);
  if (pretrained && config.pretrained_dim > 0) {
    if (pretrained->dim != config.pretrained_dim)
      throw ConfigError("pretrained vectors have dimension " + std::to_string(pretrained->dim) + ", config expects " +
                        std::to_string(config.pretrained_dim));
    pre = pretrained->table;
    pretrained_words_ = pretrained->words;
  }
  pretrained_ = store.add("embed.pretrained", std::move(pre), false);
  lemma_ = store.add("embed.lemma", uniform_matrix(static_cast<Eigen::Index>(vocabs_.lemmas.size()), config.lemma_dim, s, rng));
  pos_ = store.add("embed.pos", uniform_matrix(static_cast<Eigen::Index>(vocabs_.pos.size()), config.pos_dim, s, rng));
  indicator_ = store.add("embed.indicator", uniform_matrix(2, config.indicator_dim, s, rng));
  index_pretrained();
}

EmbeddingLayer::EmbeddingLayer(const ParamStore& store, const TrainConfig& config, VocabMaps vocabs,
                               std::vector<std::string> pretrained_words)
    : vocabs_(std::move(vocabs)), pretrained_words_(std::move(pretrained_words)),
      external_dim_(config.external_dim), use_external_(config.use_external), width_(config.embedding_width()) {
  word_ = store.find("embed.word");
  pretrained_ = store.find("embed.pretrained");
  lemma_ = store.find("embed.lemma");
  pos_ = store.find("embed.pos");
  indicator_ = store.find("embed.indicator");
  index_pretrained();
}

void EmbeddingLayer::index_pretrained() {
  pretrained_index_.clear();
  for (std::size_t i = 0; i < pretrained_words_.size(); ++i) pretrained_index_.emplace(lowercase(pretrained_words_[i]), i);
}

Var EmbeddingLayer::embed(Tape& tape, const ParamStore& store, const PredicateInstance& instance,
                          const ExternalVectors* external) const {
  const auto& sentence = *instance.sentence;
  const auto n = sentence.size();
  std::vector<std::size_t> words(n), lemmas(n), tags(n), flags(n, 0);
  const auto& pre_table = store[pretrained_].value;
  Matrix pre = Matrix::Zero(static_cast<Eigen::Index>(n), pre_table.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = sentence.tokens[i];
    words[i] = vocabs_.words.lookup(t.form);
    lemmas[i] = vocabs_.lemmas.lookup(t.lemma);
    tags[i] = vocabs_.pos.lookup(t.pos);
    if (auto it = pretrained_index_.find(lowercase(t.form)); it != pretrained_index_.end())
      pre.row(static_cast<Eigen::Index>(i)) = pre_table.row(static_cast<Eigen::Index>(it->second));
  }
  flags.at(instance.predicate_index) = 1;

  std::vector<Var> parts{gather_rows(tape, store, word_, words), tape.constant(std::move(pre)),
                         gather_rows(tape, store, lemma_, lemmas), gather_rows(tape, store, pos_, tags),
                         gather_rows(tape, store, indicator_, flags)};
  if (use_external_) {
    const Matrix* ext = external ? external->find(instance.sentence_id) : nullptr;
    if (!ext) throw DataError("no external vectors for sentence " + std::to_string(instance.sentence_id));
    if (ext->rows() != static_cast<Eigen::Index>(n) || ext->cols() != external_dim_)
      throw DataError("external vectors for sentence " + std::to_string(instance.sentence_id) +
                      " do not match its length or the configured width");
    parts.push_back(tape.constant(*ext));
  }
  return concat(parts, 1);
}

}  // namespace srl
