#include "srl/model.hpp"

#include <cmath>
#include <json.hpp>

#include "srl/boundary_tags.hpp"
#include "srl/checkpoint.hpp"
#include "srl/config_file.hpp"
#include "srl/error.hpp"
#include "srl/ops.hpp"

namespace srl {

namespace {

constexpr int kSidecarVersion = 1;

Matrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, double scale, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-scale, scale);
  return m;
}

}  // namespace

SrlModel::SrlModel(const TrainConfig& config, const LabelSet& labels, VocabMaps vocabs,
                   const PretrainedVectors* pretrained)
    : config_(config), labels_(config.use_aux_tags ? labels.with_boundary() : labels.without_boundary()) {
  config_.validate();
  Rng rng = Rng(config_.seed).split(0x1417);
  embedding_ = EmbeddingLayer(params_, config_, std::move(vocabs), pretrained, rng);
  lstm_ = make_bilstm(params_, embedding_.width(), config_, rng);
  if (config_.use_attention) attention_ = make_attention(params_, 2 * config_.hidden, config_, rng);
  out_w_ = params_.add("out.w", uniform_matrix(config_.fused_width(), static_cast<Eigen::Index>(labels_.size()),
                                               config_.init_scale, rng));
  out_b_ = params_.add("out.b", Matrix::Zero(1, static_cast<Eigen::Index>(labels_.size())));
}

ForwardTrace SrlModel::trace(Tape& tape, const PredicateInstance& instance, const ExternalVectors* external,
                             Rng& rng, bool training) const {
  if (!instance.sentence) throw DataError("instance has no sentence");
  if (instance.predicate_index >= instance.sentence->size()) throw DataError("predicate index out of range");
  ForwardTrace tr;
  tr.embeddings = embedding_.embed(tape, params_, instance, external);
  tr.hidden = bilstm_encode(params_, lstm_, tr.embeddings, rng, training);
  if (attention_) {
    tr.attention = attend(params_, *attention_, tr.hidden);
    tr.fused = fuse(tr.hidden, tr.attention->representation);
  } else {
    tr.fused = tr.hidden;
  }
  tr.logits = add_row(matmul(tr.fused, tape.param(params_, out_w_)), tape.param(params_, out_b_));
  return tr;
}

PredictionMatrix SrlModel::predict(const PredicateInstance& instance, const ExternalVectors* external) const {
  Tape tape;
  Rng rng(0);
  return srl::softmax_rows(logits(tape, instance, external, rng, false).value());
}

std::vector<std::size_t> SrlModel::targets(std::span<const std::string> gold_labels) const {
  std::vector<std::size_t> out;
  out.reserve(gold_labels.size());
  for (const auto& l : gold_labels) out.push_back(labels_.index(l));
  return out;
}

void SrlModel::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["version"] = kSidecarVersion;
  j["config"] = config_.to_key_values();
  j["labels"] = labels_.argument_labels();
  j["vocab"]["words"] = embedding_.vocabs().words.tokens();
  j["vocab"]["lemmas"] = embedding_.vocabs().lemmas.tokens();
  j["vocab"]["pos"] = embedding_.vocabs().pos.tokens();
  j["pretrained_words"] = embedding_.pretrained_words();
  auto sidecar = path;
  sidecar += ".json";
  save_checkpoint(path, params_);
  write_file_atomic(sidecar, j.dump(1) + "\n");
}

SrlModel SrlModel::load(const std::filesystem::path& path) {
  auto sidecar = path;
  sidecar += ".json";
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(sidecar));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid checkpoint sidecar " + sidecar.string() + ": " + e.what());
  }
  if (j.value("version", 0) != kSidecarVersion) throw DataError("unsupported checkpoint sidecar version");
  SrlModel m;
  m.config_.apply(j.at("config").get<KeyValues>());
  m.config_.validate();
  const auto args = j.at("labels").get<std::vector<std::string>>();
  m.labels_ = LabelSet({args.begin(), args.end()}, m.config_.use_aux_tags);
  VocabMaps vocabs{Vocab(j.at("vocab").at("words").get<std::vector<std::string>>()),
                   Vocab(j.at("vocab").at("lemmas").get<std::vector<std::string>>()),
                   Vocab(j.at("vocab").at("pos").get<std::vector<std::string>>())};
  const auto tensors = decode_checkpoint(read_file(path));
  for (const auto& t : tensors) m.params_.add(t.name, t.value, t.name != "embed.pretrained");
  m.embedding_ = EmbeddingLayer(m.params_, m.config_, std::move(vocabs),
                                j.at("pretrained_words").get<std::vector<std::string>>());
  m.bind();
  return m;
}

void SrlModel::bind() {
  lstm_ = bind_bilstm(params_, embedding_.width(), config_);
  if (config_.use_attention) attention_ = bind_attention(params_, config_);
  out_w_ = params_.find("out.w");
  out_b_ = params_.find("out.b");
  if (params_[out_w_].value.rows() != config_.fused_width() ||
      params_[out_w_].value.cols() != static_cast<Eigen::Index>(labels_.size()))
    throw DataError("output layer shape does not match the configuration and label inventory");
}

std::vector<bool> loss_mask(std::span<const std::string> gold_labels, std::size_t predicate_index, LossWindow window) {
  std::vector<bool> mask(gold_labels.size(), window == LossWindow::full_sequence);
  if (window == LossWindow::window_only) {
    const auto region = tagged_region(gold_labels, predicate_index);
    for (auto i = region.begin; i <= region.end; ++i) mask[i] = true;
  }
  return mask;
}

double compute_loss(const PredictionMatrix& pred, std::span<const std::size_t> targets, const std::vector<bool>& mask) {
  if (targets.size() != static_cast<std::size_t>(pred.rows()) || mask.size() != targets.size())
    throw ShapeError("compute_loss: targets/mask length must equal prediction rows");
  double loss = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!mask[i]) continue;
    loss -= std::log(std::max(pred(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(targets[i])), 1e-12));
    ++count;
  }
  if (count == 0) throw ShapeError("compute_loss: empty loss window");
  return loss / static_cast<double>(count);
}

}  // namespace srl
