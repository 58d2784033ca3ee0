#include "srl/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "srl/config_file.hpp"
#include "srl/error.hpp"

namespace srl {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'S', 'R', 'L', 'C', 'K', 'P', 'T', '1'};

template <typename T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  std::string get_bytes(std::size_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  void read_doubles(double* dst, std::size_t n) {
    need(n * sizeof(double));
    std::memcpy(dst, bytes_.data() + pos_, n * sizeof(double));
    pos_ += n * sizeof(double);
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw DataError("checkpoint is truncated");
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_checkpoint(const ParamStore& params) {
  std::string out(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint64_t>(out, params.size());
  for (const auto& p : params) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.name.size()));
    out += p.name;
    put<std::uint32_t>(out, 2);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(p.value.rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(p.value.cols()));
    out.append(reinterpret_cast<const char*>(p.value.data()), static_cast<std::size_t>(p.value.size()) * sizeof(double));
  }
  return out;
}

std::vector<NamedTensor> decode_checkpoint(const std::string& bytes) {
  Reader r(bytes);
  if (r.get_bytes(sizeof kMagic) != std::string(kMagic, sizeof kMagic)) throw DataError("not a checkpoint file");
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion)
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  const auto count = r.get<std::uint64_t>();
  std::vector<NamedTensor> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    NamedTensor t;
    t.name = r.get_bytes(r.get<std::uint32_t>());
    const auto rank = r.get<std::uint32_t>();
    if (rank < 1 || rank > 2) throw DataError("unsupported tensor rank " + std::to_string(rank) + " for " + t.name);
    std::uint64_t rows = 1, cols = r.get<std::uint64_t>();
    if (rank == 2) {
      rows = cols;
      cols = r.get<std::uint64_t>();
    }
    t.value.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    r.read_doubles(t.value.data(), static_cast<std::size_t>(rows * cols));
    out.push_back(std::move(t));
  }
  if (!r.done()) throw DataError("trailing bytes after checkpoint tensors");
  return out;
}

void save_checkpoint(const std::filesystem::path& path, const ParamStore& params) {
  write_file_atomic(path, encode_checkpoint(params));
}

void restore_params(const std::vector<NamedTensor>& tensors, ParamStore& params) {
  if (tensors.size() != params.size())
    throw DataError("checkpoint holds " + std::to_string(tensors.size()) + " tensors, model expects " +
                    std::to_string(params.size()));
  for (const auto& t : tensors) {
    if (!params.contains(t.name)) throw DataError("checkpoint tensor '" + t.name + "' is not a model parameter");
    auto& p = params[params.find(t.name)];
    if (p.value.rows() != t.value.rows() || p.value.cols() != t.value.cols())
      throw DataError("checkpoint tensor '" + t.name + "' has the wrong shape");
    p.value = t.value;
  }
}

void load_checkpoint(const std::filesystem::path& path, ParamStore& params) {
  restore_params(decode_checkpoint(read_file(path)), params);
}

}  // namespace srl
