#ifndef SRL_CHECKPOINT_HPP
#define SRL_CHECKPOINT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "srl/tape.hpp"

namespace srl {

// Binary layout, little-endian:
//   magic "SRLCKPT1" (8 bytes), u32 version, u64 tensor count, then per tensor:
//   u32 name length, name bytes, u32 rank, u64 dims[rank], f64 values (row-major).

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct NamedTensor {
  std::string name;
  Matrix value;
};

std::string encode_checkpoint(const ParamStore& params);
std::vector<NamedTensor> decode_checkpoint(const std::string& bytes);

void save_checkpoint(const std::filesystem::path& path, const ParamStore& params);
/// Overwrites matching parameters; names and shapes must agree exactly.
void load_checkpoint(const std::filesystem::path& path, ParamStore& params);
void restore_params(const std::vector<NamedTensor>& tensors, ParamStore& params);

}  // namespace srl

#endif  // SRL_CHECKPOINT_HPP
