// Copyright 2026 The bingnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Little-endian checkpoint:
//
//   "B1GN" u32 version u32 config_len config_text
//   u32 num_layers, then per layer:
//     u8 precision u64 weight_rows u64 out_dim u8 agg_kind u8 agg_arg
//     weights: float32[rows * out] (full) or u64 words of sign(W^T) (binary)
//     u8 has_bias [float32[out]]
//     u8 has_encoder [u64 in u64 out u64 words of sign(W^T) u8 has_bias [float32[out]]]
//   head: u64 rows u64 cols float32[rows * cols] float32[cols]
//
// Binary tensors keep only their signs, so a loaded model evaluates exactly
// like the trained one but cannot resume training of those latents.

#ifndef BINGNN_CHECKPOINT_HPP_
#define BINGNN_CHECKPOINT_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bingnn/model.hpp"

namespace bingnn {

inline constexpr char kCheckpointMagic[4] = {'B', '1', 'G', 'N'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> serialize_checkpoint(const BinGnnModel& model);
/// Throws CheckpointError on bad magic, version, truncation, trailing bytes or
/// shapes that disagree with the embedded config.
BinGnnModel deserialize_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const BinGnnModel& model, const std::string& path);
BinGnnModel load_checkpoint(const std::string& path);

}  // namespace bingnn

#endif  // BINGNN_CHECKPOINT_HPP_
