// Copyright 2026 The bandcodec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BANDCODEC_TOKENS_HPP
#define BANDCODEC_TOKENS_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

namespace bandcodec {

/// Per-band index sequences at a fixed frame rate.
struct TokenStream {
  std::vector<uint8_t> bits_per_band;           // 1..32 bits each
  uint32_t frame_count = 0;
  uint32_t sample_rate = 0;
  uint64_t original_length = 0;                 // samples before padding
  std::vector<std::vector<uint32_t>> indices;   // [band][frame]

  size_t band_count() const { return bits_per_band.size(); }

  /// Throws ArgumentError if shapes disagree, bits are out of 1..32, or any
  /// index needs more bits than its band declares.
  void validate() const;
};

// --- ".bstk" file format ------------------------------------------------
// Header: magic "BSTK", version u16, band count u8, bits u8 per band,
// frame_count u32, sample_rate u32, original_length u64 (little-endian).
// Payload: band-major bit packing, MSB-first within each index, each band
// padded to a byte boundary.

std::vector<uint8_t> serialize(const TokenStream& t);
TokenStream deserialize(const std::vector<uint8_t>& bytes);

void save_tokens(const TokenStream& t, const std::filesystem::path& path);
TokenStream load_tokens(const std::filesystem::path& path);

}  // namespace bandcodec

#endif  // BANDCODEC_TOKENS_HPP
