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

#include "bandcodec/tokens.hpp"

#include <string>

#include "bandcodec/errors.hpp"
#include "binio.hpp"

namespace bandcodec {

namespace {

constexpr uint16_t kTokenVersion = 1;

uint64_t max_index_for_bits(uint8_t bits) {
  return bits >= 64 ? UINT64_MAX : (uint64_t{1} << bits) - 1;
}

// Appends `count` indices at `bits` bits each, MSB-first within each index,
// padding the band's stream to a byte boundary.
void pack_band(binio::Writer& w, const std::vector<uint32_t>& indices,
               uint8_t bits) {
  uint32_t bit_acc = 0;
  int bit_count = 0;
  for (uint32_t index : indices) {
    for (int b = bits - 1; b >= 0; --b) {
      bit_acc = (bit_acc << 1) | ((index >> b) & 1u);
      if (++bit_count == 8) {
        w.u8(static_cast<uint8_t>(bit_acc));
        bit_acc = 0;
        bit_count = 0;
      }
    }
  }
  if (bit_count > 0) {
    w.u8(static_cast<uint8_t>(bit_acc << (8 - bit_count)));
  }
}

std::vector<uint32_t> unpack_band(binio::Reader& r, uint32_t count,
                                  uint8_t bits) {
  const size_t payload_bytes = (static_cast<size_t>(count) * bits + 7) / 8;
  const uint8_t* bytes = r.raw(payload_bytes);

  std::vector<uint32_t> out(count);
  size_t bit_pos = 0;
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t v = 0;
    for (int b = 0; b < bits; ++b, ++bit_pos) {
      v = (v << 1) | ((bytes[bit_pos / 8] >> (7 - bit_pos % 8)) & 1u);
    }
    out[i] = v;
  }
  return out;
}

}  // namespace

void TokenStream::validate() const {
  if (bits_per_band.empty()) throw ArgumentError("TokenStream: no bands");
  if (indices.size() != bits_per_band.size()) {
    throw ArgumentError("TokenStream: band count mismatch");
  }
  for (size_t b = 0; b < indices.size(); ++b) {
    const uint8_t bits = bits_per_band[b];
    if (bits < 1 || bits > 32) {
      throw ArgumentError("TokenStream: bits per band must be in 1..32");
    }
    if (indices[b].size() != frame_count) {
      throw ArgumentError("TokenStream: frame count mismatch in band " +
                          std::to_string(b + 1));
    }
    const uint64_t max_index = max_index_for_bits(bits);
    for (uint32_t v : indices[b]) {
      if (v > max_index) {
        throw SerializeError("TokenStream: index " + std::to_string(v) +
                             " overflows " + std::to_string(bits) + " bits");
      }
    }
  }
}

std::vector<uint8_t> serialize(const TokenStream& t) {
  t.validate();

  binio::Writer w;
  w.magic("BSTK");
  w.u16(kTokenVersion);
  w.u8(static_cast<uint8_t>(t.band_count()));
  for (uint8_t bits : t.bits_per_band) w.u8(bits);
  w.u32(t.frame_count);
  w.u32(t.sample_rate);
  w.u64(t.original_length);

  for (size_t b = 0; b < t.band_count(); ++b) {
    pack_band(w, t.indices[b], t.bits_per_band[b]);
  }
  return w.take();
}

TokenStream deserialize(const std::vector<uint8_t>& bytes) {
  binio::Reader r(bytes);
  r.expect_magic("BSTK", "token stream");
  const uint16_t version = r.u16();
  if (version != kTokenVersion) {
    throw FormatError("unsupported token stream version " +
                      std::to_string(version));
  }

  TokenStream t;
  const uint8_t bands = r.u8();
  if (bands == 0) throw CorruptError("token stream with zero bands");
  t.bits_per_band.resize(bands);
  for (uint8_t& bits : t.bits_per_band) {
    bits = r.u8();
    if (bits < 1 || bits > 32) throw CorruptError("bits per band out of range");
  }
  t.frame_count = r.u32();
  t.sample_rate = r.u32();
  t.original_length = r.u64();

  t.indices.resize(bands);
  for (size_t b = 0; b < bands; ++b) {
    t.indices[b] = unpack_band(r, t.frame_count, t.bits_per_band[b]);
  }
  return t;
}

void save_tokens(const TokenStream& t, const std::filesystem::path& path) {
  binio::write_file(path, serialize(t));
}

TokenStream load_tokens(const std::filesystem::path& path) {
  return deserialize(binio::read_file(path));
}

}  // namespace bandcodec
