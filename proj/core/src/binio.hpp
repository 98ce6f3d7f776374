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

// Internal little-endian readers/writers shared by the file formats.
// Not installed.

#ifndef BANDCODEC_SRC_BINIO_HPP
#define BANDCODEC_SRC_BINIO_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "bandcodec/errors.hpp"

namespace bandcodec::binio {

class Writer {
 public:
  void u8(uint8_t v) { out_.push_back(v); }
  void u16(uint16_t v) { raw_le(v); }
  void u32(uint32_t v) { raw_le(v); }
  void u64(uint64_t v) { raw_le(v); }
  void f32(float v) { raw_le(std::bit_cast<uint32_t>(v)); }
  void f64(double v) { raw_le(std::bit_cast<uint64_t>(v)); }
  void magic(const char tag[4]) {
    out_.insert(out_.end(), tag, tag + 4);
  }
  void bytes(const uint8_t* data, size_t n) {
    out_.insert(out_.end(), data, data + n);
  }

  std::vector<uint8_t> take() { return std::move(out_); }
  const std::vector<uint8_t>& buffer() const { return out_; }

 private:
  template <typename T>
  void raw_le(T v) {
    for (size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
  }
  std::vector<uint8_t> out_;
};

class Reader {
 public:
  Reader(const uint8_t* data, size_t size) : data_(data), size_(size) {}
  explicit Reader(const std::vector<uint8_t>& bytes)
      : Reader(bytes.data(), bytes.size()) {}

  uint8_t u8() { return take<uint8_t>(); }
  uint16_t u16() { return take<uint16_t>(); }
  uint32_t u32() { return take<uint32_t>(); }
  uint64_t u64() { return take<uint64_t>(); }
  float f32() { return std::bit_cast<float>(take<uint32_t>()); }
  double f64() { return std::bit_cast<double>(take<uint64_t>()); }

  void expect_magic(const char tag[4], const std::string& what) {
    if (remaining() < 4 || std::memcmp(data_ + pos_, tag, 4) != 0) {
      throw FormatError("bad magic: not a " + what + " file");
    }
    pos_ += 4;
  }

  const uint8_t* raw(size_t n) {
    require(n);
    const uint8_t* p = data_ + pos_;
    pos_ += n;
    return p;
  }

  size_t remaining() const { return size_ - pos_; }
  size_t position() const { return pos_; }

 private:
  template <typename T>
  T take() {
    require(sizeof(T));
    uint64_t v = 0;
    for (size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }

  void require(size_t n) const {
    if (remaining() < n) throw CorruptError("truncated data");
  }

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

inline std::vector<uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

inline void write_file(const std::filesystem::path& path,
                       const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace bandcodec::binio

#endif  // BANDCODEC_SRC_BINIO_HPP
