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

#include "bandcodec/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "bandcodec/errors.hpp"
#include "binio.hpp"

namespace bandcodec {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;

struct FmtChunk {
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits_per_sample = 0;
};

double pcm16_to_double(int16_t v) { return static_cast<double>(v) / 32768.0; }

int16_t double_to_pcm16(double v) {
  // Round to nearest, clamp to the representable range.
  const double scaled = std::round(v * 32768.0);
  const double clamped = std::clamp(scaled, -32768.0, 32767.0);
  return static_cast<int16_t>(clamped);
}

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
  const std::vector<uint8_t> bytes = binio::read_file(path);
  binio::Reader r(bytes);

  r.expect_magic("RIFF", "RIFF/WAVE");
  r.u32();  // riff size; data chunk bounds are checked directly below
  r.expect_magic("WAVE", "RIFF/WAVE");

  FmtChunk fmt;
  bool have_fmt = false;
  const uint8_t* data = nullptr;
  uint32_t data_size = 0;

  // Walk chunks; anything other than fmt/data is skipped. Chunks are padded
  // to even sizes.
  while (r.remaining() >= 8) {
    char id[4];
    std::memcpy(id, r.raw(4), 4);
    const uint32_t size = r.u32();
    if (size > r.remaining()) throw CorruptError("truncated chunk in " + path.string());

    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) throw CorruptError("fmt chunk too small");
      binio::Reader f(r.raw(size), size);
      fmt.format = f.u16();
      fmt.channels = f.u16();
      fmt.sample_rate = f.u32();
      f.u32();  // byte rate
      f.u16();  // block align
      fmt.bits_per_sample = f.u16();
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = r.raw(size);
      data_size = size;
    } else {
      r.raw(size);
    }
    if (size % 2 == 1 && r.remaining() > 0) r.raw(1);  // pad byte
  }

  if (!have_fmt) throw CorruptError("missing fmt chunk in " + path.string());
  if (data == nullptr) throw CorruptError("missing data chunk in " + path.string());
  if (fmt.channels < 1 || fmt.channels > 2) {
    throw FormatError("unsupported channel count " + std::to_string(fmt.channels));
  }
  if (fmt.sample_rate == 0) throw CorruptError("zero sample rate");

  const bool is_pcm16 = fmt.format == kFormatPcm && fmt.bits_per_sample == 16;
  const bool is_float32 =
      fmt.format == kFormatIeeeFloat && fmt.bits_per_sample == 32;
  if (!is_pcm16 && !is_float32) {
    throw FormatError("unsupported WAV encoding (format " +
                      std::to_string(fmt.format) + ", " +
                      std::to_string(fmt.bits_per_sample) + " bits)");
  }

  const size_t bytes_per_sample = is_pcm16 ? 2 : 4;
  const size_t frame_bytes = bytes_per_sample * fmt.channels;
  if (data_size % frame_bytes != 0) {
    throw CorruptError("data chunk size not a whole number of frames");
  }
  const size_t num_frames = data_size / frame_bytes;

  AudioBuffer out;
  out.sample_rate = static_cast<int>(fmt.sample_rate);
  out.samples.resize(num_frames);

  binio::Reader d(data, data_size);
  for (size_t i = 0; i < num_frames; ++i) {
    double acc = 0.0;
    for (uint16_t c = 0; c < fmt.channels; ++c) {
      if (is_pcm16) {
        acc += pcm16_to_double(static_cast<int16_t>(d.u16()));
      } else {
        acc += static_cast<double>(d.f32());
      }
    }
    out.samples[i] = acc / fmt.channels;
  }

  for (double v : out.samples) {
    if (!std::isfinite(v)) {
      throw CorruptError("non-finite sample in " + path.string());
    }
  }
  return out;
}

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path,
               WavEncoding encoding) {
  if (buffer.empty()) throw ArgumentError("write_wav: empty buffer");
  if (buffer.sample_rate <= 0) throw ArgumentError("write_wav: bad sample rate");

  const bool pcm = encoding == WavEncoding::kPcm16;
  const uint16_t bits = pcm ? 16 : 32;
  const uint32_t rate = static_cast<uint32_t>(buffer.sample_rate);
  const uint32_t data_size =
      static_cast<uint32_t>(buffer.size() * (bits / 8));

  binio::Writer w;
  w.magic("RIFF");
  // fmt is 16 bytes for PCM, 18 for float (cbSize = 0) plus a fact chunk.
  const uint32_t fmt_size = pcm ? 16 : 18;
  const uint32_t fact_size = pcm ? 0 : 12;
  w.u32(4 + (8 + fmt_size) + fact_size + 8 + data_size);
  w.magic("WAVE");

  w.magic("fmt ");
  w.u32(fmt_size);
  w.u16(pcm ? kFormatPcm : kFormatIeeeFloat);
  w.u16(1);  // mono
  w.u32(rate);
  w.u32(rate * (bits / 8));
  w.u16(bits / 8);
  w.u16(bits);
  if (!pcm) {
    w.u16(0);  // cbSize
    w.magic("fact");
    w.u32(4);
    w.u32(static_cast<uint32_t>(buffer.size()));
  }

  w.magic("data");
  w.u32(data_size);
  for (double v : buffer.samples) {
    if (pcm) {
      w.u16(static_cast<uint16_t>(double_to_pcm16(v)));
    } else {
      w.f32(static_cast<float>(v));
    }
  }

  binio::write_file(path, w.buffer());
}

AudioBuffer resample_linear(const AudioBuffer& buffer, int target_rate) {
  if (target_rate <= 0) throw ArgumentError("resample_linear: bad target rate");
  if (buffer.sample_rate == target_rate) return buffer;

  AudioBuffer out;
  out.sample_rate = target_rate;
  if (buffer.empty()) return out;

  const size_t in_len = buffer.size();
  const size_t out_len = static_cast<size_t>(std::llround(
      static_cast<double>(in_len) * target_rate / buffer.sample_rate));
  out.samples.resize(out_len);

  const double step =
      static_cast<double>(buffer.sample_rate) / static_cast<double>(target_rate);
  for (size_t i = 0; i < out_len; ++i) {
    const double pos = static_cast<double>(i) * step;
    const size_t j = std::min(static_cast<size_t>(pos), in_len - 1);
    const double frac = pos - static_cast<double>(j);
    if (j + 1 < in_len) {
      out.samples[i] = (1.0 - frac) * buffer.samples[j] + frac * buffer.samples[j + 1];
    } else {
      out.samples[i] = buffer.samples[in_len - 1];  // edge hold
    }
  }
  return out;
}

}  // namespace bandcodec
