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

#include <doctest.h>

#include <bit>
#include <cstdint>
#include <fstream>

#include "bandcodec/audio_io.hpp"
#include "bandcodec/errors.hpp"
#include "bandcodec/rng.hpp"
#include "testutil.hpp"

using namespace bandcodec;

namespace {

void push_u16(std::vector<uint8_t>& v, uint16_t x) {
  v.push_back(x & 0xFF);
  v.push_back(x >> 8);
}
void push_u32(std::vector<uint8_t>& v, uint32_t x) {
  for (int i = 0; i < 4; ++i) v.push_back((x >> (8 * i)) & 0xFF);
}
void push_tag(std::vector<uint8_t>& v, const char* tag) {
  v.insert(v.end(), tag, tag + 4);
}

// Hand-built WAV with an arbitrary payload, for cases write_wav cannot
// produce (stereo, exotic encodings, truncation).
std::vector<uint8_t> craft_wav(uint16_t format, uint16_t channels,
                               uint32_t rate, uint16_t bits,
                               const std::vector<uint8_t>& payload) {
  std::vector<uint8_t> v;
  push_tag(v, "RIFF");
  push_u32(v, 4 + 24 + 8 + static_cast<uint32_t>(payload.size()));
  push_tag(v, "WAVE");
  push_tag(v, "fmt ");
  push_u32(v, 16);
  push_u16(v, format);
  push_u16(v, channels);
  push_u32(v, rate);
  push_u32(v, rate * channels * bits / 8);
  push_u16(v, channels * bits / 8);
  push_u16(v, bits);
  push_tag(v, "data");
  push_u32(v, static_cast<uint32_t>(payload.size()));
  v.insert(v.end(), payload.begin(), payload.end());
  return v;
}

void write_bytes(const std::filesystem::path& path,
                 const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::vector<uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("read_wav scales PCM16 by 1/32768") {
  testutil::TempDir dir("wav_pcm16");
  std::vector<uint8_t> payload;
  push_u16(payload, 32767);
  write_bytes(dir.file("one.wav"), craft_wav(1, 1, 24000, 16, payload));

  const AudioBuffer buf = read_wav(dir.file("one.wav"));
  REQUIRE(buf.size() == 1);
  CHECK(buf.sample_rate == 24000);
  CHECK(buf.samples[0] == 32767.0 / 32768.0);
}

TEST_CASE("read_wav downmixes stereo by channel mean") {
  testutil::TempDir dir("wav_stereo");
  std::vector<uint8_t> payload;
  push_u32(payload, std::bit_cast<uint32_t>(1.0f));
  push_u32(payload, std::bit_cast<uint32_t>(-1.0f));
  write_bytes(dir.file("st.wav"), craft_wav(3, 2, 24000, 32, payload));

  const AudioBuffer buf = read_wav(dir.file("st.wav"));
  REQUIRE(buf.size() == 1);
  CHECK(buf.samples[0] == 0.0);
}

TEST_CASE("float32 write/read round trip is bit exact") {
  testutil::TempDir dir("wav_roundtrip");
  Rng rng(11);
  AudioBuffer buf;
  buf.sample_rate = 24000;
  buf.samples.resize(4800);
  for (double& v : buf.samples) {
    v = static_cast<double>(static_cast<float>(rng.uniform(-1.0, 1.0)));
  }

  write_wav(buf, dir.file("rt.wav"), WavEncoding::kFloat32);
  const AudioBuffer back = read_wav(dir.file("rt.wav"));
  REQUIRE(back.size() == buf.size());
  CHECK(back.sample_rate == buf.sample_rate);
  for (size_t i = 0; i < buf.size(); ++i) {
    REQUIRE(back.samples[i] == buf.samples[i]);
  }

  // read o write is an identity on the data chunk too.
  write_wav(back, dir.file("rt2.wav"), WavEncoding::kFloat32);
  CHECK(read_bytes(dir.file("rt.wav")) == read_bytes(dir.file("rt2.wav")));
}

TEST_CASE("write_wav pcm16 rounds and clamps") {
  testutil::TempDir dir("wav_clamp");

  AudioBuffer zero;
  zero.sample_rate = 8000;
  zero.samples = {0.0};
  write_wav(zero, dir.file("zero.wav"), WavEncoding::kPcm16);
  const std::vector<uint8_t> bytes = read_bytes(dir.file("zero.wav"));
  // 44-byte canonical header, then the single data word.
  REQUIRE(bytes.size() == 46);
  CHECK(bytes[44] == 0);
  CHECK(bytes[45] == 0);

  AudioBuffer loud;
  loud.sample_rate = 8000;
  loud.samples = {1.5, -1.5};
  write_wav(loud, dir.file("loud.wav"), WavEncoding::kPcm16);
  const AudioBuffer back = read_wav(dir.file("loud.wav"));
  CHECK(back.samples[0] == 32767.0 / 32768.0);
  CHECK(back.samples[1] == -1.0);
}

TEST_CASE("read_wav rejects unsupported encodings") {
  testutil::TempDir dir("wav_badenc");
  write_bytes(dir.file("u8.wav"), craft_wav(1, 1, 8000, 8, {0x80, 0x80}));
  CHECK_THROWS_AS(read_wav(dir.file("u8.wav")), FormatError);

  write_bytes(dir.file("alaw.wav"), craft_wav(6, 1, 8000, 8, {0x00}));
  CHECK_THROWS_AS(read_wav(dir.file("alaw.wav")), FormatError);
}

TEST_CASE("read_wav rejects truncated files") {
  testutil::TempDir dir("wav_trunc");
  std::vector<uint8_t> payload;
  for (int i = 0; i < 32; ++i) push_u16(payload, 0);
  std::vector<uint8_t> bytes = craft_wav(1, 1, 8000, 16, payload);
  bytes.resize(bytes.size() - 10);  // cut into the data chunk
  write_bytes(dir.file("cut.wav"), bytes);
  CHECK_THROWS_AS(read_wav(dir.file("cut.wav")), CorruptError);

  write_bytes(dir.file("tiny.wav"), {0x52, 0x49});
  CHECK_THROWS_AS(read_wav(dir.file("tiny.wav")), FormatError);
}

TEST_CASE("write_wav rejects empty buffers") {
  testutil::TempDir dir("wav_empty");
  AudioBuffer buf;
  buf.sample_rate = 8000;
  CHECK_THROWS_AS(write_wav(buf, dir.file("x.wav"), WavEncoding::kPcm16),
                  ArgumentError);
}

TEST_CASE("resample_linear identity at equal rates") {
  const AudioBuffer x = testutil::white_noise(1000, 24000, 5);
  const AudioBuffer y = resample_linear(x, 24000);
  CHECK(testutil::max_abs_diff(x.samples, y.samples) == 0.0);
}

TEST_CASE("resample_linear interpolates and edge-holds") {
  AudioBuffer x;
  x.sample_rate = 2;
  x.samples = {0.0, 1.0};
  const AudioBuffer y = resample_linear(x, 4);
  REQUIRE(y.size() == 4);
  CHECK(y.samples[0] == 0.0);
  CHECK(y.samples[1] == doctest::Approx(0.5));
  CHECK(y.samples[2] == doctest::Approx(1.0));
  CHECK(y.samples[3] == doctest::Approx(1.0));
}

TEST_CASE("resample_linear preserves constants and bounds") {
  AudioBuffer c;
  c.sample_rate = 24000;
  c.samples.assign(480, 0.25);
  for (int rate : {8000, 16000, 44100}) {
    const AudioBuffer y = resample_linear(c, rate);
    for (double v : y.samples) CHECK(v == doctest::Approx(0.25));
  }

  // Convex combinations never exceed the input range.
  const AudioBuffer x = testutil::white_noise(500, 24000, 17);
  double lo = 1e9, hi = -1e9;
  for (double v : x.samples) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (int rate : {11025, 48000}) {
    for (double v : resample_linear(x, rate).samples) {
      CHECK(v >= lo - 1e-15);
      CHECK(v <= hi + 1e-15);
    }
  }
}

TEST_CASE("resample_linear handles empty input and bad rates") {
  AudioBuffer x;
  x.sample_rate = 24000;
  CHECK(resample_linear(x, 8000).empty());
  x.samples = {0.5};
  CHECK_THROWS_AS(resample_linear(x, 0), ArgumentError);
}
