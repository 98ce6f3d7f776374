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

#ifndef BANDCODEC_AUDIO_IO_HPP
#define BANDCODEC_AUDIO_IO_HPP

#include <cstddef>
#include <filesystem>
#include <vector>

namespace bandcodec {

/// Mono audio held as double samples, nominally in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

enum class WavEncoding { kPcm16, kFloat32 };

/// Reads a RIFF/WAVE file. Supports PCM16 and IEEE float32, 1 or 2 channels;
/// stereo is downmixed to mono by channel mean, PCM16 is scaled by 1/32768.
AudioBuffer read_wav(const std::filesystem::path& path);

/// Writes a mono RIFF/WAVE file. PCM16 rounds to nearest and clamps to
/// [-1, 32767/32768]; float32 preserves float-representable samples exactly.
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path,
               WavEncoding encoding);

/// Linear-interpolation resampler, utility grade (no anti-alias filtering).
/// Output length is round(len * target / source); same rate is an identity.
AudioBuffer resample_linear(const AudioBuffer& buffer, int target_rate);

}  // namespace bandcodec

#endif  // BANDCODEC_AUDIO_IO_HPP
