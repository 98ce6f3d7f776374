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

#ifndef BANDCODEC_DSP_HPP
#define BANDCODEC_DSP_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "bandcodec/audio_io.hpp"

namespace bandcodec {

/// Periodic Hann window: w[i] = 0.5 * (1 - cos(2*pi*i/n)), so w[0] = 0.
std::vector<double> hann_window(size_t n);

/// Analysis/synthesis configuration shared by stft and istft.
///
/// fft_size must be a power of two (radix-2 transform); window length must
/// equal fft_size with values in [0, 1]; 0 < hop <= fft_size.
struct StftConfig {
  size_t fft_size = 1024;
  size_t hop = 256;
  std::vector<double> window;
  bool center_padding = true;

  static StftConfig hann(size_t fft_size, size_t hop, bool center = true);

  /// Throws ArgumentError on any invariant violation.
  void validate() const;
};

/// Default analysis config for band splitting: Hann 1024/256, centered.
/// 23.4 Hz bin spacing at 24 kHz resolves a 500 Hz band boundary, and
/// hop = N/4 keeps the squared-window overlap-add constant.
StftConfig default_band_analysis();

/// One-sided complex spectrogram, frames-by-bins row major.
struct Spectrogram {
  size_t num_frames = 0;
  size_t num_bins = 0;  // fft_size / 2 + 1
  std::vector<std::complex<double>> data;
  StftConfig config;
  int sample_rate = 0;
  size_t original_length = 0;

  std::complex<double>& at(size_t frame, size_t bin) {
    return data[frame * num_bins + bin];
  }
  const std::complex<double>& at(size_t frame, size_t bin) const {
    return data[frame * num_bins + bin];
  }
};

/// Windowed short-time Fourier transform. With center_padding the signal is
/// reflect-padded by fft_size/2 on both ends before framing; frame count is
/// floor((padded_len - fft_size) / hop) + 1.
Spectrogram stft(const AudioBuffer& x, const StftConfig& cfg);

/// Weighted overlap-add inverse. Synthesis window equals the analysis
/// window; the sum is divided pointwise by sum_m w^2[n - mR] (floored at
/// 1e-8) and trimmed to the recorded original length. Throws NumericError
/// if the squared-window sum is exactly zero anywhere inside the kept
/// region, since such samples carry no signal information.
AudioBuffer istft(const Spectrogram& spec);

struct ColaReport {
  double max_deviation = 0.0;
};

/// Measures how far sum_m w^2[n - mR] is from constant in the steady-state
/// region. Near-zero deviation means istft(stft(x)) reconstructs exactly.
ColaReport check_cola(const StftConfig& cfg);

namespace detail {

/// In-place iterative radix-2 transform; size must be a power of two.
/// The inverse applies the 1/N factor.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

}  // namespace detail

}  // namespace bandcodec

#endif  // BANDCODEC_DSP_HPP
