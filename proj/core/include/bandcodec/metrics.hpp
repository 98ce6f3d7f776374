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

#ifndef BANDCODEC_METRICS_HPP
#define BANDCODEC_METRICS_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "bandcodec/audio_io.hpp"

namespace bandcodec {

/// m(f) = 2595 * log10(1 + f/700).
double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Triangular filters with centers equally spaced on the mel scale from 0
/// to Nyquist. Each triangle is integrated over the frequency span of each
/// FFT bin rather than point-sampled, so every filter keeps support even
/// when narrower than the bin spacing (small n_fft), and every bin is
/// covered.
struct MelFilterbank {
  Eigen::MatrixXd weights;  // n_mels x (n_fft/2 + 1)
  size_t n_mels = 80;
  size_t n_fft = 0;
  double fmin = 0.0;
  double fmax = 0.0;  // Nyquist
};

MelFilterbank mel_filterbank(size_t n_fft, int sample_rate,
                             size_t n_mels = 80);

/// Multi-resolution log-mel L1 distance: window sizes 64..2048 (powers of
/// two), hop = window/4, 80 mel bins, log floor eps = 1e-5; the mean over
/// the six scales of the mean absolute log-mel difference.
double mel_distance(const AudioBuffer& x, const AudioBuffer& y);

/// Two-scale log-magnitude STFT L1 distance at (2048, 512) and (512, 128)
/// window/hop pairs with Hann windows, log floor eps = 1e-5.
double stft_distance(const AudioBuffer& x, const AudioBuffer& y);

struct DistanceReport {
  double mel_distance = 0.0;
  double stft_distance = 0.0;
  std::vector<double> mel_per_scale;
  std::vector<double> stft_per_scale;
};

DistanceReport distance_report(const AudioBuffer& x, const AudioBuffer& y);

}  // namespace bandcodec

#endif  // BANDCODEC_METRICS_HPP
