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

#ifndef BANDCODEC_BANDSPLIT_HPP
#define BANDCODEC_BANDSPLIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bandcodec/dsp.hpp"

namespace bandcodec {

/// Ascending band boundaries f_0 < f_1 < ... < f_B in Hz, f_0 = 0.
struct BandConfig {
  std::vector<double> boundaries_hz;
  std::string name;

  size_t num_bands() const {
    return boundaries_hz.empty() ? 0 : boundaries_hz.size() - 1;
  }

  void validate() const;
  /// Additionally requires f_B <= sample_rate / 2.
  void validate_for_rate(int sample_rate) const;
};

/// Named presets:
///   bands5 -> {0, 500, 2000, 4000, 8000, 12000} Hz
///   bands3 -> {0, 2000, 4000, 12000} Hz
///   bands2 -> {0, 2000, 12000} Hz
BandConfig preset_config(const std::string& name);

/// Binary indicator over one-sided FFT bins for one band (1-based index).
struct BandMask {
  std::vector<uint8_t> values;
  size_t band_index = 0;
};

/// Mask b selects bin k iff f_{b-1} <= k*fs/N < f_b. When f_B equals the
/// Nyquist frequency, the k = N/2 bin is assigned to the last band so the
/// masks partition every bin; the half-open intervals alone would orphan it.
std::vector<BandMask> make_masks(const BandConfig& bc, const StftConfig& cfg,
                                 int sample_rate);

/// Equal-length, equal-rate band waveforms ordered by band index.
struct BandSet {
  std::vector<AudioBuffer> bands;
};

/// One masked-spectrogram inversion per band; every output has the input's
/// length. Per-band inversions run in parallel up to the worker cap.
BandSet split_bands(const AudioBuffer& x, const BandConfig& bc,
                    const StftConfig& cfg);

/// Pointwise sum of the band waveforms.
AudioBuffer merge_bands(const BandSet& bs);

}  // namespace bandcodec

#endif  // BANDCODEC_BANDSPLIT_HPP
