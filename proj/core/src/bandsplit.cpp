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

#include "bandcodec/bandsplit.hpp"

#include <cmath>

#include "bandcodec/errors.hpp"
#include "bandcodec/parallel.hpp"

namespace bandcodec {

void BandConfig::validate() const {
  if (boundaries_hz.size() < 2) {
    throw ArgumentError("BandConfig: need at least one band");
  }
  if (boundaries_hz.front() != 0.0) {
    throw ArgumentError("BandConfig: first boundary must be 0 Hz");
  }
  for (size_t i = 1; i < boundaries_hz.size(); ++i) {
    if (!(boundaries_hz[i] > boundaries_hz[i - 1])) {
      throw ArgumentError("BandConfig: boundaries must be strictly ascending");
    }
  }
}

void BandConfig::validate_for_rate(int sample_rate) const {
  validate();
  if (sample_rate <= 0) throw ArgumentError("BandConfig: bad sample rate");
  if (boundaries_hz.back() > sample_rate / 2.0) {
    throw ArgumentError("BandConfig: top boundary above Nyquist");
  }
}

BandConfig preset_config(const std::string& name) {
  BandConfig bc;
  bc.name = name;
  if (name == "bands5") {
    bc.boundaries_hz = {0.0, 500.0, 2000.0, 4000.0, 8000.0, 12000.0};
  } else if (name == "bands3") {
    bc.boundaries_hz = {0.0, 2000.0, 4000.0, 12000.0};
  } else if (name == "bands2") {
    bc.boundaries_hz = {0.0, 2000.0, 12000.0};
  } else {
    throw ArgumentError("unknown band preset: " + name);
  }
  return bc;
}

std::vector<BandMask> make_masks(const BandConfig& bc, const StftConfig& cfg,
                                 int sample_rate) {
  bc.validate_for_rate(sample_rate);
  cfg.validate();

  const size_t num_bins = cfg.fft_size / 2 + 1;
  const size_t num_bands = bc.num_bands();
  const double nyquist = sample_rate / 2.0;
  const bool top_at_nyquist = bc.boundaries_hz.back() == nyquist;

  std::vector<BandMask> masks(num_bands);
  for (size_t b = 0; b < num_bands; ++b) {
    masks[b].band_index = b + 1;
    masks[b].values.assign(num_bins, 0);
  }

  for (size_t k = 0; k < num_bins; ++k) {
    const double freq = static_cast<double>(k) * sample_rate /
                        static_cast<double>(cfg.fft_size);
    for (size_t b = 0; b < num_bands; ++b) {
      const bool in_interval =
          freq >= bc.boundaries_hz[b] && freq < bc.boundaries_hz[b + 1];
      // The Nyquist bin sits exactly on the top boundary; without this it
      // would belong to no band and break perfect reconstruction.
      const bool nyquist_bin = top_at_nyquist && b + 1 == num_bands &&
                               k == cfg.fft_size / 2;
      if (in_interval || nyquist_bin) {
        masks[b].values[k] = 1;
        break;
      }
    }
  }
  return masks;
}

BandSet split_bands(const AudioBuffer& x, const BandConfig& bc,
                    const StftConfig& cfg) {
  const std::vector<BandMask> masks = make_masks(bc, cfg, x.sample_rate);
  const Spectrogram spec = stft(x, cfg);

  BandSet result;
  result.bands.resize(masks.size());
  parallel_for(masks.size(), [&](size_t b) {
    Spectrogram masked = spec;
    for (size_t m = 0; m < masked.num_frames; ++m) {
      for (size_t k = 0; k < masked.num_bins; ++k) {
        if (masks[b].values[k] == 0) masked.at(m, k) = 0.0;
      }
    }
    result.bands[b] = istft(masked);
  });
  return result;
}

AudioBuffer merge_bands(const BandSet& bs) {
  if (bs.bands.empty()) throw ArgumentError("merge_bands: no bands");
  const size_t len = bs.bands.front().size();
  const int rate = bs.bands.front().sample_rate;
  for (const AudioBuffer& band : bs.bands) {
    if (band.size() != len || band.sample_rate != rate) {
      throw ArgumentError("merge_bands: mismatched band lengths or rates");
    }
  }

  AudioBuffer out;
  out.sample_rate = rate;
  out.samples.assign(len, 0.0);
  for (const AudioBuffer& band : bs.bands) {
    for (size_t i = 0; i < len; ++i) out.samples[i] += band.samples[i];
  }
  return out;
}

}  // namespace bandcodec
