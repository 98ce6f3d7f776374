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

#ifndef BANDCODEC_ANALYSIS_HPP
#define BANDCODEC_ANALYSIS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "bandcodec/audio_io.hpp"

namespace bandcodec {

/// Empirical code usage counts over K entries.
struct IndexHistogram {
  std::vector<uint64_t> counts;
  uint64_t total = 0;

  static IndexHistogram from_indices(const std::vector<uint32_t>& indices,
                                     size_t k);
  void add(uint32_t index);
};

/// U = H(c) / log2(K), entropy of the usage distribution over its maximum.
/// Zero-probability entries contribute nothing. Requires K >= 2, total > 0.
double single_utilization(const IndexHistogram& h);

/// U = H(c_i, c_{i+1}) / (2 log2 K) over sparse pair counts. The pair space
/// K^2 is never materialized. Requires k >= 2 and a non-empty sequence.
double joint_utilization(
    const std::vector<std::pair<uint32_t, uint32_t>>& pairs, size_t k);

/// Generalization for layers of different sizes; the denominator becomes
/// log2(k_first) + log2(k_second). Equal sizes reduce to the form above.
double joint_utilization(
    const std::vector<std::pair<uint32_t, uint32_t>>& pairs, size_t k_first,
    size_t k_second);

struct UtilizationReport {
  std::vector<double> per_layer;
  std::vector<double> pairwise;  // consecutive layer pairs, length L-1
  size_t codebook_size = 0;
};

/// Per-layer utilization plus pairwise joint utilization for every pair of
/// consecutive layers. All streams must have equal length.
UtilizationReport utilization_report(
    const std::vector<std::vector<uint32_t>>& streams, size_t k);

struct LoudnessResult {
  AudioBuffer buffer;
  bool was_silent = false;
};

/// Applies gain so that 20*log10(RMS) equals target_db. Plain RMS-to-dBFS,
/// not gated BS.1770 loudness. Silence is returned unchanged and flagged.
LoudnessResult normalize_loudness(const AudioBuffer& x, double target_db);

/// Frame-count weighted average of squared STFT magnitudes per bin.
struct EnergyProfile {
  std::vector<double> per_bin;  // length n_fft/2 + 1
  size_t n_fft = 2048;
  size_t hop = 512;
  uint64_t total_frames = 0;
};

/// Pools |X(f,t)|^2 over all frames of all files: each file is first
/// RMS-normalized to target_db, then analyzed with Hann 2048/512. The
/// result is sum of energies divided by total frame count, so file order
/// does not matter. All files must share one sample rate.
EnergyProfile energy_profile(const std::vector<AudioBuffer>& files,
                             double target_db = -23.0);

}  // namespace bandcodec

#endif  // BANDCODEC_ANALYSIS_HPP
