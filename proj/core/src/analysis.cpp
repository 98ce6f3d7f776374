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

#include "bandcodec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "bandcodec/dsp.hpp"
#include "bandcodec/errors.hpp"

namespace bandcodec {

namespace {

// Entropy in bits of counts/total, summed in the given order. Zero counts
// contribute nothing (0 log 0 := 0).
double entropy_bits(const std::vector<uint64_t>& counts, uint64_t total) {
  double h = 0.0;
  const double inv_total = 1.0 / static_cast<double>(total);
  for (uint64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) * inv_total;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

IndexHistogram IndexHistogram::from_indices(const std::vector<uint32_t>& indices,
                                            size_t k) {
  IndexHistogram h;
  h.counts.assign(k, 0);
  for (uint32_t index : indices) h.add(index);
  return h;
}

void IndexHistogram::add(uint32_t index) {
  if (index >= counts.size()) {
    throw ArgumentError("IndexHistogram: index " + std::to_string(index) +
                        " out of range for K=" + std::to_string(counts.size()));
  }
  ++counts[index];
  ++total;
}

double single_utilization(const IndexHistogram& h) {
  const size_t k = h.counts.size();
  if (k < 2) throw ArgumentError("single_utilization: K must be >= 2");
  if (h.total == 0) throw ArgumentError("single_utilization: empty histogram");
  return entropy_bits(h.counts, h.total) / std::log2(static_cast<double>(k));
}

double joint_utilization(
    const std::vector<std::pair<uint32_t, uint32_t>>& pairs, size_t k_first,
    size_t k_second) {
  if (k_first < 2 || k_second < 2) {
    throw ArgumentError("joint_utilization: K must be >= 2");
  }
  if (pairs.empty()) throw ArgumentError("joint_utilization: empty sequence");

  // Sparse pair counts; the dense K^2 table would be infeasible at large K.
  std::unordered_map<uint64_t, uint64_t> sparse;
  sparse.reserve(std::min<size_t>(pairs.size(), size_t{1} << 20));
  for (const auto& [a, b] : pairs) {
    if (a >= k_first || b >= k_second) {
      throw ArgumentError("joint_utilization: index out of range");
    }
    ++sparse[static_cast<uint64_t>(a) * k_second + b];
  }

  // Deterministic summation order: ascending pair key. For a duplicated
  // layer this reproduces the single-layer sum term by term, which makes
  // U_joint exactly half of U_single.
  std::vector<std::pair<uint64_t, uint64_t>> cells(sparse.begin(), sparse.end());
  std::sort(cells.begin(), cells.end());
  std::vector<uint64_t> counts(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) counts[i] = cells[i].second;

  const double h = entropy_bits(counts, pairs.size());
  return h / (std::log2(static_cast<double>(k_first)) +
              std::log2(static_cast<double>(k_second)));
}

double joint_utilization(
    const std::vector<std::pair<uint32_t, uint32_t>>& pairs, size_t k) {
  return joint_utilization(pairs, k, k);
}

UtilizationReport utilization_report(
    const std::vector<std::vector<uint32_t>>& streams, size_t k) {
  if (streams.empty()) throw ArgumentError("utilization_report: no streams");
  const size_t len = streams.front().size();
  for (const auto& s : streams) {
    if (s.size() != len) {
      throw ArgumentError("utilization_report: stream length mismatch");
    }
  }
  if (len == 0) throw ArgumentError("utilization_report: empty streams");

  UtilizationReport report;
  report.codebook_size = k;
  for (const auto& s : streams) {
    report.per_layer.push_back(
        single_utilization(IndexHistogram::from_indices(s, k)));
  }
  for (size_t i = 0; i + 1 < streams.size(); ++i) {
    std::vector<std::pair<uint32_t, uint32_t>> pairs(len);
    for (size_t t = 0; t < len; ++t) {
      pairs[t] = {streams[i][t], streams[i + 1][t]};
    }
    report.pairwise.push_back(joint_utilization(pairs, k));
  }
  return report;
}

LoudnessResult normalize_loudness(const AudioBuffer& x, double target_db) {
  LoudnessResult result;
  result.buffer = x;

  double sum_sq = 0.0;
  for (double v : x.samples) sum_sq += v * v;
  if (x.empty() || sum_sq == 0.0) {
    result.was_silent = true;
    return result;
  }

  const double rms = std::sqrt(sum_sq / static_cast<double>(x.size()));
  const double gain = std::pow(10.0, (target_db - 20.0 * std::log10(rms)) / 20.0);
  for (double& v : result.buffer.samples) v *= gain;
  return result;
}

EnergyProfile energy_profile(const std::vector<AudioBuffer>& files,
                             double target_db) {
  if (files.empty()) throw ArgumentError("energy_profile: no files");
  const int rate = files.front().sample_rate;
  for (const AudioBuffer& f : files) {
    if (f.sample_rate != rate) {
      throw ArgumentError("energy_profile: mixed sample rates");
    }
  }

  EnergyProfile profile;
  const StftConfig cfg = StftConfig::hann(profile.n_fft, profile.hop, true);
  profile.per_bin.assign(profile.n_fft / 2 + 1, 0.0);

  // Per-file partial sums, combined afterwards: repeated files contribute
  // identical partials, so duplicating a file cannot change the mean.
  for (const AudioBuffer& file : files) {
    const AudioBuffer normalized = normalize_loudness(file, target_db).buffer;
    const Spectrogram spec = stft(normalized, cfg);
    std::vector<double> partial(spec.num_bins, 0.0);
    for (size_t m = 0; m < spec.num_frames; ++m) {
      for (size_t k = 0; k < spec.num_bins; ++k) {
        partial[k] += std::norm(spec.at(m, k));
      }
    }
    for (size_t k = 0; k < spec.num_bins; ++k) profile.per_bin[k] += partial[k];
    profile.total_frames += spec.num_frames;
  }

  for (double& v : profile.per_bin) {
    v /= static_cast<double>(profile.total_frames);
  }
  return profile;
}

}  // namespace bandcodec
