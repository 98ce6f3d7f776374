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

#include "bandcodec/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "bandcodec/dsp.hpp"
#include "bandcodec/errors.hpp"

namespace bandcodec {

namespace {

constexpr double kLogFloor = 1e-5;
constexpr size_t kMelScales[] = {64, 128, 256, 512, 1024, 2048};
constexpr std::pair<size_t, size_t> kStftScales[] = {{2048, 512}, {512, 128}};

// Magnitude spectrogram as bins x frames.
Eigen::MatrixXd magnitude(const AudioBuffer& x, size_t window, size_t hop) {
  const Spectrogram spec = stft(x, StftConfig::hann(window, hop, true));
  Eigen::MatrixXd mag(static_cast<Eigen::Index>(spec.num_bins),
                      static_cast<Eigen::Index>(spec.num_frames));
  for (size_t m = 0; m < spec.num_frames; ++m) {
    for (size_t k = 0; k < spec.num_bins; ++k) {
      mag(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) =
          std::abs(spec.at(m, k));
    }
  }
  return mag;
}

double mean_abs_log_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::ArrayXXd log_a = (a.array() + kLogFloor).log();
  const Eigen::ArrayXXd log_b = (b.array() + kLogFloor).log();
  return (log_a - log_b).abs().mean();
}

void check_comparable(const AudioBuffer& x, const AudioBuffer& y) {
  if (x.size() != y.size()) {
    throw ArgumentError("distance: buffers must have equal length");
  }
  if (x.sample_rate != y.sample_rate) {
    throw ArgumentError("distance: buffers must share a sample rate");
  }
  if (x.empty()) throw ArgumentError("distance: empty buffers");
}

// Integral of the triangle with feet (lo, hi) and unit peak at mid over
// [a, b], exact for the piecewise-linear shape.
double triangle_integral(double lo, double mid, double hi, double a, double b) {
  auto rising = [&](double f) { return (f - lo) / (mid - lo); };
  auto falling = [&](double f) { return (hi - f) / (hi - mid); };

  double total = 0.0;
  const double r_lo = std::max(a, lo), r_hi = std::min(b, mid);
  if (r_hi > r_lo) total += 0.5 * (rising(r_lo) + rising(r_hi)) * (r_hi - r_lo);
  const double f_lo = std::max(a, mid), f_hi = std::min(b, hi);
  if (f_hi > f_lo) total += 0.5 * (falling(f_lo) + falling(f_hi)) * (f_hi - f_lo);
  return total;
}

}  // namespace

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank mel_filterbank(size_t n_fft, int sample_rate, size_t n_mels) {
  if (n_fft < 64 || (n_fft & (n_fft - 1)) != 0) {
    throw ArgumentError("mel_filterbank: n_fft must be a power of two >= 64");
  }
  if (sample_rate <= 0) throw ArgumentError("mel_filterbank: bad sample rate");
  if (n_mels == 0) throw ArgumentError("mel_filterbank: n_mels must be > 0");

  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.n_fft = n_fft;
  fb.fmin = 0.0;
  fb.fmax = sample_rate / 2.0;

  const size_t num_bins = n_fft / 2 + 1;
  fb.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_mels),
                                     static_cast<Eigen::Index>(num_bins));

  // n_mels + 2 anchor points, equally spaced in mel from 0 to Nyquist.
  std::vector<double> hz(n_mels + 2);
  const double mel_max = hz_to_mel(fb.fmax);
  for (size_t i = 0; i < hz.size(); ++i) {
    hz[i] = mel_to_hz(mel_max * static_cast<double>(i) /
                      static_cast<double>(n_mels + 1));
  }

  // Average each triangle over the frequency span of each bin. Unlike
  // point sampling this keeps every filter non-empty even when triangles
  // are narrower than the bin spacing at small n_fft.
  const double bin_width = static_cast<double>(sample_rate) / static_cast<double>(n_fft);
  for (size_t j = 0; j < n_mels; ++j) {
    const double lo = hz[j], mid = hz[j + 1], hi = hz[j + 2];
    for (size_t k = 0; k < num_bins; ++k) {
      const double span_lo = std::max(0.0, (static_cast<double>(k) - 0.5) * bin_width);
      const double span_hi = std::min(fb.fmax, (static_cast<double>(k) + 0.5) * bin_width);
      if (span_hi <= lo || span_lo >= hi) continue;
      const double area = triangle_integral(lo, mid, hi, span_lo, span_hi);
      if (area > 0.0) {
        fb.weights(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            area / (span_hi - span_lo);
      }
    }
  }
  return fb;
}

DistanceReport distance_report(const AudioBuffer& x, const AudioBuffer& y) {
  check_comparable(x, y);

  DistanceReport report;
  for (size_t window : kMelScales) {
    const size_t hop = window / 4;
    const MelFilterbank fb = mel_filterbank(window, x.sample_rate);
    const Eigen::MatrixXd mel_x = fb.weights * magnitude(x, window, hop);
    const Eigen::MatrixXd mel_y = fb.weights * magnitude(y, window, hop);
    report.mel_per_scale.push_back(mean_abs_log_diff(mel_x, mel_y));
  }
  for (const auto& [window, hop] : kStftScales) {
    report.stft_per_scale.push_back(
        mean_abs_log_diff(magnitude(x, window, hop), magnitude(y, window, hop)));
  }

  const auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e;
    return s / static_cast<double>(v.size());
  };
  report.mel_distance = mean(report.mel_per_scale);
  report.stft_distance = mean(report.stft_per_scale);
  return report;
}

double mel_distance(const AudioBuffer& x, const AudioBuffer& y) {
  check_comparable(x, y);
  double total = 0.0;
  size_t scales = 0;
  for (size_t window : kMelScales) {
    const size_t hop = window / 4;
    const MelFilterbank fb = mel_filterbank(window, x.sample_rate);
    const Eigen::MatrixXd mel_x = fb.weights * magnitude(x, window, hop);
    const Eigen::MatrixXd mel_y = fb.weights * magnitude(y, window, hop);
    total += mean_abs_log_diff(mel_x, mel_y);
    ++scales;
  }
  return total / static_cast<double>(scales);
}

double stft_distance(const AudioBuffer& x, const AudioBuffer& y) {
  check_comparable(x, y);
  double total = 0.0;
  size_t scales = 0;
  for (const auto& [window, hop] : kStftScales) {
    total += mean_abs_log_diff(magnitude(x, window, hop),
                               magnitude(y, window, hop));
    ++scales;
  }
  return total / static_cast<double>(scales);
}

}  // namespace bandcodec
