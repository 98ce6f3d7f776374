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

#include "bandcodec/dsp.hpp"

#include <algorithm>
#include <cmath>

#include "bandcodec/errors.hpp"

namespace bandcodec {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kDenomFloor = 1e-8;

bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Reflect an out-of-range index back into [0, len), mirroring around the
// endpoints without repeating them.
size_t reflect_index(ptrdiff_t q, size_t len) {
  if (len == 1) return 0;
  const ptrdiff_t period = 2 * static_cast<ptrdiff_t>(len) - 2;
  ptrdiff_t m = q % period;
  if (m < 0) m += period;
  return static_cast<size_t>(m < static_cast<ptrdiff_t>(len) ? m : period - m);
}

}  // namespace

namespace detail {

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  if (!is_power_of_two(n)) {
    throw ArgumentError("fft size must be a power of two");
  }
  if (n == 1) return;

  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // Exact twiddles per index, no running-product drift.
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> twiddle(n / 2);
  for (size_t k = 0; k < n / 2; ++k) {
    const double ang = sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = {std::cos(ang), std::sin(ang)};
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const size_t stride = n / len;
    for (size_t i = 0; i < n; i += len) {
      for (size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> w = twiddle[j * stride];
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : a) v *= scale;
  }
}

}  // namespace detail

std::vector<double> hann_window(size_t n) {
  if (n < 2) throw ArgumentError("hann_window: n must be >= 2");
  std::vector<double> w(n);
  for (size_t i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n)));
  }
  return w;
}

StftConfig StftConfig::hann(size_t fft_size, size_t hop, bool center) {
  StftConfig cfg;
  cfg.fft_size = fft_size;
  cfg.hop = hop;
  cfg.window = hann_window(fft_size);
  cfg.center_padding = center;
  return cfg;
}

void StftConfig::validate() const {
  if (!is_power_of_two(fft_size)) {
    throw ArgumentError("StftConfig: fft_size must be a power of two");
  }
  if (hop == 0 || hop > fft_size) {
    throw ArgumentError("StftConfig: need 0 < hop <= fft_size");
  }
  if (window.size() != fft_size) {
    throw ArgumentError("StftConfig: window length must equal fft_size");
  }
  for (double v : window) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ArgumentError("StftConfig: window values must lie in [0, 1]");
    }
  }
}

StftConfig default_band_analysis() { return StftConfig::hann(1024, 256, true); }

Spectrogram stft(const AudioBuffer& x, const StftConfig& cfg) {
  cfg.validate();
  const size_t n = cfg.fft_size;
  const size_t pad = cfg.center_padding ? n / 2 : 0;
  const size_t padded_len = x.size() + 2 * pad;
  if (padded_len < n) {
    throw ArgumentError("stft: signal shorter than one frame");
  }

  std::vector<double> padded(padded_len);
  if (pad == 0) {
    std::copy(x.samples.begin(), x.samples.end(), padded.begin());
  } else {
    if (x.empty()) throw ArgumentError("stft: empty signal");
    for (size_t i = 0; i < padded_len; ++i) {
      padded[i] = x.samples[reflect_index(
          static_cast<ptrdiff_t>(i) - static_cast<ptrdiff_t>(pad), x.size())];
    }
  }

  Spectrogram spec;
  spec.config = cfg;
  spec.sample_rate = x.sample_rate;
  spec.original_length = x.size();
  spec.num_frames = (padded_len - n) / cfg.hop + 1;
  spec.num_bins = n / 2 + 1;
  spec.data.resize(spec.num_frames * spec.num_bins);

  std::vector<std::complex<double>> frame(n);
  for (size_t m = 0; m < spec.num_frames; ++m) {
    const size_t offset = m * cfg.hop;
    for (size_t i = 0; i < n; ++i) {
      frame[i] = padded[offset + i] * cfg.window[i];
    }
    detail::fft_inplace(frame, false);
    for (size_t k = 0; k < spec.num_bins; ++k) {
      spec.at(m, k) = frame[k];
    }
  }
  return spec;
}

AudioBuffer istft(const Spectrogram& spec) {
  const StftConfig& cfg = spec.config;
  cfg.validate();
  const size_t n = cfg.fft_size;
  if (spec.num_bins != n / 2 + 1) {
    throw ArgumentError("istft: bin count does not match fft_size");
  }

  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  if (spec.original_length == 0) return out;
  if (spec.num_frames == 0) {
    throw NumericError("istft: no frames to reconstruct from");
  }

  const size_t full_len = (spec.num_frames - 1) * cfg.hop + n;
  std::vector<double> acc(full_len, 0.0);
  std::vector<double> denom(full_len, 0.0);

  std::vector<std::complex<double>> frame(n);
  for (size_t m = 0; m < spec.num_frames; ++m) {
    // Rebuild the two-sided spectrum from the one-sided bins.
    for (size_t k = 0; k < spec.num_bins; ++k) frame[k] = spec.at(m, k);
    for (size_t k = 1; k < n / 2; ++k) frame[n - k] = std::conj(spec.at(m, k));
    detail::fft_inplace(frame, true);

    const size_t offset = m * cfg.hop;
    for (size_t i = 0; i < n; ++i) {
      acc[offset + i] += cfg.window[i] * frame[i].real();
      denom[offset + i] += cfg.window[i] * cfg.window[i];
    }
  }

  const size_t start = cfg.center_padding ? n / 2 : 0;
  out.samples.resize(spec.original_length);
  for (size_t i = 0; i < spec.original_length; ++i) {
    const size_t pos = start + i;
    if (pos >= full_len || denom[pos] == 0.0) {
      throw NumericError(
          "istft: zero window-overlap denominator inside the output region");
    }
    out.samples[i] = acc[pos] / std::max(denom[pos], kDenomFloor);
  }
  return out;
}

ColaReport check_cola(const StftConfig& cfg) {
  cfg.validate();
  const size_t n = cfg.fft_size;
  const size_t hop = cfg.hop;
  // Enough frames that [n, (frames-1)*hop) is a meaningful steady region.
  const size_t frames = std::max<size_t>(8, (4 * n) / hop + 2);
  const size_t full_len = (frames - 1) * hop + n;

  std::vector<double> sum(full_len, 0.0);
  for (size_t m = 0; m < frames; ++m) {
    for (size_t i = 0; i < n; ++i) {
      sum[m * hop + i] += cfg.window[i] * cfg.window[i];
    }
  }

  std::vector<double> steady(sum.begin() + static_cast<ptrdiff_t>(n),
                             sum.begin() + static_cast<ptrdiff_t>((frames - 1) * hop));
  std::sort(steady.begin(), steady.end());
  const double median = steady[steady.size() / 2];

  ColaReport report;
  for (double v : steady) {
    report.max_deviation = std::max(report.max_deviation, std::abs(v - median));
  }
  return report;
}

}  // namespace bandcodec
