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

#include <complex>

#include "bandcodec/dsp.hpp"
#include "bandcodec/errors.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace bandcodec;

namespace {

StftConfig rect_config(size_t n, size_t hop, bool center = false) {
  StftConfig cfg;
  cfg.fft_size = n;
  cfg.hop = hop;
  cfg.window.assign(n, 1.0);
  cfg.center_padding = center;
  return cfg;
}

}  // namespace

TEST_CASE("hann_window closed form") {
  const std::vector<double> w4 = hann_window(4);
  REQUIRE(w4.size() == 4);
  CHECK(w4[0] == 0.0);
  CHECK(w4[1] == doctest::Approx(0.5));
  CHECK(w4[2] == doctest::Approx(1.0));
  CHECK(w4[3] == doctest::Approx(0.5));

  CHECK(hann_window(8)[2] == doctest::Approx(0.5));

  for (double v : hann_window(1024)) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  CHECK_THROWS_AS(hann_window(1), ArgumentError);
}

TEST_CASE("stft of a unit impulse is flat") {
  AudioBuffer x;
  x.sample_rate = 24000;
  x.samples = {1.0, 0.0, 0.0, 0.0};
  const Spectrogram spec = stft(x, rect_config(4, 4));
  REQUIRE(spec.num_frames == 1);
  REQUIRE(spec.num_bins == 3);
  for (size_t k = 0; k < 3; ++k) {
    CHECK(spec.at(0, k).real() == doctest::Approx(1.0));
    CHECK(spec.at(0, k).imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("stft DC bin of a constant equals the window sum") {
  AudioBuffer x;
  x.sample_rate = 24000;
  x.samples.assign(8, 1.0);
  const Spectrogram spec = stft(x, StftConfig::hann(4, 4, false));
  REQUIRE(spec.num_frames == 2);
  for (size_t m = 0; m < spec.num_frames; ++m) {
    CHECK(spec.at(m, 0).real() == doctest::Approx(2.0));  // sum of hann(4)
  }
}

TEST_CASE("stft bins match the brute-force DFT") {
  const AudioBuffer x = testutil::white_noise(1024, 24000, 99);
  const Spectrogram spec = stft(x, rect_config(1024, 1024));
  REQUIRE(spec.num_frames == 1);

  const auto oracle = oracles::brute_dft(x.samples);
  for (size_t k = 0; k < spec.num_bins; ++k) {
    CHECK(std::abs(spec.at(0, k) - oracle[k]) < 1e-8);
  }

  // Parseval through the one-sided bins: |X_0|^2 + |X_{N/2}|^2 +
  // 2 sum_{0<k<N/2} |X_k|^2 equals N * signal energy.
  double spectral = std::norm(spec.at(0, 0)) + std::norm(spec.at(0, 512));
  for (size_t k = 1; k < 512; ++k) spectral += 2.0 * std::norm(spec.at(0, k));
  const double direct = testutil::energy(x.samples);
  CHECK(spectral / 1024.0 == doctest::Approx(direct).epsilon(1e-9));
  CHECK(oracles::dft_signal_energy(x.samples) ==
        doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("stft rejects too-short signals") {
  AudioBuffer x;
  x.sample_rate = 24000;
  x.samples.assign(100, 0.1);
  CHECK_THROWS_AS(stft(x, StftConfig::hann(1024, 256, false)), ArgumentError);

  AudioBuffer empty;
  empty.sample_rate = 24000;
  CHECK_THROWS_AS(stft(empty, StftConfig::hann(1024, 256, true)), ArgumentError);
}

TEST_CASE("istft(stft(x)) reconstructs within 1e-10") {
  const AudioBuffer x = testutil::white_noise(24000, 24000, 4);
  const AudioBuffer y = istft(stft(x, StftConfig::hann(1024, 256, true)));
  REQUIRE(y.size() == x.size());
  CHECK(testutil::max_abs_diff(x.samples, y.samples) < 1e-10);
}

TEST_CASE("istft reconstructs short and odd-length signals") {
  for (size_t len : {1024u, 1025u, 5000u, 333u}) {
    const AudioBuffer x = testutil::white_noise(len, 24000, 1000 + len);
    const AudioBuffer y = istft(stft(x, StftConfig::hann(256, 64, true)));
    REQUIRE(y.size() == x.size());
    CHECK(testutil::max_abs_diff(x.samples, y.samples) < 1e-10);
  }
}

TEST_CASE("istft of an all-zero spectrogram is silence") {
  const AudioBuffer x = testutil::white_noise(4096, 24000, 7);
  Spectrogram spec = stft(x, default_band_analysis());
  for (auto& v : spec.data) v = 0.0;
  const AudioBuffer y = istft(spec);
  REQUIRE(y.size() == x.size());
  for (double v : y.samples) CHECK(v == 0.0);
}

TEST_CASE("istft is linear") {
  const AudioBuffer a = testutil::white_noise(4096, 24000, 21);
  const AudioBuffer b = testutil::white_noise(4096, 24000, 22);
  const StftConfig cfg = default_band_analysis();

  Spectrogram sa = stft(a, cfg);
  const Spectrogram sb = stft(b, cfg);
  Spectrogram sum = sa;
  for (size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += sb.data[i];

  const AudioBuffer ya = istft(sa);
  const AudioBuffer yb = istft(sb);
  const AudioBuffer ysum = istft(sum);
  for (size_t i = 0; i < ysum.size(); ++i) {
    CHECK(std::abs(ysum.samples[i] - (ya.samples[i] + yb.samples[i])) < 1e-12);
  }
}

TEST_CASE("stft is linear in its input") {
  const AudioBuffer a = testutil::white_noise(4096, 24000, 31);
  const AudioBuffer b = testutil::white_noise(4096, 24000, 32);
  AudioBuffer mix;
  mix.sample_rate = 24000;
  mix.samples.resize(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    mix.samples[i] = 2.0 * a.samples[i] - 0.5 * b.samples[i];
  }

  const StftConfig cfg = default_band_analysis();
  const Spectrogram sa = stft(a, cfg), sb = stft(b, cfg), sm = stft(mix, cfg);
  for (size_t i = 0; i < sm.data.size(); ++i) {
    CHECK(std::abs(sm.data[i] - (2.0 * sa.data[i] - 0.5 * sb.data[i])) < 1e-12);
  }
}

TEST_CASE("istft flags zero overlap inside the output region") {
  AudioBuffer x;
  x.sample_rate = 24000;
  x.samples.assign(16, 0.5);
  // Periodic Hann with hop = N: w[0] = 0 kills every hop-th sample.
  const Spectrogram spec = stft(x, StftConfig::hann(4, 4, false));
  CHECK_THROWS_AS(istft(spec), NumericError);
}

TEST_CASE("istft with no frames cannot reconstruct a non-empty signal") {
  Spectrogram spec;
  spec.config = default_band_analysis();
  spec.num_frames = 0;
  spec.num_bins = spec.config.fft_size / 2 + 1;
  spec.sample_rate = 24000;
  spec.original_length = 1000;
  CHECK_THROWS_AS(istft(spec), NumericError);

  spec.original_length = 0;  // nothing to reconstruct: empty output
  CHECK(istft(spec).empty());
}

TEST_CASE("check_cola separates good and bad hops") {
  CHECK(check_cola(StftConfig::hann(1024, 256, true)).max_deviation < 1e-12);
  CHECK(check_cola(StftConfig::hann(1024, 700, true)).max_deviation > 0.01);
  CHECK(check_cola(rect_config(512, 512)).max_deviation == 0.0);
}

TEST_CASE("StftConfig validation") {
  CHECK_THROWS_AS(StftConfig::hann(1000, 256, true).validate(), ArgumentError);

  StftConfig bad_hop = StftConfig::hann(256, 0, true);
  CHECK_THROWS_AS(bad_hop.validate(), ArgumentError);

  StftConfig big_hop = StftConfig::hann(256, 512, true);
  CHECK_THROWS_AS(big_hop.validate(), ArgumentError);

  StftConfig wrong_window = StftConfig::hann(256, 64, true);
  wrong_window.window.resize(128);
  CHECK_THROWS_AS(wrong_window.validate(), ArgumentError);

  StftConfig out_of_range = StftConfig::hann(256, 64, true);
  out_of_range.window[3] = 1.5;
  CHECK_THROWS_AS(out_of_range.validate(), ArgumentError);
}
