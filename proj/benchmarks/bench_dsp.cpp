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

#include <benchmark/benchmark.h>

#include "bandcodec/dsp.hpp"
#include "bandcodec/rng.hpp"

namespace {

bandcodec::AudioBuffer noise_buffer(size_t len) {
  bandcodec::AudioBuffer x;
  x.sample_rate = 24000;
  x.samples.resize(len);
  bandcodec::Rng rng(1);
  for (double& v : x.samples) v = rng.uniform(-0.5, 0.5);
  return x;
}

void BM_StftOneSecond(benchmark::State& state) {
  const auto x = noise_buffer(24000);
  const auto cfg = bandcodec::StftConfig::hann(
      static_cast<size_t>(state.range(0)), static_cast<size_t>(state.range(0)) / 4,
      true);
  for (auto _ : state) {
    auto spec = bandcodec::stft(x, cfg);
    benchmark::DoNotOptimize(spec.data.data());
  }
}
BENCHMARK(BM_StftOneSecond)->Arg(256)->Arg(1024)->Arg(2048);

void BM_StftIstftRoundTrip(benchmark::State& state) {
  const auto x = noise_buffer(24000);
  const auto cfg = bandcodec::StftConfig::hann(1024, 256, true);
  for (auto _ : state) {
    auto y = bandcodec::istft(bandcodec::stft(x, cfg));
    benchmark::DoNotOptimize(y.samples.data());
  }
}
BENCHMARK(BM_StftIstftRoundTrip);

}  // namespace
