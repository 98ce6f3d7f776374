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

#include "bandcodec/metrics.hpp"
#include "bandcodec/rng.hpp"

namespace {

bandcodec::AudioBuffer noise_buffer(size_t len, uint64_t seed) {
  bandcodec::AudioBuffer x;
  x.sample_rate = 24000;
  x.samples.resize(len);
  bandcodec::Rng rng(seed);
  for (double& v : x.samples) v = rng.uniform(-0.5, 0.5);
  return x;
}

void BM_MelDistanceOneSecond(benchmark::State& state) {
  const auto x = noise_buffer(24000, 6);
  const auto y = noise_buffer(24000, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bandcodec::mel_distance(x, y));
  }
}
BENCHMARK(BM_MelDistanceOneSecond);

void BM_StftDistanceOneSecond(benchmark::State& state) {
  const auto x = noise_buffer(24000, 8);
  const auto y = noise_buffer(24000, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bandcodec::stft_distance(x, y));
  }
}
BENCHMARK(BM_StftDistanceOneSecond);

}  // namespace
