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

#include "bandcodec/bandsplit.hpp"
#include "bandcodec/rng.hpp"

namespace {

bandcodec::AudioBuffer noise_buffer(size_t len) {
  bandcodec::AudioBuffer x;
  x.sample_rate = 24000;
  x.samples.resize(len);
  bandcodec::Rng rng(2);
  for (double& v : x.samples) v = rng.uniform(-0.5, 0.5);
  return x;
}

void BM_SplitMerge(benchmark::State& state) {
  const auto x = noise_buffer(24000);
  const char* presets[] = {"bands2", "bands3", "bands5"};
  const auto bc = bandcodec::preset_config(presets[state.range(0)]);
  const auto cfg = bandcodec::default_band_analysis();
  for (auto _ : state) {
    auto y = bandcodec::merge_bands(bandcodec::split_bands(x, bc, cfg));
    benchmark::DoNotOptimize(y.samples.data());
  }
}
BENCHMARK(BM_SplitMerge)->Arg(0)->Arg(1)->Arg(2);

}  // namespace
