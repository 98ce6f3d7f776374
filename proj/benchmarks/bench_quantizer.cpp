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

#include "bandcodec/quantizer.hpp"
#include "bandcodec/rng.hpp"

namespace {

// Full-scan nearest-code lookup from K=1024 up to the 2^17 codebook size.
void BM_NearestCode(benchmark::State& state) {
  const auto k = static_cast<Eigen::Index>(state.range(0));
  const Eigen::Index d = 64;
  bandcodec::Rng rng(3);
  Eigen::MatrixXd entries(k, d);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) entries(i, j) = rng.gaussian();
  }
  Eigen::VectorXd z(d);
  for (Eigen::Index j = 0; j < d; ++j) z(j) = rng.gaussian();

  for (auto _ : state) {
    benchmark::DoNotOptimize(bandcodec::nearest_code(z, entries));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NearestCode)->RangeMultiplier(4)->Range(1024, 131072)->Complexity();

void BM_KmeansInit(benchmark::State& state) {
  bandcodec::Rng rng(4);
  Eigen::MatrixXd data(2048, 32);
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) data(i, j) = rng.gaussian();
  }
  for (auto _ : state) {
    auto cb = bandcodec::kmeans_init(data, static_cast<size_t>(state.range(0)), 5, 5);
    benchmark::DoNotOptimize(cb.entries.data());
  }
}
BENCHMARK(BM_KmeansInit)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
