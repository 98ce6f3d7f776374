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

#ifndef BANDCODEC_QUANTIZER_HPP
#define BANDCODEC_QUANTIZER_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

namespace bandcodec {

/// K x D embedding table.
struct Codebook {
  Eigen::MatrixXd entries;

  size_t size() const { return static_cast<size_t>(entries.rows()); }
  size_t dim() const { return static_cast<size_t>(entries.cols()); }
};

/// Codebook with a learnable D x D transform applied to every entry before
/// matching and decoding, plus the commitment balance lambda.
struct SimVQCodebook {
  Codebook base;
  Eigen::MatrixXd transform;
  double lambda = 0.25;
};

/// Row j = base_j * W, the entries actually matched against.
Eigen::MatrixXd effective_entries(const SimVQCodebook& sq);

/// Argmin over rows of squared Euclidean distance; ties break to the
/// smallest index. Plain exhaustive scan, exact for any K.
size_t nearest_code(const Eigen::VectorXd& z, const Eigen::MatrixXd& effective);

struct QuantResult {
  size_t index = 0;
  Eigen::VectorXd quantized;  // always exactly a row of effective_entries
  double commit_loss = 0.0;
};

/// Straight-through quantization: the forward value is the matched
/// effective entry; commit_loss is the bidirectional commitment value.
QuantResult quantize_st(const Eigen::VectorXd& z, const SimVQCodebook& sq);

/// ||z - qw||^2 * (1 + lambda): the codebook-side term plus lambda times the
/// encoder-side term. The two terms share this value but route gradients
/// differently during training.
double commitment_loss(const Eigen::VectorXd& z, const Eigen::VectorXd& qw,
                       double lambda);

/// k-means++ seeding followed by Lloyd iterations. Empty clusters are
/// re-seeded to the point farthest from its assigned centroid.
/// Deterministic given the seed. Requires data rows >= k.
Codebook kmeans_init(const Eigen::MatrixXd& data, size_t k, uint64_t seed,
                     size_t iters);

/// Wraps a base codebook with W = I + sigma * N(0,1) noise (seeded), which
/// keeps the initial geometry while making the transform trainable.
SimVQCodebook make_simvq(Codebook base, uint64_t seed, double lambda = 0.25,
                         double noise_sigma = 1e-3);

// --- "BSCB" file format -----------------------------------------------
// magic "BSCB", version u16, K u32, D u32, simvq flag u8, row-major
// float32 entries, then W (float32 D x D) if simvq. Little-endian.
// K must be a power of two (token bit-packing), enforced on save.

struct LoadedCodebook {
  Codebook base;
  bool simvq = false;
  Eigen::MatrixXd transform;  // empty unless simvq
};

std::vector<uint8_t> serialize_codebook(const Codebook& cb);
std::vector<uint8_t> serialize_codebook(const SimVQCodebook& sq);
LoadedCodebook deserialize_codebook(const std::vector<uint8_t>& bytes);

void save_codebook(const Codebook& cb, const std::filesystem::path& path);
void save_codebook(const SimVQCodebook& sq, const std::filesystem::path& path);
LoadedCodebook load_codebook(const std::filesystem::path& path);

}  // namespace bandcodec

#endif  // BANDCODEC_QUANTIZER_HPP
