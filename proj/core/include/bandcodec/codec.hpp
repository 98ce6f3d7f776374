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

#ifndef BANDCODEC_CODEC_HPP
#define BANDCODEC_CODEC_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bandcodec/bandsplit.hpp"
#include "bandcodec/quantizer.hpp"
#include "bandcodec/tokens.hpp"

namespace bandcodec {

/// Toy per-band codec configuration. The defaults give 24000/320 = 75
/// tokens per second per band.
struct CodecConfig {
  int sample_rate = 24000;
  size_t frame_len = 320;
  size_t latent_dim = 64;
  BandConfig band_config;
  std::vector<int> per_band_bits;  // log2 of codebook size, 1..17 per band
  uint64_t seed = 0;
  double learn_rate = 0.02;
  size_t epochs = 100;
  double commit_weight = 1.0;  // beta, weight of the commitment term
  double lambda = 0.25;        // encoder-side commitment balance
  bool freeze_codebook_base = false;

  // Analysis config used for band splitting (periodic Hann, centered).
  size_t split_fft_size = 1024;
  size_t split_hop = 256;

  void validate() const;
  StftConfig split_config() const;
  /// Token frames emitted per second: sample_rate / frame_len.
  double token_rate() const {
    return static_cast<double>(sample_rate) / static_cast<double>(frame_len);
  }
};

/// Per band: one linear analysis map (frame_len x D), one linear synthesis
/// map (D x frame_len), and one SimVQ codebook. No parameters are shared
/// across bands.
struct BandCodecModel {
  struct Band {
    Eigen::MatrixXd analysis;
    Eigen::MatrixXd synthesis;
    SimVQCodebook codebook;
  };
  CodecConfig config;
  std::vector<Band> bands;
};

/// Seeded random init: Gaussian analysis/synthesis maps, Gaussian codebook
/// entries, W = I + noise. train() replaces the codebooks with a k-means
/// fit of the first-epoch latents.
BandCodecModel init_model(const CodecConfig& cfg);

struct TrainLog {
  std::vector<double> total_loss;
  std::vector<double> recon_loss;
  std::vector<double> commit_loss;
  std::vector<size_t> codes_used;  // distinct codes hit, summed over bands

  size_t epochs() const { return total_loss.size(); }
};

struct TrainResult {
  BandCodecModel model;
  TrainLog log;
};

/// Full-batch gradient descent on
///   L = sum_b mean_f [ ||xhat_f - x_f||^2 + beta * commit(z_f, qw_f) ]
/// with straight-through routing: the reconstruction gradient passes
/// through quantization to the encoder unchanged; the codebook-side
/// commitment term updates codebook and W only; the lambda term updates
/// the encoder only. Deterministic given (dataset, seed, epochs).
TrainResult train(const std::vector<AudioBuffer>& dataset,
                  const CodecConfig& cfg);

/// Band split, frame, project, nearest-code per frame. Tail frames are
/// zero-padded; every band shares the frame count ceil(len / frame_len).
TokenStream encode(const AudioBuffer& x, const BandCodecModel& model);

/// Effective entry -> synthesis frame per token, concatenated per band,
/// bands summed, trimmed to the stream's original length.
AudioBuffer decode(const TokenStream& t, const BandCodecModel& model);

struct GradCheckReport {
  double max_rel_err = 0.0;
  size_t checks = 0;
};

/// Central finite differences against the analytic gradients of every
/// parameter block (analysis, synthesis, W, codebook) on their active loss
/// terms, holding index assignments fixed. A probe whose index assignment
/// flips under +/-eps is retried with a smaller step.
GradCheckReport gradient_check(const BandCodecModel& model,
                               const AudioBuffer& x, double eps);

/// Exact bits per second: sum of per-band bits times the token rate.
int64_t bitrate(const CodecConfig& cfg);

/// "2550 bps (2.55 kbps)" -- kbps rounded to two decimals.
std::string format_bitrate(int64_t bps);

// --- "BSCM" model file ----------------------------------------------------
// magic "BSCM", version u16, config fields, then per band: analysis and
// synthesis matrices as row-major float32 and the codebook as an embedded
// BSCB blob. Little-endian throughout.

void save_model(const BandCodecModel& model, const std::filesystem::path& path);
BandCodecModel load_model(const std::filesystem::path& path);

}  // namespace bandcodec

#endif  // BANDCODEC_CODEC_HPP
