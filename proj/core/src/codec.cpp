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

#include "bandcodec/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "bandcodec/errors.hpp"
#include "bandcodec/parallel.hpp"
#include "bandcodec/rng.hpp"
#include "binio.hpp"

namespace bandcodec {

namespace {

constexpr uint16_t kModelVersion = 1;
constexpr size_t kKmeansIters = 10;

size_t codebook_size_for_bits(int bits) { return size_t{1} << bits; }

// Frames of one band waveform as matrix rows, zero-padded tail.
Eigen::MatrixXd frame_signal(const std::vector<double>& samples,
                             size_t frame_len) {
  const size_t frames = (samples.size() + frame_len - 1) / frame_len;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(frames),
                                              static_cast<Eigen::Index>(frame_len));
  for (size_t f = 0; f < frames; ++f) {
    const size_t begin = f * frame_len;
    const size_t end = std::min(begin + frame_len, samples.size());
    for (size_t i = begin; i < end; ++i) {
      out(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i - begin)) =
          samples[i];
    }
  }
  return out;
}

// Forward pass of one band over pre-framed input rows.
struct BandForward {
  Eigen::MatrixXd latents;    // F x D
  Eigen::MatrixXd quantized;  // F x D, rows of the effective entries
  Eigen::MatrixXd recon;      // F x frame_len
  std::vector<size_t> codes;  // F
  double recon_loss = 0.0;    // mean over frames of ||xhat - x||^2
  double commit_loss = 0.0;   // mean over frames of (1 + lambda)||z - qw||^2
};

BandForward band_forward(const Eigen::MatrixXd& frames,
                         const BandCodecModel::Band& band, double lambda) {
  BandForward fwd;
  const Eigen::Index f_count = frames.rows();
  fwd.latents = frames * band.analysis;
  const Eigen::MatrixXd effective = effective_entries(band.codebook);

  fwd.codes.resize(static_cast<size_t>(f_count));
  fwd.quantized.resize(f_count, fwd.latents.cols());
  for (Eigen::Index f = 0; f < f_count; ++f) {
    const size_t j = nearest_code(fwd.latents.row(f).transpose(), effective);
    fwd.codes[static_cast<size_t>(f)] = j;
    fwd.quantized.row(f) = effective.row(static_cast<Eigen::Index>(j));
  }

  fwd.recon = fwd.quantized * band.synthesis;
  const double inv_f = 1.0 / static_cast<double>(f_count);
  fwd.recon_loss = (fwd.recon - frames).squaredNorm() * inv_f;
  fwd.commit_loss =
      (1.0 + lambda) * (fwd.latents - fwd.quantized).squaredNorm() * inv_f;
  return fwd;
}

struct BandGradients {
  Eigen::MatrixXd analysis;   // dL/dE
  Eigen::MatrixXd synthesis;  // dL/dG
  Eigen::MatrixXd transform;  // dL/dW
  Eigen::MatrixXd entries;    // dL/dC
};

// Hand-derived gradients of
//   L_b = mean_f [ ||xhat - x||^2 + beta (||sg z - qw||^2 + lambda ||z - sg qw||^2) ]
// Straight-through: the reconstruction gradient reaches the encoder through
// z unchanged and never reaches qw. The codebook-side term moves C and W
// only; the lambda term moves the encoder only.
BandGradients band_gradients(const Eigen::MatrixXd& frames,
                             const BandCodecModel::Band& band,
                             const BandForward& fwd, double beta,
                             double lambda) {
  const double inv_f = 1.0 / static_cast<double>(frames.rows());

  const Eigen::MatrixXd d_recon = 2.0 * inv_f * (fwd.recon - frames);
  const Eigen::MatrixXd d_latent_st = d_recon * band.synthesis.transpose();
  const Eigen::MatrixXd d_latent_commit =
      (2.0 * beta * lambda * inv_f) * (fwd.latents - fwd.quantized);
  const Eigen::MatrixXd d_quant =
      (2.0 * beta * inv_f) * (fwd.quantized - fwd.latents);

  BandGradients g;
  g.synthesis = fwd.quantized.transpose() * d_recon;
  g.analysis = frames.transpose() * (d_latent_st + d_latent_commit);

  // qw_f = c_{j_f} W: gather the selected base rows, scatter back per code.
  Eigen::MatrixXd selected(frames.rows(), band.codebook.base.entries.cols());
  for (Eigen::Index f = 0; f < frames.rows(); ++f) {
    selected.row(f) = band.codebook.base.entries.row(
        static_cast<Eigen::Index>(fwd.codes[static_cast<size_t>(f)]));
  }
  g.transform = selected.transpose() * d_quant;

  const Eigen::MatrixXd d_selected = d_quant * band.codebook.transform.transpose();
  g.entries = Eigen::MatrixXd::Zero(band.codebook.base.entries.rows(),
                                    band.codebook.base.entries.cols());
  for (Eigen::Index f = 0; f < frames.rows(); ++f) {
    g.entries.row(static_cast<Eigen::Index>(fwd.codes[static_cast<size_t>(f)])) +=
        d_selected.row(f);
  }
  return g;
}

// Per-band frame matrices for a whole dataset, stacked item by item.
std::vector<Eigen::MatrixXd> collect_band_frames(
    const std::vector<AudioBuffer>& dataset, const CodecConfig& cfg) {
  const size_t num_bands = cfg.band_config.num_bands();
  const StftConfig split_cfg = cfg.split_config();

  std::vector<Eigen::MatrixXd> per_item_frames(dataset.size() * num_bands);
  parallel_for(dataset.size(), [&](size_t i) {
    const BandSet bands = split_bands(dataset[i], cfg.band_config, split_cfg);
    for (size_t b = 0; b < num_bands; ++b) {
      per_item_frames[i * num_bands + b] =
          frame_signal(bands.bands[b].samples, cfg.frame_len);
    }
  });

  std::vector<Eigen::MatrixXd> stacked(num_bands);
  for (size_t b = 0; b < num_bands; ++b) {
    Eigen::Index total = 0;
    for (size_t i = 0; i < dataset.size(); ++i) {
      total += per_item_frames[i * num_bands + b].rows();
    }
    stacked[b].resize(total, static_cast<Eigen::Index>(cfg.frame_len));
    Eigen::Index row = 0;
    for (size_t i = 0; i < dataset.size(); ++i) {
      const Eigen::MatrixXd& part = per_item_frames[i * num_bands + b];
      stacked[b].middleRows(row, part.rows()) = part;
      row += part.rows();
    }
  }
  return stacked;
}

}  // namespace

void CodecConfig::validate() const {
  if (sample_rate <= 0) throw ArgumentError("CodecConfig: bad sample rate");
  if (frame_len == 0) throw ArgumentError("CodecConfig: frame_len must be > 0");
  if (latent_dim == 0) throw ArgumentError("CodecConfig: latent_dim must be > 0");
  band_config.validate_for_rate(sample_rate);
  if (per_band_bits.size() != band_config.num_bands()) {
    throw ArgumentError("CodecConfig: need one bits entry per band");
  }
  for (int bits : per_band_bits) {
    if (bits < 1 || bits > 17) {
      throw ArgumentError("CodecConfig: per-band bits must be in 1..17");
    }
  }
  if (learn_rate <= 0.0) throw ArgumentError("CodecConfig: learn_rate must be > 0");
  if (commit_weight < 0.0 || lambda < 0.0) {
    throw ArgumentError("CodecConfig: loss weights must be >= 0");
  }
  split_config().validate();
}

StftConfig CodecConfig::split_config() const {
  return StftConfig::hann(split_fft_size, split_hop, true);
}

BandCodecModel init_model(const CodecConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);

  BandCodecModel model;
  model.config = cfg;
  model.bands.resize(cfg.band_config.num_bands());

  const double analysis_scale = 1.0 / std::sqrt(static_cast<double>(cfg.frame_len));
  const double synthesis_scale = 1.0 / std::sqrt(static_cast<double>(cfg.latent_dim));

  for (size_t b = 0; b < model.bands.size(); ++b) {
    BandCodecModel::Band& band = model.bands[b];
    band.analysis.resize(static_cast<Eigen::Index>(cfg.frame_len),
                         static_cast<Eigen::Index>(cfg.latent_dim));
    for (Eigen::Index i = 0; i < band.analysis.rows(); ++i) {
      for (Eigen::Index j = 0; j < band.analysis.cols(); ++j) {
        band.analysis(i, j) = analysis_scale * rng.gaussian();
      }
    }
    band.synthesis.resize(static_cast<Eigen::Index>(cfg.latent_dim),
                          static_cast<Eigen::Index>(cfg.frame_len));
    for (Eigen::Index i = 0; i < band.synthesis.rows(); ++i) {
      for (Eigen::Index j = 0; j < band.synthesis.cols(); ++j) {
        band.synthesis(i, j) = synthesis_scale * rng.gaussian();
      }
    }

    Codebook base;
    base.entries.resize(
        static_cast<Eigen::Index>(codebook_size_for_bits(cfg.per_band_bits[b])),
        static_cast<Eigen::Index>(cfg.latent_dim));
    for (Eigen::Index i = 0; i < base.entries.rows(); ++i) {
      for (Eigen::Index j = 0; j < base.entries.cols(); ++j) {
        base.entries(i, j) = 0.1 * rng.gaussian();
      }
    }
    band.codebook = make_simvq(std::move(base), rng.next_u64(), cfg.lambda);
  }
  return model;
}

TokenStream encode(const AudioBuffer& x, const BandCodecModel& model) {
  const CodecConfig& cfg = model.config;
  if (x.empty()) throw ArgumentError("encode: empty audio");
  if (x.sample_rate != cfg.sample_rate) {
    throw ArgumentError("encode: input rate " + std::to_string(x.sample_rate) +
                        " does not match model rate " +
                        std::to_string(cfg.sample_rate));
  }

  const BandSet bands = split_bands(x, cfg.band_config, cfg.split_config());
  const size_t frames = (x.size() + cfg.frame_len - 1) / cfg.frame_len;

  TokenStream t;
  t.frame_count = static_cast<uint32_t>(frames);
  t.sample_rate = static_cast<uint32_t>(cfg.sample_rate);
  t.original_length = x.size();
  t.bits_per_band.resize(model.bands.size());
  t.indices.resize(model.bands.size());

  parallel_for(model.bands.size(), [&](size_t b) {
    t.bits_per_band[b] = static_cast<uint8_t>(cfg.per_band_bits[b]);
    const Eigen::MatrixXd framed =
        frame_signal(bands.bands[b].samples, cfg.frame_len);
    const Eigen::MatrixXd latents = framed * model.bands[b].analysis;
    const Eigen::MatrixXd effective = effective_entries(model.bands[b].codebook);
    t.indices[b].resize(frames);
    for (size_t f = 0; f < frames; ++f) {
      t.indices[b][f] = static_cast<uint32_t>(nearest_code(
          latents.row(static_cast<Eigen::Index>(f)).transpose(), effective));
    }
  });
  return t;
}

AudioBuffer decode(const TokenStream& t, const BandCodecModel& model) {
  t.validate();
  const CodecConfig& cfg = model.config;
  if (t.band_count() != model.bands.size()) {
    throw ArgumentError("decode: stream has " + std::to_string(t.band_count()) +
                        " bands, model expects " +
                        std::to_string(model.bands.size()));
  }
  if (t.sample_rate != static_cast<uint32_t>(cfg.sample_rate)) {
    throw ArgumentError("decode: stream rate does not match model rate");
  }
  const size_t padded_len = static_cast<size_t>(t.frame_count) * cfg.frame_len;
  if (t.original_length > padded_len) {
    throw CorruptError("decode: declared length exceeds frame coverage");
  }

  std::vector<std::vector<double>> band_out(model.bands.size());
  parallel_for(model.bands.size(), [&](size_t b) {
    const Eigen::MatrixXd effective = effective_entries(model.bands[b].codebook);
    const size_t k = static_cast<size_t>(effective.rows());
    std::vector<double>& out = band_out[b];
    out.resize(padded_len);
    for (size_t f = 0; f < t.frame_count; ++f) {
      const uint32_t index = t.indices[b][f];
      if (index >= k) {
        throw CorruptError("decode: token " + std::to_string(index) +
                           " out of range for band " + std::to_string(b + 1));
      }
      const Eigen::RowVectorXd frame =
          effective.row(static_cast<Eigen::Index>(index)) *
          model.bands[b].synthesis;
      for (size_t i = 0; i < cfg.frame_len; ++i) {
        out[f * cfg.frame_len + i] = frame(static_cast<Eigen::Index>(i));
      }
    }
  });

  AudioBuffer out;
  out.sample_rate = cfg.sample_rate;
  out.samples.assign(t.original_length, 0.0);
  for (const std::vector<double>& band : band_out) {
    for (size_t i = 0; i < t.original_length; ++i) out.samples[i] += band[i];
  }
  return out;
}

TrainResult train(const std::vector<AudioBuffer>& dataset,
                  const CodecConfig& cfg) {
  cfg.validate();
  if (dataset.empty()) throw ArgumentError("train: empty dataset");
  for (const AudioBuffer& item : dataset) {
    if (item.empty()) throw ArgumentError("train: empty dataset item");
    if (item.sample_rate != cfg.sample_rate) {
      throw ArgumentError("train: dataset item rate does not match config");
    }
  }

  TrainResult result;
  result.model = init_model(cfg);
  BandCodecModel& model = result.model;
  const size_t num_bands = model.bands.size();

  const std::vector<Eigen::MatrixXd> frames = collect_band_frames(dataset, cfg);

  // Replace the random codebooks with a k-means fit of the initial latents.
  for (size_t b = 0; b < num_bands; ++b) {
    const size_t k = codebook_size_for_bits(cfg.per_band_bits[b]);
    if (static_cast<size_t>(frames[b].rows()) < k) {
      throw ArgumentError(
          "train: dataset has " + std::to_string(frames[b].rows()) +
          " frames but band " + std::to_string(b + 1) + " needs " +
          std::to_string(k) + " for k-means codebook init");
    }
    const Eigen::MatrixXd latents = frames[b] * model.bands[b].analysis;
    model.bands[b].codebook.base =
        kmeans_init(latents, k, cfg.seed ^ (0x9E3779B97F4A7C15ULL * (b + 1)),
                    kKmeansIters);
  }

  struct EpochBand {
    double recon = 0.0;
    double commit = 0.0;
    size_t used = 0;
  };

  std::vector<EpochBand> stats(num_bands);
  for (size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    parallel_for(num_bands, [&](size_t b) {
      BandCodecModel::Band& band = model.bands[b];
      const BandForward fwd = band_forward(frames[b], band, cfg.lambda);
      const BandGradients grad =
          band_gradients(frames[b], band, fwd, cfg.commit_weight, cfg.lambda);

      band.analysis -= cfg.learn_rate * grad.analysis;
      band.synthesis -= cfg.learn_rate * grad.synthesis;
      band.codebook.transform -= cfg.learn_rate * grad.transform;
      if (!cfg.freeze_codebook_base) {
        band.codebook.base.entries -= cfg.learn_rate * grad.entries;
      }

      stats[b].recon = fwd.recon_loss;
      stats[b].commit = fwd.commit_loss;
      stats[b].used = std::set<size_t>(fwd.codes.begin(), fwd.codes.end()).size();
    });

    double recon = 0.0, commit = 0.0;
    size_t used = 0;
    for (const EpochBand& s : stats) {
      recon += s.recon;
      commit += s.commit;
      used += s.used;
    }
    const double total = recon + cfg.commit_weight * commit;
    if (!std::isfinite(total)) {
      throw TrainError("train: loss diverged at epoch " + std::to_string(epoch));
    }
    result.log.total_loss.push_back(total);
    result.log.recon_loss.push_back(recon);
    result.log.commit_loss.push_back(commit);
    result.log.codes_used.push_back(used);
  }
  return result;
}

GradCheckReport gradient_check(const BandCodecModel& model,
                               const AudioBuffer& x, double eps) {
  if (eps < 1e-7 || eps > 1e-3) {
    throw ArgumentError("gradient_check: eps must be in [1e-7, 1e-3]");
  }
  const CodecConfig& cfg = model.config;
  if (x.empty()) throw ArgumentError("gradient_check: empty audio");
  if (x.sample_rate != cfg.sample_rate) {
    throw ArgumentError("gradient_check: rate mismatch");
  }

  const std::vector<Eigen::MatrixXd> frames = collect_band_frames({x}, cfg);
  const double beta = cfg.commit_weight;
  const double lambda = cfg.lambda;

  GradCheckReport report;
  Rng rng(cfg.seed ^ 0xC2B2AE3D27D4EB4FULL);

  for (size_t b = 0; b < model.bands.size(); ++b) {
    const BandCodecModel::Band& band = model.bands[b];
    const Eigen::MatrixXd& x_b = frames[b];
    const double inv_f = 1.0 / static_cast<double>(x_b.rows());

    const BandForward base = band_forward(x_b, band, lambda);
    const BandGradients grad = band_gradients(x_b, band, base, beta, lambda);
    const Eigen::MatrixXd offset = base.quantized - base.latents;  // sg bracket

    // Surrogate losses with every stop-gradient frozen at the base point
    // and index assignments fixed; their true derivatives equal the
    // analytic training gradients.
    const auto loss_analysis = [&](const Eigen::MatrixXd& e) {
      const Eigen::MatrixXd z = x_b * e;
      const double rec = ((z + offset) * band.synthesis - x_b).squaredNorm();
      const double commit = beta * lambda * (z - base.quantized).squaredNorm();
      return (rec + commit) * inv_f;
    };
    const auto loss_synthesis = [&](const Eigen::MatrixXd& g) {
      return (base.quantized * g - x_b).squaredNorm() * inv_f;
    };
    const auto selected_rows = [&]() {
      Eigen::MatrixXd sel(x_b.rows(), band.codebook.base.entries.cols());
      for (Eigen::Index f = 0; f < x_b.rows(); ++f) {
        sel.row(f) = band.codebook.base.entries.row(
            static_cast<Eigen::Index>(base.codes[static_cast<size_t>(f)]));
      }
      return sel;
    }();
    const auto loss_transform = [&](const Eigen::MatrixXd& w) {
      return beta * (base.latents - selected_rows * w).squaredNorm() * inv_f;
    };
    const auto loss_entries = [&](const Eigen::MatrixXd& c) {
      Eigen::MatrixXd sel(x_b.rows(), c.cols());
      for (Eigen::Index f = 0; f < x_b.rows(); ++f) {
        sel.row(f) =
            c.row(static_cast<Eigen::Index>(base.codes[static_cast<size_t>(f)]));
      }
      return beta * (base.latents - sel * band.codebook.transform).squaredNorm() *
             inv_f;
    };

    // Perturbing the encoder or the codebook can flip a nearest-code
    // assignment; such probes are retried with a smaller step.
    const auto assignments_stable = [&](const Eigen::MatrixXd& latents,
                                        const Eigen::MatrixXd& effective) {
      for (Eigen::Index f = 0; f < latents.rows(); ++f) {
        if (nearest_code(latents.row(f).transpose(), effective) !=
            base.codes[static_cast<size_t>(f)]) {
          return false;
        }
      }
      return true;
    };

    const auto check_block = [&](const Eigen::MatrixXd& theta,
                                 const Eigen::MatrixXd& analytic,
                                 const std::function<double(const Eigen::MatrixXd&)>& loss,
                                 bool affects_assignments, char which) {
      // The surrogates are quadratic, so central differences carry only
      // rounding noise; the floor keeps near-zero components from turning
      // that noise into spurious relative error.
      const double floor = 1e-3 * (1.0 + analytic.cwiseAbs().maxCoeff());
      const size_t total = static_cast<size_t>(theta.size());
      const size_t probes = std::min<size_t>(total, 64);

      std::vector<size_t> picks(probes);
      if (probes == total) {
        for (size_t i = 0; i < probes; ++i) picks[i] = i;
      } else {
        for (size_t i = 0; i < probes; ++i) picks[i] = rng.uniform_index(total);
      }

      for (size_t pick : picks) {
        const Eigen::Index r = static_cast<Eigen::Index>(pick) % theta.rows();
        const Eigen::Index c = static_cast<Eigen::Index>(pick) / theta.rows();

        double step = eps;
        for (int attempt = 0; attempt < 4; ++attempt) {
          Eigen::MatrixXd plus = theta;
          Eigen::MatrixXd minus = theta;
          plus(r, c) += step;
          minus(r, c) -= step;

          if (affects_assignments) {
            bool stable = true;
            for (const Eigen::MatrixXd* variant : {&plus, &minus}) {
              Eigen::MatrixXd latents = base.latents;
              Eigen::MatrixXd effective = effective_entries(band.codebook);
              if (which == 'E') latents = x_b * *variant;
              if (which == 'W') effective = band.codebook.base.entries * *variant;
              if (which == 'C') effective = *variant * band.codebook.transform;
              if (!assignments_stable(latents, effective)) {
                stable = false;
                break;
              }
            }
            if (!stable && step > 1e-7) {
              step *= 0.25;
              continue;
            }
            if (!stable) break;  // reject this probe entirely
          }

          const double numeric = (loss(plus) - loss(minus)) / (2.0 * step);
          const double analytic_v = analytic(r, c);
          const double denom =
              std::max({std::abs(analytic_v), std::abs(numeric), floor});
          report.max_rel_err = std::max(
              report.max_rel_err, std::abs(analytic_v - numeric) / denom);
          ++report.checks;
          break;
        }
      }
    };

    check_block(band.analysis, grad.analysis, loss_analysis, true, 'E');
    check_block(band.synthesis, grad.synthesis, loss_synthesis, false, 'G');
    check_block(band.codebook.transform, grad.transform, loss_transform, true, 'W');
    check_block(band.codebook.base.entries, grad.entries, loss_entries, true, 'C');
  }
  return report;
}

int64_t bitrate(const CodecConfig& cfg) {
  cfg.validate();
  int64_t total_bits = 0;
  for (int bits : cfg.per_band_bits) total_bits += bits;
  if (cfg.sample_rate % cfg.frame_len == 0) {
    return total_bits * (cfg.sample_rate / static_cast<int64_t>(cfg.frame_len));
  }
  return static_cast<int64_t>(std::llround(
      static_cast<double>(total_bits) * cfg.token_rate()));
}

std::string format_bitrate(int64_t bps) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%lld bps (%.2f kbps)",
                static_cast<long long>(bps), static_cast<double>(bps) / 1000.0);
  return buf;
}

namespace {

void write_matrix_f32(binio::Writer& w, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      w.f32(static_cast<float>(m(r, c)));
    }
  }
}

Eigen::MatrixXd read_matrix_f32(binio::Reader& r, Eigen::Index rows,
                                Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = static_cast<double>(r.f32());
    }
  }
  return m;
}

}  // namespace

void save_model(const BandCodecModel& model, const std::filesystem::path& path) {
  const CodecConfig& cfg = model.config;
  cfg.validate();
  if (model.bands.size() != cfg.band_config.num_bands()) {
    throw ArgumentError("save_model: band count mismatch");
  }

  binio::Writer w;
  w.magic("BSCM");
  w.u16(kModelVersion);
  w.u32(static_cast<uint32_t>(cfg.sample_rate));
  w.u32(static_cast<uint32_t>(cfg.frame_len));
  w.u32(static_cast<uint32_t>(cfg.latent_dim));
  w.u8(static_cast<uint8_t>(cfg.band_config.num_bands()));
  for (double f : cfg.band_config.boundaries_hz) w.f64(f);
  for (int bits : cfg.per_band_bits) w.u8(static_cast<uint8_t>(bits));
  w.u64(cfg.seed);
  w.f64(cfg.learn_rate);
  w.u32(static_cast<uint32_t>(cfg.epochs));
  w.f64(cfg.commit_weight);
  w.f64(cfg.lambda);
  w.u8(cfg.freeze_codebook_base ? 1 : 0);
  w.u32(static_cast<uint32_t>(cfg.split_fft_size));
  w.u32(static_cast<uint32_t>(cfg.split_hop));

  for (const BandCodecModel::Band& band : model.bands) {
    write_matrix_f32(w, band.analysis);
    write_matrix_f32(w, band.synthesis);
    const std::vector<uint8_t> blob = serialize_codebook(band.codebook);
    w.u64(blob.size());
    w.bytes(blob.data(), blob.size());
  }
  binio::write_file(path, w.buffer());
}

BandCodecModel load_model(const std::filesystem::path& path) {
  const std::vector<uint8_t> bytes = binio::read_file(path);
  binio::Reader r(bytes);
  r.expect_magic("BSCM", "codec model");
  const uint16_t version = r.u16();
  if (version != kModelVersion) {
    throw FormatError("unsupported model version " + std::to_string(version));
  }

  BandCodecModel model;
  CodecConfig& cfg = model.config;
  cfg.sample_rate = static_cast<int>(r.u32());
  cfg.frame_len = r.u32();
  cfg.latent_dim = r.u32();
  const uint8_t bands = r.u8();
  cfg.band_config.boundaries_hz.resize(bands + size_t{1});
  for (double& f : cfg.band_config.boundaries_hz) f = r.f64();
  cfg.per_band_bits.resize(bands);
  for (int& bits : cfg.per_band_bits) bits = r.u8();
  cfg.seed = r.u64();
  cfg.learn_rate = r.f64();
  cfg.epochs = r.u32();
  cfg.commit_weight = r.f64();
  cfg.lambda = r.f64();
  cfg.freeze_codebook_base = r.u8() != 0;
  cfg.split_fft_size = r.u32();
  cfg.split_hop = r.u32();
  cfg.validate();

  model.bands.resize(bands);
  for (BandCodecModel::Band& band : model.bands) {
    band.analysis = read_matrix_f32(r, static_cast<Eigen::Index>(cfg.frame_len),
                                    static_cast<Eigen::Index>(cfg.latent_dim));
    band.synthesis = read_matrix_f32(r, static_cast<Eigen::Index>(cfg.latent_dim),
                                     static_cast<Eigen::Index>(cfg.frame_len));
    const uint64_t blob_size = r.u64();
    const uint8_t* blob = r.raw(blob_size);
    LoadedCodebook loaded =
        deserialize_codebook(std::vector<uint8_t>(blob, blob + blob_size));
    if (!loaded.simvq) throw CorruptError("model codebook missing transform");
    band.codebook.base = std::move(loaded.base);
    band.codebook.transform = std::move(loaded.transform);
    band.codebook.lambda = cfg.lambda;
  }
  return model;
}

}  // namespace bandcodec
