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

// bandcodec CLI: split, merge, train, encode, decode, metrics, analyze,
// energy-profile, bitrate. Exit codes: 0 success, 1 usage error, 2 data
// error. No subcommand leaves a partial output file behind on error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bandcodec/analysis.hpp"
#include "bandcodec/audio_io.hpp"
#include "bandcodec/codec.hpp"
#include "bandcodec/errors.hpp"
#include "bandcodec/metrics.hpp"
#include "bandcodec/parallel.hpp"
#include "bandcodec/tokens.hpp"

namespace fs = std::filesystem;
using namespace bandcodec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Writes through a temp file and renames on success, so failed runs never
// leave a partial output at the target path.
void atomic_output(const fs::path& path,
                   const std::function<void(const fs::path&)>& writer) {
  fs::path tmp = path;
  tmp += ".tmp";
  try {
    writer(tmp);
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

std::vector<int> parse_bits_list(const std::string& text) {
  std::vector<int> bits;
  std::string item;
  for (char c : text + ",") {
    if (c == ',') {
      if (!item.empty()) {
        bits.push_back(std::stoi(item));
        item.clear();
      }
    } else {
      item += c;
    }
  }
  if (bits.empty()) throw ArgumentError("empty --bits list");
  return bits;
}

std::vector<fs::path> list_wavs(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw ArgumentError(dir.string() + " is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ArgumentError("no .wav files in " + dir.string());
  return files;
}

WavEncoding encoding_from_name(const std::string& name) {
  if (name == "pcm16") return WavEncoding::kPcm16;
  if (name == "float32") return WavEncoding::kFloat32;
  throw ArgumentError("unknown encoding: " + name);
}

int cmd_split(const std::string& input, const std::string& preset,
              const std::string& out_dir, size_t fft_size, size_t hop) {
  const AudioBuffer x = read_wav(input);
  const BandConfig bc = preset_config(preset);
  const BandSet bands = split_bands(x, bc, StftConfig::hann(fft_size, hop, true));

  const fs::path dir = out_dir.empty() ? fs::path(input).parent_path()
                                       : fs::path(out_dir);
  if (!dir.empty()) fs::create_directories(dir);
  const std::string stem = fs::path(input).stem().string();

  for (size_t b = 0; b < bands.bands.size(); ++b) {
    const fs::path out = dir / (stem + ".band" + std::to_string(b + 1) + ".wav");
    atomic_output(out, [&](const fs::path& tmp) {
      write_wav(bands.bands[b], tmp, WavEncoding::kFloat32);
    });
    std::cout << "wrote " << out.string() << "\n";
  }
  return kExitOk;
}

int cmd_merge(const std::vector<std::string>& inputs, const std::string& output,
              const std::string& encoding) {
  BandSet bs;
  for (const std::string& path : inputs) bs.bands.push_back(read_wav(path));
  const AudioBuffer merged = merge_bands(bs);
  atomic_output(output, [&](const fs::path& tmp) {
    write_wav(merged, tmp, encoding_from_name(encoding));
  });
  std::cout << "wrote " << output << " (" << merged.size() << " samples)\n";
  return kExitOk;
}

int cmd_train(const std::string& data_dir, const std::string& preset,
              const std::string& bits, size_t epochs, uint64_t seed,
              size_t frame_len, size_t latent_dim, double learn_rate,
              double commit_weight, double lambda, bool freeze,
              size_t fft_size, size_t hop, const std::string& output) {
  std::vector<AudioBuffer> dataset;
  for (const fs::path& path : list_wavs(data_dir)) {
    dataset.push_back(read_wav(path));
  }

  CodecConfig cfg;
  cfg.sample_rate = dataset.front().sample_rate;
  cfg.band_config = preset_config(preset);
  cfg.per_band_bits = parse_bits_list(bits);
  cfg.epochs = epochs;
  cfg.seed = seed;
  cfg.frame_len = frame_len;
  cfg.latent_dim = latent_dim;
  cfg.learn_rate = learn_rate;
  cfg.commit_weight = commit_weight;
  cfg.lambda = lambda;
  cfg.freeze_codebook_base = freeze;
  cfg.split_fft_size = fft_size;
  cfg.split_hop = hop;

  const TrainResult result = train(dataset, cfg);
  atomic_output(output, [&](const fs::path& tmp) {
    save_model(result.model, tmp);
  });

  std::cout << "trained on " << dataset.size() << " files ("
            << cfg.sample_rate << " Hz)\n";
  if (!result.log.total_loss.empty()) {
    std::cout << "loss: " << result.log.total_loss.front() << " -> "
              << result.log.total_loss.back() << " over "
              << result.log.epochs() << " epochs\n";
  }
  std::cout << "bitrate: " << format_bitrate(bitrate(cfg)) << "\n";
  std::cout << "wrote " << output << "\n";
  return kExitOk;
}

int cmd_encode(const std::string& input, const std::string& model_path,
               const std::string& output) {
  const AudioBuffer x = read_wav(input);
  const BandCodecModel model = load_model(model_path);
  const TokenStream tokens = encode(x, model);
  atomic_output(output, [&](const fs::path& tmp) { save_tokens(tokens, tmp); });
  std::cout << "wrote " << output << " (" << tokens.band_count() << " bands x "
            << tokens.frame_count << " frames)\n";
  return kExitOk;
}

int cmd_decode(const std::string& input, const std::string& model_path,
               const std::string& output, const std::string& encoding) {
  const TokenStream tokens = load_tokens(input);
  const BandCodecModel model = load_model(model_path);
  const AudioBuffer x = decode(tokens, model);
  atomic_output(output, [&](const fs::path& tmp) {
    write_wav(x, tmp, encoding_from_name(encoding));
  });
  std::cout << "wrote " << output << " (" << x.size() << " samples)\n";
  return kExitOk;
}

int cmd_metrics(const std::string& ref, const std::string& test) {
  const AudioBuffer a = read_wav(ref);
  const AudioBuffer b = read_wav(test);
  const DistanceReport report = distance_report(a, b);
  std::printf("mel_distance: %.6f\n", report.mel_distance);
  std::printf("stft_distance: %.6f\n", report.stft_distance);
  return kExitOk;
}

int cmd_analyze(const std::vector<std::string>& inputs) {
  std::vector<TokenStream> streams;
  for (const std::string& path : inputs) streams.push_back(load_tokens(path));

  const TokenStream& first = streams.front();
  for (const TokenStream& t : streams) {
    if (t.bits_per_band != first.bits_per_band) {
      throw ArgumentError("analyze: token files disagree on band layout");
    }
  }

  const size_t bands = first.band_count();
  for (uint8_t bits : first.bits_per_band) {
    // Dense per-code histograms; 2^20 counts is already 8 MB per band.
    if (bits > 20) {
      throw ArgumentError("analyze: bands wider than 20 bits are not supported");
    }
  }
  std::vector<std::vector<uint32_t>> layers(bands);
  uint64_t frames = 0;
  for (const TokenStream& t : streams) {
    frames += t.frame_count;
    for (size_t b = 0; b < bands; ++b) {
      layers[b].insert(layers[b].end(), t.indices[b].begin(), t.indices[b].end());
    }
  }

  std::printf("files: %zu\n", streams.size());
  std::printf("bands: %zu\n", bands);
  std::printf("frames: %llu\n", static_cast<unsigned long long>(frames));
  for (size_t b = 0; b < bands; ++b) {
    const size_t k = size_t{1} << first.bits_per_band[b];
    const double u = single_utilization(IndexHistogram::from_indices(layers[b], k));
    std::printf("layer_%zu_bits: %d\n", b + 1, first.bits_per_band[b]);
    std::printf("layer_%zu_utilization: %.6f\n", b + 1, u);
  }
  for (size_t b = 0; b + 1 < bands; ++b) {
    const size_t k_a = size_t{1} << first.bits_per_band[b];
    const size_t k_b = size_t{1} << first.bits_per_band[b + 1];
    std::vector<std::pair<uint32_t, uint32_t>> pairs(layers[b].size());
    for (size_t t = 0; t < layers[b].size(); ++t) {
      pairs[t] = {layers[b][t], layers[b + 1][t]};
    }
    const double u = joint_utilization(pairs, k_a, k_b);
    std::printf("joint_%zu_%zu_utilization: %.6f\n", b + 1, b + 2, u);
  }
  return kExitOk;
}

int cmd_energy_profile(const std::string& dir, const std::string& output,
                       double target_db) {
  std::vector<AudioBuffer> files;
  for (const fs::path& path : list_wavs(dir)) files.push_back(read_wav(path));
  const EnergyProfile profile = energy_profile(files, target_db);

  const int rate = files.front().sample_rate;
  atomic_output(output, [&](const fs::path& tmp) {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << "bin,frequency_hz,energy\n";
    for (size_t k = 0; k < profile.per_bin.size(); ++k) {
      const double freq = static_cast<double>(k) * rate /
                          static_cast<double>(profile.n_fft);
      out << k << "," << freq << "," << profile.per_bin[k] << "\n";
    }
    if (!out) throw IoError("write failed: " + tmp.string());
  });

  std::cout << "files: " << files.size() << "\n";
  std::cout << "frames: " << profile.total_frames << "\n";
  std::cout << "wrote " << output << "\n";
  return kExitOk;
}

int cmd_bitrate(const std::string& preset, const std::string& bits,
                size_t frame_len, int sample_rate) {
  CodecConfig cfg;
  cfg.sample_rate = sample_rate;
  cfg.frame_len = frame_len;
  cfg.band_config = preset_config(preset);
  cfg.per_band_bits = parse_bits_list(bits);
  std::cout << format_bitrate(bitrate(cfg)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("BANDCODEC_THREADS")) {
    set_max_threads(std::atoi(env));
  }

  CLI::App app{"bandcodec: band-split audio codec toolbox"};
  app.require_subcommand(1);

  // split
  std::string in_path, out_dir, preset = "bands3";
  size_t split_fft = 1024, split_hop = 256;
  auto* split_cmd = app.add_subcommand("split", "Split a WAV into band WAVs");
  split_cmd->add_option("input", in_path, "input WAV")->required();
  split_cmd->add_option("--preset", preset, "bands5|bands3|bands2");
  split_cmd->add_option("--out-dir", out_dir, "output directory");
  split_cmd->add_option("--fft-size", split_fft, "analysis FFT size (power of two)");
  split_cmd->add_option("--hop", split_hop, "analysis hop size");

  // merge
  std::vector<std::string> merge_inputs;
  std::string merge_out, merge_encoding = "float32";
  auto* merge_cmd = app.add_subcommand("merge", "Sum band WAVs into one WAV");
  merge_cmd->add_option("inputs", merge_inputs, "band WAV files")->required();
  merge_cmd->add_option("-o,--output", merge_out, "output WAV")->required();
  merge_cmd->add_option("--encoding", merge_encoding, "pcm16|float32");

  // train
  std::string train_data, train_bits, train_preset = "bands3", train_out;
  size_t train_epochs = 100, train_frame_len = 320, train_latent = 64;
  uint64_t train_seed = 0;
  double train_lr = 0.02, train_beta = 1.0, train_lambda = 0.25;
  bool train_freeze = false;
  auto* train_cmd = app.add_subcommand("train", "Train a toy per-band codec");
  train_cmd->add_option("--data", train_data, "directory of training WAVs")->required();
  train_cmd->add_option("--preset", train_preset, "bands5|bands3|bands2");
  train_cmd->add_option("--bits", train_bits, "comma list of bits per band")->required();
  train_cmd->add_option("--epochs", train_epochs, "training epochs");
  train_cmd->add_option("--seed", train_seed, "random seed");
  train_cmd->add_option("--frame-len", train_frame_len, "samples per token frame");
  train_cmd->add_option("--latent-dim", train_latent, "latent dimension");
  train_cmd->add_option("--learn-rate", train_lr, "gradient descent step");
  train_cmd->add_option("--commit-weight", train_beta, "commitment loss weight");
  train_cmd->add_option("--lambda", train_lambda, "encoder-side commitment balance");
  train_cmd->add_flag("--freeze-codebook", train_freeze, "freeze codebook base entries");
  size_t train_fft = 1024, train_hop = 256;
  train_cmd->add_option("--fft-size", train_fft, "band-split FFT size (power of two)");
  train_cmd->add_option("--hop", train_hop, "band-split hop size");
  train_cmd->add_option("-o,--output", train_out, "output model")->required();

  // encode
  std::string enc_in, enc_model, enc_out;
  auto* encode_cmd = app.add_subcommand("encode", "Encode a WAV to tokens");
  encode_cmd->add_option("input", enc_in, "input WAV")->required();
  encode_cmd->add_option("-m,--model", enc_model, "model file")->required();
  encode_cmd->add_option("-o,--output", enc_out, "output token file")->required();

  // decode
  std::string dec_in, dec_model, dec_out, dec_encoding = "float32";
  auto* decode_cmd = app.add_subcommand("decode", "Decode tokens to a WAV");
  decode_cmd->add_option("input", dec_in, "input token file")->required();
  decode_cmd->add_option("-m,--model", dec_model, "model file")->required();
  decode_cmd->add_option("-o,--output", dec_out, "output WAV")->required();
  decode_cmd->add_option("--encoding", dec_encoding, "pcm16|float32");

  // metrics
  std::string met_ref, met_test;
  auto* metrics_cmd = app.add_subcommand("metrics", "Spectral distances between two WAVs");
  metrics_cmd->add_option("ref", met_ref, "reference WAV")->required();
  metrics_cmd->add_option("test", met_test, "test WAV")->required();

  // analyze
  std::vector<std::string> analyze_inputs;
  auto* analyze_cmd = app.add_subcommand("analyze", "Codebook utilization of token files");
  analyze_cmd->add_option("inputs", analyze_inputs, "token files")->required();

  // energy-profile
  std::string ep_dir, ep_out = "profile.csv";
  double ep_target_db = -23.0;
  auto* ep_cmd = app.add_subcommand("energy-profile", "Average spectral energy of a WAV directory");
  ep_cmd->add_option("dir", ep_dir, "directory of WAVs")->required();
  ep_cmd->add_option("-o,--output", ep_out, "output CSV");
  ep_cmd->add_option("--target-db", ep_target_db, "per-file RMS normalization target");

  // bitrate
  std::string br_preset = "bands2", br_bits;
  size_t br_frame_len = 320;
  int br_rate = 24000;
  auto* bitrate_cmd = app.add_subcommand("bitrate", "Bits per second for a configuration");
  bitrate_cmd->add_option("--preset", br_preset, "bands5|bands3|bands2");
  bitrate_cmd->add_option("--bits", br_bits, "comma list of bits per band")->required();
  bitrate_cmd->add_option("--frame-len", br_frame_len, "samples per token frame");
  bitrate_cmd->add_option("--rate", br_rate, "sample rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (split_cmd->parsed()) {
      return cmd_split(in_path, preset, out_dir, split_fft, split_hop);
    }
    if (merge_cmd->parsed()) return cmd_merge(merge_inputs, merge_out, merge_encoding);
    if (train_cmd->parsed()) {
      return cmd_train(train_data, train_preset, train_bits, train_epochs,
                       train_seed, train_frame_len, train_latent, train_lr,
                       train_beta, train_lambda, train_freeze, train_fft,
                       train_hop, train_out);
    }
    if (encode_cmd->parsed()) return cmd_encode(enc_in, enc_model, enc_out);
    if (decode_cmd->parsed()) return cmd_decode(dec_in, dec_model, dec_out, dec_encoding);
    if (metrics_cmd->parsed()) return cmd_metrics(met_ref, met_test);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_inputs);
    if (ep_cmd->parsed()) return cmd_energy_profile(ep_dir, ep_out, ep_target_db);
    if (bitrate_cmd->parsed()) return cmd_bitrate(br_preset, br_bits, br_frame_len, br_rate);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
