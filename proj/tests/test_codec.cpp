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

#include <cmath>
#include <fstream>

#include "bandcodec/codec.hpp"
#include "bandcodec/errors.hpp"
#include "testutil.hpp"

using namespace bandcodec;

namespace {

// Small two-band configuration that trains in well under a second.
CodecConfig toy_config() {
  CodecConfig cfg;
  cfg.sample_rate = 24000;
  cfg.frame_len = 320;
  cfg.latent_dim = 16;
  cfg.band_config = preset_config("bands2");
  cfg.per_band_bits = {4, 4};
  cfg.seed = 7;
  cfg.learn_rate = 0.02;
  cfg.epochs = 30;
  return cfg;
}

// Sinusoid mixtures whose component periods divide the frame length, so
// every frame of one item is identical and the latent set is small.
std::vector<AudioBuffer> toy_dataset() {
  std::vector<AudioBuffer> dataset;
  const double low[] = {300.0, 600.0, 1200.0};
  const double high[] = {3000.0, 4500.0};
  for (double f_low : low) {
    for (double f_high : high) {
      AudioBuffer item = testutil::sine(f_low, 0.4, 24000, 0.4);
      const AudioBuffer top = testutil::sine(f_high, 0.4, 24000, 0.25);
      for (size_t i = 0; i < item.size(); ++i) {
        item.samples[i] += top.samples[i];
      }
      dataset.push_back(std::move(item));
    }
  }
  return dataset;
}

}  // namespace

TEST_CASE("bitrate arithmetic") {
  CodecConfig cfg;
  cfg.band_config = preset_config("bands2");
  cfg.per_band_bits = {17, 17};
  CHECK(bitrate(cfg) == 2550);
  CHECK(format_bitrate(bitrate(cfg)) == "2550 bps (2.55 kbps)");

  cfg.band_config = preset_config("bands3");
  cfg.per_band_bits = {17, 17, 17};
  CHECK(bitrate(cfg) == 3825);
  CHECK(format_bitrate(bitrate(cfg)) == "3825 bps (3.83 kbps)");

  cfg.band_config = preset_config("bands5");
  cfg.per_band_bits = {10, 10, 10, 10, 10};
  CHECK(bitrate(cfg) == 3750);
  CHECK(format_bitrate(bitrate(cfg)) == "3750 bps (3.75 kbps)");
}

TEST_CASE("CodecConfig validation") {
  CodecConfig cfg = toy_config();
  CHECK_NOTHROW(cfg.validate());

  cfg.per_band_bits = {4};  // one entry missing
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);

  cfg = toy_config();
  cfg.per_band_bits = {18, 4};
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);

  cfg = toy_config();
  cfg.sample_rate = 16000;  // bands2 tops out at 12 kHz
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

TEST_CASE("token rate is 75 per second at the defaults") {
  CodecConfig cfg = toy_config();
  CHECK(cfg.token_rate() == 75.0);

  const BandCodecModel model = init_model(cfg);
  const AudioBuffer x = testutil::white_noise(24000, 24000, 1);
  const TokenStream t = encode(x, model);
  CHECK(t.frame_count == 75);
  for (const auto& band : t.indices) CHECK(band.size() == 75);
}

TEST_CASE("encode frames with ceil and flags empty input") {
  CodecConfig cfg = toy_config();
  const BandCodecModel model = init_model(cfg);

  for (size_t len : {320u, 321u, 640u, 1000u}) {
    const AudioBuffer x = testutil::white_noise(len, 24000, len);
    const TokenStream t = encode(x, model);
    CHECK(t.frame_count == (len + 319) / 320);
    CHECK(t.original_length == len);
  }

  AudioBuffer empty;
  empty.sample_rate = 24000;
  CHECK_THROWS_AS(encode(empty, model), ArgumentError);

  const AudioBuffer wrong_rate = testutil::white_noise(1000, 16000, 2);
  CHECK_THROWS_AS(encode(wrong_rate, model), ArgumentError);
}

TEST_CASE("silence encodes to one constant index per band") {
  const BandCodecModel model = init_model(toy_config());
  AudioBuffer silence;
  silence.sample_rate = 24000;
  silence.samples.assign(24000, 0.0);

  const TokenStream t = encode(silence, model);
  for (const auto& band : t.indices) {
    for (uint32_t v : band) CHECK(v == band.front());
  }
}

TEST_CASE("decode length, zero synthesis, and corrupt tokens") {
  CodecConfig cfg = toy_config();
  BandCodecModel model = init_model(cfg);
  const AudioBuffer x = testutil::white_noise(10000, 24000, 3);
  const TokenStream t = encode(x, model);

  CHECK(decode(t, model).size() == x.size());

  BandCodecModel muted = model;
  for (auto& band : muted.bands) band.synthesis.setZero();
  const AudioBuffer silent = decode(t, muted);
  for (double v : silent.samples) CHECK(v == 0.0);

  TokenStream wrong_bands = t;
  wrong_bands.bits_per_band.pop_back();
  wrong_bands.indices.pop_back();
  CHECK_THROWS_AS(decode(wrong_bands, model), ArgumentError);
}

TEST_CASE("decode rejects indices beyond the model codebook") {
  CodecConfig cfg = toy_config();
  const BandCodecModel model = init_model(cfg);
  const AudioBuffer x = testutil::white_noise(1000, 24000, 5);
  TokenStream t = encode(x, model);
  t.bits_per_band[0] = 8;    // stream claims more bits than the model has
  t.indices[0][0] = 200;     // valid for 8 bits, out of range for K=16
  CHECK_THROWS_AS(decode(t, model), CorruptError);
}

TEST_CASE("training reduces the loss on the toy dataset") {
  // The loss rises through an early transient while the codebook chases
  // the drifting encoder, then drops well below the start.
  CodecConfig cfg = toy_config();
  cfg.epochs = 150;
  const TrainResult result = train(toy_dataset(), cfg);
  REQUIRE(result.log.epochs() == 150);
  CHECK(result.log.total_loss.back() < result.log.total_loss.front());
  CHECK(result.log.total_loss.back() < 0.5 * result.log.total_loss.front());
  for (double v : result.log.total_loss) CHECK(std::isfinite(v));
  for (size_t used : result.log.codes_used) CHECK(used >= 1);
}

TEST_CASE("epochs=0 returns the initialized model with an empty log") {
  CodecConfig cfg = toy_config();
  cfg.epochs = 0;
  const TrainResult result = train(toy_dataset(), cfg);
  CHECK(result.log.epochs() == 0);
  CHECK(result.model.bands.size() == 2);
}

TEST_CASE("beta=0 and lambda=0 freeze the codebook") {
  CodecConfig cfg = toy_config();
  cfg.commit_weight = 0.0;
  cfg.lambda = 0.0;

  CodecConfig baseline_cfg = cfg;
  baseline_cfg.epochs = 0;
  const TrainResult baseline = train(toy_dataset(), baseline_cfg);
  const TrainResult trained = train(toy_dataset(), cfg);

  for (size_t b = 0; b < 2; ++b) {
    // No gradient path into the codebook or its transform.
    CHECK(trained.model.bands[b].codebook.base.entries ==
          baseline.model.bands[b].codebook.base.entries);
    CHECK(trained.model.bands[b].codebook.transform ==
          baseline.model.bands[b].codebook.transform);
    // The encoder/decoder still move.
    CHECK(trained.model.bands[b].analysis != baseline.model.bands[b].analysis);
  }
}

TEST_CASE("freeze_codebook_base keeps entries at the k-means fit") {
  CodecConfig cfg = toy_config();
  cfg.freeze_codebook_base = true;
  CodecConfig baseline_cfg = cfg;
  baseline_cfg.epochs = 0;

  const TrainResult baseline = train(toy_dataset(), baseline_cfg);
  const TrainResult trained = train(toy_dataset(), cfg);
  for (size_t b = 0; b < 2; ++b) {
    CHECK(trained.model.bands[b].codebook.base.entries ==
          baseline.model.bands[b].codebook.base.entries);
    // W remains trainable.
    CHECK(trained.model.bands[b].codebook.transform !=
          baseline.model.bands[b].codebook.transform);
  }
}

TEST_CASE("training is reproducible given the seed") {
  const TrainResult a = train(toy_dataset(), toy_config());
  const TrainResult b = train(toy_dataset(), toy_config());
  CHECK(a.log.total_loss == b.log.total_loss);
  for (size_t band = 0; band < 2; ++band) {
    CHECK(a.model.bands[band].analysis == b.model.bands[band].analysis);
    CHECK(a.model.bands[band].codebook.base.entries ==
          b.model.bands[band].codebook.base.entries);
  }
}

TEST_CASE("training rejects undersized datasets and divergence") {
  CodecConfig cfg = toy_config();
  cfg.per_band_bits = {12, 12};  // 4096 entries, dataset has ~900 frames
  CHECK_THROWS_AS(train(toy_dataset(), cfg), ArgumentError);

  cfg = toy_config();
  cfg.learn_rate = 1e9;
  cfg.epochs = 10;
  CHECK_THROWS_WITH_AS(train(toy_dataset(), cfg),
                       doctest::Contains("epoch"), TrainError);

  CHECK_THROWS_AS(train({}, toy_config()), ArgumentError);
}

TEST_CASE("tokens are a fixed point of encode o decode on a trained model") {
  CodecConfig cfg = toy_config();
  cfg.epochs = 150;
  const std::vector<AudioBuffer> dataset = toy_dataset();
  const TrainResult result = train(dataset, cfg);

  const TokenStream t1 = encode(dataset.front(), result.model);
  const AudioBuffer decoded = decode(t1, result.model);
  const TokenStream t2 = encode(decoded, result.model);
  CHECK(t1.indices == t2.indices);
}

TEST_CASE("gradient check on the full toy loss") {
  CodecConfig cfg;
  cfg.sample_rate = 24000;
  cfg.frame_len = 320;
  cfg.latent_dim = 8;
  cfg.band_config = preset_config("bands2");
  cfg.per_band_bits = {4, 4};
  cfg.seed = 11;

  const BandCodecModel model = init_model(cfg);
  const AudioBuffer x = testutil::white_noise(24000, 24000, 6);

  const GradCheckReport at_1e5 = gradient_check(model, x, 1e-5);
  CHECK(at_1e5.checks > 0);
  CHECK(at_1e5.max_rel_err < 1e-4);

  // Verdict is stable across a decade of eps.
  const GradCheckReport at_1e6 = gradient_check(model, x, 1e-6);
  CHECK(at_1e6.max_rel_err < 1e-4);
}

TEST_CASE("gradient check with the quantizer terms off is near exact") {
  CodecConfig cfg;
  cfg.sample_rate = 24000;
  cfg.frame_len = 320;
  cfg.latent_dim = 8;
  cfg.band_config = preset_config("bands2");
  cfg.per_band_bits = {3, 3};
  cfg.seed = 12;
  cfg.commit_weight = 0.0;
  cfg.lambda = 0.0;

  const BandCodecModel model = init_model(cfg);
  const AudioBuffer x = testutil::white_noise(12000, 24000, 8);
  const GradCheckReport report = gradient_check(model, x, 1e-5);
  CHECK(report.max_rel_err < 1e-6);
}

TEST_CASE("gradient check validates eps") {
  const BandCodecModel model = init_model(toy_config());
  const AudioBuffer x = testutil::white_noise(1000, 24000, 9);
  CHECK_THROWS_AS(gradient_check(model, x, 1e-8), ArgumentError);
  CHECK_THROWS_AS(gradient_check(model, x, 1e-2), ArgumentError);
}

TEST_CASE("model files round trip") {
  testutil::TempDir dir("model");
  CodecConfig cfg = toy_config();
  cfg.epochs = 5;
  const TrainResult result = train(toy_dataset(), cfg);

  save_model(result.model, dir.file("toy.bscm"));
  const BandCodecModel loaded = load_model(dir.file("toy.bscm"));

  CHECK(loaded.config.per_band_bits == cfg.per_band_bits);
  CHECK(loaded.config.frame_len == cfg.frame_len);
  CHECK(loaded.config.lambda == cfg.lambda);
  CHECK(loaded.bands.size() == 2);

  // Save o load o save is byte-stable (float32 storage).
  save_model(loaded, dir.file("toy2.bscm"));
  std::ifstream a(dir.file("toy.bscm"), std::ios::binary);
  std::ifstream b(dir.file("toy2.bscm"), std::ios::binary);
  const std::string bytes_a((std::istreambuf_iterator<char>(a)),
                            std::istreambuf_iterator<char>());
  const std::string bytes_b((std::istreambuf_iterator<char>(b)),
                            std::istreambuf_iterator<char>());
  CHECK(bytes_a == bytes_b);

  // A reloaded model encodes and decodes deterministically.
  const AudioBuffer x = toy_dataset().front();
  const TokenStream t1 = encode(x, loaded);
  const TokenStream t2 = encode(x, loaded);
  CHECK(t1.indices == t2.indices);
  CHECK(decode(t1, loaded).size() == x.size());
}

TEST_CASE("load_model rejects other file types") {
  testutil::TempDir dir("model_bad");
  const TokenStream t{
      {8}, 1, 24000, 320, {{5}}};
  save_tokens(t, dir.file("tokens.bstk"));
  CHECK_THROWS_AS(load_model(dir.file("tokens.bstk")), FormatError);
  CHECK_THROWS_AS(load_model(dir.file("missing.bscm")), IoError);
}
