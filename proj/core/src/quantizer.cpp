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

#include "bandcodec/quantizer.hpp"

#include <algorithm>
#include <limits>

#include "bandcodec/errors.hpp"
#include "bandcodec/rng.hpp"
#include "binio.hpp"

namespace bandcodec {

namespace {

constexpr uint16_t kCodebookVersion = 1;

bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

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

Eigen::MatrixXd effective_entries(const SimVQCodebook& sq) {
  if (sq.base.entries.cols() != sq.transform.rows() ||
      sq.transform.rows() != sq.transform.cols()) {
    throw ArgumentError("effective_entries: transform shape mismatch");
  }
  return sq.base.entries * sq.transform;
}

size_t nearest_code(const Eigen::VectorXd& z, const Eigen::MatrixXd& effective) {
  if (effective.rows() < 1) throw ArgumentError("nearest_code: empty codebook");
  if (effective.cols() != z.size()) {
    throw ArgumentError("nearest_code: dimension mismatch");
  }

  size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < effective.rows(); ++j) {
    const double dist = (effective.row(j).transpose() - z).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<size_t>(j);
    }
  }
  return best;
}

double commitment_loss(const Eigen::VectorXd& z, const Eigen::VectorXd& qw,
                       double lambda) {
  if (z.size() != qw.size()) {
    throw ArgumentError("commitment_loss: dimension mismatch");
  }
  const double dist = (z - qw).squaredNorm();
  return dist + lambda * dist;
}

QuantResult quantize_st(const Eigen::VectorXd& z, const SimVQCodebook& sq) {
  const Eigen::MatrixXd effective = effective_entries(sq);
  QuantResult result;
  result.index = nearest_code(z, effective);
  result.quantized = effective.row(static_cast<Eigen::Index>(result.index));
  result.commit_loss = commitment_loss(z, result.quantized, sq.lambda);
  return result;
}

Codebook kmeans_init(const Eigen::MatrixXd& data, size_t k, uint64_t seed,
                     size_t iters) {
  const size_t m = static_cast<size_t>(data.rows());
  if (k < 1) throw ArgumentError("kmeans_init: k must be >= 1");
  if (m < k) throw ArgumentError("kmeans_init: fewer points than clusters");

  Rng rng(seed);
  Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), data.cols());

  // k-means++ seeding: first center uniform, the rest D^2-weighted.
  std::vector<double> dist2(m, std::numeric_limits<double>::infinity());
  centers.row(0) = data.row(static_cast<Eigen::Index>(rng.uniform_index(m)));
  for (size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double d = (data.row(static_cast<Eigen::Index>(i)) -
                        centers.row(static_cast<Eigen::Index>(c - 1)))
                           .squaredNorm();
      dist2[i] = std::min(dist2[i], d);
      total += dist2[i];
    }
    size_t pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (size_t i = 0; i < m; ++i) {
        acc += dist2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.uniform_index(m);  // all points coincide with centers
    }
    centers.row(static_cast<Eigen::Index>(c)) =
        data.row(static_cast<Eigen::Index>(pick));
  }

  std::vector<size_t> assign(m, 0);
  for (size_t iter = 0; iter < iters; ++iter) {
    for (size_t i = 0; i < m; ++i) {
      assign[i] = nearest_code(data.row(static_cast<Eigen::Index>(i)).transpose(),
                               centers);
    }

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(centers.rows(), centers.cols());
    std::vector<size_t> counts(k, 0);
    for (size_t i = 0; i < m; ++i) {
      sums.row(static_cast<Eigen::Index>(assign[i])) +=
          data.row(static_cast<Eigen::Index>(i));
      ++counts[assign[i]];
    }

    for (size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(static_cast<Eigen::Index>(c)) =
            sums.row(static_cast<Eigen::Index>(c)) / static_cast<double>(counts[c]);
      } else {
        // Re-seed an empty cluster to the point farthest from its centroid.
        size_t farthest = 0;
        double worst = -1.0;
        for (size_t i = 0; i < m; ++i) {
          const double d =
              (data.row(static_cast<Eigen::Index>(i)) -
               centers.row(static_cast<Eigen::Index>(assign[i])))
                  .squaredNorm();
          if (d > worst) {
            worst = d;
            farthest = i;
          }
        }
        centers.row(static_cast<Eigen::Index>(c)) =
            data.row(static_cast<Eigen::Index>(farthest));
        assign[farthest] = c;
      }
    }
  }

  Codebook cb;
  cb.entries = std::move(centers);
  return cb;
}

SimVQCodebook make_simvq(Codebook base, uint64_t seed, double lambda,
                         double noise_sigma) {
  if (lambda < 0.0) throw ArgumentError("make_simvq: lambda must be >= 0");
  const Eigen::Index d = base.entries.cols();
  Rng rng(seed);

  SimVQCodebook sq;
  sq.base = std::move(base);
  sq.lambda = lambda;
  sq.transform = Eigen::MatrixXd::Identity(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      sq.transform(i, j) += noise_sigma * rng.gaussian();
    }
  }
  return sq;
}

namespace {

std::vector<uint8_t> serialize_codebook_impl(const Eigen::MatrixXd& entries,
                                             const Eigen::MatrixXd* transform) {
  const size_t k = static_cast<size_t>(entries.rows());
  if (!is_power_of_two(k)) {
    throw SerializeError("codebook size must be a power of two");
  }
  binio::Writer w;
  w.magic("BSCB");
  w.u16(kCodebookVersion);
  w.u32(static_cast<uint32_t>(k));
  w.u32(static_cast<uint32_t>(entries.cols()));
  w.u8(transform != nullptr ? 1 : 0);
  write_matrix_f32(w, entries);
  if (transform != nullptr) {
    if (transform->rows() != entries.cols() ||
        transform->cols() != entries.cols()) {
      throw SerializeError("transform shape mismatch");
    }
    write_matrix_f32(w, *transform);
  }
  return w.take();
}

}  // namespace

std::vector<uint8_t> serialize_codebook(const Codebook& cb) {
  return serialize_codebook_impl(cb.entries, nullptr);
}

std::vector<uint8_t> serialize_codebook(const SimVQCodebook& sq) {
  return serialize_codebook_impl(sq.base.entries, &sq.transform);
}

LoadedCodebook deserialize_codebook(const std::vector<uint8_t>& bytes) {
  binio::Reader r(bytes);
  r.expect_magic("BSCB", "codebook");
  const uint16_t version = r.u16();
  if (version != kCodebookVersion) {
    throw FormatError("unsupported codebook version " + std::to_string(version));
  }
  const uint32_t k = r.u32();
  const uint32_t d = r.u32();
  const uint8_t simvq = r.u8();
  if (k == 0 || d == 0) throw CorruptError("codebook with zero dimension");

  LoadedCodebook out;
  out.base.entries = read_matrix_f32(r, k, d);
  out.simvq = simvq != 0;
  if (out.simvq) out.transform = read_matrix_f32(r, d, d);
  return out;
}

void save_codebook(const Codebook& cb, const std::filesystem::path& path) {
  binio::write_file(path, serialize_codebook(cb));
}

void save_codebook(const SimVQCodebook& sq, const std::filesystem::path& path) {
  binio::write_file(path, serialize_codebook(sq));
}

LoadedCodebook load_codebook(const std::filesystem::path& path) {
  return deserialize_codebook(binio::read_file(path));
}

}  // namespace bandcodec
