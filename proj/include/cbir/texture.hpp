#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cbir/raster.hpp"

namespace cbir {

// Joint distribution of quantized gray levels at a fixed pixel displacement.
struct CooccurrenceMatrix {
  int levels = 0;
  int dx = 0;
  int dy = 0;
  std::vector<double> probs;  // levels x levels, row-major (i, j)

  double at(int i, int j) const {
    return probs[static_cast<std::size_t>(i) * levels + j];
  }
  double& at(int i, int j) {
    return probs[static_cast<std::size_t>(i) * levels + j];
  }
};

struct TextureStats {
  double energy = 0.0;
  double entropy = 0.0;
  double contrast = 0.0;
  double homogeneity = 0.0;
};

// Four subbands of one 2D Haar analysis step, each half size per axis.
// lh carries horizontal detail (high-pass along x), hl vertical detail
// (high-pass along y), hh diagonal detail.
struct Subbands {
  SignedField ll, lh, hl, hh;
};

// Ten subband RMS values from a three-level Haar decomposition, in the
// order: level-1 details (lh, hl, hh), level-2 details, level-3 details,
// then the final approximation band.
struct WaveletSignature {
  std::array<double, 10> values{};
};

// Normalized co-occurrence matrix: probs(i, j) is the fraction of in-bounds
// pixel pairs (p, p + (dx, dy)) whose quantized levels are (i, j).
// Quantization is floor(v * levels / 256), levels in [2, 256].
CooccurrenceMatrix cooccurrence(const Raster& gray, int levels, int dx,
                                int dy);

// energy      = sum P(i,j)^2
// entropy     = -sum P(i,j) log2 P(i,j), zero cells contributing zero
// contrast    = sum (i-j)^2 P(i,j)
// homogeneity = sum P(i,j) / (1 + |i-j|)
TextureStats texture_stats(const CooccurrenceMatrix& m);

// One orthonormal 2D Haar step (per-axis pairing low=(a+b)/sqrt 2,
// high=(a-b)/sqrt 2, rows then columns). Both dimensions must be even.
// Coefficient energy equals input energy.
Subbands haar2_level(const SignedField& field);

// Exact inverse of haar2_level.
SignedField inverse_haar2_level(const Subbands& bands);

// Three Haar steps, each applied to the previous approximation band only.
// Each of the ten bands contributes sqrt(sum c^2 / band size).
// Requires a square raster with side divisible by 8.
WaveletSignature wavelet_signatures(const Raster& gray);

}  // namespace cbir
