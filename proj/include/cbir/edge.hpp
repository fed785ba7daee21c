#pragma once

#include <vector>

#include "cbir/raster.hpp"

namespace cbir {

struct GradientField {
  SignedField gx;
  SignedField gy;

  int width() const { return gx.width; }
  int height() const { return gx.height; }
};

struct PixelCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

// Pixels that survived magnitude thresholding, with their magnitudes.
struct EdgeMap {
  std::vector<PixelCoord> points;   // unique, row-major order
  std::vector<double> magnitudes;  // parallel to points
};

// Gradient-magnitude mass per angle bin over [0, 2pi).
struct OrientationHistogram {
  std::vector<double> weights;

  std::size_t bin_count() const { return weights.size(); }
};

struct DistanceHistogram {
  std::vector<std::uint64_t> counts;
};

struct OrientationMatch {
  double distance = 0.0;
  int shift = 0;
};

// 3x3 binomial smoothing, kernel [1 2 1; 2 4 2; 1 2 1]/16, replicate
// borders, rounded half away from zero.
Raster gaussian_blur3(const Raster& gray);

// Sobel gradients: gx taps [-1 0 1; -2 0 2; -1 0 1], gy taps
// [1 2 1; 0 0 0; -1 -2 -1], replicate borders. Signed values retained.
GradientField sobel(const Raster& gray);

// Per-pixel sqrt(gx^2 + gy^2).
SignedField gradient_magnitude(const GradientField& g);

// Pixels with magnitude >= threshold_fraction * max magnitude, for
// threshold_fraction in (0, 1]. An all-zero field yields an empty map.
EdgeMap edge_map(const SignedField& magnitude, double threshold_fraction);

// Every pixel with positive magnitude contributes its magnitude to the bin
// floor(angle * bins / 2pi), angle = atan2(gy, gx) wrapped to [0, 2pi).
OrientationHistogram orientation_histogram(const GradientField& g, int bins);

// Minimum L2 distance between h1 and any circular rotation of h2, where
// rotation by s compares h1[i] against h2[(i + s) mod n]. Returns the
// smallest shift attaining the minimum.
OrientationMatch match_orientation(const OrientationHistogram& h1,
                                   const OrientationHistogram& h2);

// Two-pass chamfer distance transform, weights 3 (axial) and 4 (diagonal),
// final values divided by 3. Edge pixels map to 0.
SignedField distance_transform(const EdgeMap& edges, int width, int height);

// Chamfer transform seeded by edge saliency: an edge pixel starts at
// 1 - magnitude / max magnitude instead of 0, so strong edges pull the
// field down harder. Propagation weights are 1 and 4/3.
SignedField saliency_distance_transform(const EdgeMap& edges, int width,
                                        int height);

// Pixels binned by floor(min(d, max_d - epsilon) * bins / max_d).
DistanceHistogram distance_histogram(const SignedField& dt, int bins,
                                     double max_d);

}  // namespace cbir
