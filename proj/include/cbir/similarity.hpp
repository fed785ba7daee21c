#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cbir/edge.hpp"

namespace cbir {

// Per-image descriptor. Histogram blocks hold frequencies (they sum to 1
// unless the source block was all-zero); texture and wavelet values are raw
// and get standardized by catalog-wide scale factors when entering the
// metric space. Flattened layout:
//   [color bins | energy, entropy, contrast, homogeneity | 10 wavelet | orientation bins]
struct FeatureVector {
  std::int64_t id = -1;
  std::vector<double> color;
  std::array<double, 4> texture{};
  std::array<double, 10> wavelet{};
  std::vector<double> orientation;

  std::size_t dimension() const {
    return color.size() + texture.size() + wavelet.size() +
           orientation.size();
  }
  std::vector<double> flatten() const;
};

// Non-negative block weights, normalized to sum 1 at construction.
class FeatureWeights {
 public:
  FeatureWeights(double color, double texture, double wavelet,
                 double orientation);

  double color() const { return color_; }
  double texture() const { return texture_; }
  double wavelet() const { return wavelet_; }
  double orientation() const { return orientation_; }

 private:
  double color_, texture_, wavelet_, orientation_;
};

// L2 distance between equal-length sequences.
double hist_euclidean(std::span<const double> h, std::span<const double> g);

// Histogram intersection similarity: sum of per-bin minima over the smaller
// total mass. 1 means h and g overlap fully on the smaller histogram; not a
// metric.
double hist_intersection(std::span<const double> h, std::span<const double> g);

// Directed Hausdorff distance: max over a in A of the distance from a to
// its nearest point of B.
double hausdorff_directed(std::span<const PixelCoord> a,
                          std::span<const PixelCoord> b);

// Symmetric Hausdorff distance: max of the two directed values.
double hausdorff(std::span<const PixelCoord> a, std::span<const PixelCoord> b);

// sqrt(sum over blocks of weight * L2(block_u, block_v)^2). A true metric:
// it is plain L2 after scaling each block by the square root of its weight.
double composite_distance(const FeatureVector& u, const FeatureVector& v,
                          const FeatureWeights& w);

// The embedding that turns composite_distance into plain L2: flatten, then
// scale every block by sqrt(weight). The index stores embedded vectors so
// its metric is hist_euclidean.
std::vector<double> weighted_embedding(const FeatureVector& u,
                                       const FeatureWeights& w);

}  // namespace cbir
