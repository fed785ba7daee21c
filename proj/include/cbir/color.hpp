#pragma once

#include <cstdint>
#include <vector>

#include "cbir/raster.hpp"

namespace cbir {

// Occurrence counts over a fixed set of color bins.
struct ColorHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;  // pixel count; equals the sum of counts

  std::size_t bin_count() const { return counts.size(); }
};

// Joint occurrence counts of quantized color pairs at fixed distances.
// entry (i, j, d_index) counts ordered pixel pairs (p, q) with quantized
// color i at p, color j at q, and Chebyshev distance distances[d_index].
struct Correlogram {
  int color_count = 0;
  std::vector<int> distances;
  std::vector<std::uint64_t> entries;  // color_count^2 * distances.size()

  std::uint64_t at(int i, int j, std::size_t d_index) const {
    return entries[(static_cast<std::size_t>(i) * color_count + j) *
                       distances.size() +
                   d_index];
  }
  std::uint64_t& at(int i, int j, std::size_t d_index) {
    return entries[(static_cast<std::size_t>(i) * color_count + j) *
                       distances.size() +
                   d_index];
  }
};

// 256-bin intensity histogram of a 1-channel raster.
ColorHistogram intensity_histogram(const Raster& gray);

// Joint histogram over (R, G, B) with bins_per_channel in [2, 16] per axis.
// Bin index per channel is floor(v * bins / 256); flattened index is
// r_bin * bins^2 + g_bin * bins + b_bin.
ColorHistogram rgb_histogram(const Raster& rgb, int bins_per_channel);

// Color correlogram of a 1-channel raster. Colors are quantized to
// floor(v * levels / 256) with levels in [2, 64]; pairs are counted over
// Chebyshev rings at each requested distance. Counts are raw (unnormalized).
Correlogram correlogram(const Raster& gray, int levels,
                        const std::vector<int>& distances);

}  // namespace cbir
