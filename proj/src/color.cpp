#include "cbir/color.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace cbir {

namespace {

void check_gray(const Raster& img, const char* op) {
  if (img.width <= 0 || img.height <= 0 ||
      img.data.size() != img.pixel_count() * img.channels)
    throw std::invalid_argument(std::string(op) + ": malformed raster");
  if (img.channels != 1)
    throw std::invalid_argument(std::string(op) +
                                ": expected a 1-channel raster");
}

// Merges per-thread integer tallies. Addition of counts is exact, so the
// parallel result is identical to the serial one.
std::vector<std::uint64_t> merge_tallies(
    const std::vector<std::vector<std::uint64_t>>& per_thread) {
  std::vector<std::uint64_t> out(per_thread.front().size(), 0);
  for (const auto& t : per_thread)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
  return out;
}

}  // namespace

ColorHistogram intensity_histogram(const Raster& gray) {
  check_gray(gray, "intensity_histogram");
  std::vector<std::vector<std::uint64_t>> tallies;
#pragma omp parallel
  {
#pragma omp single
    tallies.assign(omp_get_num_threads(),
                   std::vector<std::uint64_t>(256, 0));
    auto& local = tallies[omp_get_thread_num()];
#pragma omp for
    for (int y = 0; y < gray.height; ++y)
      for (int x = 0; x < gray.width; ++x) ++local[gray.at(x, y)];
  }
  ColorHistogram h;
  h.counts = merge_tallies(tallies);
  h.total = gray.pixel_count();
  return h;
}

ColorHistogram rgb_histogram(const Raster& rgb, int bins_per_channel) {
  if (rgb.width <= 0 || rgb.height <= 0 ||
      rgb.data.size() != rgb.pixel_count() * rgb.channels)
    throw std::invalid_argument("rgb_histogram: malformed raster");
  if (rgb.channels != 3)
    throw std::invalid_argument("rgb_histogram: expected a 3-channel raster");
  if (bins_per_channel < 2 || bins_per_channel > 16)
    throw std::invalid_argument("rgb_histogram: bins_per_channel out of [2,16]");

  const int b = bins_per_channel;
  const std::size_t bin_total = static_cast<std::size_t>(b) * b * b;
  std::vector<std::vector<std::uint64_t>> tallies;
#pragma omp parallel
  {
#pragma omp single
    tallies.assign(omp_get_num_threads(),
                   std::vector<std::uint64_t>(bin_total, 0));
    auto& local = tallies[omp_get_thread_num()];
#pragma omp for
    for (int y = 0; y < rgb.height; ++y) {
      for (int x = 0; x < rgb.width; ++x) {
        const int rb = rgb.at(x, y, 0) * b / 256;
        const int gb = rgb.at(x, y, 1) * b / 256;
        const int bb = rgb.at(x, y, 2) * b / 256;
        ++local[(static_cast<std::size_t>(rb) * b + gb) * b + bb];
      }
    }
  }
  ColorHistogram h;
  h.counts = merge_tallies(tallies);
  h.total = rgb.pixel_count();
  return h;
}

Correlogram correlogram(const Raster& gray, int levels,
                        const std::vector<int>& distances) {
  check_gray(gray, "correlogram");
  if (levels < 2 || levels > 64)
    throw std::invalid_argument("correlogram: levels out of [2,64]");
  if (distances.empty())
    throw std::invalid_argument("correlogram: empty distance set");
  for (int d : distances)
    if (d <= 0) throw std::invalid_argument("correlogram: distances must be positive");

  const int w = gray.width;
  const int h = gray.height;
  std::vector<int> quant(gray.pixel_count());
#pragma omp parallel for
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      quant[static_cast<std::size_t>(y) * w + x] = gray.at(x, y) * levels / 256;

  Correlogram cg;
  cg.color_count = levels;
  cg.distances = distances;
  const std::size_t table_size =
      static_cast<std::size_t>(levels) * levels * distances.size();

  std::vector<std::vector<std::uint64_t>> tallies;
#pragma omp parallel
  {
#pragma omp single
    tallies.assign(omp_get_num_threads(),
                   std::vector<std::uint64_t>(table_size, 0));
    auto& local = tallies[omp_get_thread_num()];
#pragma omp for
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int ci = quant[static_cast<std::size_t>(y) * w + x];
        const auto tally = [&](int qx, int qy, std::size_t di) {
          if (qx < 0 || qx >= w || qy < 0 || qy >= h) return;
          const int cj = quant[static_cast<std::size_t>(qy) * w + qx];
          ++local[(static_cast<std::size_t>(ci) * levels + cj) *
                      distances.size() +
                  di];
        };
        for (std::size_t di = 0; di < distances.size(); ++di) {
          const int d = distances[di];
          // Chebyshev ring: the square boundary at offset d.
          for (int dx = -d; dx <= d; ++dx) {
            tally(x + dx, y - d, di);
            tally(x + dx, y + d, di);
          }
          for (int dy = -d + 1; dy <= d - 1; ++dy) {
            tally(x - d, y + dy, di);
            tally(x + d, y + dy, di);
          }
        }
      }
    }
  }
  cg.entries = merge_tallies(tallies);
  return cg;
}

}  // namespace cbir
