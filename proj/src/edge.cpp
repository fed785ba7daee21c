#include "cbir/edge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cbir/errors.hpp"

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

void check_field(const SignedField& f, const char* op) {
  if (f.width <= 0 || f.height <= 0 ||
      f.values.size() != static_cast<std::size_t>(f.width) * f.height)
    throw std::invalid_argument(std::string(op) + ": malformed field");
}

}  // namespace

Raster gaussian_blur3(const Raster& gray) {
  check_gray(gray, "gaussian_blur3");
  static constexpr Kernel3 kBinomial = {1 / 16.0, 2 / 16.0, 1 / 16.0,
                                        2 / 16.0, 4 / 16.0, 2 / 16.0,
                                        1 / 16.0, 2 / 16.0, 1 / 16.0};
  const SignedField f = convolve3(gray, kBinomial);
  Raster out = Raster::create(gray.width, gray.height, 1);
#pragma omp parallel for
  for (int y = 0; y < gray.height; ++y)
    for (int x = 0; x < gray.width; ++x) out.at(x, y) = quantize_u8(f.at(x, y));
  return out;
}

GradientField sobel(const Raster& gray) {
  check_gray(gray, "sobel");
  static constexpr Kernel3 kSobelX = {-1, 0, 1, -2, 0, 2, -1, 0, 1};
  static constexpr Kernel3 kSobelY = {1, 2, 1, 0, 0, 0, -1, -2, -1};
  return GradientField{convolve3(gray, kSobelX), convolve3(gray, kSobelY)};
}

SignedField gradient_magnitude(const GradientField& g) {
  check_field(g.gx, "gradient_magnitude");
  if (g.gy.width != g.gx.width || g.gy.height != g.gx.height)
    throw std::invalid_argument("gradient_magnitude: gx/gy size mismatch");
  SignedField out = SignedField::create(g.width(), g.height());
#pragma omp parallel for
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x)
      out.at(x, y) = std::hypot(g.gx.at(x, y), g.gy.at(x, y));
  return out;
}

EdgeMap edge_map(const SignedField& magnitude, double threshold_fraction) {
  check_field(magnitude, "edge_map");
  if (!(threshold_fraction > 0.0) || threshold_fraction > 1.0)
    throw std::invalid_argument("edge_map: threshold_fraction out of (0,1]");

  double max_mag = 0.0;
  for (double v : magnitude.values) max_mag = std::max(max_mag, v);
  EdgeMap map;
  if (max_mag <= 0.0) return map;

  const double cut = threshold_fraction * max_mag;
  for (int y = 0; y < magnitude.height; ++y) {
    for (int x = 0; x < magnitude.width; ++x) {
      const double m = magnitude.at(x, y);
      if (m >= cut) {
        map.points.push_back({x, y});
        map.magnitudes.push_back(m);
      }
    }
  }
  return map;
}

OrientationHistogram orientation_histogram(const GradientField& g, int bins) {
  check_field(g.gx, "orientation_histogram");
  if (g.gy.width != g.gx.width || g.gy.height != g.gx.height)
    throw std::invalid_argument("orientation_histogram: gx/gy size mismatch");
  if (bins < 4)
    throw std::invalid_argument("orientation_histogram: bins must be >= 4");

  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const int h = g.height();
  const int w = g.width();

  // Per-row partial histograms merged in row order: the summation order is
  // fixed regardless of thread count.
  std::vector<std::vector<double>> rows(
      h, std::vector<double>(static_cast<std::size_t>(bins), 0.0));
#pragma omp parallel for
  for (int y = 0; y < h; ++y) {
    auto& row = rows[y];
    for (int x = 0; x < w; ++x) {
      const double gx = g.gx.at(x, y);
      const double gy = g.gy.at(x, y);
      const double m = std::hypot(gx, gy);
      if (m <= 0.0) continue;
      double a = std::atan2(gy, gx);
      if (a < 0.0) a += kTwoPi;
      int bin = static_cast<int>(a * bins / kTwoPi);
      if (bin >= bins) bin = bins - 1;
      row[bin] += m;
    }
  }
  OrientationHistogram out;
  out.weights.assign(static_cast<std::size_t>(bins), 0.0);
  for (const auto& row : rows)
    for (int b = 0; b < bins; ++b) out.weights[b] += row[b];
  return out;
}

OrientationMatch match_orientation(const OrientationHistogram& h1,
                                   const OrientationHistogram& h2) {
  const std::size_t n = h1.bin_count();
  if (n == 0 || n != h2.bin_count())
    throw std::invalid_argument("match_orientation: bin count mismatch");

  OrientationMatch best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t s = 0; s < n; ++s) {
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = h1.weights[i] - h2.weights[(i + s) % n];
      sq += d * d;
    }
    const double dist = std::sqrt(sq);
    if (dist < best.distance) {
      best.distance = dist;
      best.shift = static_cast<int>(s);
    }
  }
  return best;
}

namespace {

// Two-pass chamfer over an arbitrary seed field. Weights are the 3-4 mask
// scaled by `unit` (3 for the integer-exact transform, 1 for saliency seeds).
template <class T>
void chamfer_two_pass(std::vector<T>& d, int w, int h, T axial, T diagonal) {
  const auto at = [&](int x, int y) -> T& {
    return d[static_cast<std::size_t>(y) * w + x];
  };
  // Forward: top-left to bottom-right, mask covers W, NW, N, NE.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      T v = at(x, y);
      if (x > 0) v = std::min(v, at(x - 1, y) + axial);
      if (y > 0) {
        v = std::min(v, at(x, y - 1) + axial);
        if (x > 0) v = std::min(v, at(x - 1, y - 1) + diagonal);
        if (x + 1 < w) v = std::min(v, at(x + 1, y - 1) + diagonal);
      }
      at(x, y) = v;
    }
  }
  // Backward: bottom-right to top-left, mask covers E, SE, S, SW.
  for (int y = h - 1; y >= 0; --y) {
    for (int x = w - 1; x >= 0; --x) {
      T v = at(x, y);
      if (x + 1 < w) v = std::min(v, at(x + 1, y) + axial);
      if (y + 1 < h) {
        v = std::min(v, at(x, y + 1) + axial);
        if (x + 1 < w) v = std::min(v, at(x + 1, y + 1) + diagonal);
        if (x > 0) v = std::min(v, at(x - 1, y + 1) + diagonal);
      }
      at(x, y) = v;
    }
  }
}

void check_edges(const EdgeMap& edges, int width, int height, const char* op) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument(std::string(op) + ": nonpositive dimensions");
  if (edges.points.empty())
    throw DegenerateInputError(std::string(op) + ": empty edge map");
  if (edges.magnitudes.size() != edges.points.size())
    throw std::invalid_argument(std::string(op) +
                                ": points/magnitudes length mismatch");
  for (const PixelCoord& p : edges.points)
    if (p.x < 0 || p.x >= width || p.y < 0 || p.y >= height)
      throw std::invalid_argument(std::string(op) +
                                  ": edge point out of bounds");
}

}  // namespace

SignedField distance_transform(const EdgeMap& edges, int width, int height) {
  check_edges(edges, width, height, "distance_transform");

  // Integer domain keeps the two-pass result exactly equal to the shortest
  // chamfer path; the single division by 3 happens once at the end.
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> d(static_cast<std::size_t>(width) * height, kInf);
  for (const PixelCoord& p : edges.points)
    d[static_cast<std::size_t>(p.y) * width + p.x] = 0;
  chamfer_two_pass<std::int64_t>(d, width, height, 3, 4);

  SignedField out = SignedField::create(width, height);
  for (std::size_t i = 0; i < d.size(); ++i)
    out.values[i] = static_cast<double>(d[i]) / 3.0;
  return out;
}

SignedField saliency_distance_transform(const EdgeMap& edges, int width,
                                        int height) {
  check_edges(edges, width, height, "saliency_distance_transform");

  double max_mag = 0.0;
  for (double m : edges.magnitudes) max_mag = std::max(max_mag, m);

  std::vector<double> d(static_cast<std::size_t>(width) * height,
                        std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < edges.points.size(); ++i) {
    const PixelCoord& p = edges.points[i];
    const double seed =
        max_mag > 0.0 ? 1.0 - edges.magnitudes[i] / max_mag : 0.0;
    auto& cell = d[static_cast<std::size_t>(p.y) * width + p.x];
    cell = std::min(cell, seed);
  }
  chamfer_two_pass<double>(d, width, height, 1.0, 4.0 / 3.0);

  SignedField out = SignedField::create(width, height);
  out.values = std::move(d);
  return out;
}

DistanceHistogram distance_histogram(const SignedField& dt, int bins,
                                     double max_d) {
  check_field(dt, "distance_histogram");
  if (bins < 2)
    throw std::invalid_argument("distance_histogram: bins must be >= 2");
  if (!(max_d > 0.0))
    throw std::invalid_argument("distance_histogram: max_d must be positive");

  DistanceHistogram h;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : dt.values) {
    int bin = static_cast<int>(v * bins / max_d);
    if (bin >= bins) bin = bins - 1;
    if (bin < 0) bin = 0;
    ++h.counts[bin];
  }
  return h;
}

}  // namespace cbir
