#include "cbir/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cbir/errors.hpp"

namespace cbir {

std::vector<double> FeatureVector::flatten() const {
  std::vector<double> out;
  out.reserve(dimension());
  out.insert(out.end(), color.begin(), color.end());
  out.insert(out.end(), texture.begin(), texture.end());
  out.insert(out.end(), wavelet.begin(), wavelet.end());
  out.insert(out.end(), orientation.begin(), orientation.end());
  return out;
}

FeatureWeights::FeatureWeights(double color, double texture, double wavelet,
                               double orientation)
    : color_(color),
      texture_(texture),
      wavelet_(wavelet),
      orientation_(orientation) {
  if (color < 0 || texture < 0 || wavelet < 0 || orientation < 0)
    throw std::invalid_argument("feature weights must be non-negative");
  const double sum = color + texture + wavelet + orientation;
  if (sum <= 0)
    throw std::invalid_argument("feature weights must not all be zero");
  color_ /= sum;
  texture_ /= sum;
  wavelet_ /= sum;
  orientation_ /= sum;
}

double hist_euclidean(std::span<const double> h, std::span<const double> g) {
  if (h.size() != g.size())
    throw std::invalid_argument("hist_euclidean: length mismatch");
  double sq = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double d = h[i] - g[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double hist_intersection(std::span<const double> h, std::span<const double> g) {
  if (h.size() != g.size())
    throw std::invalid_argument("hist_intersection: length mismatch");
  double overlap = 0.0, th = 0.0, tg = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    overlap += std::min(h[i], g[i]);
    th += h[i];
    tg += g[i];
  }
  const double denom = std::min(th, tg);
  if (denom <= 0.0)
    throw DegenerateInputError("hist_intersection: zero-mass histogram");
  return overlap / denom;
}

namespace {

inline double point_distance(const PixelCoord& a, const PixelCoord& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

double hausdorff_directed(std::span<const PixelCoord> a,
                          std::span<const PixelCoord> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("hausdorff_directed: empty point set");
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst)
  for (std::size_t i = 0; i < a.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const PixelCoord& q : b)
      nearest = std::min(nearest, point_distance(a[i], q));
    worst = std::max(worst, nearest);
  }
  return worst;
}

double hausdorff(std::span<const PixelCoord> a, std::span<const PixelCoord> b) {
  return std::max(hausdorff_directed(a, b), hausdorff_directed(b, a));
}

namespace {

void check_layout(const FeatureVector& u, const FeatureVector& v) {
  if (u.color.size() != v.color.size() ||
      u.orientation.size() != v.orientation.size())
    throw std::invalid_argument("composite_distance: layout mismatch");
}

}  // namespace

double composite_distance(const FeatureVector& u, const FeatureVector& v,
                          const FeatureWeights& w) {
  check_layout(u, v);
  const double dc = hist_euclidean(u.color, v.color);
  const double dt = hist_euclidean(u.texture, v.texture);
  const double dw = hist_euclidean(u.wavelet, v.wavelet);
  const double dor = hist_euclidean(u.orientation, v.orientation);
  return std::sqrt(w.color() * dc * dc + w.texture() * dt * dt +
                   w.wavelet() * dw * dw + w.orientation() * dor * dor);
}

std::vector<double> weighted_embedding(const FeatureVector& u,
                                       const FeatureWeights& w) {
  std::vector<double> out;
  out.reserve(u.dimension());
  const double sc = std::sqrt(w.color());
  const double st = std::sqrt(w.texture());
  const double sw = std::sqrt(w.wavelet());
  const double so = std::sqrt(w.orientation());
  for (double v : u.color) out.push_back(sc * v);
  for (double v : u.texture) out.push_back(st * v);
  for (double v : u.wavelet) out.push_back(sw * v);
  for (double v : u.orientation) out.push_back(so * v);
  return out;
}

}  // namespace cbir
