#include "cbir/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbir {

namespace {

void check_raster(const Raster& img) {
  if (img.width <= 0 || img.height <= 0)
    throw std::invalid_argument("raster: nonpositive dimensions");
  if (img.channels != 1 && img.channels != 3)
    throw std::invalid_argument("raster: channels must be 1 or 3");
  if (img.data.size() != img.pixel_count() * img.channels)
    throw std::invalid_argument("raster: data size does not match dimensions");
}

inline int clamp_coord(int v, int hi) { return std::clamp(v, 0, hi); }

}  // namespace

Raster Raster::create(int width, int height, int channels) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("raster: nonpositive dimensions");
  if (channels != 1 && channels != 3)
    throw std::invalid_argument("raster: channels must be 1 or 3");
  Raster r;
  r.width = width;
  r.height = height;
  r.channels = channels;
  r.data.assign(static_cast<std::size_t>(width) * height * channels, 0);
  return r;
}

SignedField SignedField::create(int width, int height) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("field: nonpositive dimensions");
  SignedField f;
  f.width = width;
  f.height = height;
  f.values.assign(static_cast<std::size_t>(width) * height, 0.0);
  return f;
}

std::uint8_t quantize_u8(double v) {
  const double r = std::round(v);  // halfway cases away from zero
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

Raster to_grayscale(const Raster& img) {
  check_raster(img);
  if (img.channels == 1) return img;
  Raster out = Raster::create(img.width, img.height, 1);
#pragma omp parallel for
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double luma = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                          0.114 * img.at(x, y, 2);
      out.at(x, y) = quantize_u8(luma);
    }
  }
  return out;
}

Raster resize(const Raster& img, int width, int height) {
  check_raster(img);
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("resize: nonpositive target dimensions");
  if (width == img.width && height == img.height) return img;

  Raster out = Raster::create(width, height, img.channels);
  const double sx = static_cast<double>(img.width) / width;
  const double sy = static_cast<double>(img.height) / height;
#pragma omp parallel for
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0,
                                 static_cast<double>(img.height - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0,
                                   static_cast<double>(img.width - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, img.width - 1);
      const double wx = fx - x0;
      for (int c = 0; c < img.channels; ++c) {
        const double top =
            (1.0 - wx) * img.at(x0, y0, c) + wx * img.at(x1, y0, c);
        const double bot =
            (1.0 - wx) * img.at(x0, y1, c) + wx * img.at(x1, y1, c);
        out.at(x, y, c) = quantize_u8((1.0 - wy) * top + wy * bot);
      }
    }
  }
  return out;
}

namespace {

template <class At>
SignedField correlate3(int w, int h, const Kernel3& kernel, At src) {
  SignedField out = SignedField::create(w, h);
#pragma omp parallel for
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = clamp_coord(y + dy, h - 1);
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = clamp_coord(x + dx, w - 1);
          acc += kernel[(dy + 1) * 3 + (dx + 1)] * src(xx, yy);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

}  // namespace

SignedField convolve3(const Raster& gray, const Kernel3& kernel) {
  check_raster(gray);
  if (gray.channels != 1)
    throw std::invalid_argument("convolve3: expected a 1-channel raster");
  return correlate3(gray.width, gray.height, kernel,
                    [&gray](int x, int y) -> double { return gray.at(x, y); });
}

SignedField convolve3(const SignedField& field, const Kernel3& kernel) {
  if (field.width <= 0 || field.height <= 0)
    throw std::invalid_argument("convolve3: empty field");
  return correlate3(field.width, field.height, kernel,
                    [&field](int x, int y) { return field.at(x, y); });
}

}  // namespace cbir
