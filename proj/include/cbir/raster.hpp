#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace cbir {

// 8-bit image, row-major, channel-interleaved. channels is 1 (gray) or 3 (RGB).
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  static Raster create(int width, int height, int channels);

  std::uint8_t at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
};

// Dense 2D array of doubles, row-major.
struct SignedField {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  static SignedField create(int width, int height);

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  double& at(int x, int y) {
    return values[static_cast<std::size_t>(y) * width + x];
  }
};

// 3x3 kernel, row-major: entry for tap offset (dx, dy) is k[(dy+1)*3 + (dx+1)].
using Kernel3 = std::array<double, 9>;

// Rounds half away from zero (2.5 -> 3, -2.5 -> -3), then clamps to [0, 255].
std::uint8_t quantize_u8(double v);

// Luma conversion: round(0.299 R + 0.587 G + 0.114 B), half away from zero.
// A 1-channel input is returned unchanged.
Raster to_grayscale(const Raster& img);

// Bilinear resize with center-aligned sampling: output pixel (x, y) samples
// the source at ((x + 0.5) * sw / w - 0.5, (y + 0.5) * sh / h - 0.5), with
// sample coordinates clamped to the source rectangle. Channels are
// interpolated independently and rounded half away from zero.
Raster resize(const Raster& img, int width, int height);

// 3x3 correlation (kernel taps applied as given, no flip) over a 1-channel
// raster with replicate borders. Output keeps full precision.
SignedField convolve3(const Raster& gray, const Kernel3& kernel);

// convolve3 over an existing field, same tap and border conventions.
SignedField convolve3(const SignedField& field, const Kernel3& kernel);

}  // namespace cbir
