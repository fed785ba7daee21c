#pragma once

// Deterministic synthetic rasters for tests: random fields, geometric
// patterns, and a parameterized corpus generator for end-to-end runs.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cbir/image_io.hpp"
#include "cbir/raster.hpp"
#include "cbir/rng.hpp"

namespace cbir::testgen {

inline Raster random_raster(Rng& rng, int w, int h, int channels = 1) {
  Raster img = Raster::create(w, h, channels);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

inline SignedField random_field(Rng& rng, int w, int h, double lo = -1.0,
                                double hi = 1.0) {
  SignedField f = SignedField::create(w, h);
  for (auto& v : f.values) {
    const double u =
        static_cast<double>(rng.below(1u << 24)) / static_cast<double>(1u << 24);
    v = lo + u * (hi - lo);
  }
  return f;
}

inline Raster constant_raster(int w, int h, std::uint8_t v, int channels = 1) {
  Raster img = Raster::create(w, h, channels);
  for (auto& d : img.data) d = v;
  return img;
}

inline Raster checkerboard(int w, int h, int cell, std::uint8_t a,
                           std::uint8_t b) {
  Raster img = Raster::create(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img.at(x, y) = ((x / cell + y / cell) % 2 == 0) ? a : b;
  return img;
}

inline Raster ramp_raster(int w, int h) {
  Raster img = Raster::create(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img.at(x, y) = static_cast<std::uint8_t>(
          (x + y) * 255 / (w + h - 2 > 0 ? w + h - 2 : 1));
  return img;
}

// Distinct-looking 64x64 grayscale images spread over four families:
// noisy flats, vertical stripes, horizontal stripes, and disc blobs.
// Same index, same image.
inline Raster corpus_image(std::size_t index) {
  Rng rng(0x9e3779b97f4a7c15ULL + index);
  const int w = 64, h = 64;
  Raster img = Raster::create(w, h, 1);
  const std::size_t family = index % 4;
  const int p = static_cast<int>(index / 4);

  if (family == 0) {
    const int base = 40 + (p * 13) % 160;
    for (auto& v : img.data)
      v = static_cast<std::uint8_t>(base + static_cast<int>(rng.below(31)));
  } else if (family == 1) {
    const int period = 2 + p % 14;
    const std::uint8_t lo = static_cast<std::uint8_t>(20 + (p * 7) % 60);
    const std::uint8_t hi = static_cast<std::uint8_t>(160 + (p * 11) % 90);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        img.at(x, y) = (x / period) % 2 == 0 ? lo : hi;
  } else if (family == 2) {
    const int period = 2 + p % 14;
    const std::uint8_t lo = static_cast<std::uint8_t>(40 + (p * 13) % 50);
    const std::uint8_t hi = static_cast<std::uint8_t>(150 + (p * 17) % 100);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        img.at(x, y) = (y / period) % 2 == 0 ? lo : hi;
  } else {
    const int cx = 8 + static_cast<int>(rng.below(w - 16));
    const int cy = 8 + static_cast<int>(rng.below(h - 16));
    const int r = 4 + p % 20;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const int dx = x - cx, dy = y - cy;
        img.at(x, y) = dx * dx + dy * dy <= r * r ? 240 : 25;
      }
  }
  return img;
}

// Writes `count` corpus images into dir as zero-padded .pgm files and
// returns their paths in lexicographic (= index) order.
inline std::vector<std::filesystem::path> write_corpus(
    const std::filesystem::path& dir, std::size_t count) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (std::size_t i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "img_%03zu.pgm", i);
    const std::filesystem::path p = dir / name;
    write_pnm(corpus_image(i), p);
    paths.push_back(p);
  }
  return paths;
}

}  // namespace cbir::testgen
