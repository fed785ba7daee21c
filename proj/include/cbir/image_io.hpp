#pragma once

#include <filesystem>

#include "cbir/raster.hpp"

namespace cbir {

// Decodes an image file (PNG, JPEG, BMP, PNM, ...) into an 8-bit raster,
// 1 channel for grayscale sources and 3 (RGB order) otherwise. Throws
// DecodeError with the path in the message when the file is missing or not
// a decodable image.
Raster decode_image(const std::filesystem::path& path);

// Binary PGM (1-channel) / PPM (3-channel) writers, mainly for generating
// test corpora.
void write_pnm(const Raster& img, const std::filesystem::path& path);

}  // namespace cbir
