#pragma once

#include <span>

#include "cbir/color.hpp"
#include "cbir/edge.hpp"
#include "cbir/raster.hpp"
#include "cbir/texture.hpp"

// Single-threaded reference implementations of the parallel kernels.
// Deliberately plain loops, written independently of the production code
// paths: equivalence tests compare the two, and the benchmark tool measures
// the speedup. Integer-tally kernels must agree bitwise; floating-point
// kernels agree within accumulation-order tolerance.
namespace cbir::serial {

Raster to_grayscale(const Raster& img);
Raster resize(const Raster& img, int width, int height);
SignedField convolve3(const Raster& gray, const Kernel3& kernel);
ColorHistogram intensity_histogram(const Raster& gray);
ColorHistogram rgb_histogram(const Raster& rgb, int bins_per_channel);
Correlogram correlogram(const Raster& gray, int levels,
                        const std::vector<int>& distances);
CooccurrenceMatrix cooccurrence(const Raster& gray, int levels, int dx,
                                int dy);
OrientationHistogram orientation_histogram(const GradientField& g, int bins);
Subbands haar2_level(const SignedField& field);
double hausdorff_directed(std::span<const PixelCoord> a,
                          std::span<const PixelCoord> b);

}  // namespace cbir::serial
