#include "cbir/serial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cbir/errors.hpp"

namespace cbir::serial {

Raster to_grayscale(const Raster& img) {
  if (img.channels == 1) return img;
  Raster out = Raster::create(img.width, img.height, 1);
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
  if (width == img.width && height == img.height) return img;
  Raster out = Raster::create(width, height, img.channels);
  const double sx = static_cast<double>(img.width) / width;
  const double sy = static_cast<double>(img.height) / height;
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

SignedField convolve3(const Raster& gray, const Kernel3& kernel) {
  SignedField out = SignedField::create(gray.width, gray.height);
  for (int y = 0; y < gray.height; ++y) {
    for (int x = 0; x < gray.width; ++x) {
      double acc = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = std::clamp(y + dy, 0, gray.height - 1);
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = std::clamp(x + dx, 0, gray.width - 1);
          acc += kernel[(dy + 1) * 3 + (dx + 1)] * gray.at(xx, yy);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

ColorHistogram intensity_histogram(const Raster& gray) {
  ColorHistogram h;
  h.counts.assign(256, 0);
  h.total = gray.pixel_count();
  for (std::uint8_t v : gray.data) ++h.counts[v];
  return h;
}

ColorHistogram rgb_histogram(const Raster& rgb, int bins_per_channel) {
  const int b = bins_per_channel;
  ColorHistogram h;
  h.counts.assign(static_cast<std::size_t>(b) * b * b, 0);
  h.total = rgb.pixel_count();
  for (int y = 0; y < rgb.height; ++y) {
    for (int x = 0; x < rgb.width; ++x) {
      const int rb = rgb.at(x, y, 0) * b / 256;
      const int gb = rgb.at(x, y, 1) * b / 256;
      const int bb = rgb.at(x, y, 2) * b / 256;
      ++h.counts[(static_cast<std::size_t>(rb) * b + gb) * b + bb];
    }
  }
  return h;
}

Correlogram correlogram(const Raster& gray, int levels,
                        const std::vector<int>& distances) {
  Correlogram cg;
  cg.color_count = levels;
  cg.distances = distances;
  cg.entries.assign(
      static_cast<std::size_t>(levels) * levels * distances.size(), 0);
  const auto quant = [&](int x, int y) { return gray.at(x, y) * levels / 256; };
  for (int y = 0; y < gray.height; ++y) {
    for (int x = 0; x < gray.width; ++x) {
      const int ci = quant(x, y);
      for (std::size_t di = 0; di < distances.size(); ++di) {
        const int d = distances[di];
        for (int dy = -d; dy <= d; ++dy) {
          for (int dx = -d; dx <= d; ++dx) {
            if (std::max(std::abs(dx), std::abs(dy)) != d) continue;
            const int qx = x + dx;
            const int qy = y + dy;
            if (qx < 0 || qx >= gray.width || qy < 0 || qy >= gray.height)
              continue;
            ++cg.at(ci, quant(qx, qy), di);
          }
        }
      }
    }
  }
  return cg;
}

CooccurrenceMatrix cooccurrence(const Raster& gray, int levels, int dx,
                                int dy) {
  CooccurrenceMatrix m;
  m.levels = levels;
  m.dx = dx;
  m.dy = dy;
  std::vector<std::uint64_t> counts(
      static_cast<std::size_t>(levels) * levels, 0);
  std::uint64_t pairs = 0;
  for (int y = 0; y < gray.height; ++y) {
    for (int x = 0; x < gray.width; ++x) {
      const int qx = x + dx;
      const int qy = y + dy;
      if (qx < 0 || qx >= gray.width || qy < 0 || qy >= gray.height) continue;
      const int i = gray.at(x, y) * levels / 256;
      const int j = gray.at(qx, qy) * levels / 256;
      ++counts[static_cast<std::size_t>(i) * levels + j];
      ++pairs;
    }
  }
  if (pairs == 0)
    throw DegenerateInputError("cooccurrence: no valid pixel pairs");
  m.probs.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    m.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(pairs);
  return m;
}

OrientationHistogram orientation_histogram(const GradientField& g, int bins) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  OrientationHistogram out;
  out.weights.assign(static_cast<std::size_t>(bins), 0.0);
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      const double gx = g.gx.at(x, y);
      const double gy = g.gy.at(x, y);
      const double m = std::hypot(gx, gy);
      if (m <= 0.0) continue;
      double a = std::atan2(gy, gx);
      if (a < 0.0) a += kTwoPi;
      int bin = static_cast<int>(a * bins / kTwoPi);
      if (bin >= bins) bin = bins - 1;
      out.weights[bin] += m;
    }
  }
  return out;
}

Subbands haar2_level(const SignedField& field) {
  constexpr double kInvSqrt2 = 0.7071067811865475244;
  const int hw = field.width / 2;
  const int hh = field.height / 2;
  SignedField lo = SignedField::create(hw, field.height);
  SignedField hi = SignedField::create(hw, field.height);
  for (int y = 0; y < field.height; ++y) {
    for (int x = 0; x < hw; ++x) {
      const double a = field.at(2 * x, y);
      const double b = field.at(2 * x + 1, y);
      lo.at(x, y) = (a + b) * kInvSqrt2;
      hi.at(x, y) = (a - b) * kInvSqrt2;
    }
  }
  Subbands out{SignedField::create(hw, hh), SignedField::create(hw, hh),
               SignedField::create(hw, hh), SignedField::create(hw, hh)};
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      const double la = lo.at(x, 2 * y);
      const double lb = lo.at(x, 2 * y + 1);
      const double ha = hi.at(x, 2 * y);
      const double hb = hi.at(x, 2 * y + 1);
      out.ll.at(x, y) = (la + lb) * kInvSqrt2;
      out.hl.at(x, y) = (la - lb) * kInvSqrt2;
      out.lh.at(x, y) = (ha + hb) * kInvSqrt2;
      out.hh.at(x, y) = (ha - hb) * kInvSqrt2;
    }
  }
  return out;
}

double hausdorff_directed(std::span<const PixelCoord> a,
                          std::span<const PixelCoord> b) {
  double worst = 0.0;
  for (const PixelCoord& p : a) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const PixelCoord& q : b) {
      const double dx = p.x - q.x;
      const double dy = p.y - q.y;
      nearest = std::min(nearest, std::sqrt(dx * dx + dy * dy));
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace cbir::serial
