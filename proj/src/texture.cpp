#include "cbir/texture.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "cbir/errors.hpp"

namespace cbir {

CooccurrenceMatrix cooccurrence(const Raster& gray, int levels, int dx,
                                int dy) {
  if (gray.width <= 0 || gray.height <= 0 || gray.channels != 1 ||
      gray.data.size() != gray.pixel_count())
    throw std::invalid_argument("cooccurrence: expected a 1-channel raster");
  if (levels < 2 || levels > 256)
    throw std::invalid_argument("cooccurrence: levels out of [2,256]");
  if (std::abs(dx) >= gray.width || std::abs(dy) >= gray.height)
    throw std::invalid_argument("cooccurrence: offset exceeds image extent");

  const int w = gray.width;
  const int h = gray.height;
  const std::size_t cells = static_cast<std::size_t>(levels) * levels;

  std::vector<std::vector<std::uint64_t>> tallies;
  std::uint64_t pairs = 0;
#pragma omp parallel reduction(+ : pairs)
  {
#pragma omp single
    tallies.assign(omp_get_num_threads(), std::vector<std::uint64_t>(cells, 0));
    auto& local = tallies[omp_get_thread_num()];
#pragma omp for
    for (int y = 0; y < h; ++y) {
      const int qy = y + dy;
      if (qy < 0 || qy >= h) continue;
      for (int x = 0; x < w; ++x) {
        const int qx = x + dx;
        if (qx < 0 || qx >= w) continue;
        const int i = gray.at(x, y) * levels / 256;
        const int j = gray.at(qx, qy) * levels / 256;
        ++local[static_cast<std::size_t>(i) * levels + j];
        ++pairs;
      }
    }
  }
  if (pairs == 0)
    throw DegenerateInputError("cooccurrence: no valid pixel pairs");

  CooccurrenceMatrix m;
  m.levels = levels;
  m.dx = dx;
  m.dy = dy;
  m.probs.assign(cells, 0.0);
  std::vector<std::uint64_t> counts(cells, 0);
  for (const auto& t : tallies)
    for (std::size_t i = 0; i < cells; ++i) counts[i] += t[i];
  for (std::size_t i = 0; i < cells; ++i)
    m.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(pairs);
  return m;
}

TextureStats texture_stats(const CooccurrenceMatrix& m) {
  if (m.levels < 2 ||
      m.probs.size() != static_cast<std::size_t>(m.levels) * m.levels)
    throw std::invalid_argument("texture_stats: malformed matrix");
  TextureStats s;
  for (int i = 0; i < m.levels; ++i) {
    for (int j = 0; j < m.levels; ++j) {
      const double p = m.at(i, j);
      s.energy += p * p;
      if (p > 0.0) s.entropy -= p * std::log2(p);
      s.contrast += static_cast<double>(i - j) * (i - j) * p;
      s.homogeneity += p / (1.0 + std::abs(i - j));
    }
  }
  return s;
}

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

}  // namespace

Subbands haar2_level(const SignedField& field) {
  if (field.width <= 0 || field.height <= 0 ||
      field.values.size() !=
          static_cast<std::size_t>(field.width) * field.height)
    throw std::invalid_argument("haar2_level: malformed field");
  if (field.width % 2 != 0 || field.height % 2 != 0)
    throw std::invalid_argument("haar2_level: dimensions must be even");

  const int w = field.width;
  const int h = field.height;
  const int hw = w / 2;
  const int hh = h / 2;

  // Row pass: pair columns.
  SignedField lo = SignedField::create(hw, h);
  SignedField hi = SignedField::create(hw, h);
#pragma omp parallel for
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < hw; ++x) {
      const double a = field.at(2 * x, y);
      const double b = field.at(2 * x + 1, y);
      lo.at(x, y) = (a + b) * kInvSqrt2;
      hi.at(x, y) = (a - b) * kInvSqrt2;
    }
  }

  // Column pass: pair rows.
  Subbands out{SignedField::create(hw, hh), SignedField::create(hw, hh),
               SignedField::create(hw, hh), SignedField::create(hw, hh)};
#pragma omp parallel for
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

SignedField inverse_haar2_level(const Subbands& bands) {
  const int hw = bands.ll.width;
  const int hh = bands.ll.height;
  for (const SignedField* b : {&bands.lh, &bands.hl, &bands.hh})
    if (b->width != hw || b->height != hh)
      throw std::invalid_argument("inverse_haar2_level: subband size mismatch");
  if (hw <= 0 || hh <= 0)
    throw std::invalid_argument("inverse_haar2_level: empty subbands");

  SignedField lo = SignedField::create(hw, 2 * hh);
  SignedField hi = SignedField::create(hw, 2 * hh);
#pragma omp parallel for
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      lo.at(x, 2 * y) = (bands.ll.at(x, y) + bands.hl.at(x, y)) * kInvSqrt2;
      lo.at(x, 2 * y + 1) = (bands.ll.at(x, y) - bands.hl.at(x, y)) * kInvSqrt2;
      hi.at(x, 2 * y) = (bands.lh.at(x, y) + bands.hh.at(x, y)) * kInvSqrt2;
      hi.at(x, 2 * y + 1) = (bands.lh.at(x, y) - bands.hh.at(x, y)) * kInvSqrt2;
    }
  }

  SignedField out = SignedField::create(2 * hw, 2 * hh);
#pragma omp parallel for
  for (int y = 0; y < 2 * hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      out.at(2 * x, y) = (lo.at(x, y) + hi.at(x, y)) * kInvSqrt2;
      out.at(2 * x + 1, y) = (lo.at(x, y) - hi.at(x, y)) * kInvSqrt2;
    }
  }
  return out;
}

namespace {

// RMS over all coefficients. Serial row-order accumulation keeps the result
// independent of thread count.
double band_rms(const SignedField& band) {
  double sum = 0.0;
  for (double c : band.values) sum += c * c;
  return std::sqrt(sum / static_cast<double>(band.values.size()));
}

}  // namespace

WaveletSignature wavelet_signatures(const Raster& gray) {
  if (gray.width <= 0 || gray.height <= 0 || gray.channels != 1 ||
      gray.data.size() != gray.pixel_count())
    throw std::invalid_argument("wavelet_signatures: expected a 1-channel raster");
  if (gray.width != gray.height || gray.width % 8 != 0)
    throw std::invalid_argument(
        "wavelet_signatures: side must be square and divisible by 8");

  SignedField f = SignedField::create(gray.width, gray.height);
#pragma omp parallel for
  for (int y = 0; y < gray.height; ++y)
    for (int x = 0; x < gray.width; ++x)
      f.at(x, y) = static_cast<double>(gray.at(x, y));

  WaveletSignature sig;
  std::size_t k = 0;
  for (int level = 0; level < 3; ++level) {
    Subbands bands = haar2_level(f);
    sig.values[k++] = band_rms(bands.lh);
    sig.values[k++] = band_rms(bands.hl);
    sig.values[k++] = band_rms(bands.hh);
    f = std::move(bands.ll);
  }
  sig.values[k] = band_rms(f);
  return sig;
}

}  // namespace cbir
