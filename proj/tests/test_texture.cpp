#include "cbir/texture.hpp"

#include <cmath>
#include <stdexcept>

#include "cbir/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "synth_images.hpp"

using namespace cbir;

namespace {

// Width-9 stripe row 0,0,255,255,... so the four level pairs (0,0), (0,1),
// (1,1), (1,0) at offset (1,0) each occur exactly twice.
Raster four_pair_stripes() {
  Raster img = Raster::create(9, 1, 1);
  for (int x = 0; x < 9; ++x)
    img.at(x, 0) = (x % 4 < 2) ? 0 : 255;
  return img;
}

SignedField field_of(const Raster& gray) {
  SignedField f = SignedField::create(gray.width, gray.height);
  for (int y = 0; y < gray.height; ++y)
    for (int x = 0; x < gray.width; ++x)
      f.at(x, y) = static_cast<double>(gray.at(x, y));
  return f;
}

}  // namespace

TEST_CASE("cooccurrence of a constant image is a point mass") {
  const Raster img = testgen::constant_raster(6, 6, 100);
  const CooccurrenceMatrix m = cooccurrence(img, 4, 1, 0);
  const int c = 100 * 4 / 256;  // = 1
  CHECK(m.at(c, c) == doctest::Approx(1.0));
  const TextureStats s = texture_stats(m);
  CHECK(s.energy == doctest::Approx(1.0));
  CHECK(s.entropy == doctest::Approx(0.0));
  CHECK(s.contrast == doctest::Approx(0.0));
  CHECK(s.homogeneity == doctest::Approx(1.0));
}

TEST_CASE("cooccurrence of an alternating stripe splits between (0,1),(1,0)") {
  const Raster img = testgen::checkerboard(8, 8, 1, 0, 255);
  const CooccurrenceMatrix m = cooccurrence(img, 2, 1, 0);
  CHECK(m.at(0, 1) == doctest::Approx(0.5));
  CHECK(m.at(1, 0) == doctest::Approx(0.5));
  CHECK(m.at(0, 0) == doctest::Approx(0.0));
  CHECK(m.at(1, 1) == doctest::Approx(0.0));
  const TextureStats s = texture_stats(m);
  CHECK(s.energy == doctest::Approx(0.5));
  CHECK(s.entropy == doctest::Approx(1.0));
  CHECK(s.contrast == doctest::Approx(1.0));
  CHECK(s.homogeneity == doctest::Approx(0.5));
}

TEST_CASE("uniform mass over four cells gives energy 1/4 and entropy 2") {
  const CooccurrenceMatrix m = cooccurrence(four_pair_stripes(), 2, 1, 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(m.at(i, j) == doctest::Approx(0.25));
  const TextureStats s = texture_stats(m);
  CHECK(s.energy == doctest::Approx(0.25));
  CHECK(s.entropy == doctest::Approx(2.0));
  CHECK(s.contrast == doctest::Approx(0.5));
  CHECK(s.homogeneity == doctest::Approx(0.75));
}

TEST_CASE("cooccurrence matches the pair-enumeration oracle") {
  Rng rng(31);
  const Raster img = testgen::random_raster(rng, 13, 11);
  for (auto [dx, dy] : {std::pair{1, 0}, {0, 1}, {1, 1}, {-1, 2}, {3, -2}}) {
    const CooccurrenceMatrix m = cooccurrence(img, 8, dx, dy);
    const auto probs = oracle::cooccurrence_pairs(img, 8, dx, dy);
    double total = 0.0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        const auto it = probs.find({i, j});
        const double want = it == probs.end() ? 0.0 : it->second;
        CHECK(m.at(i, j) == doctest::Approx(want).epsilon(1e-12));
        total += m.at(i, j);
      }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cooccurrence at the negated offset is the transpose") {
  Rng rng(32);
  const Raster img = testgen::random_raster(rng, 10, 10);
  const CooccurrenceMatrix fwd = cooccurrence(img, 6, 2, 1);
  const CooccurrenceMatrix rev = cooccurrence(img, 6, -2, -1);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(fwd.at(i, j) == rev.at(j, i));
}

TEST_CASE("cooccurrence validates arguments") {
  Rng rng(33);
  const Raster img = testgen::random_raster(rng, 4, 4);
  const Raster rgb = testgen::random_raster(rng, 4, 4, 3);
  CHECK_THROWS_AS(cooccurrence(img, 1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(cooccurrence(img, 257, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(cooccurrence(img, 8, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(cooccurrence(img, 8, 0, -4), std::invalid_argument);
  CHECK_THROWS_AS(cooccurrence(rgb, 8, 1, 0), std::invalid_argument);
}

TEST_CASE("haar2_level on a 2x2 block gives the four orthonormal mixes") {
  SignedField f = SignedField::create(2, 2);
  f.at(0, 0) = 1.0;
  f.at(1, 0) = 2.0;
  f.at(0, 1) = 3.0;
  f.at(1, 1) = 4.0;
  const Subbands b = haar2_level(f);
  CHECK(b.ll.at(0, 0) == doctest::Approx(5.0));
  CHECK(b.lh.at(0, 0) == doctest::Approx(-1.0));
  CHECK(b.hl.at(0, 0) == doctest::Approx(-2.0));
  CHECK(b.hh.at(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("haar2_level coefficients match the tensor-basis oracle") {
  Rng rng(34);
  const SignedField f = testgen::random_field(rng, 8, 6, -5.0, 5.0);
  const Subbands b = haar2_level(f);
  for (int by = 0; by < 3; ++by)
    for (int bx = 0; bx < 4; ++bx) {
      CHECK(b.ll.at(bx, by) ==
            doctest::Approx(oracle::haar_basis_coeff(f, 1, 'l', 'l', bx, by))
                .epsilon(1e-12));
      CHECK(b.lh.at(bx, by) ==
            doctest::Approx(oracle::haar_basis_coeff(f, 1, 'h', 'l', bx, by))
                .epsilon(1e-12));
      CHECK(b.hl.at(bx, by) ==
            doctest::Approx(oracle::haar_basis_coeff(f, 1, 'l', 'h', bx, by))
                .epsilon(1e-12));
      CHECK(b.hh.at(bx, by) ==
            doctest::Approx(oracle::haar_basis_coeff(f, 1, 'h', 'h', bx, by))
                .epsilon(1e-12));
    }
}

TEST_CASE("haar2_level conserves energy and inverts exactly") {
  Rng rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 2 * static_cast<int>(1 + rng.below(8));
    const int h = 2 * static_cast<int>(1 + rng.below(8));
    const SignedField f = testgen::random_field(rng, w, h, -100.0, 100.0);
    const Subbands b = haar2_level(f);
    const double in = oracle::field_energy(f);
    const double out = oracle::field_energy(b.ll) + oracle::field_energy(b.lh) +
                       oracle::field_energy(b.hl) + oracle::field_energy(b.hh);
    CHECK(out == doctest::Approx(in).epsilon(1e-12));

    const SignedField back = inverse_haar2_level(b);
    REQUIRE(back.width == w);
    REQUIRE(back.height == h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        CHECK(back.at(x, y) == doctest::Approx(f.at(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("haar2_level rejects odd dimensions") {
  const SignedField f = SignedField::create(3, 4);
  CHECK_THROWS_AS(haar2_level(f), std::invalid_argument);
  const SignedField g = SignedField::create(4, 5);
  CHECK_THROWS_AS(haar2_level(g), std::invalid_argument);
}

TEST_CASE("wavelet signature of a constant image is zero except the mean") {
  const Raster img = testgen::constant_raster(16, 16, 9);
  const WaveletSignature sig = wavelet_signatures(img);
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(sig.values[i] == doctest::Approx(0.0));
  // Three low-pass halvings each double the approximation coefficient.
  CHECK(sig.values[9] == doctest::Approx(72.0));
}

TEST_CASE("vertical stripes excite only the x-detail bands at level 1") {
  Raster stripes = Raster::create(16, 16, 1);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) stripes.at(x, y) = (x % 2 == 0) ? 0 : 255;
  const WaveletSignature sig = wavelet_signatures(stripes);
  CHECK(sig.values[0] > 1.0);                       // lh: high-pass along x
  CHECK(sig.values[1] == doctest::Approx(0.0));     // hl: high-pass along y
  CHECK(sig.values[2] == doctest::Approx(0.0));     // hh
}

TEST_CASE("wavelet signature matches the tensor-basis oracle") {
  Rng rng(36);
  const Raster img = testgen::random_raster(rng, 16, 16);
  const SignedField f = field_of(img);
  const WaveletSignature sig = wavelet_signatures(img);
  const char kinds[3][2] = {{'h', 'l'}, {'l', 'h'}, {'h', 'h'}};
  for (int level = 1; level <= 3; ++level)
    for (int band = 0; band < 3; ++band) {
      const double want = oracle::haar_band_rms(f, level, kinds[band][0],
                                                kinds[band][1]);
      CHECK(sig.values[3 * (level - 1) + band] ==
            doctest::Approx(want).epsilon(1e-10));
    }
  CHECK(sig.values[9] ==
        doctest::Approx(oracle::haar_band_rms(f, 3, 'l', 'l')).epsilon(1e-10));
}

TEST_CASE("wavelet band energies sum to the image energy") {
  Rng rng(37);
  const Raster img = testgen::random_raster(rng, 24, 24);
  const SignedField f = field_of(img);
  const WaveletSignature sig = wavelet_signatures(img);
  const double sizes[10] = {144, 144, 144, 36, 36, 36, 9, 9, 9, 9};
  double total = 0.0;
  for (std::size_t i = 0; i < 10; ++i)
    total += sig.values[i] * sig.values[i] * sizes[i];
  CHECK(total == doctest::Approx(oracle::field_energy(f)).epsilon(1e-10));
}

TEST_CASE("wavelet_signatures validates shape") {
  Rng rng(38);
  CHECK_THROWS_AS(wavelet_signatures(testgen::random_raster(rng, 16, 8)),
                  std::invalid_argument);
  CHECK_THROWS_AS(wavelet_signatures(testgen::random_raster(rng, 12, 12)),
                  std::invalid_argument);
  CHECK_THROWS_AS(wavelet_signatures(testgen::random_raster(rng, 16, 16, 3)),
                  std::invalid_argument);
}
