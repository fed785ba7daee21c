#include "cbir/similarity.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cbir/errors.hpp"
#include "cbir/rng.hpp"
#include "doctest.h"

using namespace cbir;

namespace {

FeatureVector random_feature(Rng& rng, std::size_t color_bins,
                             std::size_t orient_bins) {
  FeatureVector f;
  f.color.resize(color_bins);
  f.orientation.resize(orient_bins);
  const auto unit = [&rng] {
    return static_cast<double>(rng.below(1000000)) / 1e6;
  };
  for (auto& v : f.color) v = unit();
  for (auto& v : f.texture) v = 10.0 * unit();
  for (auto& v : f.wavelet) v = 100.0 * unit();
  for (auto& v : f.orientation) v = unit();
  return f;
}

}  // namespace

TEST_CASE("hist_euclidean basics") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{1.0, 2.0, 3.0};
  const std::vector<double> c{2.0, 4.0, 3.0};
  CHECK(hist_euclidean(a, b) == doctest::Approx(0.0));
  CHECK(hist_euclidean(a, c) == doctest::Approx(std::sqrt(5.0)));
  CHECK(hist_euclidean(a, c) == doctest::Approx(hist_euclidean(c, a)));
  CHECK_THROWS_AS(hist_euclidean(a, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("hist_euclidean satisfies the triangle inequality") {
  Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(6), b(6), c(6);
    for (int i = 0; i < 6; ++i) {
      a[i] = static_cast<double>(rng.below(100));
      b[i] = static_cast<double>(rng.below(100));
      c[i] = static_cast<double>(rng.below(100));
    }
    CHECK(hist_euclidean(a, c) <=
          hist_euclidean(a, b) + hist_euclidean(b, c) + 1e-9);
  }
}

TEST_CASE("hist_intersection golden and bounds") {
  const std::vector<double> h{2.0, 2.0};
  const std::vector<double> g{1.0, 3.0};
  // min(2,1) + min(2,3) = 3 over min(4,4) = 4.
  CHECK(hist_intersection(h, g) == doctest::Approx(0.75));
  CHECK(hist_intersection(h, h) == doctest::Approx(1.0));
  CHECK(hist_intersection(h, g) == doctest::Approx(hist_intersection(g, h)));

  const std::vector<double> disjoint_a{1.0, 0.0};
  const std::vector<double> disjoint_b{0.0, 2.0};
  CHECK(hist_intersection(disjoint_a, disjoint_b) == doctest::Approx(0.0));
}

TEST_CASE("hist_intersection stays in [0,1] on random inputs") {
  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> h(8), g(8);
    for (int i = 0; i < 8; ++i) {
      h[i] = static_cast<double>(rng.below(50));
      g[i] = static_cast<double>(rng.below(50));
    }
    h[0] += 1.0;  // keep mass positive
    g[0] += 1.0;
    const double s = hist_intersection(h, g);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0 + 1e-12);
  }
}

TEST_CASE("hist_intersection rejects zero-mass inputs and length mismatch") {
  const std::vector<double> zero{0.0, 0.0};
  const std::vector<double> one{1.0, 0.0};
  CHECK_THROWS_AS(hist_intersection(zero, zero), DegenerateInputError);
  // A zero-mass side makes the normalizer 0/0; treated as degenerate too.
  CHECK_THROWS_AS(hist_intersection(zero, one), DegenerateInputError);
  CHECK_THROWS_AS(hist_intersection(one, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("directed Hausdorff golden on two small point sets") {
  const std::vector<PixelCoord> a{{0, 0}};
  const std::vector<PixelCoord> b{{3, 4}};
  CHECK(hausdorff_directed(a, b) == doctest::Approx(5.0));

  const std::vector<PixelCoord> c{{0, 0}, {10, 0}};
  CHECK(hausdorff_directed(a, c) == doctest::Approx(0.0));
  CHECK(hausdorff_directed(c, a) == doctest::Approx(10.0));
  CHECK(hausdorff(a, c) == doctest::Approx(10.0));
}

TEST_CASE("Hausdorff distance is zero iff sets coincide") {
  const std::vector<PixelCoord> a{{1, 2}, {3, 4}};
  const std::vector<PixelCoord> same{{3, 4}, {1, 2}};
  const std::vector<PixelCoord> other{{1, 2}, {3, 5}};
  CHECK(hausdorff(a, same) == doctest::Approx(0.0));
  CHECK(hausdorff(a, other) > 0.0);
}

TEST_CASE("Hausdorff is symmetric and positive on random sets") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PixelCoord> a, b;
    for (std::size_t i = 0; i < 5 + rng.below(5); ++i)
      a.push_back({static_cast<int>(rng.below(50)),
                   static_cast<int>(rng.below(50))});
    for (std::size_t i = 0; i < 5 + rng.below(5); ++i)
      b.push_back({static_cast<int>(rng.below(50)),
                   static_cast<int>(rng.below(50))});
    CHECK(hausdorff(a, b) == doctest::Approx(hausdorff(b, a)));
    CHECK(hausdorff(a, b) >= 0.0);
    CHECK(hausdorff(a, a) == doctest::Approx(0.0));
  }
}

TEST_CASE("hausdorff_directed rejects empty sets") {
  const std::vector<PixelCoord> pts{{0, 0}};
  CHECK_THROWS_AS(hausdorff_directed({}, pts), std::invalid_argument);
  CHECK_THROWS_AS(hausdorff_directed(pts, {}), std::invalid_argument);
}

TEST_CASE("FeatureWeights normalizes to unit sum and validates") {
  const FeatureWeights w(2.0, 1.0, 1.0, 0.0);
  CHECK(w.color() == doctest::Approx(0.5));
  CHECK(w.texture() == doctest::Approx(0.25));
  CHECK(w.wavelet() == doctest::Approx(0.25));
  CHECK(w.orientation() == doctest::Approx(0.0));
  CHECK_THROWS_AS(FeatureWeights(-1.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(FeatureWeights(0.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("composite_distance golden with hand-weighted blocks") {
  FeatureVector u, v;
  u.color = {1.0, 0.0};
  v.color = {0.0, 1.0};            // block L2^2 = 2
  u.texture = {1.0, 0.0, 0.0, 0.0};
  v.texture = {0.0, 0.0, 0.0, 0.0};  // block L2^2 = 1
  u.orientation = {0.0};
  v.orientation = {2.0};           // block L2^2 = 4
  const FeatureWeights w(1.0, 2.0, 0.0, 1.0);  // normalized 0.25/0.5/0/0.25
  // sqrt(0.25*2 + 0.5*1 + 0 + 0.25*4) = sqrt(2)
  CHECK(composite_distance(u, v, w) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("composite_distance is a metric on random features") {
  Rng rng(54);
  const FeatureWeights w(1.0, 3.0, 2.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const FeatureVector a = random_feature(rng, 16, 8);
    const FeatureVector b = random_feature(rng, 16, 8);
    const FeatureVector c = random_feature(rng, 16, 8);
    const double ab = composite_distance(a, b, w);
    const double ba = composite_distance(b, a, w);
    const double ac = composite_distance(a, c, w);
    const double bc = composite_distance(b, c, w);
    CHECK(ab == doctest::Approx(ba));
    CHECK(composite_distance(a, a, w) == doctest::Approx(0.0));
    CHECK(ab >= 0.0);
    CHECK(ac <= ab + bc + 1e-9);
  }
}

TEST_CASE("ignored blocks do not affect composite_distance") {
  Rng rng(55);
  FeatureVector a = random_feature(rng, 8, 8);
  FeatureVector b = a;
  b.wavelet[3] += 1000.0;  // perturb only the wavelet block
  const FeatureWeights no_wavelet(1.0, 1.0, 0.0, 1.0);
  CHECK(composite_distance(a, b, no_wavelet) == doctest::Approx(0.0));
  const FeatureWeights with_wavelet(1.0, 1.0, 1.0, 1.0);
  CHECK(composite_distance(a, b, with_wavelet) > 0.0);
}

TEST_CASE("composite_distance rejects block size mismatches") {
  Rng rng(56);
  const FeatureVector a = random_feature(rng, 8, 8);
  const FeatureVector b = random_feature(rng, 9, 8);
  const FeatureVector c = random_feature(rng, 8, 7);
  const FeatureWeights w(1.0, 1.0, 1.0, 1.0);
  CHECK_THROWS_AS(composite_distance(a, b, w), std::invalid_argument);
  CHECK_THROWS_AS(composite_distance(a, c, w), std::invalid_argument);
}

TEST_CASE("color-only weights reduce the composite metric to color L2") {
  Rng rng(58);
  const FeatureWeights w(1.0, 0.0, 0.0, 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const FeatureVector a = random_feature(rng, 10, 5);
    const FeatureVector b = random_feature(rng, 10, 5);
    CHECK(composite_distance(a, b, w) ==
          doctest::Approx(hist_euclidean(a.color, b.color)).epsilon(1e-12));
  }
}

TEST_CASE("weighted_embedding turns the composite metric into plain L2") {
  Rng rng(57);
  const FeatureWeights w(2.0, 1.0, 4.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const FeatureVector a = random_feature(rng, 12, 6);
    const FeatureVector b = random_feature(rng, 12, 6);
    const std::vector<double> ea = weighted_embedding(a, w);
    const std::vector<double> eb = weighted_embedding(b, w);
    REQUIRE(ea.size() == a.dimension());
    CHECK(hist_euclidean(ea, eb) ==
          doctest::Approx(composite_distance(a, b, w)).epsilon(1e-12));
  }
}

TEST_CASE("flatten orders blocks as color, texture, wavelet, orientation") {
  FeatureVector f;
  f.color = {1.0, 2.0};
  f.texture = {3.0, 4.0, 5.0, 6.0};
  f.wavelet = {7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  f.orientation = {17.0};
  const std::vector<double> flat = f.flatten();
  REQUIRE(flat.size() == 17);
  CHECK(flat.front() == 1.0);
  CHECK(flat[2] == 3.0);
  CHECK(flat[6] == 7.0);
  CHECK(flat.back() == 17.0);
}
