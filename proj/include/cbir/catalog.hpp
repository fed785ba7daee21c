#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cbir/antipole.hpp"
#include "cbir/similarity.hpp"

namespace cbir {

enum class ColorMode { intensity, rgb };

// Parameters of feature extraction. Hashing these ties every stored record
// to the configuration that produced it.
struct ExtractionConfig {
  ColorMode color_mode = ColorMode::intensity;
  int rgb_bins = 4;  // per channel, used in rgb mode
  int cooc_levels = 8;
  std::vector<std::pair<int, int>> cooc_offsets = {{1, 0}};
  int correlogram_levels = 8;
  std::vector<int> correlogram_distances = {1, 3, 5, 7};
  int orientation_bins = 36;
};

// Parameters of index construction.
struct IndexConfig {
  double weight_color = 1.0;
  double weight_texture = 1.0;
  double weight_wavelet = 1.0;
  double weight_orientation = 1.0;
  double sigma = 0.0;  // <= 0: derive from a sample at build time
  int tau = 3;
  std::uint64_t seed = 1;
};

struct CatalogConfig {
  ExtractionConfig extraction;
  IndexConfig index;
};

// Standardization divisors applied to the non-histogram blocks before
// points enter the metric space. Computed once per catalog (RMS of each
// component over all records, 1 where the RMS vanishes).
struct ScaleFactors {
  std::array<double, 4> texture{1.0, 1.0, 1.0, 1.0};
  std::array<double, 10> wavelet{1.0, 1.0, 1.0, 1.0, 1.0,
                                 1.0, 1.0, 1.0, 1.0, 1.0};
};

struct FeatureRecord {
  std::int64_t id = -1;
  std::string source_path;
  FeatureVector feature;
};

struct CatalogManifest {
  int format_version = 1;
  CatalogConfig config;      // config.index.sigma as configured (0 = auto)
  double sigma_resolved = 0.0;  // the value the tree was built with
  ScaleFactors scales;
  std::size_t record_count = 0;
  std::string config_hash;  // extraction config fingerprint, hex
};

enum class QueryMode { range, knn };

struct QueryEntry {
  std::int64_t id = -1;
  std::string source_path;
  double distance = 0.0;
  // False when the distance is a within-threshold upper bound the range
  // search proved without a distance call.
  bool exact = true;
};

struct QueryResult {
  QueryMode mode = QueryMode::range;
  double t = 0.0;      // range mode
  std::size_t k = 0;   // knn mode
  std::vector<QueryEntry> entries;  // sorted by (distance, id)
  std::uint64_t distance_calls = 0;
};

// An in-memory catalog: manifest, per-image records, and the search tree
// over embedded records. Immutable once built or loaded.
class Catalog {
 public:
  Catalog(CatalogManifest manifest, std::vector<FeatureRecord> records,
          std::unique_ptr<AntipoleNode> tree);

  const CatalogManifest& manifest() const { return manifest_; }
  const std::vector<FeatureRecord>& records() const { return records_; }
  const AntipoleNode& tree() const { return *tree_; }
  const Metric& metric() const { return metric_; }

  FeatureWeights weights() const;

  // Standardizes by the manifest scale factors, then applies the weighted
  // embedding, yielding the coordinates the tree was built over.
  MetricPoint embed(const FeatureVector& f) const;

  const FeatureRecord* find_record(std::int64_t id) const;

 private:
  CatalogManifest manifest_;
  std::vector<FeatureRecord> records_;
  std::unique_ptr<AntipoleNode> tree_;
  Metric metric_;
};

// Extraction pipeline: grayscale + 512x512 resize feed the intensity (or
// RGB) histogram, averaged co-occurrence statistics, and wavelet
// signatures; grayscale + 100x100 resize + Gaussian smoothing + Sobel feed
// the orientation histogram. Histogram blocks come back as frequencies.
FeatureVector extract_features(const Raster& img, const ExtractionConfig& cfg);

// FNV-1a fingerprint of the extraction parameters, as fixed-width hex.
std::string extraction_config_hash(const ExtractionConfig& cfg);

// Divides texture and wavelet components by the scale factors.
FeatureVector standardized(const FeatureVector& f, const ScaleFactors& s);

// Decodes and extracts every image in image_dir (non-recursive, files in
// lexicographic path order, ids 0..N-1), derives scale factors and sigma,
// and builds the tree with the configured seed. Undecodable files are
// skipped and reported through `warnings` when given. Throws CatalogError
// when nothing decodes.
Catalog build_catalog(const std::filesystem::path& image_dir,
                      const CatalogConfig& config,
                      std::vector<std::string>* warnings = nullptr);

// Writes manifest.txt, records.tsv, and tree.txt. Each file is written to
// a temporary name and renamed into place. Identical build inputs produce
// byte-identical files.
void save_catalog(const Catalog& catalog, const std::filesystem::path& dir);

Catalog load_catalog(const std::filesystem::path& dir);

// Extracts the query image with the catalog's stored config and runs the
// corresponding search. distance_calls covers the search only.
QueryResult query_range(const Catalog& catalog,
                        const std::filesystem::path& image, double t);
QueryResult query_knn(const Catalog& catalog,
                      const std::filesystem::path& image, std::size_t k);

// As above, starting from an already extracted feature vector.
QueryResult query_range_features(const Catalog& catalog,
                                 const FeatureVector& feature, double t);
QueryResult query_knn_features(const Catalog& catalog,
                               const FeatureVector& feature, std::size_t k);

// Reorders result entries by descending color-histogram intersection with
// the query; the distance column becomes 1 - intersection. Ties keep their
// primary-search order.
void rerank_by_intersection(const Catalog& catalog,
                            const FeatureVector& query_feature,
                            QueryResult& result);

// Reorders result entries by symmetric Hausdorff distance between edge
// maps; result images are re-decoded from their recorded source paths. An
// empty edge map on either side sorts the entry last (infinite distance).
void rerank_by_hausdorff(const Raster& query_image, QueryResult& result);

}  // namespace cbir
