// Command line front end: build a catalog from an image directory, query
// it by example image, or dump the features of a single image.
//
// Exit codes: 0 success, 1 usage error, 2 I/O or decode error, 3 empty
// range result when --fail-on-empty is set.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cbir/catalog.hpp"
#include "cbir/errors.hpp"
#include "cbir/image_io.hpp"
#include "cbir/similarity.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitEmpty = 3;

std::vector<double> parse_weights(const std::string& arg) {
  std::vector<double> out;
  std::stringstream ss(arg);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(part, &used));
    if (used != part.size()) throw std::invalid_argument("weights");
  }
  if (out.size() != 4)
    throw std::invalid_argument(
        "--weights expects four comma-separated numbers: color,texture,"
        "wavelet,orientation");
  return out;
}

nlohmann::json entries_json(const cbir::QueryResult& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const cbir::QueryEntry& e = r.entries[i];
    arr.push_back({{"rank", i + 1},
                   {"id", e.id},
                   {"distance", e.distance},
                   {"exact", e.exact},
                   {"source_path", e.source_path}});
  }
  return arr;
}

void print_result_table(const cbir::QueryResult& r) {
  if (r.entries.empty()) {
    std::printf("no matches\n");
  } else {
    std::printf("%4s  %-14s  %6s  %s\n", "rank", "distance", "id", "source");
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      const cbir::QueryEntry& e = r.entries[i];
      std::printf("%4zu  %-14.8g%s  %6lld  %s\n", i + 1, e.distance,
                  e.exact ? " " : "*", static_cast<long long>(e.id),
                  e.source_path.c_str());
    }
    if (!r.entries.empty()) {
      bool any_bound = false;
      for (const auto& e : r.entries) any_bound |= !e.exact;
      if (any_bound)
        std::printf("(* distance is a proven within-threshold bound)\n");
    }
  }
  std::printf("%zu match(es), %llu distance call(s)\n", r.entries.size(),
              static_cast<unsigned long long>(r.distance_calls));
}

int run_index(const std::string& dir, const std::string& out,
              std::uint64_t seed, double sigma, int bins,
              const std::optional<std::string>& weights) {
  cbir::CatalogConfig config;
  config.index.seed = seed;
  config.index.sigma = sigma;
  if (bins > 0) {
    config.extraction.color_mode = cbir::ColorMode::rgb;
    config.extraction.rgb_bins = bins;
  }
  if (weights) {
    const std::vector<double> w = parse_weights(*weights);
    config.index.weight_color = w[0];
    config.index.weight_texture = w[1];
    config.index.weight_wavelet = w[2];
    config.index.weight_orientation = w[3];
  }
  std::vector<std::string> warnings;
  const cbir::Catalog catalog = cbir::build_catalog(dir, config, &warnings);
  for (const std::string& w : warnings)
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  cbir::save_catalog(catalog, out);
  const cbir::CatalogManifest& m = catalog.manifest();
  std::printf("indexed %zu image(s) into %s\n", m.record_count, out.c_str());
  std::printf("sigma %.8g%s, tau %d, seed %llu, config %s\n", m.sigma_resolved,
              m.config.index.sigma <= 0.0 ? " (derived)" : "",
              m.config.index.tau,
              static_cast<unsigned long long>(m.config.index.seed),
              m.config_hash.c_str());
  return kExitOk;
}

int run_query(const std::string& image, const std::string& catalog_dir,
              const std::optional<double>& range_t,
              const std::optional<std::size_t>& knn_k,
              const std::string& rerank, bool as_json, bool fail_on_empty) {
  const cbir::Catalog catalog = cbir::load_catalog(catalog_dir);
  const cbir::Raster query_image = cbir::decode_image(image);
  const cbir::FeatureVector query_feature = cbir::extract_features(
      query_image, catalog.manifest().config.extraction);

  cbir::QueryResult result =
      range_t ? cbir::query_range_features(catalog, query_feature, *range_t)
              : cbir::query_knn_features(catalog, query_feature, *knn_k);
  if (rerank == "intersection")
    cbir::rerank_by_intersection(catalog, query_feature, result);
  else if (rerank == "hausdorff")
    cbir::rerank_by_hausdorff(query_image, result);

  if (as_json) {
    nlohmann::json j = {{"query", image},
                        {"mode", range_t ? "range" : "knn"},
                        {"entries", entries_json(result)},
                        {"distance_calls", result.distance_calls}};
    if (range_t) j["t"] = *range_t;
    if (knn_k) j["k"] = *knn_k;
    if (!rerank.empty()) j["rerank"] = rerank;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    print_result_table(result);
  }
  if (fail_on_empty && range_t && result.entries.empty()) return kExitEmpty;
  return kExitOk;
}

int run_features(const std::string& image, bool as_json) {
  const cbir::Raster img = cbir::decode_image(image);
  const cbir::FeatureVector f =
      cbir::extract_features(img, cbir::ExtractionConfig{});
  if (as_json) {
    const nlohmann::json j = {
        {"source_path", image},
        {"color", f.color},
        {"texture", f.texture},
        {"wavelet", f.wavelet},
        {"orientation", f.orientation}};
    std::printf("%s\n", j.dump(2).c_str());
    return kExitOk;
  }
  const auto print_block = [](const char* name, const auto& values) {
    std::printf("%s (%zu):", name, values.size());
    for (double v : values) std::printf(" %.8g", v);
    std::printf("\n");
  };
  print_block("color", f.color);
  print_block("texture", f.texture);
  print_block("wavelet", f.wavelet);
  print_block("orientation", f.orientation);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"content-based image retrieval over a metric-tree catalog"};
  app.require_subcommand(1);

  std::string index_dir, index_out;
  std::uint64_t index_seed = 1;
  double index_sigma = 0.0;
  int index_bins = 0;
  std::optional<std::string> index_weights;
  CLI::App* index_cmd =
      app.add_subcommand("index", "extract features and build a catalog");
  index_cmd->add_option("dir", index_dir, "directory of images to index")
      ->required();
  index_cmd->add_option("--out", index_out, "catalog output directory")
      ->required();
  index_cmd->add_option("--seed", index_seed, "tree construction seed");
  index_cmd->add_option("--sigma", index_sigma,
                        "cluster diameter bound (<= 0 derives it from a "
                        "sample)");
  index_cmd->add_option("--bins", index_bins,
                        "per-channel bins for an rgb joint histogram "
                        "(default: 256-bin intensity histogram)");
  index_cmd->add_option("--weights", index_weights,
                        "feature block weights color,texture,wavelet,"
                        "orientation");

  std::string query_image, query_catalog, query_rerank;
  std::optional<double> query_t;
  std::optional<std::size_t> query_k;
  bool query_json = false, query_fail_on_empty = false;
  CLI::App* query_cmd =
      app.add_subcommand("query", "search a catalog by example image");
  query_cmd->add_option("image", query_image, "query image path")->required();
  query_cmd->add_option("--catalog", query_catalog, "catalog directory")
      ->required();
  CLI::Option* opt_range =
      query_cmd->add_option("--range", query_t, "all matches within distance t");
  CLI::Option* opt_knn =
      query_cmd->add_option("--knn", query_k, "k nearest matches");
  opt_range->excludes(opt_knn);
  opt_knn->excludes(opt_range);
  query_cmd->add_option("--rerank", query_rerank,
                        "reorder results by a secondary measure")
      ->check(CLI::IsMember({"intersection", "hausdorff"}));
  query_cmd->add_flag("--json", query_json, "emit one structured object");
  query_cmd->add_flag("--fail-on-empty", query_fail_on_empty,
                      "exit 3 when a range query matches nothing");

  std::string features_image;
  bool features_json = false;
  CLI::App* features_cmd =
      app.add_subcommand("features", "extract and dump one image's features");
  features_cmd->add_option("image", features_image, "image path")->required();
  features_cmd->add_flag("--json", features_json,
                         "emit one structured object");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (index_cmd->parsed())
      return run_index(index_dir, index_out, index_seed, index_sigma,
                       index_bins, index_weights);
    if (query_cmd->parsed()) {
      if (!query_t && !query_k) {
        std::fprintf(stderr, "error: query needs --range T or --knn K\n");
        return kExitUsage;
      }
      return run_query(query_image, query_catalog, query_t, query_k,
                       query_rerank, query_json, query_fail_on_empty);
    }
    return run_features(features_image, features_json);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const cbir::DecodeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const cbir::CatalogError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
}
