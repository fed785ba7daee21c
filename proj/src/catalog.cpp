#include "cbir/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cbir/color.hpp"
#include "cbir/edge.hpp"
#include "cbir/errors.hpp"
#include "cbir/image_io.hpp"
#include "cbir/texture.hpp"

namespace fs = std::filesystem;

namespace cbir {

namespace {

// %.17g round-trips every double exactly.
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw CatalogError(std::string("malformed number in ") + what + ": " +
                       std::string(s));
  return v;
}

std::int64_t parse_int(std::string_view s, const char* what) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw CatalogError(std::string("malformed integer in ") + what + ": " +
                       std::string(s));
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<double> frequencies(const ColorHistogram& h) {
  std::vector<double> out(h.counts.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
  return out;
}

Raster promote_to_rgb(const Raster& gray) {
  Raster out = Raster::create(gray.width, gray.height, 3);
  for (int y = 0; y < gray.height; ++y)
    for (int x = 0; x < gray.width; ++x)
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = gray.at(x, y);
  return out;
}

}  // namespace

FeatureVector extract_features(const Raster& img,
                               const ExtractionConfig& cfg) {
  if (cfg.cooc_offsets.empty())
    throw std::invalid_argument("extract_features: no co-occurrence offsets");

  FeatureVector f;
  const Raster gray = to_grayscale(img);
  const Raster g512 = resize(gray, 512, 512);

  if (cfg.color_mode == ColorMode::intensity) {
    f.color = frequencies(intensity_histogram(g512));
  } else {
    const Raster rgb = img.channels == 3 ? img : promote_to_rgb(gray);
    f.color = frequencies(rgb_histogram(resize(rgb, 512, 512), cfg.rgb_bins));
  }

  for (const auto& [dx, dy] : cfg.cooc_offsets) {
    const TextureStats s =
        texture_stats(cooccurrence(g512, cfg.cooc_levels, dx, dy));
    f.texture[0] += s.energy;
    f.texture[1] += s.entropy;
    f.texture[2] += s.contrast;
    f.texture[3] += s.homogeneity;
  }
  for (double& t : f.texture) t /= static_cast<double>(cfg.cooc_offsets.size());

  f.wavelet = wavelet_signatures(g512).values;

  const Raster g100 = resize(gray, 100, 100);
  const GradientField grad = sobel(gaussian_blur3(g100));
  OrientationHistogram oh = orientation_histogram(grad, cfg.orientation_bins);
  double total = 0.0;
  for (double w : oh.weights) total += w;
  f.orientation.assign(oh.weights.begin(), oh.weights.end());
  if (total > 0.0)
    for (double& w : f.orientation) w /= total;
  return f;
}

std::string extraction_config_hash(const ExtractionConfig& cfg) {
  std::string canon =
      cfg.color_mode == ColorMode::intensity ? "intensity" : "rgb";
  canon += '|' + std::to_string(cfg.rgb_bins);
  canon += '|' + std::to_string(cfg.cooc_levels) + '|';
  for (std::size_t i = 0; i < cfg.cooc_offsets.size(); ++i) {
    if (i) canon += ',';
    canon += std::to_string(cfg.cooc_offsets[i].first) + ':' +
             std::to_string(cfg.cooc_offsets[i].second);
  }
  canon += '|' + std::to_string(cfg.correlogram_levels) + '|';
  for (std::size_t i = 0; i < cfg.correlogram_distances.size(); ++i) {
    if (i) canon += ',';
    canon += std::to_string(cfg.correlogram_distances[i]);
  }
  canon += '|' + std::to_string(cfg.orientation_bins);

  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

FeatureVector standardized(const FeatureVector& f, const ScaleFactors& s) {
  FeatureVector out = f;
  for (std::size_t i = 0; i < out.texture.size(); ++i)
    out.texture[i] /= s.texture[i];
  for (std::size_t i = 0; i < out.wavelet.size(); ++i)
    out.wavelet[i] /= s.wavelet[i];
  return out;
}

Catalog::Catalog(CatalogManifest manifest, std::vector<FeatureRecord> records,
                 std::unique_ptr<AntipoleNode> tree)
    : manifest_(std::move(manifest)),
      records_(std::move(records)),
      tree_(std::move(tree)),
      metric_([](const MetricPoint& a, const MetricPoint& b) {
        return hist_euclidean(a.vec, b.vec);
      }) {}

FeatureWeights Catalog::weights() const {
  const IndexConfig& ic = manifest_.config.index;
  return FeatureWeights(ic.weight_color, ic.weight_texture, ic.weight_wavelet,
                        ic.weight_orientation);
}

MetricPoint Catalog::embed(const FeatureVector& f) const {
  return MetricPoint{f.id,
                     weighted_embedding(standardized(f, manifest_.scales),
                                        weights())};
}

const FeatureRecord* Catalog::find_record(std::int64_t id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= records_.size())
    return nullptr;
  const FeatureRecord& r = records_[static_cast<std::size_t>(id)];
  return r.id == id ? &r : nullptr;
}

namespace {

MetricPoint embed_feature(const FeatureVector& f, const ScaleFactors& s,
                          const FeatureWeights& w) {
  return MetricPoint{f.id, weighted_embedding(standardized(f, s), w)};
}

ScaleFactors derive_scales(const std::vector<FeatureRecord>& records) {
  ScaleFactors s;
  const double n = static_cast<double>(records.size());
  for (std::size_t c = 0; c < s.texture.size(); ++c) {
    double sq = 0.0;
    for (const auto& r : records) sq += r.feature.texture[c] * r.feature.texture[c];
    const double rms = std::sqrt(sq / n);
    s.texture[c] = rms > 0.0 ? rms : 1.0;
  }
  for (std::size_t c = 0; c < s.wavelet.size(); ++c) {
    double sq = 0.0;
    for (const auto& r : records) sq += r.feature.wavelet[c] * r.feature.wavelet[c];
    const double rms = std::sqrt(sq / n);
    s.wavelet[c] = rms > 0.0 ? rms : 1.0;
  }
  return s;
}

// Median pairwise distance over a seeded sample of at most 100 points;
// falls back to the sample maximum, then 1, when the median is not
// positive (identical points or a single record).
double derive_sigma(const std::vector<MetricPoint>& points,
                    const Metric& dist, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const std::size_t sample = std::min<std::size_t>(points.size(), 100);
  rng.partial_shuffle(idx, sample);

  std::vector<double> d;
  d.reserve(sample * (sample - 1) / 2);
  for (std::size_t i = 0; i < sample; ++i)
    for (std::size_t j = i + 1; j < sample; ++j)
      d.push_back(dist(points[idx[i]], points[idx[j]]));
  if (d.empty()) return 1.0;
  std::sort(d.begin(), d.end());
  const double median = d[(d.size() - 1) / 2];
  if (median > 0.0) return median;
  const double max = d.back();
  return max > 0.0 ? max : 1.0;
}

}  // namespace

Catalog build_catalog(const fs::path& image_dir, const CatalogConfig& config,
                      std::vector<std::string>* warnings) {
  if (!fs::is_directory(image_dir))
    throw CatalogError("not a directory: " + image_dir.string());

  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(image_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string p = entry.path().string();
    if (p.find('\t') != std::string::npos ||
        p.find('\n') != std::string::npos) {
      if (warnings)
        warnings->push_back("skipped (control character in path): " + p);
      continue;
    }
    paths.push_back(p);
  }
  std::sort(paths.begin(), paths.end());

  std::vector<std::optional<FeatureVector>> extracted(paths.size());
  std::vector<std::string> failures(paths.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < paths.size(); ++i) {
    try {
      extracted[i] = extract_features(decode_image(paths[i]),
                                      config.extraction);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  }

  std::vector<FeatureRecord> records;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!extracted[i].has_value()) {
      if (warnings) warnings->push_back("skipped: " + failures[i]);
      continue;
    }
    FeatureRecord r;
    r.id = static_cast<std::int64_t>(records.size());
    r.source_path = paths[i];
    r.feature = std::move(*extracted[i]);
    r.feature.id = r.id;
    records.push_back(std::move(r));
  }
  if (records.empty())
    throw CatalogError("no decodable images in " + image_dir.string());

  CatalogManifest manifest;
  manifest.config = config;
  manifest.record_count = records.size();
  manifest.config_hash = extraction_config_hash(config.extraction);
  manifest.scales = derive_scales(records);

  const FeatureWeights w(config.index.weight_color, config.index.weight_texture,
                         config.index.weight_wavelet,
                         config.index.weight_orientation);
  std::vector<MetricPoint> points;
  points.reserve(records.size());
  for (const auto& r : records)
    points.push_back(embed_feature(r.feature, manifest.scales, w));

  const Metric build_metric([](const MetricPoint& a, const MetricPoint& b) {
    return hist_euclidean(a.vec, b.vec);
  });
  manifest.sigma_resolved =
      config.index.sigma > 0.0
          ? config.index.sigma
          : derive_sigma(points, build_metric, config.index.seed);

  SearchParams params;
  params.tau = config.index.tau;
  params.sigma = manifest.sigma_resolved;
  Rng rng(config.index.seed);
  auto tree = build_tree(std::move(points), params, build_metric, rng);

  return Catalog(std::move(manifest), std::move(records), std::move(tree));
}

namespace {

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CatalogError("cannot write " + tmp.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw CatalogError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void serialize_tree(const AntipoleNode& node, std::string& out) {
  if (!node.is_leaf) {
    out += "I " + std::to_string(node.a.id) + ' ' + std::to_string(node.b.id) +
           ' ' + fmt17(node.rad_a) + ' ' + fmt17(node.rad_b) + '\n';
    serialize_tree(*node.left, out);
    serialize_tree(*node.right, out);
    return;
  }
  const Cluster& c = node.cluster;
  out += "L " + std::to_string(c.centroid().id) + ' ' + fmt17(c.radius) + ' ' +
         std::to_string(c.members.size());
  for (std::size_t i = 0; i < c.members.size(); ++i)
    out += ' ' + std::to_string(c.members[i].id) + ':' +
           fmt17(c.centroid_dist[i]);
  out += '\n';
}

}  // namespace

void save_catalog(const Catalog& catalog, const fs::path& dir) {
  fs::create_directories(dir);
  const CatalogManifest& m = catalog.manifest();
  const ExtractionConfig& ec = m.config.extraction;
  const IndexConfig& ic = m.config.index;

  std::string manifest;
  manifest += "format_version " + std::to_string(m.format_version) + '\n';
  manifest += "record_count " + std::to_string(m.record_count) + '\n';
  manifest += "config_hash " + m.config_hash + '\n';
  manifest += std::string("color_mode ") +
              (ec.color_mode == ColorMode::intensity ? "intensity" : "rgb") +
              '\n';
  manifest += "rgb_bins " + std::to_string(ec.rgb_bins) + '\n';
  manifest += "cooc_levels " + std::to_string(ec.cooc_levels) + '\n';
  manifest += "cooc_offsets ";
  for (std::size_t i = 0; i < ec.cooc_offsets.size(); ++i) {
    if (i) manifest += ',';
    manifest += std::to_string(ec.cooc_offsets[i].first) + ':' +
                std::to_string(ec.cooc_offsets[i].second);
  }
  manifest += '\n';
  manifest += "correlogram_levels " + std::to_string(ec.correlogram_levels) + '\n';
  manifest += "correlogram_distances ";
  for (std::size_t i = 0; i < ec.correlogram_distances.size(); ++i) {
    if (i) manifest += ',';
    manifest += std::to_string(ec.correlogram_distances[i]);
  }
  manifest += '\n';
  manifest += "orientation_bins " + std::to_string(ec.orientation_bins) + '\n';
  manifest += "weight_color " + fmt17(ic.weight_color) + '\n';
  manifest += "weight_texture " + fmt17(ic.weight_texture) + '\n';
  manifest += "weight_wavelet " + fmt17(ic.weight_wavelet) + '\n';
  manifest += "weight_orientation " + fmt17(ic.weight_orientation) + '\n';
  manifest += "sigma_config " + fmt17(ic.sigma) + '\n';
  manifest += "sigma_resolved " + fmt17(m.sigma_resolved) + '\n';
  manifest += "tau " + std::to_string(ic.tau) + '\n';
  manifest += "seed " + std::to_string(ic.seed) + '\n';
  manifest += "scale_texture";
  for (double v : m.scales.texture) manifest += ' ' + fmt17(v);
  manifest += '\n';
  manifest += "scale_wavelet";
  for (double v : m.scales.wavelet) manifest += ' ' + fmt17(v);
  manifest += '\n';
  atomic_write(dir / "manifest.txt", manifest);

  std::string records;
  for (const FeatureRecord& r : catalog.records()) {
    records += std::to_string(r.id) + '\t' + r.source_path + '\t' +
               m.config_hash + '\t';
    const std::vector<double> flat = r.feature.flatten();
    for (std::size_t i = 0; i < flat.size(); ++i) {
      if (i) records += ' ';
      records += fmt17(flat[i]);
    }
    records += '\n';
  }
  atomic_write(dir / "records.tsv", records);

  std::string tree;
  serialize_tree(catalog.tree(), tree);
  atomic_write(dir / "tree.txt", tree);
}

namespace {

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

CatalogManifest parse_manifest(const fs::path& path) {
  std::unordered_map<std::string, std::string> kv;
  for (const std::string& line : read_lines(path)) {
    if (line.empty()) continue;
    const std::size_t sp = line.find(' ');
    if (sp == std::string::npos)
      throw CatalogError("malformed manifest line: " + line);
    kv[line.substr(0, sp)] = line.substr(sp + 1);
  }
  const auto need = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw CatalogError(std::string("manifest missing key: ") + key);
    return it->second;
  };

  CatalogManifest m;
  m.format_version = static_cast<int>(parse_int(need("format_version"), "manifest"));
  if (m.format_version != 1)
    throw CatalogError("unsupported catalog format_version");
  m.record_count =
      static_cast<std::size_t>(parse_int(need("record_count"), "manifest"));
  m.config_hash = need("config_hash");

  ExtractionConfig& ec = m.config.extraction;
  const std::string& mode = need("color_mode");
  if (mode == "intensity")
    ec.color_mode = ColorMode::intensity;
  else if (mode == "rgb")
    ec.color_mode = ColorMode::rgb;
  else
    throw CatalogError("unknown color_mode: " + mode);
  ec.rgb_bins = static_cast<int>(parse_int(need("rgb_bins"), "manifest"));
  ec.cooc_levels = static_cast<int>(parse_int(need("cooc_levels"), "manifest"));
  ec.cooc_offsets.clear();
  for (std::string_view part : split(need("cooc_offsets"), ',')) {
    const auto xy = split(part, ':');
    if (xy.size() != 2) throw CatalogError("malformed cooc_offsets");
    ec.cooc_offsets.emplace_back(
        static_cast<int>(parse_int(xy[0], "manifest")),
        static_cast<int>(parse_int(xy[1], "manifest")));
  }
  ec.correlogram_levels =
      static_cast<int>(parse_int(need("correlogram_levels"), "manifest"));
  ec.correlogram_distances.clear();
  for (std::string_view part : split(need("correlogram_distances"), ','))
    ec.correlogram_distances.push_back(
        static_cast<int>(parse_int(part, "manifest")));
  ec.orientation_bins =
      static_cast<int>(parse_int(need("orientation_bins"), "manifest"));

  IndexConfig& ic = m.config.index;
  ic.weight_color = parse_double(need("weight_color"), "manifest");
  ic.weight_texture = parse_double(need("weight_texture"), "manifest");
  ic.weight_wavelet = parse_double(need("weight_wavelet"), "manifest");
  ic.weight_orientation = parse_double(need("weight_orientation"), "manifest");
  ic.sigma = parse_double(need("sigma_config"), "manifest");
  m.sigma_resolved = parse_double(need("sigma_resolved"), "manifest");
  ic.tau = static_cast<int>(parse_int(need("tau"), "manifest"));
  {
    const std::string& s = need("seed");
    std::uint64_t v = 0;
    const auto [p, ecode] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ecode != std::errc() || p != s.data() + s.size())
      throw CatalogError("malformed seed");
    ic.seed = v;
  }
  {
    const auto parts = split(need("scale_texture"), ' ');
    if (parts.size() != m.scales.texture.size())
      throw CatalogError("malformed scale_texture");
    for (std::size_t i = 0; i < parts.size(); ++i)
      m.scales.texture[i] = parse_double(parts[i], "manifest");
  }
  {
    const auto parts = split(need("scale_wavelet"), ' ');
    if (parts.size() != m.scales.wavelet.size())
      throw CatalogError("malformed scale_wavelet");
    for (std::size_t i = 0; i < parts.size(); ++i)
      m.scales.wavelet[i] = parse_double(parts[i], "manifest");
  }
  return m;
}

std::vector<FeatureRecord> parse_records(const fs::path& path,
                                         const CatalogManifest& m) {
  const std::size_t color_bins =
      m.config.extraction.color_mode == ColorMode::intensity
          ? 256
          : static_cast<std::size_t>(m.config.extraction.rgb_bins) *
                m.config.extraction.rgb_bins * m.config.extraction.rgb_bins;
  const std::size_t orient_bins =
      static_cast<std::size_t>(m.config.extraction.orientation_bins);
  const std::size_t dim = color_bins + 4 + 10 + orient_bins;

  std::vector<FeatureRecord> records;
  for (const std::string& line : read_lines(path)) {
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 4)
      throw CatalogError("malformed record line (expected 4 fields)");
    FeatureRecord r;
    r.id = parse_int(fields[0], "records");
    r.source_path = std::string(fields[1]);
    if (fields[2] != m.config_hash)
      throw CatalogError("record config hash does not match manifest");
    const auto values = split(fields[3], ' ');
    if (values.size() != dim)
      throw CatalogError("record dimension mismatch");
    FeatureVector& f = r.feature;
    f.id = r.id;
    f.color.resize(color_bins);
    f.orientation.resize(orient_bins);
    std::size_t v = 0;
    for (std::size_t i = 0; i < color_bins; ++i)
      f.color[i] = parse_double(values[v++], "records");
    for (std::size_t i = 0; i < 4; ++i)
      f.texture[i] = parse_double(values[v++], "records");
    for (std::size_t i = 0; i < 10; ++i)
      f.wavelet[i] = parse_double(values[v++], "records");
    for (std::size_t i = 0; i < orient_bins; ++i)
      f.orientation[i] = parse_double(values[v++], "records");
    if (r.id != static_cast<std::int64_t>(records.size()))
      throw CatalogError("record ids must be consecutive from 0");
    records.push_back(std::move(r));
  }
  if (records.size() != m.record_count)
    throw CatalogError("record count does not match manifest");
  return records;
}

struct TreeParser {
  const std::vector<std::string>& lines;
  const std::vector<MetricPoint>& points;  // by id
  std::size_t next = 0;

  const MetricPoint& point(std::int64_t id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= points.size())
      throw CatalogError("tree references unknown id " + std::to_string(id));
    return points[static_cast<std::size_t>(id)];
  }

  std::unique_ptr<AntipoleNode> parse() {
    if (next >= lines.size()) throw CatalogError("truncated tree file");
    const auto tokens = split(lines[next++], ' ');
    if (tokens.empty()) throw CatalogError("empty tree line");

    auto node = std::make_unique<AntipoleNode>();
    if (tokens[0] == "I") {
      if (tokens.size() != 5) throw CatalogError("malformed internal node");
      node->is_leaf = false;
      node->a = point(parse_int(tokens[1], "tree"));
      node->b = point(parse_int(tokens[2], "tree"));
      node->rad_a = parse_double(tokens[3], "tree");
      node->rad_b = parse_double(tokens[4], "tree");
      node->left = parse();
      node->right = parse();
      return node;
    }
    if (tokens[0] != "L") throw CatalogError("unknown tree node kind");
    if (tokens.size() < 4) throw CatalogError("malformed leaf node");
    node->is_leaf = true;
    Cluster& c = node->cluster;
    const std::int64_t centroid_id = parse_int(tokens[1], "tree");
    c.radius = parse_double(tokens[2], "tree");
    const std::size_t count =
        static_cast<std::size_t>(parse_int(tokens[3], "tree"));
    if (tokens.size() != 4 + count) throw CatalogError("leaf count mismatch");
    c.members.reserve(count);
    c.centroid_dist.reserve(count);
    c.centroid_index = count;  // sentinel until found
    for (std::size_t i = 0; i < count; ++i) {
      const auto pair = split(tokens[4 + i], ':');
      if (pair.size() != 2) throw CatalogError("malformed leaf member");
      const std::int64_t id = parse_int(pair[0], "tree");
      c.members.push_back(point(id));
      c.centroid_dist.push_back(parse_double(pair[1], "tree"));
      if (id == centroid_id) c.centroid_index = i;
    }
    if (c.centroid_index == count)
      throw CatalogError("leaf centroid not among members");
    return node;
  }
};

}  // namespace

Catalog load_catalog(const fs::path& dir) {
  CatalogManifest manifest = parse_manifest(dir / "manifest.txt");
  std::vector<FeatureRecord> records =
      parse_records(dir / "records.tsv", manifest);

  const IndexConfig& ic = manifest.config.index;
  const FeatureWeights w(ic.weight_color, ic.weight_texture, ic.weight_wavelet,
                         ic.weight_orientation);
  std::vector<MetricPoint> points;
  points.reserve(records.size());
  for (const auto& r : records)
    points.push_back(embed_feature(r.feature, manifest.scales, w));

  const std::vector<std::string> lines = read_lines(dir / "tree.txt");
  TreeParser parser{lines, points};
  auto tree = parser.parse();
  if (parser.next != lines.size())
    throw CatalogError("trailing data in tree file");
  if (tree_size(*tree) != records.size())
    throw CatalogError("tree member count does not match records");

  return Catalog(std::move(manifest), std::move(records), std::move(tree));
}

namespace {

QueryResult finish_query(const Catalog& catalog, QueryMode mode, double t,
                         std::size_t k, const std::vector<SearchHit>& hits) {
  QueryResult res;
  res.mode = mode;
  res.t = t;
  res.k = k;
  res.distance_calls = catalog.metric().calls();
  res.entries.reserve(hits.size());
  for (const SearchHit& h : hits) {
    const FeatureRecord* r = catalog.find_record(h.id);
    if (r == nullptr)
      throw CatalogError("search returned unknown id " + std::to_string(h.id));
    res.entries.push_back({h.id, r->source_path, h.distance, h.exact});
  }
  return res;
}

}  // namespace

QueryResult query_range_features(const Catalog& catalog,
                                 const FeatureVector& feature, double t) {
  catalog.metric().reset_calls();
  const MetricPoint q = catalog.embed(feature);
  return finish_query(catalog, QueryMode::range, t, 0,
                      range_search(catalog.tree(), q, t, catalog.metric()));
}

QueryResult query_knn_features(const Catalog& catalog,
                               const FeatureVector& feature, std::size_t k) {
  catalog.metric().reset_calls();
  const MetricPoint q = catalog.embed(feature);
  return finish_query(catalog, QueryMode::knn, 0.0, k,
                      knn_search(catalog.tree(), q, k, catalog.metric()));
}

QueryResult query_range(const Catalog& catalog, const fs::path& image,
                        double t) {
  return query_range_features(
      catalog,
      extract_features(decode_image(image), catalog.manifest().config.extraction),
      t);
}

QueryResult query_knn(const Catalog& catalog, const fs::path& image,
                      std::size_t k) {
  return query_knn_features(
      catalog,
      extract_features(decode_image(image), catalog.manifest().config.extraction),
      k);
}

void rerank_by_intersection(const Catalog& catalog,
                            const FeatureVector& query_feature,
                            QueryResult& result) {
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(result.entries.size());
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    const FeatureRecord* r = catalog.find_record(result.entries[i].id);
    if (r == nullptr)
      throw CatalogError("rerank: unknown id " +
                         std::to_string(result.entries[i].id));
    keyed.emplace_back(
        1.0 - hist_intersection(query_feature.color, r->feature.color), i);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<QueryEntry> reordered;
  reordered.reserve(result.entries.size());
  for (const auto& [key, i] : keyed) {
    QueryEntry e = result.entries[i];
    e.distance = key;
    e.exact = true;
    reordered.push_back(std::move(e));
  }
  result.entries = std::move(reordered);
}

namespace {

EdgeMap edge_points_of(const Raster& img) {
  const Raster g100 = resize(to_grayscale(img), 100, 100);
  const GradientField grad = sobel(gaussian_blur3(g100));
  return edge_map(gradient_magnitude(grad), 0.5);
}

}  // namespace

void rerank_by_hausdorff(const Raster& query_image, QueryResult& result) {
  const EdgeMap qe = edge_points_of(query_image);
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(result.entries.size());
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    const EdgeMap re =
        edge_points_of(decode_image(result.entries[i].source_path));
    const double d = qe.points.empty() || re.points.empty()
                         ? std::numeric_limits<double>::infinity()
                         : hausdorff(qe.points, re.points);
    keyed.emplace_back(d, i);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<QueryEntry> reordered;
  reordered.reserve(result.entries.size());
  for (const auto& [key, i] : keyed) {
    QueryEntry e = result.entries[i];
    e.distance = key;
    e.exact = true;
    reordered.push_back(std::move(e));
  }
  result.entries = std::move(reordered);
}

}  // namespace cbir
