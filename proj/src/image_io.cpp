#include "cbir/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cstdio>
#include <string>

#include "cbir/errors.hpp"

namespace cbir {

Raster decode_image(const std::filesystem::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (m.empty())
    throw DecodeError("cannot decode image: " + path.string());
  if (m.depth() != CV_8U) {
    cv::Mat converted;
    // 16-bit and float sources scale down into the 8-bit range.
    const double scale = m.depth() == CV_16U ? 1.0 / 257.0 : 1.0;
    m.convertTo(converted, CV_8U, scale);
    m = converted;
  }
  const int src_ch = m.channels();
  if (src_ch != 1 && src_ch != 3 && src_ch != 4)
    throw DecodeError("unsupported channel count in " + path.string());

  Raster out = Raster::create(m.cols, m.rows, src_ch == 1 ? 1 : 3);
  for (int y = 0; y < m.rows; ++y) {
    const unsigned char* row = m.ptr<unsigned char>(y);
    for (int x = 0; x < m.cols; ++x) {
      if (out.channels == 1) {
        out.at(x, y) = row[x];
      } else {
        // OpenCV stores BGR(A); alpha is dropped.
        out.at(x, y, 0) = row[src_ch * x + 2];
        out.at(x, y, 1) = row[src_ch * x + 1];
        out.at(x, y, 2) = row[src_ch * x + 0];
      }
    }
  }
  return out;
}

void write_pnm(const Raster& img, const std::filesystem::path& path) {
  if (img.width <= 0 || img.height <= 0 ||
      (img.channels != 1 && img.channels != 3))
    throw std::invalid_argument("write_pnm: malformed raster");
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (f == nullptr)
    throw DecodeError("cannot open for writing: " + path.string());
  std::fprintf(f, "P%c\n%d %d\n255\n", img.channels == 1 ? '5' : '6',
               img.width, img.height);
  std::fwrite(img.data.data(), 1, img.data.size(), f);
  std::fclose(f);
}

}  // namespace cbir
