// Image type: 3-channel float RGB in [0,1], interleaved row-major.
// 8-bit PNG import/export; JPEG encode/decode is exposed for the jpeg
// corruption operator.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace devdiet {

struct Image {
  int height = 0;
  int width = 0;
  std::vector<float> px;  // height*width*3, RGB interleaved

  Image() = default;
  Image(int h, int w, float fill = 0.f) : height(h), width(w), px(size_t(h) * w * 3, fill) {}

  float& at(int y, int x, int c) { return px[(size_t(y) * width + x) * 3 + c]; }
  float at(int y, int x, int c) const { return px[(size_t(y) * width + x) * 3 + c]; }
  size_t numel() const { return px.size(); }
  bool empty() const { return px.empty(); }

  void clamp01();
  bool same_shape(const Image& o) const { return height == o.height && width == o.width; }
};

struct ImageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 8-bit quantization used by every export path: round(x*255) after clamping.
std::vector<std::uint8_t> to_u8(const Image& img);
Image from_u8(const std::uint8_t* data, int h, int w);

void write_png(const Image& img, const std::string& path);
Image read_png(const std::string& path);

// In-memory JPEG round trip at the given quality (1..100).
std::vector<std::uint8_t> encode_jpeg(const Image& img, int quality);
Image decode_jpeg(const std::vector<std::uint8_t>& bytes);

// Mean over all pixels and channels.
double mean_pixel(const Image& img);
// Per-image pixel variance over all values.
double pixel_variance(const Image& img);
// L2 distance between two same-shaped images.
double l2_distance(const Image& a, const Image& b);
// Peak signal-to-noise ratio in dB (MAX = 1.0).
double psnr(const Image& a, const Image& b);

// Bilinear resize to (out_h, out_w).
Image resize_bilinear(const Image& img, int out_h, int out_w);
// Nearest-neighbor resize (used by pixelate).
Image resize_nearest(const Image& img, int out_h, int out_w);

// sha256 hex digest of a byte buffer (manifest hashing).
std::string sha256_hex(const void* data, size_t n);
std::string sha256_file(const std::string& path);

}  // namespace devdiet
