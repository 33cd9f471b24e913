#include "devdiet/image.hpp"

#include <jpeglib.h>
#include <openssl/evp.h>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace devdiet {

void Image::clamp01() {
  for (auto& v : px) v = std::min(1.0f, std::max(0.0f, v));
}

std::vector<std::uint8_t> to_u8(const Image& img) {
  std::vector<std::uint8_t> out(img.numel());
  for (size_t i = 0; i < out.size(); ++i) {
    float v = std::min(1.0f, std::max(0.0f, img.px[i]));
    out[i] = std::uint8_t(std::lround(v * 255.0f));
  }
  return out;
}

Image from_u8(const std::uint8_t* data, int h, int w) {
  Image img(h, w);
  const float inv = 1.0f / 255.0f;
  for (size_t i = 0; i < img.numel(); ++i) img.px[i] = data[i] * inv;
  return img;
}

void write_png(const Image& img, const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw ImageError("cannot open for write: " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw ImageError("png write failed: " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  // Fixed settings so identical pixels produce identical bytes.
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  auto bytes = to_u8(img);
  for (int y = 0; y < img.height; ++y)
    png_write_row(png, bytes.data() + size_t(y) * img.width * 3);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

Image read_png(const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw ImageError("cannot open: " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw ImageError("png read failed: " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);
  std::vector<std::uint8_t> bytes(size_t(h) * w * 3);
  for (png_uint_32 y = 0; y < h; ++y)
    png_read_row(png, bytes.data() + size_t(y) * w * 3, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return from_u8(bytes.data(), int(h), int(w));
}

namespace {
struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf setjmp_buffer;
};
void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  std::longjmp(err->setjmp_buffer, 1);
}
}  // namespace

std::vector<std::uint8_t> encode_jpeg(const Image& img, int quality) {
  jpeg_compress_struct cinfo;
  JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  unsigned char* buf = nullptr;
  unsigned long buf_size = 0;
  if (setjmp(jerr.setjmp_buffer)) {
    jpeg_destroy_compress(&cinfo);
    if (buf) free(buf);
    throw ImageError("jpeg encode failed");
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buf, &buf_size);
  cinfo.image_width = img.width;
  cinfo.image_height = img.height;
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  auto bytes = to_u8(img);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = bytes.data() + size_t(cinfo.next_scanline) * img.width * 3;
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  std::vector<std::uint8_t> out(buf, buf + buf_size);
  jpeg_destroy_compress(&cinfo);
  free(buf);
  return out;
}

Image decode_jpeg(const std::vector<std::uint8_t>& bytes) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  if (setjmp(jerr.setjmp_buffer)) {
    jpeg_destroy_decompress(&cinfo);
    throw ImageError("jpeg decode failed");
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), bytes.size());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  int w = cinfo.output_width, h = cinfo.output_height;
  std::vector<std::uint8_t> data(size_t(h) * w * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = data.data() + size_t(cinfo.output_scanline) * w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return from_u8(data.data(), h, w);
}

double mean_pixel(const Image& img) {
  double s = 0;
  for (float v : img.px) s += v;
  return img.px.empty() ? 0.0 : s / double(img.px.size());
}

double pixel_variance(const Image& img) {
  if (img.px.empty()) return 0.0;
  double m = mean_pixel(img);
  double s = 0;
  for (float v : img.px) s += (v - m) * (v - m);
  return s / double(img.px.size());
}

double l2_distance(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw ImageError("l2_distance: shape mismatch");
  double s = 0;
  for (size_t i = 0; i < a.px.size(); ++i) {
    double d = double(a.px[i]) - double(b.px[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

double psnr(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw ImageError("psnr: shape mismatch");
  double mse = 0;
  for (size_t i = 0; i < a.px.size(); ++i) {
    double d = double(a.px[i]) - double(b.px[i]);
    mse += d * d;
  }
  mse /= double(a.px.size());
  if (mse <= 0) return 1e9;
  return 10.0 * std::log10(1.0 / mse);
}

Image resize_bilinear(const Image& img, int out_h, int out_w) {
  Image out(out_h, out_w);
  const double sy = double(img.height) / out_h;
  const double sx = double(img.width) / out_w;
  for (int y = 0; y < out_h; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    int y0 = int(std::floor(fy));
    double wy = fy - y0;
    int y1 = std::min(img.height - 1, std::max(0, y0 + 1));
    y0 = std::min(img.height - 1, std::max(0, y0));
    for (int x = 0; x < out_w; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      int x0 = int(std::floor(fx));
      double wx = fx - x0;
      int x1 = std::min(img.width - 1, std::max(0, x0 + 1));
      x0 = std::min(img.width - 1, std::max(0, x0));
      for (int c = 0; c < 3; ++c) {
        double top = img.at(y0, x0, c) * (1 - wx) + img.at(y0, x1, c) * wx;
        double bot = img.at(y1, x0, c) * (1 - wx) + img.at(y1, x1, c) * wx;
        out.at(y, x, c) = float(top * (1 - wy) + bot * wy);
      }
    }
  }
  return out;
}

Image resize_nearest(const Image& img, int out_h, int out_w) {
  Image out(out_h, out_w);
  for (int y = 0; y < out_h; ++y) {
    int sy = std::min(img.height - 1, int(double(y) * img.height / out_h));
    for (int x = 0; x < out_w; ++x) {
      int sx = std::min(img.width - 1, int(double(x) * img.width / out_w));
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = img.at(sy, sx, c);
    }
  }
  return out;
}

std::string sha256_hex(const void* data, size_t n) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data, n);
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ImageError("cannot open for hashing: " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes.data(), bytes.size());
}

}  // namespace devdiet
