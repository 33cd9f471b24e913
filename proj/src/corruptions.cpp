#include "devdiet/corruptions.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "devdiet/transforms.hpp"

namespace devdiet {

namespace {

// Published severity constants, defined at the 224x224 reference resolution.
// Geometric quantities (radii, kernel extents, displacements) scale linearly
// with the working size; intensities do not.
constexpr double kGaussianSigma[5] = {0.08, 0.12, 0.18, 0.26, 0.38};
constexpr double kShotScale[5] = {60, 25, 12, 5, 3};
constexpr double kImpulseAmount[5] = {0.03, 0.06, 0.09, 0.17, 0.27};
constexpr double kDefocus[5][2] = {{3, 0.1}, {4, 0.5}, {6, 0.5}, {8, 0.5}, {10, 0.5}};
constexpr double kGlass[5][3] = {{0.7, 1, 2}, {0.9, 2, 1}, {1.0, 2, 3}, {1.1, 3, 2}, {1.5, 4, 2}};
constexpr double kMotion[5][2] = {{10, 3}, {15, 5}, {15, 8}, {15, 12}, {20, 15}};
constexpr double kZoomMax[5] = {1.11, 1.16, 1.21, 1.26, 1.31};
constexpr double kZoomStep[5] = {0.01, 0.01, 0.02, 0.02, 0.03};
constexpr double kSnow[5][7] = {{0.1, 0.3, 3.0, 0.5, 10, 4, 0.8},
                                {0.2, 0.3, 2.0, 0.5, 12, 4, 0.7},
                                {0.55, 0.3, 4.0, 0.9, 12, 8, 0.7},
                                {0.55, 0.3, 4.5, 0.85, 12, 8, 0.65},
                                {0.55, 0.3, 2.5, 0.85, 12, 12, 0.55}};
constexpr double kFrost[5][2] = {{1.0, 0.4}, {0.8, 0.6}, {0.7, 0.7}, {0.65, 0.7}, {0.6, 0.75}};
constexpr double kFog[5][2] = {{1.5, 2.0}, {2.0, 2.0}, {2.5, 1.7}, {2.5, 1.5}, {3.0, 1.4}};
constexpr double kBrightness[5] = {0.1, 0.2, 0.3, 0.4, 0.5};
constexpr double kContrast[5] = {0.4, 0.3, 0.2, 0.1, 0.05};
// (alpha, sigma, alpha_affine) at reference scale 224.
constexpr double kElastic[5][3] = {{224 * 2.0, 224 * 0.7, 224 * 0.1},
                                   {224 * 2.0, 224 * 0.08, 224 * 0.2},
                                   {224 * 0.05, 224 * 0.01, 224 * 0.02},
                                   {224 * 0.07, 224 * 0.01, 224 * 0.02},
                                   {224 * 0.12, 224 * 0.01, 224 * 0.04}};
constexpr double kPixelate[5] = {0.6, 0.5, 0.4, 0.3, 0.25};
constexpr int kJpegQuality[5] = {25, 18, 15, 10, 7};

constexpr const char* kRegistryVersion = "inetc-desk-1";

double res_ratio(const Image& img) { return std::min(img.height, img.width) / 224.0; }

int scaled_radius(double r_ref, const Image& img, int min_r = 1) {
  return std::max(min_r, int(std::lround(r_ref * res_ratio(img))));
}

Image clip01(Image img) {
  img.clamp01();
  return img;
}

Image gaussian_noise(const Image& img, int sev, Rng& rng) {
  Image out = img;
  const double sigma = kGaussianSigma[sev];
  for (auto& v : out.px) v = float(v + sigma * rng.normal());
  return clip01(std::move(out));
}

Image shot_noise(const Image& img, int sev, Rng& rng) {
  Image out = img;
  const double c = kShotScale[sev];
  for (auto& v : out.px) {
    const double lam = std::max(0.0, double(v)) * c;
    // Poisson via inversion for small lambda, normal approximation above.
    double k;
    if (lam < 30.0) {
      double L = std::exp(-lam), p = 1.0;
      k = -1;
      do {
        ++k;
        p *= rng.uniform();
      } while (p > L);
    } else {
      k = std::max(0.0, std::floor(lam + std::sqrt(lam) * rng.normal() + 0.5));
    }
    v = float(k / c);
  }
  return clip01(std::move(out));
}

Image impulse_noise(const Image& img, int sev, Rng& rng) {
  Image out = img;
  const double amount = kImpulseAmount[sev];
  const size_t n = size_t(img.height) * img.width;
  for (size_t i = 0; i < n; ++i) {
    double u = rng.uniform();
    if (u < amount / 2) {
      out.px[i * 3] = out.px[i * 3 + 1] = out.px[i * 3 + 2] = 0.f;  // pepper
    } else if (u < amount) {
      out.px[i * 3] = out.px[i * 3 + 1] = out.px[i * 3 + 2] = 1.f;  // salt
    }
  }
  return out;
}

// Generic normalized-kernel 2D convolution with reflect padding.
Image convolve2d(const Image& img, const std::vector<double>& kernel, int kh, int kw) {
  const int rh = kh / 2, rw = kw / 2;
  Image out(img.height, img.width);
  auto reflect = [](int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
  };
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc[3] = {0, 0, 0};
      for (int j = 0; j < kh; ++j) {
        int ys = reflect(y + j - rh, img.height);
        for (int i = 0; i < kw; ++i) {
          double w = kernel[size_t(j) * kw + i];
          if (w == 0.0) continue;
          int xs = reflect(x + i - rw, img.width);
          const float* p = &img.px[(size_t(ys) * img.width + xs) * 3];
          acc[0] += w * p[0];
          acc[1] += w * p[1];
          acc[2] += w * p[2];
        }
      }
      float* q = &out.px[(size_t(y) * img.width + x) * 3];
      for (int c = 0; c < 3; ++c) q[c] = float(std::min(1.0, std::max(0.0, acc[c])));
    }
  }
  return out;
}

Image defocus_blur(const Image& img, int sev) {
  const int radius = scaled_radius(kDefocus[sev][0], img);
  const double alias = kDefocus[sev][1];
  const int k = 2 * radius + 1;
  std::vector<double> disk(size_t(k) * k, 0.0);
  for (int y = 0; y < k; ++y)
    for (int x = 0; x < k; ++x) {
      double dy = y - radius, dx = x - radius;
      if (dy * dy + dx * dx <= double(radius) * radius) disk[size_t(y) * k + x] = 1.0;
    }
  // Soften the disk edge (alias blur of the kernel itself).
  if (alias > 0) {
    std::vector<double> soft(disk.size(), 0.0);
    auto taps = gaussian_taps(alias, 3);
    for (int y = 0; y < k; ++y)
      for (int x = 0; x < k; ++x) {
        double acc = 0;
        for (int j = -1; j <= 1; ++j)
          for (int i = -1; i <= 1; ++i) {
            int ys = std::clamp(y + j, 0, k - 1), xs = std::clamp(x + i, 0, k - 1);
            acc += taps[j + 1] * taps[i + 1] * disk[size_t(ys) * k + xs];
          }
        soft[size_t(y) * k + x] = acc;
      }
    disk = soft;
  }
  double sum = 0;
  for (double w : disk) sum += w;
  for (auto& w : disk) w /= sum;
  return convolve2d(img, disk, k, k);
}

Image glass_blur(const Image& img, int sev, Rng& rng) {
  const double sigma = kGlass[sev][0];
  const int delta = std::max(1, int(std::lround(kGlass[sev][1] * res_ratio(img) * 3.5)));
  const int iters = std::max(1, int(std::lround(kGlass[sev][2] * res_ratio(img))));
  int k = std::max(3, 2 * int(std::ceil(2 * sigma)) + 1);
  k = std::min(k, std::min(img.height, img.width) % 2 ? std::min(img.height, img.width)
                                                      : std::min(img.height, img.width) - 1);
  Image out = gaussian_blur(img, sigma, k);
  for (int it = 0; it < iters; ++it) {
    for (int y = img.height - delta - 1; y >= delta; --y) {
      for (int x = img.width - delta - 1; x >= delta; --x) {
        int dy = int(rng.randint(2 * delta + 1)) - delta;
        int dx = int(rng.randint(2 * delta + 1)) - delta;
        int ys = y + dy, xs = x + dx;
        for (int c = 0; c < 3; ++c) std::swap(out.at(y, x, c), out.at(ys, xs, c));
      }
    }
  }
  return gaussian_blur(out, sigma, k);
}

std::vector<double> motion_kernel(int radius, double sigma, double angle_deg) {
  const int k = 2 * radius + 1;
  std::vector<double> kern(size_t(k) * k, 0.0);
  const double th = angle_deg * M_PI / 180.0;
  const double cx = std::cos(th), cy = std::sin(th);
  double sum = 0;
  for (int t = 0; t <= radius; ++t) {
    double w = std::exp(-0.5 * t * t / (sigma * sigma));
    int x = radius + int(std::lround(t * cx));
    int y = radius + int(std::lround(t * cy));
    if (x >= 0 && x < k && y >= 0 && y < k) {
      kern[size_t(y) * k + x] += w;
      sum += w;
    }
  }
  for (auto& w : kern) w /= sum;
  return kern;
}

Image motion_blur(const Image& img, int sev, Rng& rng) {
  const int radius = scaled_radius(kMotion[sev][0], img, 2);
  const double sigma = std::max(1.0, kMotion[sev][1] * res_ratio(img));
  const double angle = rng.uniform(-45.0, 45.0);
  const int k = 2 * radius + 1;
  return convolve2d(img, motion_kernel(radius, sigma, angle), k, k);
}

Image clipped_zoom(const Image& img, double z) {
  int zh = std::max(img.height, int(std::lround(img.height * z)));
  int zw = std::max(img.width, int(std::lround(img.width * z)));
  Image big = resize_bilinear(img, zh, zw);
  int y0 = (zh - img.height) / 2, x0 = (zw - img.width) / 2;
  Image out(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = big.at(y0 + y, x0 + x, c);
  return out;
}

Image zoom_blur(const Image& img, int sev) {
  std::vector<double> acc(img.numel(), 0.0);
  int n = 0;
  for (double z = 1.0; z < kZoomMax[sev] - 1e-12; z += kZoomStep[sev]) {
    Image zoomed = clipped_zoom(img, z);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += zoomed.px[i];
    ++n;
  }
  Image out(img.height, img.width);
  for (size_t i = 0; i < acc.size(); ++i)
    out.px[i] = float((img.px[i] + acc[i]) / double(n + 1));
  return clip01(std::move(out));
}

Image snow(const Image& img, int sev, Rng& rng) {
  const double* c = kSnow[sev];
  // Monochrome snow field.
  Image layer(img.height, img.width, 0.f);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      float v = float(c[0] + c[1] * rng.normal());
      for (int ch = 0; ch < 3; ++ch) layer.at(y, x, ch) = v;
    }
  layer = clipped_zoom(layer, c[2]);
  for (auto& v : layer.px) v = v < c[3] ? 0.f : v;
  const int radius = scaled_radius(c[4], img, 2);
  const double sigma = std::max(1.0, c[5] * res_ratio(img));
  const double angle = rng.uniform(-135.0, -45.0);
  layer = convolve2d(layer, motion_kernel(radius, sigma, angle), 2 * radius + 1, 2 * radius + 1);
  // Darken/gray the scene, then add the flake layer twice (once rotated).
  Image gray = to_grayscale(img);
  Image out(img.height, img.width);
  for (size_t i = 0; i < img.px.size(); ++i) {
    double scene = c[6] * img.px[i] +
                   (1.0 - c[6]) * std::max(double(img.px[i]), std::min(1.0, gray.px[i] * 1.5 + 0.5));
    out.px[i] = float(scene);
  }
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int ch = 0; ch < 3; ++ch) {
        double v = out.at(y, x, ch) + layer.at(y, x, ch) +
                   layer.at(img.height - 1 - y, img.width - 1 - x, ch);
        out.at(y, x, ch) = float(std::min(1.0, std::max(0.0, v)));
      }
  return out;
}

// Seeded value-noise octaves with a ridge transform: bluish-white streaky
// mask standing in for the photographic frost assets.
Image procedural_frost(int h, int w, Rng& rng) {
  std::vector<double> mask(size_t(h) * w, 0.0);
  double amp = 1.0, total = 0.0;
  for (int oct = 0; oct < 4; ++oct) {
    int gh = 4 << oct, gw = 4 << oct;
    std::vector<double> grid(size_t(gh + 1) * (gw + 1));
    for (auto& g : grid) g = rng.uniform();
    for (int y = 0; y < h; ++y) {
      double fy = double(y) / h * gh;
      int y0 = int(fy);
      double ty = fy - y0;
      for (int x = 0; x < w; ++x) {
        double fx = double(x) / w * gw;
        int x0 = int(fx);
        double tx = fx - x0;
        auto g = [&](int yy, int xx) { return grid[size_t(yy) * (gw + 1) + xx]; };
        double v = g(y0, x0) * (1 - ty) * (1 - tx) + g(y0 + 1, x0) * ty * (1 - tx) +
                   g(y0, x0 + 1) * (1 - ty) * tx + g(y0 + 1, x0 + 1) * ty * tx;
        mask[size_t(y) * w + x] += amp * (1.0 - std::fabs(2.0 * v - 1.0));  // ridge
      }
    }
    total += amp;
    amp *= 0.55;
  }
  Image frost(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double v = mask[size_t(y) * w + x] / total;
      v = std::pow(v, 2.2);  // sparsify into streaks
      frost.at(y, x, 0) = float(std::min(1.0, v * 0.95));
      frost.at(y, x, 1) = float(std::min(1.0, v * 1.0));
      frost.at(y, x, 2) = float(std::min(1.0, v * 1.1));
    }
  frost.clamp01();
  return frost;
}

Image frost(const Image& img, int sev, Rng& rng) {
  const double iw = kFrost[sev][0], fw = kFrost[sev][1];
  Image mask = procedural_frost(img.height, img.width, rng);
  Image out(img.height, img.width);
  for (size_t i = 0; i < img.px.size(); ++i)
    out.px[i] = float(std::min(1.0, std::max(0.0, iw * img.px[i] + fw * mask.px[i])));
  return out;
}

// Diamond-square plasma in [0,1], side must cover the image.
std::vector<double> plasma_fractal(int size, double wibbledecay, Rng& rng) {
  int side = 1;
  while (side < size) side <<= 1;
  const int n = side + 1;
  std::vector<double> map(size_t(n) * n, 0.0);
  map[0] = map[size_t(n - 1)] = map[size_t(n) * (n - 1)] = map[size_t(n) * n - 1] = 0.5;
  double wibble = 1.0;
  for (int step = side; step > 1; step /= 2, wibble /= wibbledecay) {
    int half = step / 2;
    for (int y = half; y < side; y += step)
      for (int x = half; x < side; x += step) {
        double avg = (map[size_t(y - half) * n + (x - half)] + map[size_t(y - half) * n + (x + half)] +
                      map[size_t(y + half) * n + (x - half)] + map[size_t(y + half) * n + (x + half)]) / 4.0;
        map[size_t(y) * n + x] = avg + wibble * (rng.uniform() - 0.5);
      }
    for (int y = 0; y <= side; y += half)
      for (int x = (y / half) % 2 == 0 ? half : 0; x <= side; x += step) {
        double sum = 0;
        int cnt = 0;
        if (y - half >= 0) { sum += map[size_t(y - half) * n + x]; ++cnt; }
        if (y + half <= side) { sum += map[size_t(y + half) * n + x]; ++cnt; }
        if (x - half >= 0) { sum += map[size_t(y) * n + (x - half)]; ++cnt; }
        if (x + half <= side) { sum += map[size_t(y) * n + (x + half)]; ++cnt; }
        map[size_t(y) * n + x] = sum / cnt + wibble * (rng.uniform() - 0.5);
      }
  }
  double mn = 1e30, mx = -1e30;
  for (double v : map) { mn = std::min(mn, v); mx = std::max(mx, v); }
  std::vector<double> out(size_t(size) * size);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      out[size_t(y) * size + x] = (map[size_t(y) * n + x] - mn) / std::max(1e-12, mx - mn);
  return out;
}

Image fog(const Image& img, int sev, Rng& rng) {
  const double strength = kFog[sev][0], decay = kFog[sev][1];
  const int size = std::max(img.height, img.width);
  auto plasma = plasma_fractal(size, decay, rng);
  double maxval = 0;
  for (float v : img.px) maxval = std::max(maxval, double(v));
  if (maxval <= 0) maxval = 1.0;
  Image out(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      double f = strength * plasma[size_t(y) * size + x];
      for (int c = 0; c < 3; ++c) {
        double v = (img.at(y, x, c) + f) * maxval / (maxval + strength);
        out.at(y, x, c) = float(std::min(1.0, std::max(0.0, v)));
      }
    }
  return out;
}

Image brightness_c(const Image& img, int sev) {
  const double c = kBrightness[sev];
  Image out(img.height, img.width);
  const size_t n = size_t(img.height) * img.width;
  for (size_t i = 0; i < n; ++i) {
    float h, s, v;
    const float* p = &img.px[i * 3];
    float r = p[0], g = p[1], b = p[2];
    // HSV value shift.
    float mx = std::max({r, g, b}), mn = std::min({r, g, b});
    v = mx;
    float d = mx - mn;
    s = mx <= 0 ? 0 : d / mx;
    if (d <= 0) h = 0;
    else if (mx == r) h = ((g - b) / d + (g < b ? 6.f : 0.f)) / 6.f;
    else if (mx == g) h = ((b - r) / d + 2.f) / 6.f;
    else h = ((r - g) / d + 4.f) / 6.f;
    v = std::min(1.f, v + float(c));
    float i6 = std::floor(h * 6.f), f = h * 6.f - i6;
    float pp = v * (1 - s), q = v * (1 - f * s), t = v * (1 - (1 - f) * s);
    float ro, go, bo;
    switch (int(i6) % 6) {
      case 0: ro = v; go = t; bo = pp; break;
      case 1: ro = q; go = v; bo = pp; break;
      case 2: ro = pp; go = v; bo = t; break;
      case 3: ro = pp; go = q; bo = v; break;
      case 4: ro = t; go = pp; bo = v; break;
      default: ro = v; go = pp; bo = q; break;
    }
    out.px[i * 3] = ro;
    out.px[i * 3 + 1] = go;
    out.px[i * 3 + 2] = bo;
  }
  return out;
}

Image contrast_c(const Image& img, int sev) {
  const double c = kContrast[sev];
  double mean[3] = {0, 0, 0};
  const size_t n = size_t(img.height) * img.width;
  for (size_t i = 0; i < n; ++i)
    for (int ch = 0; ch < 3; ++ch) mean[ch] += img.px[i * 3 + ch];
  for (auto& m : mean) m /= double(n);
  Image out(img.height, img.width);
  for (size_t i = 0; i < n; ++i)
    for (int ch = 0; ch < 3; ++ch)
      out.px[i * 3 + ch] =
          float(std::min(1.0, std::max(0.0, (img.px[i * 3 + ch] - mean[ch]) * c + mean[ch])));
  return out;
}

Image elastic(const Image& img, int sev, Rng& rng) {
  const double ratio = res_ratio(img);
  const double alpha = kElastic[sev][0] * ratio;
  const double sigma = std::max(0.5, kElastic[sev][1] * ratio);
  const double alpha_affine = kElastic[sev][2] * ratio;
  const int h = img.height, w = img.width;

  // Mild random affine: perturb three anchor points.
  double cy = h / 2.0, cx = w / 2.0;
  double side = std::min(h, w) / 3.0;
  double src[3][2] = {{cy + side, cx + side}, {cy + side, cx - side}, {cy - side, cx + side}};
  double dst[3][2];
  for (int i = 0; i < 3; ++i) {
    dst[i][0] = src[i][0] + rng.uniform(-alpha_affine, alpha_affine);
    dst[i][1] = src[i][1] + rng.uniform(-alpha_affine, alpha_affine);
  }
  // Solve dst -> src affine (y' = a*y + b*x + c) so we can pull pixels.
  auto solve3 = [&](const double d[3][2], const double s[3], double coef[3]) {
    double A[3][4];
    for (int i = 0; i < 3; ++i) {
      A[i][0] = d[i][0];
      A[i][1] = d[i][1];
      A[i][2] = 1;
      A[i][3] = s[i];
    }
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r)
        if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
      std::swap(A[piv], A[col]);
      for (int r = 0; r < 3; ++r) {
        if (r == col || A[col][col] == 0) continue;
        double f = A[r][col] / A[col][col];
        for (int k = col; k < 4; ++k) A[r][k] -= f * A[col][k];
      }
    }
    for (int i = 0; i < 3; ++i) coef[i] = A[i][3] / (A[i][i] == 0 ? 1 : A[i][i]);
  };
  double sy[3] = {src[0][0], src[1][0], src[2][0]};
  double sx[3] = {src[0][1], src[1][1], src[2][1]};
  double ay[3], ax[3];
  solve3(dst, sy, ay);
  solve3(dst, sx, ax);

  // Smoothed random displacement field.
  std::vector<float> dy(size_t(h) * w), dx(size_t(h) * w);
  for (auto& v : dy) v = float(rng.uniform(-1.0, 1.0));
  for (auto& v : dx) v = float(rng.uniform(-1.0, 1.0));
  int k = std::max(3, 2 * int(std::ceil(2 * sigma)) + 1);
  k = std::min(k, std::min(h, w) % 2 ? std::min(h, w) : std::min(h, w) - 1);
  auto smooth_field = [&](std::vector<float>& f) {
    Image tmp(h, w);
    for (size_t i = 0; i < f.size(); ++i) {
      tmp.px[i * 3] = (f[i] + 1.f) / 2.f;  // stash in [0,1]
      tmp.px[i * 3 + 1] = tmp.px[i * 3];
      tmp.px[i * 3 + 2] = tmp.px[i * 3];
    }
    tmp = gaussian_blur(tmp, sigma, k);
    for (size_t i = 0; i < f.size(); ++i) f[i] = (tmp.px[i * 3] * 2.f - 1.f) * float(alpha);
  };
  smooth_field(dy);
  smooth_field(dx);

  auto sample = [&](double fy, double fx, int c) -> double {
    int y0 = int(std::floor(fy)), x0 = int(std::floor(fx));
    double ty = fy - y0, tx = fx - x0;
    auto rd = [&](int yy, int xx) {
      yy = std::clamp(yy, 0, h - 1);
      xx = std::clamp(xx, 0, w - 1);
      return double(img.at(yy, xx, c));
    };
    return rd(y0, x0) * (1 - ty) * (1 - tx) + rd(y0 + 1, x0) * ty * (1 - tx) +
           rd(y0, x0 + 1) * (1 - ty) * tx + rd(y0 + 1, x0 + 1) * ty * tx;
  };
  Image out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double wy = ay[0] * y + ay[1] * x + ay[2] + dy[size_t(y) * w + x];
      double wx = ax[0] * y + ax[1] * x + ax[2] + dx[size_t(y) * w + x];
      for (int c = 0; c < 3; ++c)
        out.at(y, x, c) = float(std::min(1.0, std::max(0.0, sample(wy, wx, c))));
    }
  return out;
}

Image pixelate(const Image& img, int sev) {
  const double c = kPixelate[sev];
  int dh = std::max(1, int(img.height * c));
  int dw = std::max(1, int(img.width * c));
  Image small = resize_bilinear(img, dh, dw);
  return resize_nearest(small, img.height, img.width);
}

Image jpeg_c(const Image& img, int sev) {
  return decode_jpeg(encode_jpeg(img, kJpegQuality[sev]));
}

}  // namespace

const std::vector<std::string>& corruption_types() {
  static const std::vector<std::string> types = {
      "gaussian_noise", "shot_noise", "impulse_noise",
      "defocus_blur",  "glass_blur", "motion_blur", "zoom_blur",
      "snow",          "frost",      "fog",         "brightness",
      "contrast",      "elastic",    "pixelate",    "jpeg"};
  return types;
}

bool is_noise_family(const std::string& type) {
  return type == "gaussian_noise" || type == "shot_noise" || type == "impulse_noise";
}

Image corrupt(const Image& img, const CorruptionSpec& spec) {
  if (spec.severity < 1 || spec.severity > 5)
    throw CorruptionError("severity must be in [1,5], got " + std::to_string(spec.severity));
  const int sev = spec.severity - 1;
  Rng rng(spec.seed);
  const std::string& t = spec.type;
  if (t == "gaussian_noise") return gaussian_noise(img, sev, rng);
  if (t == "shot_noise") return shot_noise(img, sev, rng);
  if (t == "impulse_noise") return impulse_noise(img, sev, rng);
  if (t == "defocus_blur") return defocus_blur(img, sev);
  if (t == "glass_blur") return glass_blur(img, sev, rng);
  if (t == "motion_blur") return motion_blur(img, sev, rng);
  if (t == "zoom_blur") return zoom_blur(img, sev);
  if (t == "snow") return snow(img, sev, rng);
  if (t == "frost") return frost(img, sev, rng);
  if (t == "fog") return fog(img, sev, rng);
  if (t == "brightness") return brightness_c(img, sev);
  if (t == "contrast") return contrast_c(img, sev);
  if (t == "elastic") return elastic(img, sev, rng);
  if (t == "pixelate") return pixelate(img, sev);
  if (t == "jpeg") return jpeg_c(img, sev);
  throw CorruptionError("unknown corruption type '" + t + "'");
}

std::uint64_t corruption_seed(std::uint64_t global_seed, const std::string& image_id,
                              const std::string& type, int severity) {
  return derive_seed(global_seed, "corrupt", hash_str(image_id), hash_str(type),
                     std::uint64_t(severity));
}

void CorruptedDatasetManifest::save_jsonl(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw CorruptionError("cannot write manifest: " + path);
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["image_id"] = r.image_id;
    j["type"] = r.type;
    j["severity"] = r.severity;
    j["seed"] = r.seed;
    j["path"] = r.path;
    j["sha256"] = r.sha256;
    f << j.dump() << "\n";
  }
}

CorruptedDatasetManifest CorruptedDatasetManifest::load_jsonl(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CorruptionError("cannot read manifest: " + path);
  CorruptedDatasetManifest m;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    ManifestRow r;
    r.image_id = j.at("image_id").get<std::string>();
    r.type = j.at("type").get<std::string>();
    r.severity = j.at("severity").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.path = j.at("path").get<std::string>();
    r.sha256 = j.at("sha256").get<std::string>();
    m.rows.push_back(std::move(r));
  }
  return m;
}

CorruptedDatasetManifest build_corrupted_set(
    const std::vector<std::pair<std::string, Image>>& images,
    const std::string& dataset_id, const std::vector<std::string>& types,
    const std::vector<int>& severities, std::uint64_t seed, const std::string& out_dir) {
  if (images.empty()) throw CorruptionError("build_corrupted_set: empty dataset");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw CorruptionError("cannot create output dir: " + out_dir);

  CorruptedDatasetManifest manifest;
  manifest.source_dataset_id = dataset_id;
  manifest.registry_version = kRegistryVersion;
  for (const auto& [id, img] : images) {
    for (const auto& type : types) {
      for (int sev : severities) {
        CorruptionSpec spec{type, sev, corruption_seed(seed, id, type, sev)};
        Image corrupted = corrupt(img, spec);
        std::string fname = id + "__" + type + "__s" + std::to_string(sev) + ".png";
        std::string path = (fs::path(out_dir) / fname).string();
        try {
          write_png(corrupted, path);
        } catch (const ImageError& e) {
          throw CorruptionError(std::string("write failed at ") + path + ": " + e.what());
        }
        auto bytes = to_u8(corrupted);
        manifest.rows.push_back(
            {id, type, sev, spec.seed, path, sha256_hex(bytes.data(), bytes.size())});
      }
    }
  }
  manifest.save_jsonl((fs::path(out_dir) / "manifest.jsonl").string());
  return manifest;
}

}  // namespace devdiet
