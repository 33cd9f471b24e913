#include "devdiet/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace devdiet {

namespace {
constexpr double kLumaR = 0.299, kLumaG = 0.587, kLumaB = 0.114;
}

Image to_grayscale(const Image& img) {
  Image out(img.height, img.width);
  const size_t n = size_t(img.height) * img.width;
  for (size_t i = 0; i < n; ++i) {
    const float* p = &img.px[i * 3];
    float l = float(kLumaR * p[0] + kLumaG * p[1] + kLumaB * p[2]);
    out.px[i * 3 + 0] = l;
    out.px[i * 3 + 1] = l;
    out.px[i * 3 + 2] = l;
  }
  return out;
}

Image blend_saturation(const Image& img, double s) {
  if (!(s >= 0.0 && s <= 1.0))
    throw TransformError("blend_saturation: s must lie in [0,1], got " + std::to_string(s));
  Image out(img.height, img.width);
  const size_t n = size_t(img.height) * img.width;
  for (size_t i = 0; i < n; ++i) {
    const float* p = &img.px[i * 3];
    double l = kLumaR * p[0] + kLumaG * p[1] + kLumaB * p[2];
    for (int c = 0; c < 3; ++c)
      out.px[i * 3 + c] = float(std::min(1.0, std::max(0.0, s * p[c] + (1.0 - s) * l)));
  }
  return out;
}

std::vector<double> gaussian_taps(double sigma, int kernel) {
  if (kernel < 1 || kernel % 2 == 0)
    throw TransformError("gaussian kernel must be odd positive, got " + std::to_string(kernel));
  if (sigma <= 0.0 || kernel == 1) return {1.0};
  const int r = (kernel - 1) / 2;
  std::vector<double> taps(kernel);
  double sum = 0;
  for (int j = -r; j <= r; ++j) {
    double w = std::exp(-0.5 * (double(j) * j) / (sigma * sigma));
    taps[j + r] = w;
    sum += w;
  }
  for (auto& w : taps) w /= sum;
  return taps;
}

namespace {
// Multi-bounce symmetric reflection (edge included): ... 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
inline int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}
}  // namespace

Image gaussian_blur(const Image& img, double sigma, int kernel) {
  if (kernel % 2 == 0)
    throw TransformError("gaussian_blur: kernel must be odd, got " + std::to_string(kernel));
  if (kernel > std::min(img.height, img.width))
    throw TransformError("gaussian_blur: kernel exceeds image extent");
  if (sigma <= 0.0 || kernel == 1) return img;
  const auto taps = gaussian_taps(sigma, kernel);
  const int r = (kernel - 1) / 2;
  const int h = img.height, w = img.width;

  // Horizontal pass into a double buffer, then vertical.
  std::vector<double> tmp(size_t(h) * w * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0, 0, 0};
      for (int j = -r; j <= r; ++j) {
        int xs = reflect_index(x + j, w);
        const float* p = &img.px[(size_t(y) * w + xs) * 3];
        const double t = taps[j + r];
        acc[0] += t * p[0];
        acc[1] += t * p[1];
        acc[2] += t * p[2];
      }
      double* q = &tmp[(size_t(y) * w + x) * 3];
      q[0] = acc[0]; q[1] = acc[1]; q[2] = acc[2];
    }
  }
  Image out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0, 0, 0};
      for (int j = -r; j <= r; ++j) {
        int ys = reflect_index(y + j, h);
        const double* p = &tmp[(size_t(ys) * w + x) * 3];
        const double t = taps[j + r];
        acc[0] += t * p[0];
        acc[1] += t * p[1];
        acc[2] += t * p[2];
      }
      float* q = &out.px[(size_t(y) * w + x) * 3];
      q[0] = float(std::min(1.0, std::max(0.0, acc[0])));
      q[1] = float(std::min(1.0, std::max(0.0, acc[1])));
      q[2] = float(std::min(1.0, std::max(0.0, acc[2])));
    }
  }
  return out;
}

ScaledBlur scale_blur_to_resolution(double sigma_ref, int kernel_ref, int working_size) {
  const double ratio = double(working_size) / 224.0;
  ScaledBlur b;
  b.sigma = sigma_ref * ratio;
  int k = int(std::lround(kernel_ref * ratio));
  if (k < 1) k = 1;
  if (k % 2 == 0) k += 1;
  b.kernel = k;
  if (b.sigma <= 0.0) b.kernel = 1;
  return b;
}

Image apply_diet_params(const Image& img, const SampledParams& p, bool scale_to_image) {
  Image out = blend_saturation(img, p.s);
  double sigma = p.sigma;
  int kernel = p.kernel;
  if (scale_to_image) {
    auto sb = scale_blur_to_resolution(p.sigma, p.kernel, std::min(img.height, img.width));
    sigma = sb.sigma;
    kernel = sb.kernel;
  }
  int max_kernel = std::min(img.height, img.width);
  if (max_kernel % 2 == 0) max_kernel -= 1;
  kernel = std::min(kernel, max_kernel);
  return gaussian_blur(out, sigma, kernel);
}

Image apply_diet(const Image& img, const StageSpec& stage, std::uint64_t rng_seed,
                 bool scale_to_image) {
  return apply_diet_params(img, sample_stage_params(stage, rng_seed), scale_to_image);
}

namespace {

struct CropBox {
  double y, x, h, w;  // fractions of the source
};

// Random resized crop: area scale uniform in [lo,hi], aspect log-uniform in
// [3/4, 4/3]; falls back to a centered max crop when 10 draws miss.
CropBox sample_crop(Rng& rng, double scale_lo, double scale_hi) {
  for (int attempt = 0; attempt < 10; ++attempt) {
    double area = rng.uniform(scale_lo, scale_hi);
    double logr = rng.uniform(std::log(3.0 / 4.0), std::log(4.0 / 3.0));
    double ratio = std::exp(logr);
    double w = std::sqrt(area * ratio);
    double h = std::sqrt(area / ratio);
    if (w <= 1.0 && h <= 1.0) {
      double y = rng.uniform(0.0, 1.0 - h);
      double x = rng.uniform(0.0, 1.0 - w);
      return {y, x, h, w};
    }
  }
  double side = std::sqrt(std::min(1.0, scale_hi));
  return {(1 - side) / 2, (1 - side) / 2, side, side};
}

Image crop_resize(const Image& img, const CropBox& box, int out_size) {
  int y0 = int(std::lround(box.y * img.height));
  int x0 = int(std::lround(box.x * img.width));
  int ch = std::max(1, int(std::lround(box.h * img.height)));
  int cw = std::max(1, int(std::lround(box.w * img.width)));
  y0 = std::min(y0, img.height - 1);
  x0 = std::min(x0, img.width - 1);
  ch = std::min(ch, img.height - y0);
  cw = std::min(cw, img.width - x0);
  Image crop(ch, cw);
  for (int y = 0; y < ch; ++y)
    for (int x = 0; x < cw; ++x)
      for (int c = 0; c < 3; ++c) crop.at(y, x, c) = img.at(y0 + y, x0 + x, c);
  return resize_bilinear(crop, out_size, out_size);
}

Image hflip(const Image& img) {
  Image out(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = img.at(y, img.width - 1 - x, c);
  return out;
}

Image adjust_brightness(const Image& img, double f) {
  Image out(img.height, img.width);
  for (size_t i = 0; i < img.px.size(); ++i)
    out.px[i] = float(std::min(1.0, std::max(0.0, img.px[i] * f)));
  return out;
}

Image adjust_contrast(const Image& img, double f) {
  // Blend toward the mean luminance of the image.
  Image gray = to_grayscale(img);
  double m = 0;
  for (size_t i = 0; i < gray.px.size(); i += 3) m += gray.px[i];
  m /= double(gray.px.size() / 3);
  Image out(img.height, img.width);
  for (size_t i = 0; i < img.px.size(); ++i)
    out.px[i] = float(std::min(1.0, std::max(0.0, m + (img.px[i] - m) * f)));
  return out;
}

Image adjust_saturation(const Image& img, double f) {
  Image gray = to_grayscale(img);
  Image out(img.height, img.width);
  for (size_t i = 0; i < img.px.size(); ++i)
    out.px[i] = float(std::min(1.0, std::max(0.0, gray.px[i] + (img.px[i] - gray.px[i]) * f)));
  return out;
}

void rgb_to_hsv(float r, float g, float b, float& h, float& s, float& v) {
  float mx = std::max({r, g, b}), mn = std::min({r, g, b});
  v = mx;
  float d = mx - mn;
  s = mx <= 0 ? 0 : d / mx;
  if (d <= 0) {
    h = 0;
    return;
  }
  if (mx == r) h = (g - b) / d + (g < b ? 6.f : 0.f);
  else if (mx == g) h = (b - r) / d + 2.f;
  else h = (r - g) / d + 4.f;
  h /= 6.f;
}

void hsv_to_rgb(float h, float s, float v, float& r, float& g, float& b) {
  h = h - std::floor(h);
  float i = std::floor(h * 6.f);
  float f = h * 6.f - i;
  float p = v * (1.f - s);
  float q = v * (1.f - f * s);
  float t = v * (1.f - (1.f - f) * s);
  switch (int(i) % 6) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
}

Image adjust_hue(const Image& img, double delta) {
  Image out(img.height, img.width);
  const size_t n = size_t(img.height) * img.width;
  for (size_t i = 0; i < n; ++i) {
    float h, s, v;
    rgb_to_hsv(img.px[i * 3], img.px[i * 3 + 1], img.px[i * 3 + 2], h, s, v);
    h += float(delta);
    hsv_to_rgb(h, s, v, out.px[i * 3], out.px[i * 3 + 1], out.px[i * 3 + 2]);
  }
  return out;
}

Image apply_jitter_chain(Image view, const ViewParams& p) {
  for (int slot = 0; slot < 4; ++slot) {
    switch (p.jitter_order[slot]) {
      case 0: view = adjust_brightness(view, p.brightness); break;
      case 1: view = adjust_contrast(view, p.contrast); break;
      case 2: view = adjust_saturation(view, p.saturation); break;
      default: view = adjust_hue(view, p.hue); break;
    }
  }
  return view;
}

// Shared photometric chain of the standard pipeline: jitter (p=.8),
// grayscale (p=.2), gaussian blur (p=.5, sigma in [0.1, 2]).
void sample_photometric(Rng& rng, ViewParams& p, int out_size) {
  p.jitter_applied = rng.bernoulli(0.8);
  if (p.jitter_applied) {
    p.brightness = rng.uniform(0.6, 1.4);
    p.contrast = rng.uniform(0.6, 1.4);
    p.saturation = rng.uniform(0.6, 1.4);
    p.hue = rng.uniform(-0.1, 0.1);
    int order[4] = {0, 1, 2, 3};
    rng.shuffle(order, 4);
    std::copy(order, order + 4, p.jitter_order);
  }
  p.grayscale_applied = rng.bernoulli(0.2);
  if (rng.bernoulli(0.5)) p.rand_blur_sigma = rng.uniform(0.1, 2.0);
  (void)out_size;
}

int blur_kernel_for(int size) {
  // Standard recipe ties the blur kernel to 10% of the view size.
  int k = std::max(3, int(std::lround(size / 10.0)));
  if (k % 2 == 0) k += 1;
  return k;
}

Image render_view(const Image& src, const ViewParams& p) {
  Image view = crop_resize(src, {p.crop_y, p.crop_x, p.crop_h, p.crop_w}, p.out_size);
  if (p.hflip) view = hflip(view);
  if (p.jitter_applied) view = apply_jitter_chain(view, p);
  if (p.grayscale_applied) view = to_grayscale(view);
  if (p.rand_blur_sigma)
    view = gaussian_blur(view, *p.rand_blur_sigma, blur_kernel_for(p.out_size));
  return view;
}

ViewParams sample_view(Rng& rng, int view_index, bool global, int out_size,
                       double scale_lo, double scale_hi, bool photometric) {
  ViewParams p;
  p.view_index = view_index;
  p.global_view = global;
  p.out_size = out_size;
  CropBox box = sample_crop(rng, scale_lo, scale_hi);
  p.crop_y = box.y;
  p.crop_x = box.x;
  p.crop_h = box.h;
  p.crop_w = box.w;
  p.hflip = rng.bernoulli(0.5);
  if (photometric) sample_photometric(rng, p, out_size);
  return p;
}

}  // namespace

nlohmann::ordered_json ViewParams::to_json() const {
  nlohmann::ordered_json j;
  j["frame_id"] = frame_id;
  j["view_index"] = view_index;
  j["global_view"] = global_view;
  j["crop"] = {crop_y, crop_x, crop_h, crop_w};
  j["hflip"] = hflip;
  j["out_size"] = out_size;
  if (jitter_applied) {
    j["brightness"] = brightness;
    j["contrast"] = contrast;
    j["saturation"] = saturation;
    j["hue"] = hue;
    j["jitter_order"] = {jitter_order[0], jitter_order[1], jitter_order[2], jitter_order[3]};
  }
  j["grayscale"] = grayscale_applied;
  if (rand_blur_sigma) j["rand_blur_sigma"] = *rand_blur_sigma;
  if (diet_sigma) j["diet_sigma"] = *diet_sigma;
  if (diet_s) j["diet_s"] = *diet_s;
  return j;
}

AugmentedViews sdiet_views(const Image& img, LearnerKind kind, std::uint64_t rng_seed,
                           const SdietConfig& cfg) {
  Rng rng(rng_seed);
  AugmentedViews out;
  if (kind == LearnerKind::Contrastive) {
    for (int v = 0; v < 2; ++v) {
      ViewParams p = sample_view(rng, v, true, cfg.out_size, cfg.crop_scale_lo,
                                 cfg.crop_scale_hi, true);
      out.views.push_back(render_view(img, p));
      out.params.push_back(p);
    }
  } else {
    for (int v = 0; v < 2; ++v) {
      ViewParams p = sample_view(rng, v, true, cfg.out_size, cfg.global_scale_lo,
                                 cfg.global_scale_hi, true);
      out.views.push_back(render_view(img, p));
      out.params.push_back(p);
    }
    for (int v = 0; v < cfg.local_crops; ++v) {
      ViewParams p = sample_view(rng, 2 + v, false, cfg.local_size, cfg.local_scale_lo,
                                 cfg.local_scale_hi, true);
      out.views.push_back(render_view(img, p));
      out.params.push_back(p);
    }
  }
  return out;
}

AugmentedViews diet_views(const Image& img, const SampledParams& diet, LearnerKind kind,
                          std::uint64_t rng_seed, const SdietConfig& cfg) {
  Rng rng(rng_seed);
  Image dieted = apply_diet_params(img, diet, true);
  AugmentedViews out;
  const int n_global = 2;
  const int n_local = (kind == LearnerKind::Distillation) ? cfg.local_crops : 0;
  for (int v = 0; v < n_global + n_local; ++v) {
    const bool global = v < n_global;
    // Phase 1 keeps geometry gentle so the diet dominates the statistics.
    ViewParams p = sample_view(rng, v, global, global ? cfg.out_size : cfg.local_size,
                               global ? 0.6 : cfg.local_scale_lo,
                               global ? 1.0 : cfg.local_scale_hi, false);
    p.diet_sigma = diet.sigma;
    p.diet_s = diet.s;
    out.views.push_back(render_view(dieted, p));
    out.params.push_back(p);
  }
  return out;
}

Image reproduce_view(const Image& img, const ViewParams& p) {
  Image src = img;
  if (p.diet_s || p.diet_sigma) {
    SampledParams d;
    d.s = p.diet_s.value_or(1.0);
    d.sigma = p.diet_sigma.value_or(0.0);
    d.kernel = int(std::lround(6.0 * d.sigma + 1.0));
    src = apply_diet_params(src, d, true);
  }
  return render_view(src, p);
}

}  // namespace devdiet
