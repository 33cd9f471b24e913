#include "doctest.h"

#include <cmath>

#include "devdiet/rng.hpp"
#include "devdiet/transforms.hpp"

using namespace devdiet;

namespace {

Image random_image(int h, int w, std::uint64_t seed) {
  Rng rng(seed);
  Image img(h, w);
  for (auto& v : img.px) v = float(rng.uniform());
  return img;
}

// Direct (non-separable) 2-D convolution oracle with reflect padding.
Image direct_blur_oracle(const Image& img, double sigma, int kernel) {
  auto taps = gaussian_taps(sigma, kernel);
  const int r = (kernel - 1) / 2;
  auto reflect = [](int i, int n) {
    if (n == 1) return 0;
    int period = 2 * n, m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
  };
  Image out(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0;
        for (int j = -r; j <= r; ++j)
          for (int i = -r; i <= r; ++i)
            acc += taps[j + r] * taps[i + r] *
                   img.at(reflect(y + j, img.height), reflect(x + i, img.width), c);
        out.at(y, x, c) = float(acc);
      }
  return out;
}

double max_abs_diff(const Image& a, const Image& b) {
  double m = 0;
  for (size_t i = 0; i < a.px.size(); ++i)
    m = std::max(m, std::fabs(double(a.px[i]) - double(b.px[i])));
  return m;
}

}  // namespace

TEST_CASE("grayscale: fixed point on gray, luminance weights on primaries") {
  Image gray(4, 4, 0.37f);
  auto g = to_grayscale(gray);
  CHECK(max_abs_diff(g, gray) < 1e-7);

  Image red(1, 1);
  red.at(0, 0, 0) = 1.f;
  auto gr = to_grayscale(red);
  for (int c = 0; c < 3; ++c) CHECK(gr.at(0, 0, c) == doctest::Approx(0.299).epsilon(1e-6));

  Image zero(3, 3, 0.f);
  auto gz = to_grayscale(zero);
  for (float v : gz.px) CHECK(v == 0.f);
}

TEST_CASE("blend_saturation endpoints and per-pixel arithmetic") {
  auto img = random_image(8, 8, 42);
  CHECK(max_abs_diff(blend_saturation(img, 1.0), img) < 1e-7);
  CHECK(max_abs_diff(blend_saturation(img, 0.0), to_grayscale(img)) < 1e-7);

  Image px(1, 1);
  px.at(0, 0, 0) = 100.f / 255.f;
  px.at(0, 0, 1) = 50.f / 255.f;
  px.at(0, 0, 2) = 200.f / 255.f;
  auto b = blend_saturation(px, 0.5);
  CHECK(b.at(0, 0, 0) == doctest::Approx(0.3569).epsilon(1e-3));
  CHECK(std::fabs(b.at(0, 0, 0) - 0.3569) < 1e-4);
  CHECK(std::fabs(b.at(0, 0, 1) - 0.2589) < 1e-4);
  CHECK(std::fabs(b.at(0, 0, 2) - 0.5530) < 1e-4);

  CHECK_THROWS_AS(blend_saturation(px, 1.5), TransformError);
  CHECK_THROWS_AS(blend_saturation(px, -0.1), TransformError);
}

TEST_CASE("blend_saturation is affine in s") {
  auto img = random_image(12, 9, 7);
  for (auto [s1, s2] : {std::pair{0.2, 0.8}, {0.0, 1.0}, {0.3, 0.5}}) {
    auto mid = blend_saturation(img, (s1 + s2) / 2);
    auto a = blend_saturation(img, s1);
    auto b = blend_saturation(img, s2);
    double m = 0;
    for (size_t i = 0; i < mid.px.size(); ++i)
      m = std::max(m, std::fabs(mid.px[i] - (a.px[i] + b.px[i]) / 2.0));
    CHECK(m < 1e-6);
  }
}

TEST_CASE("gaussian_blur identity, constant preservation, impulse response") {
  auto img = random_image(16, 16, 3);
  CHECK(max_abs_diff(gaussian_blur(img, 0.0, 1), img) == 0.0);
  CHECK(max_abs_diff(gaussian_blur(img, 0.0, 7), img) == 0.0);

  Image cst(10, 10, 0.42f);
  CHECK(max_abs_diff(gaussian_blur(cst, 2.5, 9), cst) < 1e-6);

  Image impulse(15, 15, 0.f);
  impulse.at(7, 7, 0) = impulse.at(7, 7, 1) = impulse.at(7, 7, 2) = 1.f;
  auto out = gaussian_blur(impulse, 1.0, 7);
  auto taps = gaussian_taps(1.0, 7);
  for (int j = -3; j <= 3; ++j)
    for (int i = -3; i <= 3; ++i)
      CHECK(std::fabs(out.at(7 + j, 7 + i, 0) - taps[j + 3] * taps[i + 3]) < 1e-6);

  CHECK_THROWS_AS(gaussian_blur(img, 1.0, 4), TransformError);
  CHECK_THROWS_AS(gaussian_blur(img, 1.0, 99), TransformError);
}

TEST_CASE("separable blur matches the direct 2-D convolution oracle") {
  for (int trial = 0; trial < 12; ++trial) {
    auto img = random_image(11 + trial % 5, 13 + trial % 7, 100 + trial);
    double sigma = 0.4 + 0.35 * (trial % 6);
    int kernel = 3 + 2 * (trial % 4);
    auto got = gaussian_blur(img, sigma, kernel);
    auto want = direct_blur_oracle(img, sigma, kernel);
    CHECK(max_abs_diff(got, want) < 1e-6);
  }
}

TEST_CASE("blur preserves mean within tolerance and never raises variance") {
  auto img = random_image(24, 24, 55);
  auto blurred = gaussian_blur(img, 1.5, 9);
  CHECK(std::fabs(mean_pixel(blurred) - mean_pixel(img)) < 1e-3);

  // monotone smoothing across increasing sigma
  double prev = pixel_variance(img);
  for (double sigma : {0.5, 1.0, 2.0, 3.0}) {
    double v = pixel_variance(gaussian_blur(img, sigma, 13));
    CHECK(v <= prev + 1e-9);
    prev = v;
  }
}

TEST_CASE("blur parameter rescaling to working resolution") {
  auto sb = scale_blur_to_resolution(4.0, 25, 224);
  CHECK(sb.sigma == doctest::Approx(4.0));
  CHECK(sb.kernel == 25);
  auto small = scale_blur_to_resolution(4.0, 25, 64);
  CHECK(small.sigma == doctest::Approx(4.0 * 64 / 224));
  CHECK(small.kernel == 7);
  CHECK(small.kernel % 2 == 1);
  auto zero = scale_blur_to_resolution(0.0, 1, 64);
  CHECK(zero.kernel == 1);
}

TEST_CASE("apply_diet: LO-equivalent stage is identity; composition matches oracle") {
  auto img = random_image(32, 32, 9);
  StageSpec lo;
  lo.blur_sigma = 0;
  lo.kernel_size = 1;
  lo.sat_lo = 1.0 - 1e-9;
  lo.sat_hi = 1.0;
  auto out = apply_diet(img, lo, 123);
  CHECK(max_abs_diff(out, img) < 1e-6);

  // CATDiet stage 1 at reference scale: blur(blend(img, s), sigma, kernel)
  StageSpec s1;
  s1.blur_sigma = 4;
  s1.kernel_size = 25;
  s1.sat_lo = 0.20;
  s1.sat_hi = 0.36;
  auto p = sample_stage_params(s1, 77);
  auto got = apply_diet_params(img, p, /*scale_to_image=*/false);
  auto want = gaussian_blur(blend_saturation(img, p.s), 4.0, 25);
  CHECK(max_abs_diff(got, want) == 0.0);

  // determinism: same seed, same bits
  auto a = apply_diet(img, s1, 31);
  auto b = apply_diet(img, s1, 31);
  CHECK(max_abs_diff(a, b) == 0.0);
}

TEST_CASE("sdiet_views: deterministic, correct view counts") {
  auto img = random_image(64, 64, 17);
  auto v1 = sdiet_views(img, LearnerKind::Contrastive, 99);
  auto v2 = sdiet_views(img, LearnerKind::Contrastive, 99);
  REQUIRE(v1.views.size() == 2);
  CHECK(v1.params.size() == 2);
  for (size_t i = 0; i < v1.views.size(); ++i)
    CHECK(max_abs_diff(v1.views[i], v2.views[i]) == 0.0);

  auto d = sdiet_views(img, LearnerKind::Distillation, 99);
  int globals = 0, locals = 0;
  for (const auto& p : d.params) (p.global_view ? globals : locals)++;
  CHECK(globals == 2);
  CHECK(locals == 6);
  CHECK(d.views.size() == 8);
  // local crops render at the smaller resolution
  for (const auto& p : d.params)
    CHECK(p.out_size == (p.global_view ? 64 : 32));
}

TEST_CASE("sdiet parameter records carry no diet fields; diet views do") {
  auto img = random_image(64, 64, 23);
  auto sd = sdiet_views(img, LearnerKind::Contrastive, 5);
  for (const auto& p : sd.params) {
    CHECK(!p.diet_sigma.has_value());
    CHECK(!p.diet_s.has_value());
    auto j = p.to_json();
    CHECK(!j.contains("diet_sigma"));
    CHECK(!j.contains("diet_s"));
  }
  SampledParams diet{0.3, 4.0, 25};
  auto dv = diet_views(img, diet, LearnerKind::Contrastive, 5);
  REQUIRE(dv.views.size() == 2);
  for (const auto& p : dv.params) {
    CHECK(p.diet_sigma.has_value());
    CHECK(*p.diet_s == doctest::Approx(0.3));
  }
}

TEST_CASE("recorded view parameters reproduce the exact view") {
  auto img = random_image(64, 64, 31);
  auto views = sdiet_views(img, LearnerKind::Contrastive, 71);
  for (size_t i = 0; i < views.views.size(); ++i) {
    auto re = reproduce_view(img, views.params[i]);
    CHECK(max_abs_diff(re, views.views[i]) == 0.0);
  }
}
