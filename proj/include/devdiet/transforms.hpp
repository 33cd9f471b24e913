// Pure, seeded image operators: saturation blending, acuity blur, the diet
// composition, and the standard stochastic augmentation pipelines for both
// learner families. Every operator is a function of (image, params, seed).
#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "devdiet/image.hpp"
#include "devdiet/rng.hpp"
#include "devdiet/schedules.hpp"

namespace devdiet {

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Luminance with ITU-R BT.601 weights; all three channels get L.
Image to_grayscale(const Image& img);

// s*img + (1-s)*grayscale(img), elementwise. s must lie in [0,1].
Image blend_saturation(const Image& img, double s);

// Separable discrete Gaussian, kernel truncated to `kernel` taps, weights
// normalized to sum 1, reflect boundary padding. sigma=0 or kernel=1 is the
// identity. Accumulation in double so the separable pass matches a direct
// 2-D convolution to well under 1e-6.
Image gaussian_blur(const Image& img, double sigma, int kernel);

// Normalized 1-D taps for a truncated Gaussian (exposed for oracles/tests).
std::vector<double> gaussian_taps(double sigma, int kernel);

// Scale reference-resolution (224) blur parameters to the working
// resolution; kernel is re-oddified and floored at 1.
struct ScaledBlur {
  double sigma;
  int kernel;
};
ScaledBlur scale_blur_to_resolution(double sigma_ref, int kernel_ref, int working_size);

// blend_saturation with the sampled s, then gaussian_blur. Parameters are in
// reference units; set `working_scale` to rescale blur for the image size.
Image apply_diet(const Image& img, const StageSpec& stage, std::uint64_t rng_seed,
                 bool scale_to_image = true);
Image apply_diet_params(const Image& img, const SampledParams& p, bool scale_to_image = true);

// Record of everything needed to reproduce one augmented view. Diet fields
// are present only when a diet stage produced the view (phase 1).
struct ViewParams {
  std::string frame_id;
  int view_index = 0;
  bool global_view = true;     // distillation: global vs local crop
  // geometric
  double crop_y = 0, crop_x = 0, crop_h = 1, crop_w = 1;  // fractions of source
  bool hflip = false;
  int out_size = 0;
  // photometric (standard pipeline)
  bool jitter_applied = false;
  double brightness = 1, contrast = 1, saturation = 1, hue = 0;
  int jitter_order[4] = {0, 1, 2, 3};
  bool grayscale_applied = false;
  std::optional<double> rand_blur_sigma;  // standard pipeline blur
  // diet fields (phase 1 only)
  std::optional<double> diet_sigma;
  std::optional<double> diet_s;

  nlohmann::ordered_json to_json() const;
};

struct AugmentedViews {
  std::string frame_id;
  std::vector<Image> views;
  std::vector<ViewParams> params;
};

// Standard-pipeline knobs (published recipes of the two learner families).
struct SdietConfig {
  int out_size = 64;
  int local_size = 32;
  int local_crops = 6;
  double crop_scale_lo = 0.2, crop_scale_hi = 1.0;        // contrastive
  double global_scale_lo = 0.4, global_scale_hi = 1.0;    // distillation
  double local_scale_lo = 0.05, local_scale_hi = 0.4;
};

// Standard stochastic augmentation views. Contrastive: 2 views; distillation:
// 2 global + local_crops local views. Fully determined by the seed.
AugmentedViews sdiet_views(const Image& img, LearnerKind kind, std::uint64_t rng_seed,
                           const SdietConfig& cfg = {});

// Phase-1 views: diet transform (blend+blur) plus gentle crop/flip so each
// frame still yields multiple views. Contrastive: 2 views; distillation:
// 2 global + local crops.
AugmentedViews diet_views(const Image& img, const SampledParams& diet, LearnerKind kind,
                          std::uint64_t rng_seed, const SdietConfig& cfg = {});

// Re-apply a recorded parameter set to a source image (reproduction path).
Image reproduce_view(const Image& img, const ViewParams& p);

}  // namespace devdiet
