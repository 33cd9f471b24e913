// Staged visual-diet curricula: schedule data, builders for the color /
// acuity / interleaved curricula, per-epoch stage resolution, the REV / SHF /
// FO / LO baseline variants, and the two-phase combined training plan.
#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "devdiet/rng.hpp"

namespace devdiet {

struct ScheduleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One curriculum stage. blur_sigma and kernel_size are in pixels at the
// 224x224 reference resolution; the transform layer rescales for the
// working resolution.
struct StageSpec {
  int duration_epochs = 1;
  double blur_sigma = 0.0;
  int kernel_size = 1;          // odd, = 6*sigma + 1 for all built-in stages
  double sat_lo = 0.0;          // saturation interval (lo, hi], hi <= 1
  double sat_hi = 1.0;
  double temperature = 0.1;     // contrastive temperature; distillation ignores

  bool operator==(const StageSpec&) const = default;
};

struct DietSchedule {
  std::string name;
  std::vector<StageSpec> stages;
  int total_epochs = 0;

  void validate() const;  // throws ScheduleError on broken invariants
};

enum class BaselineKind { None, REV, SHF, FO, LO };
enum class LearnerKind { Contrastive, Distillation };

const char* to_string(BaselineKind k);
const char* to_string(LearnerKind k);
BaselineKind baseline_from_string(const std::string& s);
LearnerKind learner_from_string(const std::string& s);

// Proportional rescaling of base stage durations to total_epochs:
// largest-remainder apportionment with a 1-epoch floor.
std::vector<int> apportion_durations(const std::vector<int>& base, int total_epochs);

DietSchedule build_cdiet(int total_epochs);
DietSchedule build_adiet(int total_epochs);
DietSchedule build_catdiet(int total_epochs);
// Single identity stage with the mature temperature; the temporal objective
// is what distinguishes this diet, not the image statistics.
DietSchedule build_tdiet(int total_epochs);

DietSchedule build_schedule_by_name(const std::string& name, int total_epochs);
std::vector<std::string> builder_names();

// Epoch -> stage lookup. Throws ScheduleError when epoch is out of range.
const StageSpec& stage_at(const DietSchedule& schedule, int epoch);
// Index of the containing stage (0-based); same range contract as stage_at.
int stage_index_at(const DietSchedule& schedule, int epoch);

// Per-sample parameter draw: s uniform over (sat_lo, sat_hi], sigma/kernel
// copied from the stage. Deterministic for a fixed seed.
struct SampledParams {
  double s = 1.0;
  double sigma = 0.0;
  int kernel = 1;
};
SampledParams sample_stage_params(const StageSpec& stage, std::uint64_t rng_seed);

// A schedule with one of the four baseline rewrites applied. REV/FO/LO are
// plain schedules; SHF draws a uniformly random stage per sample, so its
// parameter source is resolved at sample time.
class ScheduleSampler {
 public:
  ScheduleSampler(DietSchedule schedule, BaselineKind kind);

  // Image-side parameters for one sample at the given epoch. The seed feeds
  // both the SHF stage draw and the saturation draw.
  SampledParams sample(int epoch, std::uint64_t rng_seed) const;

  // Stage used for non-sampled fields at this epoch (temperature follows the
  // effective schedule; for SHF the original stage order keeps time-varying
  // fields well-defined within a batch).
  const StageSpec& stage_for_epoch(int epoch) const;

  // The stage whose image parameters apply at this epoch (REV/FO/LO: the
  // rewritten stage; SHF: throws, parameters are per-sample).
  const StageSpec& param_stage_for_epoch(int epoch) const;

  const DietSchedule& effective_schedule() const { return effective_; }
  BaselineKind kind() const { return kind_; }
  int total_epochs() const { return original_.total_epochs; }

 private:
  DietSchedule original_;
  DietSchedule effective_;  // REV/FO/LO rewrite; == original_ for None/SHF
  BaselineKind kind_;
};

// Spec-named entry point: returns a sampler wrapping the rewritten schedule.
ScheduleSampler derive_baseline(const DietSchedule& schedule, BaselineKind kind);

// Two-phase plan. For CombDiet, phase1 = CATDiet over round(0.30*total) and
// phase 2 runs the standard augmentation pipeline at a fixed temperature.
struct TrainingPlan {
  std::string name;
  std::optional<DietSchedule> phase1;
  int phase2_epochs = 0;
  double phase2_temperature = 0.1;
  bool tdiet_enabled = true;  // both phases
  BaselineKind baseline_kind = BaselineKind::None;

  int total_epochs() const {
    return (phase1 ? phase1->total_epochs : 0) + phase2_epochs;
  }
  bool in_phase2(int epoch) const {
    return epoch >= (phase1 ? phase1->total_epochs : 0);
  }
};

TrainingPlan build_combdiet_plan(int total_epochs, LearnerKind learner);
// Single-phase plan wrapping one diet schedule (phase2_epochs = 0).
TrainingPlan make_single_phase_plan(DietSchedule schedule);
// STD baseline: no phase 1, standard augmentations + per-frame positives.
TrainingPlan make_std_plan(int total_epochs);

nlohmann::ordered_json schedule_to_json(const DietSchedule& s);
DietSchedule schedule_from_json(const nlohmann::json& j);
void save_schedule(const DietSchedule& s, const std::string& path);
DietSchedule load_schedule(const std::string& path);

}  // namespace devdiet
