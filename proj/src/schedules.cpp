#include "devdiet/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace devdiet {

std::vector<int> apportion_durations_droppable(const std::vector<int>& base, int total_epochs);

namespace {

// Saturation floor for "full color" stages: s is drawn from (1-eps, 1].
constexpr double kFullColorEps = 1e-9;

struct StageRow {
  int duration;
  double sigma;
  double sat_lo, sat_hi;
  double temperature;
};

DietSchedule assemble(const std::string& name, int total_epochs,
                      const std::vector<StageRow>& rows, bool drop_empty = false) {
  std::vector<int> base;
  base.reserve(rows.size());
  for (const auto& r : rows) base.push_back(r.duration);
  std::vector<int> durations = drop_empty
                                   ? apportion_durations_droppable(base, total_epochs)
                                   : apportion_durations(base, total_epochs);
  DietSchedule s;
  s.name = name;
  s.total_epochs = total_epochs;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (durations[i] == 0) continue;
    StageSpec st;
    st.duration_epochs = durations[i];
    st.blur_sigma = rows[i].sigma;
    st.kernel_size = int(std::lround(6.0 * rows[i].sigma + 1.0));
    st.sat_lo = rows[i].sat_lo;
    st.sat_hi = rows[i].sat_hi;
    st.temperature = rows[i].temperature;
    s.stages.push_back(st);
  }
  s.validate();
  return s;
}

}  // namespace

// Like apportion_durations but without the 1-epoch floor: when total_epochs
// is smaller than the stage count, low-quota stages receive 0 and the caller
// drops them, preserving the progression order.
std::vector<int> apportion_durations_droppable(const std::vector<int>& base, int total_epochs) {
  const int n = int(base.size());
  if (n == 0) throw ScheduleError("apportion_durations: empty base");
  if (total_epochs < 1) throw ScheduleError("apportion: total_epochs must be positive");
  const double base_sum = std::accumulate(base.begin(), base.end(), 0.0);
  std::vector<double> quota(n);
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) {
    quota[i] = total_epochs * double(base[i]) / base_sum;
    d[i] = int(std::floor(quota[i]));
  }
  int assigned = std::accumulate(d.begin(), d.end(), 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double ra = quota[a] - std::floor(quota[a]);
    double rb = quota[b] - std::floor(quota[b]);
    if (ra != rb) return ra > rb;
    if (base[a] != base[b]) return base[a] > base[b];
    return a < b;
  });
  for (int k = 0; assigned < total_epochs; ++k) {
    d[order[k % n]] += 1;
    ++assigned;
  }
  return d;
}

void DietSchedule::validate() const {
  if (stages.empty()) throw ScheduleError("schedule '" + name + "' has no stages");
  if (total_epochs <= 0) throw ScheduleError("schedule '" + name + "': total_epochs must be positive");
  int sum = 0;
  for (const auto& st : stages) {
    if (st.duration_epochs < 1)
      throw ScheduleError("schedule '" + name + "': stage duration < 1");
    if (st.kernel_size < 1 || st.kernel_size % 2 == 0)
      throw ScheduleError("schedule '" + name + "': kernel_size must be odd positive");
    if (st.blur_sigma < 0) throw ScheduleError("schedule '" + name + "': negative sigma");
    if (!(st.sat_lo >= 0 && st.sat_lo < st.sat_hi && st.sat_hi <= 1.0))
      throw ScheduleError("schedule '" + name + "': bad saturation interval");
    if (st.temperature <= 0) throw ScheduleError("schedule '" + name + "': temperature must be positive");
    sum += st.duration_epochs;
  }
  if (sum != total_epochs)
    throw ScheduleError("schedule '" + name + "': stage durations sum to " +
                        std::to_string(sum) + ", expected " + std::to_string(total_epochs));
}

std::vector<int> apportion_durations(const std::vector<int>& base, int total_epochs) {
  const int n = int(base.size());
  if (n == 0) throw ScheduleError("apportion_durations: empty base");
  if (total_epochs < n)
    throw ScheduleError("cannot apportion " + std::to_string(total_epochs) +
                        " epochs over " + std::to_string(n) + " stages (1-epoch floor)");
  const double base_sum = std::accumulate(base.begin(), base.end(), 0.0);
  std::vector<double> quota(n);
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) {
    quota[i] = total_epochs * double(base[i]) / base_sum;
    d[i] = int(std::floor(quota[i]));
  }
  int assigned = std::accumulate(d.begin(), d.end(), 0);
  // Hand out the leftover seats by largest remainder; ties go to the larger
  // base duration, then the earlier stage.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double ra = quota[a] - std::floor(quota[a]);
    double rb = quota[b] - std::floor(quota[b]);
    if (ra != rb) return ra > rb;
    if (base[a] != base[b]) return base[a] > base[b];
    return a < b;
  });
  for (int k = 0; assigned < total_epochs; ++k) {
    d[order[k % n]] += 1;
    ++assigned;
  }
  // Enforce the 1-epoch floor, taking from the largest stage.
  for (int i = 0; i < n; ++i) {
    while (d[i] < 1) {
      int donor = -1;
      for (int j = 0; j < n; ++j)
        if (d[j] > 1 && (donor < 0 || d[j] > d[donor])) donor = j;
      if (donor < 0) throw ScheduleError("apportion_durations: floor infeasible");
      d[donor] -= 1;
      d[i] += 1;
    }
  }
  return d;
}

DietSchedule build_cdiet(int total_epochs) {
  if (total_epochs < 5)
    throw ScheduleError("cdiet needs total_epochs >= 5, got " + std::to_string(total_epochs));
  return assemble("cdiet", total_epochs,
                  {{10, 0.0, 0.20, 0.36, 0.5},
                   {7, 0.0, 0.36, 0.52, 0.4},
                   {6, 0.0, 0.52, 0.68, 0.3},
                   {5, 0.0, 0.68, 0.84, 0.2},
                   {2, 0.0, 0.84, 1.00, 0.1}});
}

DietSchedule build_adiet(int total_epochs) {
  if (total_epochs < 5)
    throw ScheduleError("adiet needs total_epochs >= 5, got " + std::to_string(total_epochs));
  const double lo = 1.0 - kFullColorEps;
  return assemble("adiet", total_epochs,
                  {{10, 4.0, lo, 1.0, 0.5},
                   {6, 3.0, lo, 1.0, 0.4},
                   {6, 2.0, lo, 1.0, 0.3},
                   {3, 1.0, lo, 1.0, 0.2},
                   {5, 0.0, lo, 1.0, 0.1}});
}

namespace {
const std::vector<StageRow>& catdiet_rows() {
  static const std::vector<StageRow> rows = {{10, 4.0, 0.20, 0.36, 0.50},
                                             {6, 3.0, 0.36, 0.52, 0.45},
                                             {1, 2.0, 0.36, 0.52, 0.40},
                                             {5, 2.0, 0.52, 0.68, 0.35},
                                             {1, 1.0, 0.52, 0.68, 0.30},
                                             {2, 1.0, 0.68, 0.84, 0.20},
                                             {3, 0.0, 0.68, 0.84, 0.15},
                                             {2, 0.0, 0.84, 1.00, 0.10}};
  return rows;
}
}  // namespace

DietSchedule build_catdiet(int total_epochs) {
  if (total_epochs < 8)
    throw ScheduleError("catdiet needs total_epochs >= 8, got " + std::to_string(total_epochs));
  return assemble("catdiet", total_epochs, catdiet_rows());
}

DietSchedule build_tdiet(int total_epochs) {
  if (total_epochs < 1)
    throw ScheduleError("tdiet needs total_epochs >= 1");
  const double lo = 1.0 - kFullColorEps;
  return assemble("tdiet", total_epochs, {{total_epochs, 0.0, lo, 1.0, 0.1}});
}

DietSchedule build_schedule_by_name(const std::string& name, int total_epochs) {
  if (name == "cdiet") return build_cdiet(total_epochs);
  if (name == "adiet") return build_adiet(total_epochs);
  if (name == "catdiet") return build_catdiet(total_epochs);
  if (name == "tdiet") return build_tdiet(total_epochs);
  std::string valid;
  for (const auto& n : builder_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ScheduleError("unknown diet '" + name + "' (valid: " + valid + ")");
}

std::vector<std::string> builder_names() {
  return {"cdiet", "adiet", "catdiet", "tdiet"};
}

int stage_index_at(const DietSchedule& schedule, int epoch) {
  if (epoch < 0 || epoch >= schedule.total_epochs)
    throw ScheduleError("epoch " + std::to_string(epoch) + " outside [0, " +
                        std::to_string(schedule.total_epochs) + ")");
  int acc = 0;
  for (size_t i = 0; i < schedule.stages.size(); ++i) {
    acc += schedule.stages[i].duration_epochs;
    if (epoch < acc) return int(i);
  }
  throw ScheduleError("stage lookup fell through (broken schedule invariant)");
}

const StageSpec& stage_at(const DietSchedule& schedule, int epoch) {
  return schedule.stages[size_t(stage_index_at(schedule, epoch))];
}

SampledParams sample_stage_params(const StageSpec& stage, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  SampledParams p;
  p.s = rng.uniform_high(stage.sat_lo, stage.sat_hi);
  p.sigma = stage.blur_sigma;
  p.kernel = stage.kernel_size;
  return p;
}

const char* to_string(BaselineKind k) {
  switch (k) {
    case BaselineKind::None: return "none";
    case BaselineKind::REV: return "rev";
    case BaselineKind::SHF: return "shf";
    case BaselineKind::FO: return "fo";
    case BaselineKind::LO: return "lo";
  }
  return "?";
}

const char* to_string(LearnerKind k) {
  return k == LearnerKind::Contrastive ? "contrastive" : "distillation";
}

BaselineKind baseline_from_string(const std::string& s) {
  if (s == "none" || s.empty()) return BaselineKind::None;
  if (s == "rev") return BaselineKind::REV;
  if (s == "shf") return BaselineKind::SHF;
  if (s == "fo") return BaselineKind::FO;
  if (s == "lo") return BaselineKind::LO;
  throw ScheduleError("unknown baseline kind '" + s + "' (valid: none, rev, shf, fo, lo)");
}

LearnerKind learner_from_string(const std::string& s) {
  if (s == "contrastive" || s == "simclr") return LearnerKind::Contrastive;
  if (s == "distillation" || s == "dino") return LearnerKind::Distillation;
  throw ScheduleError("unknown learner kind '" + s + "' (valid: contrastive, distillation)");
}

ScheduleSampler::ScheduleSampler(DietSchedule schedule, BaselineKind kind)
    : original_(std::move(schedule)), kind_(kind) {
  original_.validate();
  effective_ = original_;
  switch (kind) {
    case BaselineKind::None:
    case BaselineKind::SHF:
      break;
    case BaselineKind::REV: {
      std::reverse(effective_.stages.begin(), effective_.stages.end());
      effective_.name = original_.name + "-rev";
      break;
    }
    case BaselineKind::FO: {
      StageSpec first = original_.stages.front();
      first.duration_epochs = original_.total_epochs;
      effective_.stages = {first};
      effective_.name = original_.name + "-fo";
      break;
    }
    case BaselineKind::LO: {
      StageSpec st;
      st.duration_epochs = original_.total_epochs;
      st.blur_sigma = 0.0;
      st.kernel_size = 1;
      st.sat_lo = 1.0 - kFullColorEps;
      st.sat_hi = 1.0;
      st.temperature = original_.stages.back().temperature;
      effective_.stages = {st};
      effective_.name = original_.name + "-lo";
      break;
    }
  }
  effective_.validate();
}

SampledParams ScheduleSampler::sample(int epoch, std::uint64_t rng_seed) const {
  if (kind_ == BaselineKind::SHF) {
    // Durations are ignored: each sample draws a stage uniformly over the
    // pool, then its parameters.
    if (epoch < 0 || epoch >= original_.total_epochs)
      throw ScheduleError("epoch out of range for SHF sampler");
    Rng rng(rng_seed);
    size_t idx = size_t(rng.randint(original_.stages.size()));
    const StageSpec& st = original_.stages[idx];
    SampledParams p;
    p.s = rng.uniform_high(st.sat_lo, st.sat_hi);
    p.sigma = st.blur_sigma;
    p.kernel = st.kernel_size;
    return p;
  }
  if (kind_ == BaselineKind::LO) {
    // LO fixes s at 1 exactly; no draw.
    SampledParams p;
    p.s = 1.0;
    p.sigma = 0.0;
    p.kernel = 1;
    return p;
  }
  return sample_stage_params(stage_at(effective_, epoch), rng_seed);
}

const StageSpec& ScheduleSampler::stage_for_epoch(int epoch) const {
  if (kind_ == BaselineKind::SHF) return stage_at(original_, epoch);
  return stage_at(effective_, epoch);
}

const StageSpec& ScheduleSampler::param_stage_for_epoch(int epoch) const {
  if (kind_ == BaselineKind::SHF)
    throw ScheduleError("SHF has no per-epoch parameter stage; use sample()");
  return stage_at(effective_, epoch);
}

ScheduleSampler derive_baseline(const DietSchedule& schedule, BaselineKind kind) {
  return ScheduleSampler(schedule, kind);
}

TrainingPlan build_combdiet_plan(int total_epochs, LearnerKind /*learner*/) {
  if (total_epochs < 10)
    throw ScheduleError("combdiet needs total_epochs >= 10, got " + std::to_string(total_epochs));
  TrainingPlan plan;
  plan.name = "combdiet";
  int phase1_epochs = int(std::lround(0.30 * total_epochs));
  // Short phase-1 budgets (< 8 epochs) cannot give all eight stages an
  // epoch; apportion without the floor and drop the empty stages so the
  // progression order survives.
  plan.phase1 = phase1_epochs >= 8
                    ? build_catdiet(phase1_epochs)
                    : assemble("catdiet", phase1_epochs, catdiet_rows(), /*drop_empty=*/true);
  plan.phase2_epochs = total_epochs - phase1_epochs;
  plan.phase2_temperature = 0.1;  // Distillation readers ignore it.
  plan.tdiet_enabled = true;
  return plan;
}

TrainingPlan make_single_phase_plan(DietSchedule schedule) {
  TrainingPlan plan;
  plan.name = schedule.name;
  plan.phase1 = std::move(schedule);
  plan.phase2_epochs = 0;
  plan.tdiet_enabled = true;
  return plan;
}

TrainingPlan make_std_plan(int total_epochs) {
  TrainingPlan plan;
  plan.name = "std";
  plan.phase1.reset();
  plan.phase2_epochs = total_epochs;
  plan.phase2_temperature = 0.1;
  plan.tdiet_enabled = false;  // per-frame positives only
  return plan;
}

nlohmann::ordered_json schedule_to_json(const DietSchedule& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["total_epochs"] = s.total_epochs;
  j["stages"] = nlohmann::ordered_json::array();
  for (const auto& st : s.stages) {
    nlohmann::ordered_json stage;
    stage["duration"] = st.duration_epochs;
    stage["sigma"] = st.blur_sigma;
    stage["kernel"] = st.kernel_size;
    stage["sat_lo"] = st.sat_lo;
    stage["sat_hi"] = st.sat_hi;
    stage["temperature"] = st.temperature;
    j["stages"].push_back(stage);
  }
  return j;
}

DietSchedule schedule_from_json(const nlohmann::json& j) {
  DietSchedule s;
  s.name = j.at("name").get<std::string>();
  s.total_epochs = j.at("total_epochs").get<int>();
  for (const auto& stage : j.at("stages")) {
    StageSpec st;
    st.duration_epochs = stage.at("duration").get<int>();
    st.blur_sigma = stage.at("sigma").get<double>();
    st.kernel_size = stage.at("kernel").get<int>();
    st.sat_lo = stage.at("sat_lo").get<double>();
    st.sat_hi = stage.at("sat_hi").get<double>();
    st.temperature = stage.at("temperature").get<double>();
    s.stages.push_back(st);
  }
  s.validate();
  return s;
}

void save_schedule(const DietSchedule& s, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ScheduleError("cannot write schedule to " + path);
  f << schedule_to_json(s).dump(2) << "\n";
}

DietSchedule load_schedule(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ScheduleError("cannot read schedule from " + path);
  nlohmann::json j = nlohmann::json::parse(f);
  return schedule_from_json(j);
}

}  // namespace devdiet
