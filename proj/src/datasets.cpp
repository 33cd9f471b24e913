#include "devdiet/datasets.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

namespace devdiet {

namespace fs = std::filesystem;

std::vector<int> VideoDataset::clip_indices(const std::string& split) const {
  std::vector<int> out;
  for (size_t i = 0; i < clips.size(); ++i)
    if (clips[i].split == split) out.push_back(int(i));
  return out;
}

std::vector<int> sample_training_frames(const VideoClip& clip, int k, std::uint64_t /*seed*/) {
  const int n = int(clip.frames.size());
  if (n < k)
    throw DatasetError("clip '" + clip.id + "' has " + std::to_string(n) +
                       " frames, need " + std::to_string(k));
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = int(std::int64_t(i) * n / k);
  return idx;
}

std::vector<int> sample_test_frames(const VideoClip& clip, int k, std::uint64_t seed) {
  const int n = int(clip.frames.size());
  if (n < k)
    throw DatasetError("clip '" + clip.id + "' has " + std::to_string(n) +
                       " frames, need " + std::to_string(k));
  // Partial Fisher-Yates: first k of a seeded shuffle.
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  Rng rng(seed);
  std::vector<int> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    int j = i + int(rng.randint(std::uint64_t(n - i)));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

std::vector<VideoClip> subsample_egocentric(const VideoClip& stream, double clip_seconds,
                                            double stride_seconds, double fps) {
  std::vector<VideoClip> out;
  if (stream.frames.empty()) return out;
  const double t0 = stream.times.front();
  const double t_end = stream.times.back();
  const int frames_per_clip = int(std::lround(clip_seconds * fps));
  auto nearest_frame = [&](double t) {
    // times are strictly increasing; binary search for the closest
    auto it = std::lower_bound(stream.times.begin(), stream.times.end(), t);
    if (it == stream.times.begin()) return 0;
    if (it == stream.times.end()) return int(stream.times.size()) - 1;
    int hi = int(it - stream.times.begin());
    return (t - stream.times[hi - 1] <= stream.times[hi] - t) ? hi - 1 : hi;
  };
  int clip_no = 0;
  for (double start = t0; start + clip_seconds <= t_end + 1e-9; start += stride_seconds) {
    VideoClip clip;
    clip.id = stream.id + "_clip" + std::to_string(clip_no++);
    clip.label = stream.label;
    clip.split = stream.split;
    for (int j = 0; j < frames_per_clip; ++j) {
      double t = start + j / fps;
      int fi = nearest_frame(t);
      clip.frames.push_back(stream.frames[fi]);
      clip.times.push_back(t);
    }
    out.push_back(std::move(clip));
  }
  return out;
}

std::vector<PositiveGroup> make_positive_groups(int n_frames, int window) {
  if (window < 0) throw DatasetError("make_positive_groups: window must be >= 0");
  std::vector<PositiveGroup> groups;
  const int size = window + 1;
  int gid = 0;
  for (int start = 0; start < n_frames; start += size) {
    PositiveGroup g;
    g.group_id = gid++;
    for (int i = start; i < std::min(n_frames, start + size); ++i) g.members.push_back(i);
    groups.push_back(std::move(g));
  }
  return groups;
}

// ---- procedural textures ----------------------------------------------------

namespace {

struct TexCtx {
  int family = 0;  // 0 stripes, 1 dots, 2 checker, 3 waves, 4 plain
  Color col_a{0.8f, 0.3f, 0.3f};
  Color col_b{0.9f, 0.9f, 0.85f};
  double period = 0.2;
  double phase = 0.0;
  Vec3 dir{1, 0.35, 0.15};
};

Color tex_eval(const Vec3& p, const void* vctx) {
  const auto& ctx = *static_cast<const TexCtx*>(vctx);
  switch (ctx.family) {
    case 0: {  // stripes
      double t = dot(p, ctx.dir) / ctx.period * 2 * M_PI + ctx.phase;
      return std::sin(t) > 0 ? ctx.col_a : ctx.col_b;
    }
    case 1: {  // dots
      auto cell = [&](double v) {
        double f = v / ctx.period + ctx.phase;
        return f - std::floor(f) - 0.5;
      };
      double dx = cell(p.x), dy = cell(p.y), dz = cell(p.z);
      return (dx * dx + dy * dy + dz * dz) < 0.09 ? ctx.col_a : ctx.col_b;
    }
    case 2: {  // checker
      auto q = [&](double v) { return int(std::floor(v / ctx.period + ctx.phase)); };
      return ((q(p.x) + q(p.y) + q(p.z)) & 1) ? ctx.col_a : ctx.col_b;
    }
    case 3: {  // waves (smooth)
      double t = 0.5 + 0.5 * std::sin(dot(p, ctx.dir) / ctx.period * 2 * M_PI + ctx.phase) *
                           std::cos(p.y / ctx.period * 2 * M_PI);
      return {float(ctx.col_a.r * t + ctx.col_b.r * (1 - t)),
              float(ctx.col_a.g * t + ctx.col_b.g * (1 - t)),
              float(ctx.col_a.b * t + ctx.col_b.b * (1 - t))};
    }
    default:
      return ctx.col_a;
  }
}

Color hsv_color(double h, double s, double v) {
  h = h - std::floor(h);
  double i = std::floor(h * 6), f = h * 6 - i;
  double p = v * (1 - s), q = v * (1 - f * s), t = v * (1 - (1 - f) * s);
  switch (int(i) % 6) {
    case 0: return {float(v), float(t), float(p)};
    case 1: return {float(q), float(v), float(p)};
    case 2: return {float(p), float(v), float(t)};
    case 3: return {float(p), float(q), float(v)};
    case 4: return {float(t), float(p), float(v)};
    default: return {float(v), float(p), float(q)};
  }
}

std::vector<Triangle> make_class_mesh(int c) {
  switch (c % 7) {
    case 0: return make_cube();
    case 1: return make_sphere();
    case 2: return make_cone();
    case 3: return make_cylinder();
    case 4: return make_torus();
    case 5: return make_pyramid();
    default: return make_prism();
  }
}

const char* kClassNames[7] = {"cube", "sphere", "cone", "cylinder", "torus", "pyramid", "prism"};

TexCtx instance_texture(int class_idx, Rng& rng) {
  TexCtx ctx;
  ctx.family = class_idx % 5;
  double hue = rng.uniform();
  ctx.col_a = hsv_color(hue, rng.uniform(0.55, 0.9), rng.uniform(0.6, 0.95));
  ctx.col_b = hsv_color(hue + rng.uniform(0.35, 0.65), rng.uniform(0.3, 0.7),
                        rng.uniform(0.55, 0.95));
  ctx.period = rng.uniform(0.12, 0.30);
  ctx.phase = rng.uniform(0.0, 6.28);
  ctx.dir = normalized(Vec3{rng.uniform(0.5, 1.0), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)});
  return ctx;
}

void apply_texture(std::vector<Triangle>& mesh, const TexCtx* ctx) {
  for (auto& t : mesh) {
    t.texture = tex_eval;
    t.tex_ctx = ctx;
  }
}

}  // namespace

int max_rotation_classes() { return 7; }

std::string rotation_class_name(int c) {
  if (c < 0 || c >= 7) throw DatasetError("rotation class out of range");
  return kClassNames[c];
}

VideoDataset gen_rotation_videos(int n_classes, int videos_per_class, int frames_per_video,
                                 int resolution, std::uint64_t seed, double train_fraction) {
  if (n_classes < 2) throw DatasetError("gen_rotation_videos: need n_classes >= 2");
  if (n_classes > max_rotation_classes())
    throw DatasetError("gen_rotation_videos: at most " + std::to_string(max_rotation_classes()) +
                       " shape families available");
  if (videos_per_class < 1 || frames_per_video < 2)
    throw DatasetError("gen_rotation_videos: bad shape parameters");

  VideoDataset ds;
  ds.id = "rotation_c" + std::to_string(n_classes) + "_v" + std::to_string(videos_per_class) +
          "_f" + std::to_string(frames_per_video) + "_r" + std::to_string(resolution) + "_s" +
          std::to_string(seed);
  for (int c = 0; c < n_classes; ++c) ds.class_names.push_back(kClassNames[c]);

  const int train_per_class = std::min(
      videos_per_class, std::max(1, int(std::lround(train_fraction * videos_per_class))));
  for (int c = 0; c < n_classes; ++c) {
    for (int v = 0; v < videos_per_class; ++v) {
      Rng rng(derive_seed(seed, "rotvid", c, v));
      TexCtx tex = instance_texture(c, rng);
      double size = rng.uniform(0.75, 1.15);
      double cam_h = rng.uniform(0.45, 0.85);
      double cam_d = rng.uniform(2.0, 2.5);
      double pitch = rng.uniform(-0.12, 0.12);
      Color bg = hsv_color(rng.uniform(), rng.uniform(0.05, 0.25), rng.uniform(0.45, 0.8));

      VideoClip clip;
      clip.id = std::string(kClassNames[c]) + "_" + std::to_string(v);
      clip.label = c;
      clip.split = v < train_per_class ? "train" : "test";

      RenderSettings rs;
      rs.size = resolution;
      rs.background = bg;
      Camera cam;
      cam.eye = {0, cam_h, -cam_d};
      cam.target = {0, 0, 0};

      for (int fidx = 0; fidx < frames_per_video; ++fidx) {
        double az_deg = 360.0 * fidx / frames_per_video;
        auto mesh = make_class_mesh(c);
        apply_texture(mesh, &tex);
        transform_mesh(mesh, size, az_deg * M_PI / 180.0, pitch, {0, 0, 0});
        clip.frames.push_back(render_scene(mesh, cam, rs));
        clip.times.push_back(az_deg);
      }
      ds.clips.push_back(std::move(clip));
    }
  }
  return ds;
}

// ---- depth-order scenes -----------------------------------------------------

namespace {

std::vector<Triangle> make_arrow_mesh() {
  // Vertical shaft + cone head, overall height ~0.55, standing on y=0.
  auto shaft = make_cylinder(10);
  transform_mesh(shaft, 0.3, 0, 0, {0, 0.15, 0});  // 0.3 tall, radius ~0.12
  auto head = make_cone(12);
  transform_mesh(head, 0.28, 0, 0, {0, 0.42, 0});
  shaft.insert(shaft.end(), head.begin(), head.end());
  return shaft;
}

std::vector<Triangle> make_ground(double y, double x0, double x1, double z0, double z1,
                                  const TexCtx* tex) {
  std::vector<Triangle> t;
  Vec3 a{x0, y, z0}, b{x1, y, z0}, c{x1, y, z1}, d{x0, y, z1};
  t.push_back({a, b, c, a, b, c, {0.6f, 0.6f, 0.6f}, tex, tex ? tex_eval : nullptr});
  t.push_back({a, c, d, a, c, d, {0.6f, 0.6f, 0.6f}, tex, tex ? tex_eval : nullptr});
  return t;
}

const TexCtx kGroundTex{2, {0.55f, 0.5f, 0.45f}, {0.4f, 0.42f, 0.38f}, 0.5, 0.0, {1, 0, 0}};
const TexCtx kCliffTex{2, {0.92f, 0.92f, 0.92f}, {0.06f, 0.06f, 0.06f}, 0.1, 0.0, {1, 0, 0}};

}  // namespace

SceneSpec make_depth_scene_spec(std::uint64_t seed) {
  SceneSpec spec;
  spec.seed = seed;
  spec.kind = "depth_order";
  spec.cam_eye = {0, 1.0, 0};
  spec.cam_target = {0, 0.25, 3.0};
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(derive_seed(seed, "depthspec", attempt));
    double za = rng.uniform(1.2, 4.5), xa = rng.uniform(-1.1, 1.1);
    double zb = rng.uniform(1.2, 4.5), xb = rng.uniform(-1.1, 1.1);
    Vec3 arrow{xa, 0.28, za};  // mid-height of the marker
    Vec3 ball{xb, 0.25, zb};
    double da = norm(arrow - spec.cam_eye), db = norm(ball - spec.cam_eye);
    double gap = std::fabs(da - db) / std::max(da, db);
    double sep = norm(arrow - ball);
    if (gap >= 0.05 && sep >= 0.75) {
      spec.arrow_pos = arrow;
      spec.ball_pos = ball;
      spec.arrow_closer = da < db;
      return spec;
    }
  }
}

std::pair<Image, bool> gen_depth_scene(const SceneSpec& spec, int resolution) {
  double da = norm(spec.arrow_pos - spec.cam_eye), db = norm(spec.ball_pos - spec.cam_eye);
  double gap = std::fabs(da - db) / std::max(da, db);
  if (gap < 0.05) throw DatasetError("degenerate depth scene: tied distances");

  std::vector<Triangle> scene = make_ground(0, -7, 7, 0.2, 12, &kGroundTex);
  auto arrow = make_arrow_mesh();
  set_mesh_color(arrow, {0.05f, 0.75f, 0.1f});
  transform_mesh(arrow, 1.0, 0, 0, {spec.arrow_pos.x, 0, spec.arrow_pos.z});
  scene.insert(scene.end(), arrow.begin(), arrow.end());
  auto ball = make_sphere(10);
  set_mesh_color(ball, {0.85f, 0.08f, 0.05f});
  transform_mesh(ball, 0.5, 0, 0, {spec.ball_pos.x, 0.25, spec.ball_pos.z});
  scene.insert(scene.end(), ball.begin(), ball.end());

  RenderSettings rs;
  rs.size = resolution;
  rs.background = {0.55f, 0.65f, 0.8f};
  Camera cam;
  cam.eye = spec.cam_eye;
  cam.target = spec.cam_target;
  cam.fov_deg = 62;
  bool label = da < db;
  return {render_scene(scene, cam, rs), label};
}

std::vector<DepthSample> gen_depth_dataset(int n, int resolution, std::uint64_t seed) {
  std::vector<DepthSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    SceneSpec spec = make_depth_scene_spec(derive_seed(seed, "depth", i));
    auto [img, label] = gen_depth_scene(spec, resolution);
    out.push_back({std::move(img), label, spec});
  }
  return out;
}

std::vector<CliffView> gen_cliff_views(std::uint64_t seed, int resolution) {
  // Platform geometry (meters): glass at y=0, shallow plane 0.05 below,
  // deep plane 1.2 below, boundary at z = 1.0, checker period 0.1.
  const double shallow_y = -0.05, deep_y = -1.2, split_z = 1.0;
  const double cam_heights[3] = {0.40, 0.50, 0.60};
  const double target_y[3] = {-0.75, -0.62, -0.52};
  Rng rng(derive_seed(seed, "cliff"));
  const double jitter = rng.uniform(-0.03, 0.03);

  std::vector<CliffView> out;
  for (int v = 0; v < 3; ++v) {
    std::vector<Triangle> scene;
    auto shallow = make_ground(shallow_y, -2.5, 2.5, -0.5, split_z, &kCliffTex);
    auto deep = make_ground(deep_y, -2.5, 2.5, split_z, 8.0, &kCliffTex);
    scene.insert(scene.end(), shallow.begin(), shallow.end());
    scene.insert(scene.end(), deep.begin(), deep.end());
    // Vertical cliff face joining the two levels.
    Vec3 a{-2.5, deep_y, split_z}, b{2.5, deep_y, split_z}, c{2.5, shallow_y, split_z},
        d{-2.5, shallow_y, split_z};
    scene.push_back({a, b, c, a, b, c, {0.5f, 0.5f, 0.5f}, &kCliffTex, tex_eval});
    scene.push_back({a, c, d, a, c, d, {0.5f, 0.5f, 0.5f}, &kCliffTex, tex_eval});

    Vec3 arrow_pos{-0.12 + jitter, shallow_y + 0.28, 0.55};
    Vec3 ball_pos{0.18 - jitter, deep_y + 0.11, 2.1};
    auto arrow = make_arrow_mesh();
    set_mesh_color(arrow, {0.05f, 0.75f, 0.1f});
    transform_mesh(arrow, 1.0, 0, 0, {arrow_pos.x, shallow_y, arrow_pos.z});
    scene.insert(scene.end(), arrow.begin(), arrow.end());
    auto ball = make_sphere(10);
    set_mesh_color(ball, {0.85f, 0.08f, 0.05f});
    transform_mesh(ball, 0.22, 0, 0, ball_pos);
    scene.insert(scene.end(), ball.begin(), ball.end());

    Camera cam;
    cam.eye = {0, cam_heights[v], -0.35};
    cam.target = {0, target_y[v], 1.8};
    cam.fov_deg = 70;
    RenderSettings rs;
    rs.size = resolution;
    rs.background = {0.75f, 0.8f, 0.88f};

    double da = norm(arrow_pos - cam.eye), db = norm(ball_pos - cam.eye);
    CliffView view;
    view.image = render_scene(scene, cam, rs);
    view.arrow_closer = da < db;  // true for this geometry, asserted in tests
    view.view_id = v;
    out.push_back(std::move(view));
  }
  return out;
}

std::vector<CueConflictSample> gen_cue_conflict(const std::vector<int>& shape_classes,
                                                const std::vector<int>& texture_classes, int n,
                                                std::uint64_t seed, int resolution) {
  if (n < 1) throw DatasetError("gen_cue_conflict: n must be >= 1");
  if (shape_classes.empty() || texture_classes.empty())
    throw DatasetError("gen_cue_conflict: class lists must be non-empty");

  std::vector<CueConflictSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, "cueconf", i));
    int shape = shape_classes[rng.randint(shape_classes.size())];
    int texture = shape;
    // shape != texture label, enforced
    for (int tries = 0; texture == shape; ++tries) {
      texture = texture_classes[rng.randint(texture_classes.size())];
      if (tries > 64)
        throw DatasetError("gen_cue_conflict: cannot draw texture class != shape class");
    }
    // Silhouette mask of a shape-class instance.
    auto mesh = make_class_mesh(shape);
    set_mesh_color(mesh, {1, 1, 1});
    transform_mesh(mesh, rng.uniform(0.85, 1.1), rng.uniform(0, 6.28), rng.uniform(-0.2, 0.2),
                   {0, 0, 0});
    RenderSettings rs;
    rs.size = resolution;
    rs.background = {0, 0, 0};
    rs.background_gradient = false;
    rs.ambient = 1.0;  // unshaded mask
    Camera cam;
    cam.eye = {0, 0.4, -2.2};
    cam.target = {0, 0, 0};
    Image mask = render_scene(mesh, cam, rs);

    // Texture field of the texture class, in image space.
    Rng trng(derive_seed(seed, "cueconf_tex", i));
    TexCtx tex = instance_texture(texture, trng);
    const double period_px = trng.uniform(6.0, 14.0);
    CueConflictSample sample;
    sample.shape_label = shape;
    sample.texture_label = texture;
    sample.image = Image(resolution, resolution, 1.0f);  // white background
    for (int y = 0; y < resolution; ++y)
      for (int x = 0; x < resolution; ++x) {
        if (mask.at(y, x, 0) > 0.5f) {
          Color cc = tex_eval({x / period_px * tex.period, y / period_px * tex.period, 0.0}, &tex);
          sample.image.at(y, x, 0) = cc.r;
          sample.image.at(y, x, 1) = cc.g;
          sample.image.at(y, x, 2) = cc.b;
        }
      }
    out.push_back(std::move(sample));
  }
  return out;
}

std::vector<LabeledImage> gen_silhouettes(const std::vector<int>& shape_classes, int n,
                                          std::uint64_t seed, int resolution) {
  if (n < 1) throw DatasetError("gen_silhouettes: n must be >= 1");
  std::vector<LabeledImage> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, "silh", i));
    int shape = shape_classes[rng.randint(shape_classes.size())];
    auto mesh = make_class_mesh(shape);
    set_mesh_color(mesh, {1, 1, 1});
    transform_mesh(mesh, rng.uniform(0.85, 1.15), rng.uniform(0, 6.28), rng.uniform(-0.25, 0.25),
                   {0, 0, 0});
    RenderSettings rs;
    rs.size = resolution;
    rs.background = {0, 0, 0};
    rs.background_gradient = false;
    rs.ambient = 1.0;
    Camera cam;
    cam.eye = {0, 0.4, -2.2};
    cam.target = {0, 0, 0};
    Image mask = render_scene(mesh, cam, rs);
    LabeledImage li;
    li.id = "sil_" + std::to_string(i);
    li.label = shape;
    li.image = Image(resolution, resolution);
    for (int y = 0; y < resolution; ++y)
      for (int x = 0; x < resolution; ++x) {
        float v = mask.at(y, x, 0) > 0.5f ? 0.f : 1.f;  // black object, white bg
        li.image.at(y, x, 0) = li.image.at(y, x, 1) = li.image.at(y, x, 2) = v;
      }
    out.push_back(std::move(li));
  }
  return out;
}

// ---- persistence ------------------------------------------------------------

void save_dataset(const VideoDataset& ds, const std::string& dir) {
  fs::create_directories(fs::path(dir) / "frames");
  std::ofstream mf(fs::path(dir) / "manifest.jsonl");
  if (!mf) throw DatasetError("cannot write manifest under " + dir);
  for (const auto& clip : ds.clips) {
    nlohmann::ordered_json row;
    row["id"] = clip.id;
    row["label"] = clip.label >= 0 ? ds.class_names[clip.label] : "";
    row["split"] = clip.split;
    auto paths = nlohmann::ordered_json::array();
    for (size_t f = 0; f < clip.frames.size(); ++f) {
      std::string rel = "frames/" + clip.id + "_f" + std::to_string(f) + ".png";
      write_png(clip.frames[f], (fs::path(dir) / rel).string());
      paths.push_back(rel);
    }
    row["frame_paths"] = paths;
    row["azimuth"] = clip.times;
    mf << row.dump() << "\n";
  }
}

VideoDataset ingest_image_folder(const std::string& root, const std::string& manifest_path) {
  VideoDataset ds;
  ds.id = "ingest:" + manifest_path;
  std::ifstream mf(manifest_path);
  if (!mf) throw DatasetError("cannot open manifest: " + manifest_path);

  struct Row {
    std::string id, label, split;
    std::vector<std::string> paths;
    std::vector<double> azimuth;
  };
  std::vector<Row> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(mf, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      throw DatasetError("malformed manifest line " + std::to_string(lineno) + " in " +
                         manifest_path + ": " + e.what());
    }
    Row r;
    r.id = j.at("id").get<std::string>();
    r.label = j.value("label", std::string());
    r.split = j.value("split", std::string("train"));
    if (j.contains("frame_paths"))
      r.paths = j.at("frame_paths").get<std::vector<std::string>>();
    else if (j.contains("path"))
      r.paths = {j.at("path").get<std::string>()};
    else
      throw DatasetError("manifest row '" + r.id + "' has neither frame_paths nor path");
    if (j.contains("azimuth")) r.azimuth = j.at("azimuth").get<std::vector<double>>();
    rows.push_back(std::move(r));
  }
  if (rows.empty()) {
    std::cerr << "warning: empty manifest " << manifest_path << ", dataset is empty\n";
    return ds;
  }

  std::set<std::string> labels;
  for (const auto& r : rows)
    if (!r.label.empty()) labels.insert(r.label);
  ds.class_names.assign(labels.begin(), labels.end());
  std::map<std::string, int> label_idx;
  for (size_t i = 0; i < ds.class_names.size(); ++i) label_idx[ds.class_names[i]] = int(i);

  for (const auto& r : rows) {
    VideoClip clip;
    clip.id = r.id;
    clip.label = r.label.empty() ? -1 : label_idx[r.label];
    clip.split = r.split;
    for (size_t f = 0; f < r.paths.size(); ++f) {
      fs::path p = fs::path(root) / r.paths[f];
      if (!fs::exists(p))
        throw DatasetError("manifest row '" + r.id + "' references missing file: " + p.string());
      clip.frames.push_back(read_png(p.string()));
      clip.times.push_back(f < r.azimuth.size() ? r.azimuth[f] : double(f));
    }
    // enforce strictly increasing times
    for (size_t f = 1; f < clip.times.size(); ++f)
      if (clip.times[f] <= clip.times[f - 1])
        throw DatasetError("clip '" + r.id + "' has non-increasing frame order");
    ds.clips.push_back(std::move(clip));
  }
  return ds;
}

std::string dataset_manifest_hash(const std::string& manifest_path) {
  return sha256_file(manifest_path);
}

}  // namespace devdiet
