#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "devdiet/datasets.hpp"
#include "devdiet/transforms.hpp"

using namespace devdiet;

namespace {

double max_abs_diff(const Image& a, const Image& b) {
  double m = 0;
  for (size_t i = 0; i < a.px.size(); ++i)
    m = std::max(m, std::fabs(double(a.px[i]) - double(b.px[i])));
  return m;
}

VideoClip fake_clip(int n_frames, double fps = 1.0) {
  VideoClip c;
  c.id = "fake";
  for (int i = 0; i < n_frames; ++i) {
    c.frames.push_back(Image(4, 4, float(i) / n_frames));
    c.times.push_back(i / fps);
  }
  return c;
}

// Mean absolute horizontal luminance gradient over a band, measuring
// projected texture density (finer checkers -> more edges).
double band_gradient(const Image& img, double row_lo, double row_hi, double col_lo,
                     double col_hi) {
  int y0 = int(row_lo * img.height), y1 = int(row_hi * img.height);
  int x0 = int(col_lo * img.width), x1 = int(col_hi * img.width);
  double acc = 0;
  int count = 0;
  for (int y = y0; y < y1; ++y)
    for (int x = x0 + 1; x < x1; ++x) {
      double a = 0, b = 0;
      for (int c = 0; c < 3; ++c) {
        a += img.at(y, x, c);
        b += img.at(y, x - 1, c);
      }
      acc += std::fabs(a - b) / 3.0;
      ++count;
    }
  return count ? acc / count : 0.0;
}

}  // namespace

TEST_CASE("training frame sampling: uniform spacing spanning the clip") {
  auto clip = fake_clip(100);
  auto idx = sample_training_frames(clip, 10, 1);
  CHECK(idx == std::vector<int>{0, 10, 20, 30, 40, 50, 60, 70, 80, 90});
  for (size_t i = 1; i < idx.size(); ++i) CHECK(idx[i] - idx[i - 1] == 10);

  auto all = sample_training_frames(fake_clip(10), 10, 5);
  CHECK(all == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

  CHECK_THROWS_AS(sample_training_frames(fake_clip(9), 10, 1), DatasetError);

  // strictly increasing, evenly spaced within +/- 1
  auto idx2 = sample_training_frames(fake_clip(37), 10, 2);
  for (size_t i = 1; i < idx2.size(); ++i) {
    CHECK(idx2[i] > idx2[i - 1]);
    CHECK(std::abs((idx2[i] - idx2[i - 1]) - 37.0 / 10.0) <= 1.0);
  }
}

TEST_CASE("test frame sampling: distinct, seeded, uniform") {
  auto clip = fake_clip(100);
  auto a = sample_test_frames(clip, 2, 42);
  auto b = sample_test_frames(clip, 2, 42);
  CHECK(a == b);
  CHECK(a.size() == 2);
  CHECK(a[0] != a[1]);
  CHECK_THROWS_AS(sample_test_frames(fake_clip(1), 2, 1), DatasetError);

  // uniform-sampling oracle: every index frequency ~ k/n over many seeds
  std::map<int, int> freq;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s)
    for (int i : sample_test_frames(clip, 2, derive_seed(9, "t", s))) freq[i]++;
  for (const auto& [idx3, count] : freq)
    CHECK(std::fabs(count / double(trials) - 0.02) < 0.005);
}

TEST_CASE("egocentric subsampling: stride arithmetic") {
  // 10-minute stream at 1 fps
  auto stream = fake_clip(601, 1.0);
  auto clips = subsample_egocentric(stream, 2, 120, 5);
  CHECK(clips.size() == 5);
  for (const auto& c : clips) CHECK(c.frames.size() == 10);  // 2 s x 5 fps

  auto tiny = subsample_egocentric(fake_clip(2, 1.0), 2, 120, 5);
  CHECK(tiny.empty());
}

TEST_CASE("positive groups: pairing, singletons, window 0") {
  auto groups = make_positive_groups(10, 1);
  CHECK(groups.size() == 5);
  for (const auto& g : groups) CHECK(g.members.size() == 2);
  CHECK(groups[0].members == std::vector<int>{0, 1});
  CHECK(groups[4].members == std::vector<int>{8, 9});

  auto single = make_positive_groups(1, 1);
  CHECK(single.size() == 1);
  CHECK(single[0].members.size() == 1);

  auto ns = make_positive_groups(6, 0);
  CHECK(ns.size() == 6);
  for (const auto& g : ns) CHECK(g.members.size() == 1);

  // groups partition the frames
  std::set<int> seen;
  for (const auto& g : make_positive_groups(11, 2))
    for (int m : g.members) CHECK(seen.insert(m).second);
  CHECK(seen.size() == 11);
}

TEST_CASE("rotation videos: shapes, determinism, splits, azimuth") {
  auto ds = gen_rotation_videos(3, 4, 12, 32, 77);
  CHECK(ds.clips.size() == 12);
  CHECK(ds.class_names.size() == 3);
  for (const auto& clip : ds.clips) {
    CHECK(clip.frames.size() == 12);
    CHECK(clip.times.front() == 0.0);
    CHECK(clip.times[1] == doctest::Approx(30.0));  // 360/12
    for (size_t i = 1; i < clip.times.size(); ++i) CHECK(clip.times[i] > clip.times[i - 1]);
  }
  // split is instance-level: 3 train / 1 test per class at 0.75
  CHECK(ds.clip_indices("train").size() == 9);
  CHECK(ds.clip_indices("test").size() == 3);

  auto ds2 = gen_rotation_videos(3, 4, 12, 32, 77);
  CHECK(max_abs_diff(ds.clips[5].frames[3], ds2.clips[5].frames[3]) == 0.0);

  auto ds3 = gen_rotation_videos(3, 4, 12, 32, 78);
  CHECK(max_abs_diff(ds.clips[5].frames[3], ds3.clips[5].frames[3]) > 0.0);

  CHECK_THROWS_AS(gen_rotation_videos(1, 4, 12, 32, 1), DatasetError);
  CHECK_THROWS_AS(gen_rotation_videos(9, 4, 12, 32, 1), DatasetError);
}

TEST_CASE("pixel-probe oracle: raw pixels separate classes above chance") {
  // Nearest-centroid on raw pixels must beat chance on the test split,
  // confirming the generator encodes class structure.
  auto ds = gen_rotation_videos(3, 6, 8, 32, 123);
  std::map<int, std::vector<const Image*>> train, test;
  for (const auto& clip : ds.clips)
    for (const auto& f : clip.frames)
      (clip.split == "train" ? train : test)[clip.label].push_back(&f);

  std::map<int, std::vector<double>> centroid;
  for (auto& [label, imgs] : train) {
    std::vector<double> c(imgs[0]->px.size(), 0.0);
    for (const auto* im : imgs)
      for (size_t i = 0; i < c.size(); ++i) c[i] += im->px[i];
    for (auto& v : c) v /= double(imgs.size());
    centroid[label] = std::move(c);
  }
  int correct = 0, total = 0;
  for (auto& [label, imgs] : test)
    for (const auto* im : imgs) {
      int best = -1;
      double best_d = 1e30;
      for (auto& [cl, c] : centroid) {
        double d = 0;
        for (size_t i = 0; i < c.size(); ++i) {
          double diff = im->px[i] - c[i];
          d += diff * diff;
        }
        if (d < best_d) {
          best_d = d;
          best = cl;
        }
      }
      correct += best == label;
      ++total;
    }
  CHECK(double(correct) / total > 1.0 / 3.0 + 0.05);
}

TEST_CASE("depth scenes: labels from geometry, balance, determinism") {
  auto spec = make_depth_scene_spec(5);
  auto [img, label] = gen_depth_scene(spec, 48);
  CHECK(label == spec.arrow_closer);
  CHECK(label == (norm(spec.arrow_pos - spec.cam_eye) < norm(spec.ball_pos - spec.cam_eye)));

  // mirrored spec: swapping marker positions flips the label
  SceneSpec swapped = spec;
  std::swap(swapped.arrow_pos, swapped.ball_pos);
  auto [img2, label2] = gen_depth_scene(swapped, 48);
  CHECK(label2 == !label);

  auto [img3, label3] = gen_depth_scene(spec, 48);
  CHECK(max_abs_diff(img, img3) == 0.0);
  CHECK(label3 == label);

  // 1000 random specs: balanced 50% +/- 4%, all labels match the predicate
  int yes = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    auto s = make_depth_scene_spec(derive_seed(31, "bal", i));
    CHECK(s.arrow_closer == (norm(s.arrow_pos - s.cam_eye) < norm(s.ball_pos - s.cam_eye)));
    double da = norm(s.arrow_pos - s.cam_eye), db = norm(s.ball_pos - s.cam_eye);
    CHECK(std::fabs(da - db) / std::max(da, db) >= 0.05);
    yes += s.arrow_closer;
  }
  CHECK(std::fabs(yes / double(n) - 0.5) < 0.04);

  // degenerate tied-distance specs rejected
  SceneSpec tied = spec;
  tied.ball_pos = tied.arrow_pos;
  CHECK_THROWS_AS(gen_depth_scene(tied, 48), DatasetError);
}

TEST_CASE("cliff views: three yes-labeled views, deterministic, foreshortening") {
  auto views = gen_cliff_views(9, 64);
  REQUIRE(views.size() == 3);
  for (const auto& v : views) CHECK(v.arrow_closer);

  auto views2 = gen_cliff_views(9, 64);
  CHECK(max_abs_diff(views[1].image, views2[1].image) == 0.0);

  // projected-geometry oracle: the deep plane's checker pattern lands in the
  // upper image region at higher element density than the shallow plane's
  // (side columns avoid the markers).
  for (const auto& v : views) {
    double deep = band_gradient(v.image, 0.12, 0.38, 0.0, 0.28) +
                  band_gradient(v.image, 0.12, 0.38, 0.72, 1.0);
    double shallow = band_gradient(v.image, 0.70, 0.97, 0.0, 0.28) +
                     band_gradient(v.image, 0.70, 0.97, 0.72, 1.0);
    CHECK(deep > shallow);
  }
}

TEST_CASE("cue-conflict: labels differ, fill carries texture structure") {
  auto samples = gen_cue_conflict({0, 1, 2}, {0, 1, 2}, 30, 41, 64);
  CHECK(samples.size() == 30);
  for (const auto& s : samples) CHECK(s.shape_label != s.texture_label);

  // autocorrelation-style oracle: inside the silhouette the fill is
  // structured (texture), not flat.
  int structured = 0;
  for (const auto& s : samples) {
    double interior_grad = 0;
    int count = 0;
    for (int y = 1; y < s.image.height - 1; ++y)
      for (int x = 1; x < s.image.width - 1; ++x) {
        bool white = s.image.at(y, x, 0) > 0.98f && s.image.at(y, x, 1) > 0.98f &&
                     s.image.at(y, x, 2) > 0.98f;
        if (white) continue;
        interior_grad += std::fabs(s.image.at(y, x, 0) - s.image.at(y, x - 1, 0));
        ++count;
      }
    if (count > 50 && interior_grad / count > 0.005) ++structured;
  }
  // stripes/dots/checker fills all carry visible structure
  CHECK(structured >= 25);
}

TEST_CASE("silhouettes: strictly binary, plausible area, deterministic") {
  auto sils = gen_silhouettes({0, 1, 2}, 12, 7, 64);
  CHECK(sils.size() == 12);
  for (const auto& s : sils) {
    double area = 0;
    for (float v : s.image.px) {
      CHECK((v == 0.f || v == 1.f));
      area += v == 0.f;
    }
    area /= double(s.image.px.size());
    CHECK(area > 0.05);
    CHECK(area < 0.80);
  }
  auto sils2 = gen_silhouettes({0, 1, 2}, 12, 7, 64);
  CHECK(max_abs_diff(sils[3].image, sils2[3].image) == 0.0);
}

TEST_CASE("dataset save / ingest round trip") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "devdiet_ds_test";
  fs::remove_all(dir);

  auto ds = gen_rotation_videos(2, 2, 4, 24, 3);
  save_dataset(ds, dir.string());
  auto loaded = ingest_image_folder(dir.string(), (dir / "manifest.jsonl").string());
  REQUIRE(loaded.clips.size() == ds.clips.size());
  CHECK(loaded.class_names == ds.class_names);
  for (size_t i = 0; i < ds.clips.size(); ++i) {
    CHECK(loaded.clips[i].id == ds.clips[i].id);
    CHECK(loaded.clips[i].label == ds.clips[i].label);
    CHECK(loaded.clips[i].split == ds.clips[i].split);
    CHECK(loaded.clips[i].frames.size() == ds.clips[i].frames.size());
    for (size_t f = 1; f < loaded.clips[i].times.size(); ++f)
      CHECK(loaded.clips[i].times[f] > loaded.clips[i].times[f - 1]);
    // 8-bit quantization is the only loss
    CHECK(max_abs_diff(loaded.clips[i].frames[0], ds.clips[i].frames[0]) <= 0.5 / 255.0 + 1e-6);
  }

  // manifest referencing a missing file errors with the file name
  {
    std::ofstream bad(dir / "bad.jsonl");
    bad << R"({"id":"x","label":"cube","split":"train","frame_paths":["frames/nope.png"]})"
        << "\n";
  }
  try {
    ingest_image_folder(dir.string(), (dir / "bad.jsonl").string());
    FAIL("expected DatasetError");
  } catch (const DatasetError& e) {
    CHECK(std::string(e.what()).find("nope.png") != std::string::npos);
  }

  // empty manifest -> empty dataset (with a warning), not an error
  { std::ofstream empty(dir / "empty.jsonl"); }
  auto none = ingest_image_folder(dir.string(), (dir / "empty.jsonl").string());
  CHECK(none.clips.empty());

  fs::remove_all(dir);
}
