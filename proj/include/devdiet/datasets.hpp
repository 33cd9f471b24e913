// Dataset ingestion, the frame-sampling protocols, positive-group
// construction for the temporal objective, and the procedural synthetic
// generators (rotating objects, depth-order scenes, visual-cliff views,
// cue-conflict and silhouette images).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "devdiet/image.hpp"
#include "devdiet/raster.hpp"
#include "devdiet/rng.hpp"

namespace devdiet {

struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VideoClip {
  std::string id;
  int label = -1;                 // index into VideoDataset::class_names, -1 = unlabeled
  std::vector<Image> frames;      // ordered
  std::vector<double> times;      // strictly increasing timestamps (s) or azimuth (deg)
  std::string split = "train";    // instance-level split tag
};

struct VideoDataset {
  std::string id;
  std::vector<std::string> class_names;
  std::vector<VideoClip> clips;

  std::vector<int> clip_indices(const std::string& split) const;
};

// Adjacent sampled frames grouped as mutual positives.
struct PositiveGroup {
  int group_id = 0;
  std::vector<int> members;  // indices into the sampled-frame list
};

// k frames at uniform index spacing spanning the clip. Deterministic: the
// spacing is fully determined by (clip length, k).
std::vector<int> sample_training_frames(const VideoClip& clip, int k, std::uint64_t seed);
// k distinct frames uniformly without replacement.
std::vector<int> sample_test_frames(const VideoClip& clip, int k, std::uint64_t seed);

// One clip_seconds*fps-frame clip at each stride boundary of an egocentric
// stream; trailing partial clips dropped.
std::vector<VideoClip> subsample_egocentric(const VideoClip& stream, double clip_seconds = 2,
                                            double stride_seconds = 120, double fps = 5);

// Greedy chunking of consecutive sampled frames into groups of window+1.
// window = 0 gives all-singleton groups (the per-frame baseline).
std::vector<PositiveGroup> make_positive_groups(int n_frames, int window = 1);

// ---- synthetic generators -------------------------------------------------

// Shape families (one per class) and their characteristic texture families.
int max_rotation_classes();
std::string rotation_class_name(int c);

VideoDataset gen_rotation_videos(int n_classes, int videos_per_class, int frames_per_video,
                                 int resolution, std::uint64_t seed,
                                 double train_fraction = 0.75);

struct SceneSpec {
  std::uint64_t seed = 0;
  Vec3 arrow_pos;   // meters, world space
  Vec3 ball_pos;
  Vec3 cam_eye;
  Vec3 cam_target;
  bool arrow_closer = false;  // ground truth, derived from the positions
  std::string kind = "depth_order";  // or "cliff_view"
};

// Rejection-sampled spec with a >= 5% distance gap; label balanced.
SceneSpec make_depth_scene_spec(std::uint64_t seed);
// Renders the scene; returned label always equals the distance predicate.
std::pair<Image, bool> gen_depth_scene(const SceneSpec& spec, int resolution);

struct DepthSample {
  Image image;
  bool arrow_closer;
  SceneSpec spec;
};
std::vector<DepthSample> gen_depth_dataset(int n, int resolution, std::uint64_t seed);

// Three egocentric views over the two-level checkerboard platform; ground
// truth is "arrow closer" (yes) in every view.
struct CliffView {
  Image image;
  bool arrow_closer;  // always true by construction
  int view_id;
};
std::vector<CliffView> gen_cliff_views(std::uint64_t seed, int resolution);

struct CueConflictSample {
  Image image;
  int shape_label;
  int texture_label;  // != shape_label
};
std::vector<CueConflictSample> gen_cue_conflict(const std::vector<int>& shape_classes,
                                                const std::vector<int>& texture_classes, int n,
                                                std::uint64_t seed, int resolution);

struct LabeledImage {
  std::string id;
  Image image;
  int label;
};
// Binary black-on-white silhouettes; every pixel is exactly 0 or 1.
std::vector<LabeledImage> gen_silhouettes(const std::vector<int>& shape_classes, int n,
                                          std::uint64_t seed, int resolution);

// ---- persistence ----------------------------------------------------------

// Writes PNG frames plus a JSON-lines manifest
// {id, label, split, frame_paths[], azimuth[]}.
void save_dataset(const VideoDataset& ds, const std::string& dir);
// Reads a manifest produced by save_dataset (or hand-written to the same
// schema; single-image rows may use "path" instead of "frame_paths").
VideoDataset ingest_image_folder(const std::string& root, const std::string& manifest_path);

// sha256 of the manifest file, used as the dataset hash in run manifests.
std::string dataset_manifest_hash(const std::string& manifest_path);

}  // namespace devdiet
