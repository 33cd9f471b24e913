// Deterministic 15-type x 5-severity corruption suite following the
// ImageNet-C protocol, with severity constants rescaled to the working
// resolution. Photographic frost assets are replaced by seeded procedural
// masks so regeneration is exact.
#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "devdiet/image.hpp"
#include "devdiet/rng.hpp"

namespace devdiet {

struct CorruptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorruptionSpec {
  std::string type;
  int severity = 1;  // 1..5
  std::uint64_t seed = 0;
};

// The fixed registry, grouped noise / blur / weather / digital.
const std::vector<std::string>& corruption_types();
bool is_noise_family(const std::string& type);

// Applies the named distortion. Bit-identical output for identical
// (image, spec). Throws CorruptionError for unknown type or severity
// outside [1,5].
Image corrupt(const Image& img, const CorruptionSpec& spec);

struct ManifestRow {
  std::string image_id;
  std::string type;
  int severity;
  std::uint64_t seed;
  std::string path;
  std::string sha256;
};

struct CorruptedDatasetManifest {
  std::string source_dataset_id;
  std::string registry_version;
  std::vector<ManifestRow> rows;

  void save_jsonl(const std::string& path) const;
  static CorruptedDatasetManifest load_jsonl(const std::string& path);
};

// Seed for one (image, type, severity) cell; order-independent regeneration.
std::uint64_t corruption_seed(std::uint64_t global_seed, const std::string& image_id,
                              const std::string& type, int severity);

// Emits |images| * |types| * |severities| corrupted PNGs under out_dir plus
// the manifest. I/O failures name the offending path.
CorruptedDatasetManifest build_corrupted_set(
    const std::vector<std::pair<std::string, Image>>& images,
    const std::string& dataset_id, const std::vector<std::string>& types,
    const std::vector<int>& severities, std::uint64_t seed, const std::string& out_dir);

}  // namespace devdiet
