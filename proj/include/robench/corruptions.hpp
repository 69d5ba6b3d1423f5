#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "robench/determinism.hpp"
#include "robench/image.hpp"

namespace robench {

enum class Severity { Low, Mid, High };

inline const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Low: return "low";
    case Severity::Mid: return "mid";
    default: return "high";
  }
}
std::optional<Severity> severity_from_name(const std::string& name);

inline constexpr std::array<Severity, 3> kSeverities = {Severity::Low, Severity::Mid,
                                                        Severity::High};

enum class AugCategory {
  Blur,
  Noise,
  Weather,
  Digital,
  Geometric,
  ColorTone,
  Occlusion,
  Resolution,
  VlmSpecific,
  Binary,
};
const char* category_name(AugCategory c);

struct AugmentationSpec {
  std::string id;
  AugCategory category;
  std::string param_name;                         // empty for binary
  std::optional<std::array<double, 3>> schedule;  // low, mid, high; absent for binary
  std::string note;
  bool shape_preserving = true;  // false: upsample, downsample, add_border

  bool severity_based() const { return schedule.has_value(); }
  double param(Severity s) const { return (*schedule)[static_cast<int>(s)]; }
};

// The full fixed catalog of 49 transforms: 42 severity-based in catalog
// order, then the 7 binary ones.
const std::vector<AugmentationSpec>& registry();

// nullptr when the id is not in the catalog.
const AugmentationSpec* find_spec(const std::string& id);

struct CorruptionConfig {
  std::string aug_id;
  std::optional<Severity> severity;  // present iff the aug is severity-based
  std::uint64_t sample_index = 0;    // drives per-sample seeding
};

// Validates cfg against the catalog, seeds a fresh stream from
// sample_seed(seeds.augmentation_base_seed, cfg.sample_index), and applies
// the transform. Deterministic in (image bytes, cfg, seeds).
Image apply(const Image& img, const CorruptionConfig& cfg, const SeedScheme& seeds);

// Same transform but the caller owns the random stream; used when several
// images of one sample must share a single stream in a fixed order.
Image apply_with_stream(const Image& img, const std::string& aug_id,
                        std::optional<Severity> severity, RngStream& rng);

}  // namespace robench
