#include "robench/corruptions.hpp"

#include <unordered_map>

#include "corruption_impl.hpp"
#include "robench/errors.hpp"

namespace robench {

std::optional<Severity> severity_from_name(const std::string& name) {
  if (name == "low") return Severity::Low;
  if (name == "mid") return Severity::Mid;
  if (name == "high") return Severity::High;
  return std::nullopt;
}

const char* category_name(AugCategory c) {
  switch (c) {
    case AugCategory::Blur: return "blur";
    case AugCategory::Noise: return "noise";
    case AugCategory::Weather: return "weather";
    case AugCategory::Digital: return "digital";
    case AugCategory::Geometric: return "geometric";
    case AugCategory::ColorTone: return "color_tone";
    case AugCategory::Occlusion: return "occlusion";
    case AugCategory::Resolution: return "resolution";
    case AugCategory::VlmSpecific: return "vlm_specific";
    default: return "binary";
  }
}

namespace {

AugmentationSpec sev(std::string id, AugCategory cat, std::string param, double lo, double mi,
                     double hi, std::string note, bool shape_preserving = true) {
  AugmentationSpec s;
  s.id = std::move(id);
  s.category = cat;
  s.param_name = std::move(param);
  s.schedule = {{lo, mi, hi}};
  s.note = std::move(note);
  s.shape_preserving = shape_preserving;
  return s;
}

AugmentationSpec binary(std::string id) {
  AugmentationSpec s;
  s.id = std::move(id);
  s.category = AugCategory::Binary;
  return s;
}

std::vector<AugmentationSpec> build_registry() {
  using C = AugCategory;
  std::vector<AugmentationSpec> r;
  r.reserve(49);
  // 42 severity-based transforms, catalog order.
  r.push_back(sev("gaussian_blur", C::Blur, "radius", 0.5, 1.5, 2.5, "pixels"));
  r.push_back(sev("motion_blur", C::Blur, "ksize", 5, 9, 15, "kernel size"));
  r.push_back(sev("defocus_blur", C::Blur, "radius", 1.0, 3.0, 5.0, "pixels"));
  r.push_back(sev("zoom_blur", C::Blur, "factor", 0.02, 0.06, 0.10, "zoom amount"));
  r.push_back(sev("glass_blur", C::Blur, "sigma", 0.5, 0.9, 1.3, "blur sigma"));
  r.push_back(sev("gaussian_noise", C::Noise, "std", 0.02, 0.06, 0.10, "normalized"));
  r.push_back(sev("shot_noise", C::Noise, "scale", 25, 10, 5, "lower=more"));
  r.push_back(sev("speckle_noise", C::Noise, "std", 0.05, 0.15, 0.25, "normalized"));
  r.push_back(sev("salt_pepper", C::Noise, "amount", 0.01, 0.04, 0.08, "pixel fraction"));
  r.push_back(sev("fog", C::Weather, "intensity", 0.2, 0.6, 1.0, "opacity"));
  r.push_back(sev("frost", C::Weather, "intensity", 0.2, 0.6, 1.0, "opacity"));
  r.push_back(sev("snow", C::Weather, "intensity", 0.1, 0.3, 0.5, "density"));
  r.push_back(sev("rain", C::Weather, "intensity", 0.1, 0.3, 0.5, "density"));
  r.push_back(sev("spatter", C::Weather, "intensity", 0.1, 0.3, 0.5, "coverage"));
  r.push_back(sev("jpeg_compression", C::Digital, "quality", 80, 50, 20, "lower=worse"));
  r.push_back(sev("pixelate", C::Digital, "scale", 0.9, 0.5, 0.2, "lower=coarser"));
  r.push_back(sev("rotate", C::Geometric, "degrees", 5, 15, 30, "rotation"));
  r.push_back(sev("shear", C::Geometric, "degrees", 5, 15, 25, "shear angle"));
  r.push_back(sev("affine", C::Geometric, "degrees", 5, 15, 30, "rotation+scale"));
  r.push_back(sev("perspective_transform", C::Geometric, "magnitude", 0.05, 0.15, 0.25,
                  "distortion"));
  r.push_back(sev("elastic_transform", C::Geometric, "alpha", 30, 80, 180, "deformation"));
  r.push_back(sev("brightness", C::ColorTone, "factor", 0.7, 0.3, 0.1, "lower=darker"));
  r.push_back(sev("brightness_up", C::ColorTone, "factor", 1.3, 1.7, 2.5, "higher=brighter"));
  r.push_back(sev("contrast", C::ColorTone, "factor", 0.7, 0.3, 0.1, "lower=flatter"));
  r.push_back(sev("contrast_up", C::ColorTone, "factor", 1.3, 1.8, 3.0, "higher=sharper"));
  r.push_back(sev("saturation", C::ColorTone, "factor", 0.5, 0.1, 0.0, "lower=grayer"));
  r.push_back(sev("saturation_up", C::ColorTone, "factor", 1.5, 2.5, 4.0, "higher=vivid"));
  r.push_back(sev("gamma", C::ColorTone, "factor", 0.7, 0.4, 0.2, "lower=brighter"));
  r.push_back(sev("gamma_up", C::ColorTone, "factor", 1.3, 2.0, 3.0, "higher=darker"));
  r.push_back(sev("hue_shift", C::ColorTone, "degrees", 10, 40, 90, "color rotation"));
  r.push_back(sev("color_jitter", C::ColorTone, "range", 0.1, 0.3, 0.5, "random B/C/S"));
  r.push_back(sev("random_occlusion", C::Occlusion, "ratio", 0.05, 0.15, 0.25, "area blocked"));
  r.push_back(sev("grid_mask", C::Occlusion, "ratio", 0.1, 0.2, 0.3, "grid density"));
  r.push_back(sev("center_occlusion", C::Occlusion, "ratio", 0.1, 0.3, 0.5, "center blocked"));
  r.push_back(sev("downsample", C::Resolution, "scale", 0.75, 0.35, 0.15, "lower=smaller",
                  /*shape_preserving=*/false));
  r.push_back(sev("upsample", C::Resolution, "scale", 1.5, 3.0, 6.0, "interpolation",
                  /*shape_preserving=*/false));
  r.push_back(sev("sharpen", C::Resolution, "factor", 1.5, 3.0, 6.0, "edge enhance"));
  r.push_back(sev("posterize", C::Resolution, "bits", 6, 4, 2, "lower=fewer"));
  r.push_back(sev("solarize", C::Resolution, "threshold", 200, 128, 64, "lower=more"));
  r.push_back(sev("text_overlay", C::VlmSpecific, "fontsize", 24, 48, 72, "pixels"));
  r.push_back(sev("watermark", C::VlmSpecific, "fontsize", 24, 48, 72, "pixels"));
  r.push_back(sev("add_border", C::VlmSpecific, "width", 10, 30, 60, "pixels",
                  /*shape_preserving=*/false));
  // 7 binary transforms.
  r.push_back(binary("flip_h"));
  r.push_back(binary("flip_v"));
  r.push_back(binary("grayscale"));
  r.push_back(binary("invert"));
  r.push_back(binary("channel_swap"));
  r.push_back(binary("equalize"));
  r.push_back(binary("autocontrast"));
  return r;
}

using AugFn = Image (*)(const Image&, double, RngStream&);

const std::unordered_map<std::string, AugFn>& dispatch_table() {
  using namespace detail;
  static const std::unordered_map<std::string, AugFn> table = {
      {"gaussian_blur", aug_gaussian_blur},
      {"motion_blur", aug_motion_blur},
      {"defocus_blur", aug_defocus_blur},
      {"zoom_blur", aug_zoom_blur},
      {"glass_blur", aug_glass_blur},
      {"gaussian_noise", aug_gaussian_noise},
      {"shot_noise", aug_shot_noise},
      {"speckle_noise", aug_speckle_noise},
      {"salt_pepper", aug_salt_pepper},
      {"fog", aug_fog},
      {"frost", aug_frost},
      {"snow", aug_snow},
      {"rain", aug_rain},
      {"spatter", aug_spatter},
      {"jpeg_compression", aug_jpeg_compression},
      {"pixelate", aug_pixelate},
      {"rotate", aug_rotate},
      {"shear", aug_shear},
      {"affine", aug_affine},
      {"perspective_transform", aug_perspective},
      {"elastic_transform", aug_elastic},
      {"brightness", aug_brightness},
      {"brightness_up", aug_brightness},
      {"contrast", aug_contrast},
      {"contrast_up", aug_contrast},
      {"saturation", aug_saturation},
      {"saturation_up", aug_saturation},
      {"gamma", aug_gamma},
      {"gamma_up", aug_gamma},
      {"hue_shift", aug_hue_shift},
      {"color_jitter", aug_color_jitter},
      {"random_occlusion", aug_random_occlusion},
      {"grid_mask", aug_grid_mask},
      {"center_occlusion", aug_center_occlusion},
      {"downsample", aug_downsample},
      {"upsample", aug_upsample},
      {"sharpen", aug_sharpen},
      {"posterize", aug_posterize},
      {"solarize", aug_solarize},
      {"text_overlay", aug_text_overlay},
      {"watermark", aug_watermark},
      {"add_border", aug_add_border},
      {"flip_h", aug_flip_h},
      {"flip_v", aug_flip_v},
      {"grayscale", aug_grayscale},
      {"invert", aug_invert},
      {"channel_swap", aug_channel_swap},
      {"equalize", aug_equalize},
      {"autocontrast", aug_autocontrast},
  };
  return table;
}

}  // namespace

const std::vector<AugmentationSpec>& registry() {
  static const std::vector<AugmentationSpec> r = build_registry();
  return r;
}

const AugmentationSpec* find_spec(const std::string& id) {
  static const std::unordered_map<std::string, const AugmentationSpec*> index = [] {
    std::unordered_map<std::string, const AugmentationSpec*> m;
    for (const AugmentationSpec& s : registry()) m.emplace(s.id, &s);
    return m;
  }();
  const auto it = index.find(id);
  return it == index.end() ? nullptr : it->second;
}

Image apply_with_stream(const Image& img, const std::string& aug_id,
                        std::optional<Severity> severity, RngStream& rng) {
  const AugmentationSpec* spec = find_spec(aug_id);
  if (!spec) throw UnknownAugmentation(aug_id);
  if (spec->severity_based() && !severity) throw SeverityMissing(aug_id);
  if (!spec->severity_based() && severity) throw SeverityNotApplicable(aug_id);
  const double param = spec->severity_based() ? spec->param(*severity) : 0.0;
  return dispatch_table().at(aug_id)(img, param, rng);
}

Image apply(const Image& img, const CorruptionConfig& cfg, const SeedScheme& seeds) {
  RngStream rng = make_rng(sample_seed(seeds.augmentation_base_seed, cfg.sample_index));
  return apply_with_stream(img, cfg.aug_id, cfg.severity, rng);
}

}  // namespace robench
