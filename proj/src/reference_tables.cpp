#include "robench/reference_tables.hpp"

#include <cmath>

#include "robench/errors.hpp"

namespace robench::published {

namespace {

const std::vector<SummaryRow> kSummaryMmbench = {
    {"Qwen3-VL-4B", 88.4, 26.3, 3.8, 7.0, 88.1, 48.2, 3.9},
    {"Qwen3-VL-8B", 90.2, 30.2, 5.3, 8.3, 73.8, 48.2, 5.2},
    {"Qwen3-VL-30B", 90.7, 29.4, 3.8, 6.1, 88.1, 47.7, 3.5},
    {"InternVL3.5-4B", 86.3, 30.5, 9.8, 10.8, 64.3, 44.9, 7.7},
    {"InternVL3.5-8B", 89.1, 31.7, 8.3, 9.6, 71.4, 50.8, 6.5},
    {"InternVL3.5-14B", 86.6, 29.4, 9.0, 9.5, 88.1, 44.5, 6.0},
    {"Molmo2-4B", 88.5, 33.1, 4.5, 7.4, 78.6, 43.6, 5.5},
    {"Molmo2-8B", 88.4, 33.9, 4.5, 6.3, 90.5, 48.4, 4.4},
    {"Gemma-3-12B", 85.3, 32.1, 8.3, 10.7, 69.0, 44.1, 6.4},
};

const std::vector<SummaryRow> kSummaryMmmuPro = {
    {"Qwen3-VL-4B", 31.5, 7.4, 3.8, 2.8, 95.2, 7.1, -6.8},
    {"Qwen3-VL-8B", 35.2, 9.0, 7.5, 5.2, 85.7, 11.4, 4.7},
    {"Qwen3-VL-30B", 40.7, 14.5, 12.8, 7.4, 59.5, 17.0, 12.1},
    {"InternVL3.5-4B", 37.3, 11.1, 14.3, 5.6, 76.2, 12.3, 11.6},
    {"InternVL3.5-8B", 41.0, 12.3, 16.5, 5.6, 45.2, 14.2, 16.5},
    {"InternVL3.5-14B", 42.0, 9.6, 9.0, 5.9, 85.7, 15.1, 5.2},
    {"Molmo2-4B", 31.8, 5.6, 3.8, 4.3, 92.9, 12.0, 4.9},
    {"Molmo2-8B", 31.2, 5.6, 5.3, 4.0, 90.5, 7.4, 1.0},
    {"Gemma-3-12B", 33.0, 9.9, 27.1, 9.0, 28.6, 10.8, 24.2},
};

const std::vector<BinaryDropRow> kBinaryDrops = {
    {"autocontrast", 0.0, -0.2}, {"grayscale", 3.2, 0.4}, {"channel_swap", 3.2, 0.0},
    {"equalize", 3.5, 0.3},      {"flip_h", 6.9, 3.6},    {"invert", 10.1, 1.4},
    {"flip_v", 10.3, 4.2},
};

const std::vector<BinaryFlipRow> kBinaryFlips = {
    {"flip_v", 12.4, 2.0, 10.4, 8.3, 4.1, 4.2},
    {"flip_h", 9.0, 1.9, 7.1, 7.2, 3.6, 3.6},
    {"invert", 12.1, 1.7, 10.4, 3.7, 2.4, 1.3},
    {"channel_swap", 4.5, 1.2, 3.3, 1.1, 1.2, -0.1},
    {"equalize", 5.1, 1.6, 3.5, 2.7, 2.6, 0.1},
    {"grayscale", 4.6, 1.5, 3.2, 1.8, 1.5, 0.3},
    {"autocontrast", 0.2, 0.2, 0.0, 0.3, 0.6, -0.2},
};

const std::vector<TierCountRow> kTiersMmbench = {
    {"low", 304, 48, 24, 2},
    {"mid", 182, 127, 60, 9},
    {"high", 94, 113, 133, 38},
    {"binary", 9, 12, 33, 9},
};

const std::vector<TierCountRow> kTiersMmmuPro = {
    {"low", 276, 77, 25, 0},
    {"mid", 230, 93, 52, 3},
    {"high", 188, 105, 79, 6},
    {"binary", 37, 15, 11, 0},
};

const std::vector<RceSeverityRow> kRceMmbench = {
    {"low", 1.6}, {"mid", 4.0}, {"high", 9.7}, {"binary", 11.5}};
const std::vector<RceSeverityRow> kRceMmmuPro = {
    {"low", 2.7}, {"mid", 6.3}, {"high", 13.0}, {"binary", 10.1}};

const std::vector<McERow> kMce = {
    {"Qwen3-VL-30B", 62.9, 89.0},   {"Qwen3-VL-8B", 70.8, 95.0},
    {"Qwen3-VL-4B", 77.5, 98.9},    {"Molmo2-8B", 78.2, 100.0},
    {"Molmo2-4B", 79.2, 100.0},     {"InternVL3.5-8B", 81.2, 89.1},
    {"InternVL3.5-14B", 92.0, 85.0}, {"InternVL3.5-4B", 98.3, 93.1},
    {"Gemma-3-12B", 100.0, 101.1},
};

const std::vector<FlipSeverityRow> kFlipsMmbench = {
    {"low", 1.79, 1.05}, {"mid", 3.37, 1.49}, {"high", 6.33, 1.78}, {"binary", 12.27, 1.63}};
const std::vector<FlipSeverityRow> kFlipsMmmuPro = {
    {"low", 2.16, 1.74}, {"mid", 3.20, 2.31}, {"high", 4.47, 2.82}, {"binary", 5.30, 2.65}};

const std::vector<MismatchRow> kMismatch = {
    {"mmbench", 30.2, 0.71},
    {"mmmu_pro", 56.1, 0.34},
};

const std::vector<CategoryRow> kCategoriesMmbench = {
    {"image_style", 5.30},
    {"attribute_comparison", 5.26},
    {"structuralized_imagetext_understanding", 4.81},
    {"social_relation", 4.57},
    {"nature_relation", 4.51},
};
const std::vector<CategoryRow> kCategoriesMmmuPro = {
    {"Art", 4.75}, {"Music", 3.90}, {"Economics", 3.69}, {"Art_Theory", 3.46},
    {"Pharmacy", 3.35},
};

const std::vector<ScalingRow> kScaling = {
    {"Qwen3-VL", 2.95, 1.00, 3, -0.38, 0.17, 3},
    {"InternVL3.5", -0.94, 0.12, 3, -1.44, 0.89, 3},
    {"Molmo2", -1.66, 1.00, 2, -1.00, 1.00, 2},
};

const std::vector<SeverityTripleRow> kQwenDrops = {
    {"upsample", 2.31, 13.05, 28.65},
    {"elastic_transform", 0.78, 6.02, 25.32},
    {"zoom_blur", 0.55, 4.65, 10.94},
    {"solarize", 5.47, 5.00, 9.03},
    {"glass_blur", 6.96, 5.59, 4.10},
    {"pixelate", 0.16, 0.35, 6.06},
    {"shot_noise", 0.55, 2.19, 5.12},
    {"brightness", 0.23, 0.23, 3.99},
    {"jpeg_compression", 0.20, 0.27, 0.31},
};

const std::vector<TailRiskRow> kTailRisk = {
    {"mmbench", 65.5},
    {"mmmu_pro", 100.0},
};

[[noreturn]] void unknown_dataset(const std::string& dataset) {
  throw ValidationError("unknown reference dataset '" + dataset +
                        "' (expected mmbench or mmmu_pro)");
}

}  // namespace

const std::vector<SummaryRow>& main_summary(const std::string& dataset) {
  if (dataset == "mmbench") return kSummaryMmbench;
  if (dataset == "mmmu_pro") return kSummaryMmmuPro;
  unknown_dataset(dataset);
}

const std::vector<BinaryDropRow>& binary_drops() { return kBinaryDrops; }
const std::vector<BinaryFlipRow>& binary_flips() { return kBinaryFlips; }

const std::vector<TierCountRow>& tier_counts(const std::string& dataset) {
  if (dataset == "mmbench") return kTiersMmbench;
  if (dataset == "mmmu_pro") return kTiersMmmuPro;
  unknown_dataset(dataset);
}

const std::vector<RceSeverityRow>& rce_by_severity(const std::string& dataset) {
  if (dataset == "mmbench") return kRceMmbench;
  if (dataset == "mmmu_pro") return kRceMmmuPro;
  unknown_dataset(dataset);
}

const std::vector<McERow>& mce_by_model() { return kMce; }

const std::vector<FlipSeverityRow>& flips_by_severity(const std::string& dataset) {
  if (dataset == "mmbench") return kFlipsMmbench;
  if (dataset == "mmmu_pro") return kFlipsMmmuPro;
  unknown_dataset(dataset);
}

const std::vector<MismatchRow>& severity_mismatch() { return kMismatch; }

const std::vector<CategoryRow>& category_drops(const std::string& dataset) {
  if (dataset == "mmbench") return kCategoriesMmbench;
  if (dataset == "mmmu_pro") return kCategoriesMmmuPro;
  unknown_dataset(dataset);
}

const std::vector<ScalingRow>& scaling() { return kScaling; }

std::vector<std::pair<double, double>> molmo2_mmbench_points() {
  // Anchor: slope -1.00 per log10(params) through the 4B point at 3.5 pp.
  double d4 = 3.5;
  double d8 = d4 + (-1.00) * (std::log10(8e9) - std::log10(4e9));
  return {{4e9, d4}, {8e9, d8}};
}

const std::vector<SeverityTripleRow>& qwen_family_drops() { return kQwenDrops; }

const std::vector<TailRiskRow>& tail_risk() { return kTailRisk; }

}  // namespace robench::published
