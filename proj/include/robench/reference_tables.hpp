#pragma once

#include <string>
#include <utility>
#include <vector>

namespace robench::published {

// Digitized reference results bundled with the tool. `report --paper-tables`
// recomputes every derivable column from these rows and checks the arithmetic.
// Dataset keys: "mmbench", "mmmu_pro".

struct SummaryRow {
  const char* model;
  double baseline;       // clean accuracy, %
  double worst_case;     // max drop over 133 configs, pp
  double severe_fail;    // % of 133 configs with drop > 0.1 x baseline
  double worst_at_low;   // max drop over 42 low-severity configs, pp
  double benign_at_low;  // % of 42 low-severity configs with drop <= 1
  double vg;             // visual gain, pp
  double mrce;           // mean relative corruption error, %
};
const std::vector<SummaryRow>& main_summary(const std::string& dataset);

struct BinaryDropRow {
  const char* aug_id;
  double drop_mmbench;
  double drop_mmmu_pro;
};
const std::vector<BinaryDropRow>& binary_drops();

struct BinaryFlipRow {
  const char* aug_id;
  double plus_mmbench, minus_mmbench, net_mmbench;
  double plus_mmmu_pro, minus_mmmu_pro, net_mmmu_pro;
};
const std::vector<BinaryFlipRow>& binary_flips();

struct TierCountRow {
  const char* severity;  // "low", "mid", "high", "binary"
  int benign;            // includes drops < 0 (improvements)
  int mild;
  int moderate;
  int catastrophic;
};
const std::vector<TierCountRow>& tier_counts(const std::string& dataset);

struct RceSeverityRow {
  const char* severity;
  double mean_rce;
};
const std::vector<RceSeverityRow>& rce_by_severity(const std::string& dataset);

struct McERow {
  const char* model;
  double mce_mmbench;
  double mce_mmmu_pro;
};
const std::vector<McERow>& mce_by_model();

struct FlipSeverityRow {
  const char* severity;
  double flip_plus;
  double flip_minus;
};
const std::vector<FlipSeverityRow>& flips_by_severity(const std::string& dataset);

struct MismatchRow {
  const char* dataset;
  double violation_rate;  // %
  double mean_rho;
};
const std::vector<MismatchRow>& severity_mismatch();

struct CategoryRow {
  const char* category;
  double mean_drop;
};
const std::vector<CategoryRow>& category_drops(const std::string& dataset);

struct ScalingRow {
  const char* family;
  double slope_mmmu_pro, r2_mmmu_pro;
  int n_mmmu_pro;
  double slope_mmbench, r2_mmbench;
  int n_mmbench;
};
const std::vector<ScalingRow>& scaling();

// Two (param_count, mean drop) points consistent with the published Molmo2
// slope on mmbench (-1.00 per log10 params, R^2 1.00, n = 2). The published
// table reports only the fit, so the points are anchored to it.
std::vector<std::pair<double, double>> molmo2_mmbench_points();

struct SeverityTripleRow {
  const char* aug_id;
  double low, mid, high;  // family-mean drops, pp
};
// Qwen-family mean drops per severity on mmbench (glass_blur row is the
// canonical non-monotone example).
const std::vector<SeverityTripleRow>& qwen_family_drops();

struct TailRiskRow {
  const char* dataset;
  double spatial_share;  // % of catastrophic cases from spatial corruptions
};
const std::vector<TailRiskRow>& tail_risk();

}  // namespace robench::published
