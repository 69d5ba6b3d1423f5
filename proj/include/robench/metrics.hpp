#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "robench/store.hpp"

namespace robench {

// Accuracies in percent points (0-100), keyed by EvalConfigKey::str().
// `partial` marks tables built without the full corrupted-key set (filtered
// runs or stores finalized with failures dropped).
struct AccuracyTable {
  double acc_clean = 0.0;
  double acc_noimage = 0.0;
  std::map<std::string, double> acc;  // corrupted keys only
  bool partial = false;
};

struct DropEntry {
  EvalConfigKey key;
  double delta = 0.0;  // acc_clean - acc[key], percentage points
};

// Drops in stable plan order (registry order x severity order).
struct DropTable {
  double acc_clean = 0.0;
  bool partial = false;
  std::vector<DropEntry> entries;
};

enum class Tier { Positive, Benign, Mild, Moderate, Catastrophic };
const char* tier_name(Tier t);

struct FlipStats {
  double flip_plus = 0.0;   // % correct on clean, wrong on corrupted
  double flip_minus = 0.0;  // % wrong on clean, correct on corrupted
  double net = 0.0;         // equals the accuracy drop bit-for-bit
};

// Per corruption type: error sums over its severity terms (E = 1 - Acc/100).
struct MceInputs {
  std::map<std::string, double> error_sums;
};

// ---- record-level ----

// 100 x correct / total. Throws EmptyConfig on no records and
// ValidationError if an unresolved failure record slipped in.
double accuracy(const std::vector<EvalRecord>& records);

// Latest store records -> accuracy table. Unresolved failures throw
// PartialResults unless allow_partial (then they are dropped and the table
// is marked partial). Clean and no-image configs are required.
AccuracyTable accuracy_table(const std::vector<EvalRecord>& latest_records,
                             bool allow_partial = false);

// flip_plus/flip_minus/net over the common sample set; throws
// ValidationError when the sample id sets differ. net is computed through
// the same expression as accuracy(clean) - accuracy(corrupted), so the
// flip-net identity holds exactly in double arithmetic (flip_plus -
// flip_minus agrees mathematically but may differ in the last ulp).
FlipStats flip_stats(const std::vector<EvalRecord>& clean_records,
                     const std::vector<EvalRecord>& corrupted_records);

// ---- table-level ----

DropTable drop_table(const AccuracyTable& t);

double visual_gain(double acc_clean, double acc_noimage);
double rce(double delta, double vg);          // NonPositiveVG when vg <= 0
double mrce(const std::vector<double>& rces);  // EmptyConfig when empty

// Mean over corruption types of (model error sum / reference error sum) x
// 100. Key sets must match (ValidationError); zero reference sums throw
// ZeroReferenceError.
double mce(const MceInputs& model, const MceInputs& ref);

// Error sums per corruption type from a table. Corruption types with
// missing severity terms are skipped on partial tables and throw
// EmptyConfig otherwise.
MceInputs mce_inputs(const AccuracyTable& t);

Tier tier(double delta);

// 100 x |{delta > 0.1 x acc_clean}| / |drops|; strict inequality.
double severe_failure_rate(const std::vector<double>& drops, double acc_clean);

// Max-drop entries; ties resolve to the earliest entry in plan order.
DropEntry worst_case(const DropTable& t);
DropEntry worst_at_low(const DropTable& t);  // over low-severity entries only
double benign_at_low(const DropTable& t);    // % of low-severity drops <= 1

bool monotonicity_violation(double d_low, double d_mid, double d_high);

// Rank correlation of (1,2,3) against the drops' average ranks (Pearson of
// ranks, tie-aware). All-tied drops return 0 (no association).
double spearman_rho(double d_low, double d_mid, double d_high);

// OLS of drop against log10(param_count) -> (slope, R^2). Needs >= 2 points
// with distinct param counts (ValidationError). Zero drop variance -> R^2 1.
std::pair<double, double> scaling_slope(const std::vector<std::pair<double, double>>& points);

// Mean drop per stratum (clean accuracy minus mean corrupted accuracy,
// computed within the stratum), sorted by drop descending. Strata without
// records are skipped with a stderr warning.
std::vector<std::pair<std::string, double>> category_sensitivity(
    const std::vector<EvalRecord>& latest_records,
    const std::map<std::string, std::string>& sample_stratum, bool allow_partial = false);

// The spatial/resampling corruption set used for tail-risk attribution.
bool is_spatial_aug(const std::string& aug_id);

// % of the given keys whose augmentation is spatial; empty input -> 0.
double tail_risk_share(const std::vector<EvalConfigKey>& catastrophic_keys);

std::vector<EvalConfigKey> keys_in_tier(const DropTable& t, Tier which);

// ---- presentation ----

// Half-away-from-zero rounding to 1 decimal; all table cells go through it.
double round1(double v);
std::string fmt1(double v);

}  // namespace robench
