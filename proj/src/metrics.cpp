#include "robench/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>

#include "robench/corruptions.hpp"
#include "robench/errors.hpp"

namespace robench {

const char* tier_name(Tier t) {
  switch (t) {
    case Tier::Positive:
      return "positive";
    case Tier::Benign:
      return "benign";
    case Tier::Mild:
      return "mild";
    case Tier::Moderate:
      return "moderate";
    case Tier::Catastrophic:
      return "catastrophic";
  }
  return "benign";
}

double accuracy(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw EmptyConfig("accuracy over zero records");
  std::size_t correct = 0;
  for (const auto& r : records) {
    if (r.failed) throw ValidationError("unresolved failure record in accuracy input");
    if (r.correct) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(records.size());
}

AccuracyTable accuracy_table(const std::vector<EvalRecord>& latest_records,
                             bool allow_partial) {
  std::map<std::string, std::vector<EvalRecord>> by_key;
  bool dropped_failures = false;
  for (const auto& r : latest_records) {
    if (r.failed) {
      if (!allow_partial)
        throw PartialResults("store has unresolved failure records; pass --allow-partial "
                             "to finalize without them");
      dropped_failures = true;
      continue;
    }
    by_key[r.key.str()].push_back(r);
  }
  auto clean_it = by_key.find("clean");
  if (clean_it == by_key.end()) throw EmptyConfig("no clean records");
  auto noimage_it = by_key.find("no_image");
  if (noimage_it == by_key.end()) throw EmptyConfig("no no-image records");

  AccuracyTable t;
  t.acc_clean = accuracy(clean_it->second);
  t.acc_noimage = accuracy(noimage_it->second);
  std::size_t full_corrupted = 0;
  for (const auto& spec : registry()) full_corrupted += spec.severity_based() ? 3 : 1;
  for (const auto& [key, recs] : by_key) {
    if (key == "clean" || key == "no_image") continue;
    t.acc[key] = accuracy(recs);
  }
  t.partial = dropped_failures || t.acc.size() != full_corrupted;
  return t;
}

FlipStats flip_stats(const std::vector<EvalRecord>& clean_records,
                     const std::vector<EvalRecord>& corrupted_records) {
  std::map<std::string, bool> clean_correct;
  for (const auto& r : clean_records) {
    if (r.failed) throw ValidationError("unresolved failure record in flip input");
    if (!clean_correct.emplace(r.sample_id, r.correct).second)
      throw ValidationError("duplicate sample id in clean records: " + r.sample_id);
  }
  if (corrupted_records.size() != clean_records.size())
    throw ValidationError("flip_stats: sample id sets differ in size");
  std::size_t plus = 0, minus = 0, c_clean = 0, c_corr = 0;
  std::set<std::string> seen;
  for (const auto& r : corrupted_records) {
    if (r.failed) throw ValidationError("unresolved failure record in flip input");
    auto it = clean_correct.find(r.sample_id);
    if (it == clean_correct.end())
      throw ValidationError("flip_stats: sample " + r.sample_id + " missing on clean side");
    if (!seen.insert(r.sample_id).second)
      throw ValidationError("duplicate sample id in corrupted records: " + r.sample_id);
    if (it->second) ++c_clean;
    if (r.correct) ++c_corr;
    if (it->second && !r.correct) ++plus;
    if (!it->second && r.correct) ++minus;
  }
  if (clean_records.empty()) throw EmptyConfig("flip_stats over zero records");
  auto n = static_cast<double>(clean_records.size());
  FlipStats f;
  f.flip_plus = 100.0 * static_cast<double>(plus) / n;
  f.flip_minus = 100.0 * static_cast<double>(minus) / n;
  // Written as the same two-term expression accuracy() produces so the
  // flip-net identity is exact in doubles, not just in real arithmetic.
  f.net = 100.0 * static_cast<double>(c_clean) / n - 100.0 * static_cast<double>(c_corr) / n;
  return f;
}

DropTable drop_table(const AccuracyTable& t) {
  DropTable d;
  d.acc_clean = t.acc_clean;
  d.partial = t.partial;
  for (const auto& spec : registry()) {
    if (spec.severity_based()) {
      for (Severity sev : kSeverities) {
        auto key = EvalConfigKey::corrupted(spec.id, sev);
        auto it = t.acc.find(key.str());
        if (it != t.acc.end()) d.entries.push_back({key, t.acc_clean - it->second});
      }
    } else {
      auto key = EvalConfigKey::corrupted(spec.id, std::nullopt);
      auto it = t.acc.find(key.str());
      if (it != t.acc.end()) d.entries.push_back({key, t.acc_clean - it->second});
    }
  }
  return d;
}

double visual_gain(double acc_clean, double acc_noimage) { return acc_clean - acc_noimage; }

double rce(double delta, double vg) {
  if (!(vg > 0.0)) throw NonPositiveVG("rce needs VG > 0, got " + std::to_string(vg));
  return delta / vg * 100.0;
}

double mrce(const std::vector<double>& rces) {
  if (rces.empty()) throw EmptyConfig("mrce over zero configs");
  double sum = 0.0;
  for (double v : rces) sum += v;
  return sum / static_cast<double>(rces.size());
}

double mce(const MceInputs& model, const MceInputs& ref) {
  if (model.error_sums.size() != ref.error_sums.size())
    throw ValidationError("mce: corruption type sets differ");
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [id, model_sum] : model.error_sums) {
    auto it = ref.error_sums.find(id);
    if (it == ref.error_sums.end())
      throw ValidationError("mce: reference missing corruption type " + id);
    if (!(it->second > 0.0))
      throw ZeroReferenceError("mce: reference error sum for " + id + " is not positive");
    sum += model_sum / it->second * 100.0;
    ++n;
  }
  if (n == 0) throw EmptyConfig("mce over zero corruption types");
  return sum / static_cast<double>(n);
}

MceInputs mce_inputs(const AccuracyTable& t) {
  MceInputs m;
  for (const auto& spec : registry()) {
    double sum = 0.0;
    bool complete = true;
    if (spec.severity_based()) {
      for (Severity sev : kSeverities) {
        auto it = t.acc.find(EvalConfigKey::corrupted(spec.id, sev).str());
        if (it == t.acc.end()) {
          complete = false;
          break;
        }
        sum += 1.0 - it->second / 100.0;
      }
    } else {
      auto it = t.acc.find(EvalConfigKey::corrupted(spec.id, std::nullopt).str());
      if (it == t.acc.end())
        complete = false;
      else
        sum += 1.0 - it->second / 100.0;
    }
    if (!complete) {
      if (!t.partial) throw EmptyConfig("mce inputs: missing terms for " + spec.id);
      continue;
    }
    m.error_sums[spec.id] = sum;
  }
  return m;
}

Tier tier(double delta) {
  if (delta < 0.0) return Tier::Positive;
  if (delta <= 1.0) return Tier::Benign;
  if (delta <= 3.0) return Tier::Mild;
  if (delta <= 10.0) return Tier::Moderate;
  return Tier::Catastrophic;
}

double severe_failure_rate(const std::vector<double>& drops, double acc_clean) {
  if (drops.empty()) throw EmptyConfig("severe_failure_rate over zero drops");
  std::size_t count = 0;
  for (double d : drops)
    if (d > 0.1 * acc_clean) ++count;
  return 100.0 * static_cast<double>(count) / static_cast<double>(drops.size());
}

DropEntry worst_case(const DropTable& t) {
  if (t.entries.empty()) throw EmptyConfig("worst_case over zero drops");
  const DropEntry* best = &t.entries.front();
  for (const auto& e : t.entries)
    if (e.delta > best->delta) best = &e;
  return *best;
}

DropEntry worst_at_low(const DropTable& t) {
  const DropEntry* best = nullptr;
  for (const auto& e : t.entries) {
    if (e.key.severity != Severity::Low) continue;
    if (!best || e.delta > best->delta) best = &e;
  }
  if (!best) throw EmptyConfig("worst_at_low: no low-severity drops");
  return *best;
}

double benign_at_low(const DropTable& t) {
  std::size_t low = 0, benign = 0;
  for (const auto& e : t.entries) {
    if (e.key.severity != Severity::Low) continue;
    ++low;
    if (e.delta <= 1.0) ++benign;
  }
  if (low == 0) throw EmptyConfig("benign_at_low: no low-severity drops");
  return 100.0 * static_cast<double>(benign) / static_cast<double>(low);
}

bool monotonicity_violation(double d_low, double d_mid, double d_high) {
  return d_low > d_mid || d_mid > d_high;
}

double spearman_rho(double d_low, double d_mid, double d_high) {
  std::array<double, 3> y{d_low, d_mid, d_high};
  std::array<double, 3> ry{};
  for (int i = 0; i < 3; ++i) {
    int less = 0, tied = 0;
    for (int j = 0; j < 3; ++j) {
      if (y[j] < y[i]) ++less;
      if (y[j] == y[i]) ++tied;  // includes self
    }
    ry[i] = static_cast<double>(less) + 1.0 + (static_cast<double>(tied) - 1.0) / 2.0;
  }
  const std::array<double, 3> rx{1.0, 2.0, 3.0};
  double mx = 2.0, my = (ry[0] + ry[1] + ry[2]) / 3.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (syy == 0.0) return 0.0;  // all drops tied: no association
  return sxy / std::sqrt(sxx * syy);
}

std::pair<double, double> scaling_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw ValidationError("scaling_slope needs >= 2 points");
  double mx = 0.0, my = 0.0;
  for (const auto& [p, d] : points) {
    if (!(p > 0.0)) throw ValidationError("scaling_slope: parameter counts must be positive");
    mx += std::log10(p);
    my += d;
  }
  auto n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& [p, d] : points) {
    double dx = std::log10(p) - mx, dy = d - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw ValidationError("scaling_slope: parameter counts must be distinct");
  double slope = sxy / sxx;
  double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {slope, r2};
}

std::vector<std::pair<std::string, double>> category_sensitivity(
    const std::vector<EvalRecord>& latest_records,
    const std::map<std::string, std::string>& sample_stratum, bool allow_partial) {
  // stratum -> key -> records
  std::map<std::string, std::map<std::string, std::vector<EvalRecord>>> split;
  std::vector<std::string> stratum_order;
  for (const auto& [sample, stratum] : sample_stratum)
    if (split.emplace(stratum, std::map<std::string, std::vector<EvalRecord>>{}).second)
      stratum_order.push_back(stratum);
  for (const auto& r : latest_records) {
    if (r.failed) {
      if (!allow_partial)
        throw PartialResults("unresolved failure records in category input");
      continue;
    }
    auto it = sample_stratum.find(r.sample_id);
    if (it == sample_stratum.end())
      throw ValidationError("record for unknown sample " + r.sample_id);
    split[it->second][r.key.str()].push_back(r);
  }
  std::vector<std::pair<std::string, double>> out;
  for (const auto& stratum : stratum_order) {
    const auto& by_key = split[stratum];
    auto clean_it = by_key.find("clean");
    if (clean_it == by_key.end()) {
      std::fprintf(stderr, "warning: stratum '%s' has no records, excluded\n",
                   stratum.c_str());
      continue;
    }
    double acc_clean = accuracy(clean_it->second);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& [key, recs] : by_key) {
      if (key == "clean" || key == "no_image") continue;
      sum += acc_clean - accuracy(recs);
      ++n;
    }
    if (n == 0) {
      std::fprintf(stderr, "warning: stratum '%s' has no corrupted records, excluded\n",
                   stratum.c_str());
      continue;
    }
    out.emplace_back(stratum, sum / static_cast<double>(n));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

bool is_spatial_aug(const std::string& aug_id) {
  static const std::set<std::string> kSpatial = {
      "upsample", "downsample", "elastic_transform", "zoom_blur", "rotate",
      "shear",    "affine",     "perspective_transform", "pixelate"};
  return kSpatial.count(aug_id) > 0;
}

double tail_risk_share(const std::vector<EvalConfigKey>& catastrophic_keys) {
  if (catastrophic_keys.empty()) return 0.0;
  std::size_t in_set = 0;
  for (const auto& k : catastrophic_keys)
    if (is_spatial_aug(k.aug_id)) ++in_set;
  return 100.0 * static_cast<double>(in_set) /
         static_cast<double>(catastrophic_keys.size());
}

std::vector<EvalConfigKey> keys_in_tier(const DropTable& t, Tier which) {
  std::vector<EvalConfigKey> out;
  for (const auto& e : t.entries)
    if (tier(e.delta) == which) out.push_back(e.key);
  return out;
}

double round1(double v) {
  double r = std::round(v * 10.0) / 10.0;
  return r == 0.0 ? 0.0 : r;  // normalize -0.0
}

std::string fmt1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", round1(v));
  return buf;
}

}  // namespace robench
