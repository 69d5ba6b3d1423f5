#include "robench/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "robench/corruptions.hpp"
#include "robench/errors.hpp"
#include "robench/reference_tables.hpp"

namespace robench {

namespace fs = std::filesystem;

namespace {

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_count(long long v) { return std::to_string(v); }

enum class Bucket { Low, Mid, High, Binary };
constexpr std::array<Bucket, 4> kBuckets{Bucket::Low, Bucket::Mid, Bucket::High,
                                         Bucket::Binary};

const char* bucket_name(Bucket b) {
  switch (b) {
    case Bucket::Low:
      return "low";
    case Bucket::Mid:
      return "mid";
    case Bucket::High:
      return "high";
    case Bucket::Binary:
      return "binary";
  }
  return "low";
}

Bucket bucket_of(const EvalConfigKey& k) {
  if (!k.severity) return Bucket::Binary;
  switch (*k.severity) {
    case Severity::Low:
      return Bucket::Low;
    case Severity::Mid:
      return Bucket::Mid;
    case Severity::High:
      return Bucket::High;
  }
  return Bucket::Binary;
}

struct ModelData {
  std::string model;
  AccuracyTable table;
  DropTable drops;
  ModelSummary summary;
  std::map<std::string, std::vector<EvalRecord>> by_key;
  std::map<std::string, std::string> strata;
};

ModelData analyze(const StoreInput& in, bool allow_partial) {
  ModelData d;
  d.model = in.model;
  d.table = in.records.empty() && in.table ? *in.table
                                           : accuracy_table(in.records, allow_partial);
  d.drops = drop_table(d.table);
  d.summary = summarize_model(in.model, d.table);
  d.strata = in.strata;
  for (const auto& r : in.records) {
    if (r.failed) continue;  // accuracy_table already gated on allow_partial
    d.by_key[r.key.str()].push_back(r);
  }
  return d;
}

}  // namespace

ModelSummary summarize_model(const std::string& model, const AccuracyTable& t) {
  ModelSummary s;
  s.model = model;
  s.partial = t.partial;
  s.baseline = t.acc_clean;
  s.vg = visual_gain(t.acc_clean, t.acc_noimage);
  DropTable d = drop_table(t);
  if (!d.entries.empty()) {
    DropEntry w = worst_case(d);
    s.worst_case_drop = w.delta;
    s.worst_case_key = w.key.str();
    std::vector<double> deltas;
    deltas.reserve(d.entries.size());
    for (const auto& e : d.entries) deltas.push_back(e.delta);
    s.severe_fail = severe_failure_rate(deltas, t.acc_clean);
    bool any_low = std::any_of(d.entries.begin(), d.entries.end(), [](const DropEntry& e) {
      return e.key.severity == Severity::Low;
    });
    if (any_low) {
      s.has_low = true;
      DropEntry wl = worst_at_low(d);
      s.worst_at_low_drop = wl.delta;
      s.worst_at_low_key = wl.key.str();
      s.benign_low = benign_at_low(d);
    }
    if (s.vg > 0.0) {
      std::vector<double> rces;
      rces.reserve(d.entries.size());
      for (const auto& e : d.entries) rces.push_back(rce(e.delta, s.vg));
      s.mrce = mrce(rces);
    }
  }
  return s;
}

ReportBundle build_store_report(const std::vector<StoreInput>& stores, bool allow_partial,
                                const std::string& reference_model) {
  if (stores.empty()) throw EmptyConfig("report over zero stores");
  std::vector<ModelData> data;
  data.reserve(stores.size());
  for (const auto& in : stores) data.push_back(analyze(in, allow_partial));

  ReportBundle b;

  // --- main summary ---
  {
    ReportTable t;
    t.id = "main_summary";
    t.title = "Main robustness summary";
    t.columns = {"model",        "baseline",  "worst_case", "worst_config",
                 "severe_fail",  "worst_at_low", "worst_low_config",
                 "benign_at_low", "vg",        "mrce"};
    for (const auto& d : data) {
      const ModelSummary& s = d.summary;
      t.rows.push_back({s.model, fmt1(s.baseline), fmt1(s.worst_case_drop),
                        s.worst_case_key, fmt1(s.severe_fail),
                        s.has_low ? fmt1(s.worst_at_low_drop) : "n/a",
                        s.has_low ? s.worst_at_low_key : "n/a",
                        s.has_low ? fmt1(s.benign_low) : "n/a", fmt1(s.vg),
                        s.mrce ? fmt1(*s.mrce) : "n/a"});
    }
    b.tables.push_back(std::move(t));
  }

  // --- binary augmentations: mean drop + tier of the mean ---
  {
    ReportTable t;
    t.id = "binary_augmentations";
    t.title = "Binary augmentation drops (mean over models)";
    t.columns = {"augmentation", "tier", "mean_drop"};
    for (const auto& spec : registry()) {
      if (spec.severity_based()) continue;
      auto key = EvalConfigKey::corrupted(spec.id, std::nullopt).str();
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& d : data) {
        for (const auto& e : d.drops.entries)
          if (e.key.str() == key) {
            sum += e.delta;
            ++n;
          }
      }
      if (n == 0) continue;
      double mean = sum / static_cast<double>(n);
      t.rows.push_back({spec.id, tier_name(tier(mean)), fmt1(mean)});
    }
    if (!t.rows.empty()) b.tables.push_back(std::move(t));
  }

  // --- tier distribution (improvements counted in the benign column) ---
  {
    ReportTable t;
    t.id = "tier_distribution";
    t.title = "Tier distribution by severity (counts over all models)";
    t.columns = {"severity", "benign", "mild", "moderate", "catastrophic", "total"};
    for (Bucket bucket : kBuckets) {
      long long counts[4] = {0, 0, 0, 0};
      long long total = 0;
      for (const auto& d : data) {
        for (const auto& e : d.drops.entries) {
          if (bucket_of(e.key) != bucket) continue;
          ++total;
          switch (tier(e.delta)) {
            case Tier::Positive:
            case Tier::Benign:
              ++counts[0];
              break;
            case Tier::Mild:
              ++counts[1];
              break;
            case Tier::Moderate:
              ++counts[2];
              break;
            case Tier::Catastrophic:
              ++counts[3];
              break;
          }
        }
      }
      if (total == 0) continue;
      t.rows.push_back({bucket_name(bucket), fmt_count(counts[0]), fmt_count(counts[1]),
                        fmt_count(counts[2]), fmt_count(counts[3]), fmt_count(total)});
    }
    if (!t.rows.empty()) b.tables.push_back(std::move(t));
  }

  // --- top corruptions by severity (mean drop over models) ---
  {
    ReportTable t;
    t.id = "top_by_severity";
    t.title = "Top-5 corruptions by severity (mean drop over models)";
    t.columns = {"severity", "rank", "config", "mean_drop"};
    for (Bucket bucket : kBuckets) {
      std::vector<std::pair<std::string, double>> means;
      for (const auto& spec : registry()) {
        std::vector<EvalConfigKey> keys;
        if (spec.severity_based()) {
          for (Severity sev : kSeverities) {
            auto k = EvalConfigKey::corrupted(spec.id, sev);
            if (bucket_of(k) == bucket) keys.push_back(k);
          }
        } else {
          auto k = EvalConfigKey::corrupted(spec.id, std::nullopt);
          if (bucket_of(k) == bucket) keys.push_back(k);
        }
        for (const auto& k : keys) {
          double sum = 0.0;
          std::size_t n = 0;
          for (const auto& d : data)
            for (const auto& e : d.drops.entries)
              if (e.key == k) {
                sum += e.delta;
                ++n;
              }
          if (n > 0) means.emplace_back(k.str(), sum / static_cast<double>(n));
        }
      }
      std::stable_sort(means.begin(), means.end(),
                       [](const auto& a, const auto& b) { return a.second > b.second; });
      for (std::size_t i = 0; i < means.size() && i < 5; ++i)
        t.rows.push_back({bucket_name(bucket), std::to_string(i + 1), means[i].first,
                          fmt1(means[i].second)});
    }
    if (!t.rows.empty()) b.tables.push_back(std::move(t));
  }

  // --- RCE by severity (pooled over models with positive VG) ---
  {
    ReportTable t;
    t.id = "rce_by_severity";
    t.title = "Mean relative corruption error by severity";
    t.columns = {"severity", "mean_rce"};
    for (Bucket bucket : kBuckets) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& d : data) {
        if (!(d.summary.vg > 0.0)) continue;
        for (const auto& e : d.drops.entries) {
          if (bucket_of(e.key) != bucket) continue;
          sum += rce(e.delta, d.summary.vg);
          ++n;
        }
      }
      if (n > 0)
        t.rows.push_back({bucket_name(bucket), fmt1(sum / static_cast<double>(n))});
    }
    if (!t.rows.empty()) b.tables.push_back(std::move(t));
  }

  // --- mCE (needs a reference model) ---
  if (data.size() >= 2) {
    std::size_t ref_idx = 0;
    if (!reference_model.empty()) {
      bool found = false;
      for (std::size_t i = 0; i < data.size(); ++i)
        if (data[i].model == reference_model) {
          ref_idx = i;
          found = true;
          break;
        }
      if (!found)
        throw ValidationError("reference model '" + reference_model +
                              "' not among the supplied stores");
    } else {
      for (std::size_t i = 1; i < data.size(); ++i)
        if (data[i].summary.baseline < data[ref_idx].summary.baseline) ref_idx = i;
    }
    ReportTable t;
    t.id = "mce_by_model";
    t.title = "Mean corruption error (reference: " + data[ref_idx].model + ")";
    t.columns = {"model", "mce"};
    try {
      MceInputs ref = mce_inputs(data[ref_idx].table);
      for (std::size_t i = 0; i < data.size(); ++i) {
        double v = mce(mce_inputs(data[i].table), ref);
        std::string cell = fmt1(v);
        if (i == ref_idx) cell += " (ref)";
        t.rows.push_back({data[i].model, cell});
      }
      b.tables.push_back(std::move(t));
    } catch (const Error& e) {
      std::fprintf(stderr, "warning: mCE table skipped: %s\n", e.what());
    }
  }

  // --- binary flip decomposition (mean over models) ---
  {
    ReportTable t;
    t.id = "binary_flips";
    t.title = "Binary augmentation flip rates (mean over models)";
    t.columns = {"augmentation", "flip_plus", "flip_minus", "net"};
    for (const auto& spec : registry()) {
      if (spec.severity_based()) continue;
      auto key = EvalConfigKey::corrupted(spec.id, std::nullopt).str();
      double sp = 0.0, sm = 0.0, sn = 0.0;
      std::size_t n = 0;
      for (const auto& d : data) {
        auto clean_it = d.by_key.find("clean");
        auto corr_it = d.by_key.find(key);
        if (clean_it == d.by_key.end() || corr_it == d.by_key.end()) continue;
        FlipStats f = flip_stats(clean_it->second, corr_it->second);
        sp += f.flip_plus;
        sm += f.flip_minus;
        sn += f.net;
        ++n;
      }
      if (n == 0) continue;
      auto dn = static_cast<double>(n);
      t.rows.push_back({spec.id, fmt1(sp / dn), fmt1(sm / dn), fmt1(sn / dn)});
    }
    if (!t.rows.empty()) b.tables.push_back(std::move(t));
  }

  // --- severity mismatch ---
  {
    ReportTable t;
    t.id = "severity_mismatch";
    t.title = "Severity mismatch (monotonicity violations and rank correlation)";
    t.columns = {"model", "violation_rate", "mean_rho"};
    long long all_viol = 0, all_n = 0;
    double all_rho = 0.0;
    for (const auto& d : data) {
      long long viol = 0, n = 0;
      double rho_sum = 0.0;
      for (const auto& spec : registry()) {
        if (!spec.severity_based()) continue;
        double triple[3];
        bool complete = true;
        for (int si = 0; si < 3; ++si) {
          auto key = EvalConfigKey::corrupted(spec.id, kSeverities[si]);
          auto it = std::find_if(d.drops.entries.begin(), d.drops.entries.end(),
                                 [&](const DropEntry& e) { return e.key == key; });
          if (it == d.drops.entries.end()) {
            complete = false;
            break;
          }
          triple[si] = it->delta;
        }
        if (!complete) continue;
        ++n;
        if (monotonicity_violation(triple[0], triple[1], triple[2])) ++viol;
        rho_sum += spearman_rho(triple[0], triple[1], triple[2]);
      }
      if (n == 0) continue;
      t.rows.push_back({d.model, fmt1(100.0 * static_cast<double>(viol) / static_cast<double>(n)),
                        fmt2(rho_sum / static_cast<double>(n))});
      all_viol += viol;
      all_n += n;
      all_rho += rho_sum;
    }
    if (all_n > 0)
      t.rows.push_back({"(all)",
                        fmt1(100.0 * static_cast<double>(all_viol) / static_cast<double>(all_n)),
                        fmt2(all_rho / static_cast<double>(all_n))});
    if (!t.rows.empty()) b.tables.push_back(std::move(t));
  }

  // --- category sensitivity (macro mean over models) ---
  {
    std::map<std::string, std::pair<double, std::size_t>> agg;
    std::vector<std::string> order;
    for (const auto& d : data) {
      if (d.strata.empty() || !d.by_key.count("clean")) continue;
      std::vector<EvalRecord> all;
      for (const auto& [k, v] : d.by_key) all.insert(all.end(), v.begin(), v.end());
      auto per = category_sensitivity(all, d.strata, true);
      for (const auto& [stratum, drop] : per) {
        auto [it, fresh] = agg.emplace(stratum, std::make_pair(0.0, std::size_t{0}));
        if (fresh) order.push_back(stratum);
        it->second.first += drop;
        it->second.second += 1;
      }
    }
    if (!agg.empty()) {
      ReportTable t;
      t.id = "category_sensitivity";
      t.title = "Mean drop by dataset stratum";
      t.columns = {"stratum", "mean_drop"};
      std::vector<std::pair<std::string, double>> rows;
      for (const auto& stratum : order) {
        const auto& [sum, n] = agg.at(stratum);
        rows.emplace_back(stratum, sum / static_cast<double>(n));
      }
      std::stable_sort(rows.begin(), rows.end(),
                       [](const auto& a, const auto& b) { return a.second > b.second; });
      for (const auto& [stratum, drop] : rows) t.rows.push_back({stratum, fmt2(drop)});
      b.tables.push_back(std::move(t));
    }
  }

  return b;
}

ReportBundle build_published_report() {
  using namespace published;
  ReportBundle b;
  const std::array<const char*, 2> datasets{"mmbench", "mmmu_pro"};

  for (const char* ds : datasets) {
    ReportTable t;
    t.id = std::string("published_summary_") + ds;
    t.title = std::string("Published main summary (") + ds + ")";
    t.columns = {"model",        "baseline",      "worst_case", "severe_fail",
                 "worst_at_low", "benign_at_low", "vg",         "mrce"};
    double vg_sum = 0.0;
    for (const auto& r : main_summary(ds)) {
      t.rows.push_back({r.model, fmt1(r.baseline), fmt1(r.worst_case), fmt1(r.severe_fail),
                        fmt1(r.worst_at_low), fmt1(r.benign_at_low), fmt1(r.vg),
                        fmt1(r.mrce)});
      vg_sum += r.vg;
    }
    t.rows.push_back({"(mean)", "", "", "", "", "",
                      fmt1(vg_sum / static_cast<double>(main_summary(ds).size())), ""});
    b.tables.push_back(std::move(t));
  }

  {
    ReportTable t;
    t.id = "published_binary_drops";
    t.title = "Published binary augmentation drops";
    t.columns = {"augmentation", "drop_mmbench", "tier_mmbench", "drop_mmmu_pro",
                 "tier_mmmu_pro"};
    for (const auto& r : binary_drops())
      t.rows.push_back({r.aug_id, fmt1(r.drop_mmbench), tier_name(tier(r.drop_mmbench)),
                        fmt1(r.drop_mmmu_pro), tier_name(tier(r.drop_mmmu_pro))});
    b.tables.push_back(std::move(t));
  }

  for (const char* ds : datasets) {
    ReportTable t;
    t.id = std::string("published_tiers_") + ds;
    t.title = std::string("Published tier distribution (") + ds + ")";
    t.columns = {"severity", "benign", "mild", "moderate", "catastrophic", "total"};
    for (const auto& r : tier_counts(ds)) {
      long long total =
          static_cast<long long>(r.benign) + r.mild + r.moderate + r.catastrophic;
      t.rows.push_back({r.severity, fmt_count(r.benign), fmt_count(r.mild),
                        fmt_count(r.moderate), fmt_count(r.catastrophic), fmt_count(total)});
    }
    b.tables.push_back(std::move(t));
  }

  for (const char* ds : datasets) {
    ReportTable t;
    t.id = std::string("published_rce_") + ds;
    t.title = std::string("Published mean RCE by severity (") + ds + ")";
    t.columns = {"severity", "mean_rce"};
    for (const auto& r : rce_by_severity(ds)) t.rows.push_back({r.severity, fmt1(r.mean_rce)});
    b.tables.push_back(std::move(t));
  }

  {
    ReportTable t;
    t.id = "published_mce";
    t.title = "Published mean corruption error";
    t.columns = {"model", "mce_mmbench", "mce_mmmu_pro"};
    for (const auto& r : mce_by_model()) {
      std::string mb = fmt1(r.mce_mmbench);
      if (std::string(r.model) == "Gemma-3-12B") mb += " (ref)";
      std::string mp = fmt1(r.mce_mmmu_pro);
      if (std::string(r.model) == "Molmo2-8B") mp += " (ref)";
      t.rows.push_back({r.model, mb, mp});
    }
    b.tables.push_back(std::move(t));
  }

  {
    ReportTable t;
    t.id = "published_binary_flips";
    t.title = "Published binary flip rates (net recomputed from the flip columns)";
    t.columns = {"augmentation",  "plus_mmbench",   "minus_mmbench", "net_mmbench",
                 "net_recomputed", "plus_mmmu_pro", "minus_mmmu_pro", "net_mmmu_pro"};
    for (const auto& r : binary_flips())
      t.rows.push_back({r.aug_id, fmt1(r.plus_mmbench), fmt1(r.minus_mmbench),
                        fmt1(r.net_mmbench), fmt1(r.plus_mmbench - r.minus_mmbench),
                        fmt1(r.plus_mmmu_pro), fmt1(r.minus_mmmu_pro),
                        fmt1(r.net_mmmu_pro)});
    b.tables.push_back(std::move(t));
  }

  {
    ReportTable t;
    t.id = "published_severity_mismatch";
    t.title = "Published severity mismatch rates";
    t.columns = {"dataset", "violation_rate", "mean_rho"};
    for (const auto& r : severity_mismatch())
      t.rows.push_back({r.dataset, fmt1(r.violation_rate), fmt2(r.mean_rho)});
    b.tables.push_back(std::move(t));
  }

  {
    ReportTable t;
    t.id = "published_severity_triples";
    t.title = "Severity triples with recomputed violation and rank correlation";
    t.columns = {"augmentation", "low", "mid", "high", "violation", "rho"};
    for (const auto& r : qwen_family_drops())
      t.rows.push_back({r.aug_id, fmt2(r.low), fmt2(r.mid), fmt2(r.high),
                        monotonicity_violation(r.low, r.mid, r.high) ? "yes" : "no",
                        fmt2(spearman_rho(r.low, r.mid, r.high))});
    b.tables.push_back(std::move(t));
  }

  for (const char* ds : datasets) {
    ReportTable t;
    t.id = std::string("published_categories_") + ds;
    t.title = std::string("Published top category drops (") + ds + ")";
    t.columns = {"category", "mean_drop"};
    for (const auto& r : category_drops(ds)) t.rows.push_back({r.category, fmt2(r.mean_drop)});
    b.tables.push_back(std::move(t));
  }

  {
    ReportTable t;
    t.id = "published_scaling";
    t.title = "Published scaling fits (Molmo2 mmbench recomputed by OLS)";
    t.columns = {"family", "slope_mmmu_pro", "r2_mmmu_pro", "n_mmmu_pro",
                 "slope_mmbench", "r2_mmbench", "n_mmbench", "recomputed"};
    for (const auto& r : scaling()) {
      std::string recomputed;
      if (std::string(r.family) == "Molmo2") {
        auto [slope, r2] = scaling_slope(molmo2_mmbench_points());
        recomputed = fmt2(slope) + " (" + fmt2(r2) + ")";
      }
      t.rows.push_back({r.family, fmt2(r.slope_mmmu_pro), fmt2(r.r2_mmmu_pro),
                        fmt_count(r.n_mmmu_pro), fmt2(r.slope_mmbench), fmt2(r.r2_mmbench),
                        fmt_count(r.n_mmbench), recomputed});
    }
    b.tables.push_back(std::move(t));
  }

  {
    ReportTable t;
    t.id = "published_tail_risk";
    t.title = "Published tail-risk share from spatial corruptions";
    t.columns = {"dataset", "spatial_share"};
    for (const auto& r : tail_risk()) t.rows.push_back({r.dataset, fmt1(r.spatial_share)});
    b.tables.push_back(std::move(t));
  }

  return b;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out += c;
  }
  return out;
}

// Full-string numeric parse (for SVG bar extraction).
bool parse_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

}  // namespace

void write_csv(const ReportBundle& b, const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& t : b.tables) {
    std::ofstream out(fs::path(dir) / (t.id + ".csv"), std::ios::binary);
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      out << (c ? "," : "") << csv_escape(t.columns[c]);
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c]);
      out << "\n";
    }
    if (!out) throw ValidationError("cannot write report CSV for " + t.id);
  }
}

void write_markdown(const ReportBundle& b, const std::string& dir) {
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / "report.md", std::ios::binary);
  out << "# Robustness report\n";
  for (const auto& t : b.tables) {
    out << "\n## " << t.title << "\n\n|";
    for (const auto& c : t.columns) out << " " << md_escape(c) << " |";
    out << "\n|";
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << " --- |";
    out << "\n";
    for (const auto& row : t.rows) {
      out << "|";
      for (const auto& cell : row) out << " " << md_escape(cell) << " |";
      out << "\n";
    }
  }
  if (!out) throw ValidationError("cannot write report markdown");
}

void write_svg(const ReportBundle& b, const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& t : b.tables) {
    if (t.rows.empty() || t.columns.size() < 2) continue;
    std::vector<std::pair<std::string, double>> bars;
    bool ok = true;
    for (const auto& row : t.rows) {
      double v = 0.0;
      if (!parse_number(row.back(), &v)) {
        ok = false;
        break;
      }
      std::string label;
      for (std::size_t c = 0; c + 1 < row.size(); ++c) {
        if (!label.empty()) label += " ";
        label += row[c];
      }
      bars.emplace_back(label, v);
    }
    if (!ok || bars.empty()) continue;
    double maxv = 0.0;
    for (const auto& [label, v] : bars) maxv = std::max(maxv, std::fabs(v));
    if (maxv == 0.0) maxv = 1.0;
    const int row_h = 22, label_w = 300, chart_w = 320, pad = 6;
    int height = static_cast<int>(bars.size()) * row_h + 2 * pad + 20;
    std::ofstream out(fs::path(dir) / (t.id + ".svg"), std::ios::binary);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (label_w + chart_w + 2 * pad)
        << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<text x=\"" << pad << "\" y=\"14\" font-weight=\"bold\">" << t.title
        << "</text>\n";
    for (std::size_t i = 0; i < bars.size(); ++i) {
      int y = 20 + pad + static_cast<int>(i) * row_h;
      double w = std::fabs(bars[i].second) / maxv * (chart_w - 60);
      char wb[32];
      std::snprintf(wb, sizeof(wb), "%.1f", w);
      out << "<text x=\"" << pad << "\" y=\"" << (y + 15) << "\">" << bars[i].first
          << "</text>\n";
      out << "<rect x=\"" << label_w << "\" y=\"" << (y + 4) << "\" width=\"" << wb
          << "\" height=\"14\" fill=\"" << (bars[i].second < 0 ? "#2a7" : "#47a")
          << "\"/>\n";
      out << "<text x=\"" << (label_w + 4) << "\" y=\"" << (y + 15)
          << "\" fill=\"#fff\">" << t.rows[i].back() << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw ValidationError("cannot write report SVG for " + t.id);
  }
}

}  // namespace robench
