#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "robench/metrics.hpp"

namespace robench {

// One rendered table; cells are preformatted strings so CSV and Markdown
// emissions agree numerically by construction.
struct ReportTable {
  std::string id;     // filename stem
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ReportBundle {
  std::vector<ReportTable> tables;
};

// Everything the report needs from one evaluated model. Either records (a
// store's logical view) or a precomputed accuracy table; record-level tables
// (flips, categories) are skipped for table-only inputs.
struct StoreInput {
  std::string model;
  std::vector<EvalRecord> records;             // latest record per (sample, key)
  std::map<std::string, std::string> strata;   // sample_id -> stratum
  std::optional<AccuracyTable> table;          // used when records are empty
};

// Per-model headline metrics (the main summary row).
struct ModelSummary {
  std::string model;
  double baseline = 0.0;
  double worst_case_drop = 0.0;
  std::string worst_case_key;
  double severe_fail = 0.0;
  bool has_low = false;  // filtered runs may lack low-severity entries
  double worst_at_low_drop = 0.0;
  std::string worst_at_low_key;
  double benign_low = 0.0;
  double vg = 0.0;
  std::optional<double> mrce;  // undefined when VG <= 0
  bool partial = false;
};

ModelSummary summarize_model(const std::string& model, const AccuracyTable& t);

// Tables computed from evaluation stores. reference_model: "" = automatic
// (lowest baseline); the mCE table needs >= 2 models and is skipped
// otherwise. Throws PartialResults via accuracy_table unless allow_partial.
ReportBundle build_store_report(const std::vector<StoreInput>& stores,
                                bool allow_partial = false,
                                const std::string& reference_model = "");

// Tables rebuilt from the bundled published reference values, with every
// derivable column recomputed through the metrics ops.
ReportBundle build_published_report();

// Writers. CSV: one file per table ({dir}/{id}.csv). Markdown: single
// {dir}/report.md. SVG: bar charts for tables whose last column is numeric
// ({dir}/{id}.svg). Output is byte-stable for identical bundles.
void write_csv(const ReportBundle& b, const std::string& dir);
void write_markdown(const ReportBundle& b, const std::string& dir);
void write_svg(const ReportBundle& b, const std::string& dir);

}  // namespace robench
