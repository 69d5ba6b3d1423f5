// Command-line front end. Subcommands: corrupt, catalog, run, report,
// visualize, sample. Exit codes: 0 success, 1 usage error, 2 runtime error,
// 3 partial results refused.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "robench/corruptions.hpp"
#include "robench/dataset.hpp"
#include "robench/errors.hpp"
#include "robench/image_io.hpp"
#include "robench/metrics.hpp"
#include "robench/orchestrator.hpp"
#include "robench/report.hpp"
#include "robench/store.hpp"

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using robench::EvalConfigKey;
using robench::Severity;
using json = nlohmann::json;

namespace {

// %g-style compact number for schedule cells (200 not 200.0, 0.1 not 0.10).
std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// ---- catalog ----

robench::ReportTable catalog_table() {
  robench::ReportTable t;
  t.id = "catalog";
  t.title = "Augmentation catalog";
  t.columns = {"id", "category", "parameter", "low", "mid", "high"};
  for (const auto& spec : robench::registry()) {
    if (spec.severity_based()) {
      t.rows.push_back({spec.id, robench::category_name(spec.category), spec.param_name,
                        fmt_param(spec.param(Severity::Low)), fmt_param(spec.param(Severity::Mid)),
                        fmt_param(spec.param(Severity::High))});
    } else {
      t.rows.push_back({spec.id, robench::category_name(spec.category), "", "", "", ""});
    }
  }
  return t;
}

void print_table(const robench::ReportTable& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c].size() > width[c]) width[c] = row[c].size();
  auto print_row = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      std::printf("%-*s%s", static_cast<int>(width[c]), cells[c].c_str(),
                  c + 1 == cells.size() ? "\n" : "  ");
  };
  print_row(t.columns);
  for (const auto& row : t.rows) print_row(row);
}

void print_csv(const robench::ReportTable& t) {
  auto esc = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += "\"\"";
      else out += c;
    }
    return out + "\"";
  };
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c)
      std::printf("%s%s", esc(cells[c]).c_str(), c + 1 == cells.size() ? "\n" : ",");
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
}

void print_md(const robench::ReportTable& t) {
  auto line = [&](const std::vector<std::string>& cells) {
    std::printf("|");
    for (const auto& c : cells) std::printf(" %s |", c.c_str());
    std::printf("\n");
  };
  line(t.columns);
  std::printf("|");
  for (std::size_t c = 0; c < t.columns.size(); ++c) std::printf(" --- |");
  std::printf("\n");
  for (const auto& row : t.rows) line(row);
}

int cmd_catalog(const std::string& format) {
  robench::ReportTable t = catalog_table();
  if (format == "csv") print_csv(t);
  else if (format == "md") print_md(t);
  else print_table(t);
  return 0;
}

// ---- corrupt ----

int cmd_corrupt(const std::string& in_path, const std::string& aug,
                const std::string& severity, std::uint64_t sample_index,
                std::uint32_t seed, const std::string& out_path) {
  robench::CorruptionConfig cfg;
  cfg.aug_id = aug;
  cfg.sample_index = sample_index;
  if (!severity.empty()) {
    auto sev = robench::severity_from_name(severity);
    if (!sev) throw robench::ValidationError("unknown severity '" + severity + "'");
    cfg.severity = *sev;
  }
  robench::SeedScheme seeds;
  seeds.augmentation_base_seed = seed;
  robench::Image img = robench::read_image(in_path);
  robench::Image out = robench::apply(img, cfg, seeds);
  robench::write_png(out, out_path);
  return 0;
}

// ---- visualize ----

int cmd_visualize(const std::string& in_path, const std::string& out_dir,
                  std::uint64_t sample_index, std::uint32_t seed) {
  robench::Image img = robench::read_image(in_path);
  robench::SeedScheme seeds;
  seeds.augmentation_base_seed = seed;
  fs::create_directories(out_dir);
  std::size_t n = 0;
  for (const auto& spec : robench::registry()) {
    robench::CorruptionConfig cfg;
    cfg.aug_id = spec.id;
    cfg.sample_index = sample_index;
    if (spec.severity_based()) {
      for (Severity sev : robench::kSeverities) {
        cfg.severity = sev;
        robench::Image out = robench::apply(img, cfg, seeds);
        robench::write_png(out, (fs::path(out_dir) /
                                 (spec.id + "_" + robench::severity_name(sev) + ".png"))
                                    .string());
        ++n;
      }
    } else {
      cfg.severity.reset();
      robench::Image out = robench::apply(img, cfg, seeds);
      robench::write_png(out, (fs::path(out_dir) / (spec.id + ".png")).string());
      ++n;
    }
  }
  std::printf("wrote %zu corrupted images to %s\n", n, out_dir.c_str());
  return 0;
}

// ---- sample ----

int cmd_sample(const std::string& manifest, double fraction, std::uint32_t seed) {
  robench::Dataset ds = robench::load_manifest(manifest);
  robench::Dataset picked = robench::stratified_sample(ds, fraction, seed);

  std::map<std::string, std::pair<std::size_t, std::size_t>> strata;  // total, picked
  for (const auto& s : ds.samples) strata[s.stratum].first++;
  for (const auto& s : picked.samples) strata[s.stratum].second++;
  std::fprintf(stderr, "%zu of %zu samples (fraction %g, seed %u)\n", picked.samples.size(),
               ds.samples.size(), fraction, seed);
  for (const auto& [name, counts] : strata)
    std::fprintf(stderr, "  %-24s %zu / %zu\n", name.c_str(), counts.second, counts.first);
  for (const auto& s : picked.samples) std::printf("%s\n", s.id.c_str());
  return 0;
}

// ---- run ----

robench::RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw robench::ValidationError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw robench::ValidationError(std::string("config: ") + e.what());
  }

  robench::RunConfig cfg;
  try {
    cfg.manifest_path = j.at("manifest").get<std::string>();
    const json& ep = j.at("endpoint");
    cfg.endpoint.base_url = ep.at("base_url").get<std::string>();
    cfg.endpoint.model_name = ep.at("model").get<std::string>();
    cfg.endpoint.auth_env = ep.value("auth_env", "");
    cfg.endpoint.timeout_seconds = ep.value("timeout_seconds", cfg.endpoint.timeout_seconds);
    cfg.endpoint.max_retries = ep.value("max_retries", cfg.endpoint.max_retries);
    cfg.endpoint.max_concurrent = ep.value("max_concurrent", cfg.endpoint.max_concurrent);
    cfg.endpoint.backoff_ms = ep.value("backoff_ms", cfg.endpoint.backoff_ms);

    cfg.sample_fraction = j.value("sample_fraction", cfg.sample_fraction);
    if (j.contains("seeds")) {
      const json& s = j["seeds"];
      cfg.seeds.sampling_seed = s.value("sampling", cfg.seeds.sampling_seed);
      cfg.seeds.augmentation_base_seed =
          s.value("augmentation_base", cfg.seeds.augmentation_base_seed);
      cfg.seeds.generation_seed = s.value("generation", cfg.seeds.generation_seed);
    }
    if (j.contains("mode")) {
      auto mode = robench::prompt_mode_from_name(j["mode"].get<std::string>());
      if (!mode)
        throw robench::ValidationError("mode must be 'direct' or 'cot', got " +
                                       j["mode"].dump());
      cfg.mode = *mode;
    }
    if (j.contains("generation")) {
      const json& g = j["generation"];
      if (g.value("preset", "") == "thinking")
        cfg.gen = robench::GenerationParams::thinking_preset();
      cfg.gen.max_new_tokens = g.value("max_new_tokens", cfg.gen.max_new_tokens);
      if (g.contains("deterministic")) cfg.gen.deterministic = g["deterministic"].get<bool>();
      if (g.contains("temperature")) cfg.gen.temperature = g["temperature"].get<double>();
      if (g.contains("top_p")) cfg.gen.top_p = g["top_p"].get<double>();
      if (g.contains("top_k")) cfg.gen.top_k = g["top_k"].get<int>();
    }
    if (j.contains("filter")) cfg.filter = j["filter"].get<std::vector<std::string>>();
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.cache_corrupted = j.value("cache_corrupted", cfg.cache_corrupted);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.verbose = j.value("verbose", cfg.verbose);
  } catch (const json::exception& e) {
    throw robench::ValidationError(std::string("config: ") + e.what());
  }
  return cfg;
}

int cmd_run(const std::string& config_path, const std::string& out_override,
            const std::vector<std::string>& filter_override) {
  robench::RunConfig cfg = load_run_config(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (!filter_override.empty()) cfg.filter = filter_override;

  robench::RunStats stats;
  robench::ResultStore store = robench::run(cfg, {}, &stats);
  std::printf("store: %s\n", store.dir().c_str());
  std::printf("planned %zu, skipped %zu (resume), completed %zu, failed %zu\n", stats.planned,
              stats.skipped, stats.completed, stats.failed);
  if (stats.failed > 0) {
    std::fprintf(stderr, "warning: %zu queries failed; re-run to retry them\n", stats.failed);
  }
  return 0;
}

// ---- report ----

robench::StoreInput load_table_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw robench::ValidationError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw robench::ValidationError(path + ": " + e.what());
  }
  robench::StoreInput si;
  robench::AccuracyTable t;
  try {
    si.model = j.value("model", fs::path(path).stem().string());
    t.acc_clean = j.at("acc_clean").get<double>();
    t.acc_noimage = j.at("acc_noimage").get<double>();
    for (const auto& [key, val] : j.at("acc").items()) {
      auto parsed = EvalConfigKey::parse(key);
      if (!parsed || parsed->kind != EvalConfigKey::Kind::Corrupted)
        throw robench::ValidationError(path + ": bad config key '" + key + "'");
      if (!robench::find_spec(parsed->aug_id))
        throw robench::ValidationError(path + ": unknown augmentation '" + parsed->aug_id + "'");
      t.acc[key] = val.get<double>();
    }
  } catch (const json::exception& e) {
    throw robench::ValidationError(path + ": " + e.what());
  }
  const std::size_t full = 42 * robench::kSeverities.size() + 7;
  t.partial = t.acc.size() != full;
  si.table = std::move(t);
  return si;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out_dir,
               bool allow_partial, const std::string& reference_model, bool paper_tables,
               const std::vector<std::string>& formats, const std::string& manifest) {
  std::map<std::string, std::string> strata;
  if (!manifest.empty()) {
    robench::Dataset ds = robench::load_manifest(manifest);
    for (const auto& s : ds.samples) strata[s.id] = s.stratum;
  }

  std::vector<robench::StoreInput> stores;
  for (const auto& input : inputs) {
    if (fs::is_directory(input)) {
      robench::ResultStore store = robench::ResultStore::load(input);
      robench::StoreInput si;
      si.model = store.model_name();
      si.records = store.latest_records();
      si.strata = strata;
      stores.push_back(std::move(si));
    } else {
      stores.push_back(load_table_json(input));
    }
  }

  robench::ReportBundle bundle;
  if (!stores.empty()) bundle = robench::build_store_report(stores, allow_partial, reference_model);
  if (paper_tables) {
    robench::ReportBundle pub = robench::build_published_report();
    for (auto& t : pub.tables) bundle.tables.push_back(std::move(t));
  }
  if (bundle.tables.empty())
    throw robench::ValidationError("nothing to report: pass store dirs or --paper-tables");

  fs::create_directories(out_dir);
  std::set<std::string> fmts(formats.begin(), formats.end());
  if (fmts.empty()) fmts = {"csv", "md"};
  if (fmts.count("csv")) robench::write_csv(bundle, out_dir);
  if (fmts.count("md")) robench::write_markdown(bundle, out_dir);
  if (fmts.count("svg")) robench::write_svg(bundle, out_dir);
  std::printf("wrote %zu tables to %s\n", bundle.tables.size(), out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic image-corruption sweep harness"};
  app.require_subcommand(1);

  // corrupt
  auto* corrupt = app.add_subcommand("corrupt", "apply one corruption to one image");
  std::string c_in, c_aug, c_out, c_sev;
  std::uint64_t c_index = 0;
  std::uint32_t c_seed = robench::SeedScheme{}.augmentation_base_seed;
  corrupt->add_option("input", c_in, "input image (png/jpeg)")->required();
  corrupt->add_option("aug", c_aug, "augmentation id (see catalog)")->required();
  corrupt->add_option("output", c_out, "output png path")->required();
  corrupt->add_option("--severity", c_sev, "low|mid|high (severity-based augs only)");
  corrupt->add_option("--sample-index", c_index, "per-sample seed index (default 0)");
  corrupt->add_option("--seed", c_seed, "augmentation base seed (default 1234)");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "list all augmentations and schedules");
  std::string k_format = "table";
  catalog->add_option("--format", k_format, "table|csv|md (default table)")
      ->check(CLI::IsMember({"table", "csv", "md"}));

  // run
  auto* run = app.add_subcommand("run", "execute or resume an evaluation sweep");
  std::string r_config, r_out;
  std::vector<std::string> r_filter;
  run->add_option("--config", r_config, "run config JSON (see README for schema)")->required();
  run->add_option("--out", r_out, "override the config's output directory");
  run->add_option("--filter", r_filter, "restrict to these augmentation ids");

  // report
  auto* report = app.add_subcommand("report", "compute metrics tables from stores");
  std::vector<std::string> p_inputs, p_formats;
  std::string p_out = "report", p_ref, p_manifest;
  bool p_allow_partial = false, p_paper = false;
  report->add_option("inputs", p_inputs, "store directories or accuracy-table JSON files");
  report->add_option("--out", p_out, "output directory (default report)");
  report->add_flag("--allow-partial", p_allow_partial,
                   "report despite unresolved failures or missing configs");
  report->add_option("--reference-model", p_ref, "reference model for the mCE table");
  report->add_flag("--paper-tables", p_paper,
                   "additionally emit the bundled published reference tables");
  report->add_option("--format", p_formats, "csv|md|svg (repeatable; default csv md)")
      ->check(CLI::IsMember({"csv", "md", "svg"}));
  report->add_option("--manifest", p_manifest,
                     "manifest supplying sample strata for the category table");

  // visualize
  auto* visualize = app.add_subcommand("visualize", "apply every configuration to one image");
  std::string v_in, v_out;
  std::uint64_t v_index = 0;
  std::uint32_t v_seed = robench::SeedScheme{}.augmentation_base_seed;
  visualize->add_option("input", v_in, "input image")->required();
  visualize->add_option("out_dir", v_out, "output directory")->required();
  visualize->add_option("--sample-index", v_index, "per-sample seed index (default 0)");
  visualize->add_option("--seed", v_seed, "augmentation base seed (default 1234)");

  // sample
  auto* sample = app.add_subcommand("sample", "stratified sampling dry-run");
  std::string s_manifest;
  double s_fraction = 0.2;
  std::uint32_t s_seed = robench::SeedScheme{}.sampling_seed;
  sample->add_option("manifest", s_manifest, "dataset manifest (jsonl)")->required();
  sample->add_option("--fraction", s_fraction, "sampling fraction in (0, 1] (default 0.2)");
  sample->add_option("--seed", s_seed, "sampling seed (default 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (corrupt->parsed()) return cmd_corrupt(c_in, c_aug, c_sev, c_index, c_seed, c_out);
    if (catalog->parsed()) return cmd_catalog(k_format);
    if (run->parsed()) return cmd_run(r_config, r_out, r_filter);
    if (report->parsed())
      return cmd_report(p_inputs, p_out, p_allow_partial, p_ref, p_paper, p_formats, p_manifest);
    if (visualize->parsed()) return cmd_visualize(v_in, v_out, v_index, v_seed);
    if (sample->parsed()) return cmd_sample(s_manifest, s_fraction, s_seed);
  } catch (const robench::PartialResults& e) {
    std::fprintf(stderr, "error: %s (pass --allow-partial to proceed)\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
