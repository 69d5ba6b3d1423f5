#include "robench/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "robench/errors.hpp"
#include "robench/image_io.hpp"

namespace robench {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string sanitize_path_component(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? std::string("_") : out;
}

std::string dataset_name_of(const RunConfig& cfg) {
  return fs::path(cfg.manifest_path).stem().string();
}

std::vector<std::string> normalized_filter(const RunConfig& cfg) {
  std::vector<std::string> f = cfg.filter;
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

}  // namespace

std::vector<EvalConfigKey> plan_sweep(const RunConfig& cfg) {
  std::set<std::string> wanted(cfg.filter.begin(), cfg.filter.end());
  for (const auto& id : wanted)
    if (!find_spec(id)) throw ValidationError("filter names unknown augmentation: " + id);
  std::vector<EvalConfigKey> plan;
  plan.push_back(EvalConfigKey::clean());
  plan.push_back(EvalConfigKey::no_image());
  for (const auto& spec : registry()) {
    if (!wanted.empty() && !wanted.count(spec.id)) continue;
    if (spec.severity_based()) {
      for (Severity sev : kSeverities) plan.push_back(EvalConfigKey::corrupted(spec.id, sev));
    } else {
      plan.push_back(EvalConfigKey::corrupted(spec.id, std::nullopt));
    }
  }
  return plan;
}

std::string config_hash(const RunConfig& cfg) {
  std::ifstream in(cfg.manifest_path, std::ios::binary);
  if (!in) throw ValidationError("cannot read manifest: " + cfg.manifest_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();

  json j;
  j["manifest_digest"] = fnv1a64_hex(bytes);
  j["sampling_seed"] = cfg.seeds.sampling_seed;
  j["augmentation_base_seed"] = cfg.seeds.augmentation_base_seed;
  j["generation_seed"] = cfg.seeds.generation_seed;
  j["fraction"] = cfg.sample_fraction;
  j["filter"] = normalized_filter(cfg);
  j["mode"] = prompt_mode_name(cfg.mode);
  json g;
  g["max_new_tokens"] = cfg.gen.max_new_tokens;
  g["deterministic"] = cfg.gen.deterministic;
  if (cfg.gen.temperature) g["temperature"] = *cfg.gen.temperature;
  if (cfg.gen.top_p) g["top_p"] = *cfg.gen.top_p;
  if (cfg.gen.top_k) g["top_k"] = *cfg.gen.top_k;
  j["gen"] = g;
  j["model"] = cfg.endpoint.model_name;
  return fnv1a64_hex(j.dump());
}

std::string store_dir(const RunConfig& cfg) {
  fs::path p = fs::path(cfg.out_dir) / sanitize_path_component(cfg.endpoint.model_name) /
               sanitize_path_component(dataset_name_of(cfg));
  return p.string();
}

namespace {

struct Task {
  std::size_t sample_index;
  EvalConfigKey key;
};

// Corrupted PNGs for one (sample, key): a single RNG stream seeded from the
// sample index drives every image of the sample, in order.
std::vector<std::vector<std::uint8_t>> corrupted_pngs(const Sample& s, const EvalConfigKey& key,
                                                      std::size_t sample_index,
                                                      const RunConfig& cfg) {
  std::vector<std::vector<std::uint8_t>> pngs;
  pngs.reserve(s.images.size());
  RngStream rng =
      make_rng(sample_seed(cfg.seeds.augmentation_base_seed, sample_index));
  for (std::size_t k = 0; k < s.images.size(); ++k) {
    Image im = read_image(s.images[k]);
    Image out = apply_with_stream(im, key.aug_id, key.severity, rng);
    pngs.push_back(encode_png(out));
  }
  if (cfg.cache_corrupted && !pngs.empty()) {
    fs::path dir = fs::path(cfg.out_dir) / "cache" / key.aug_id /
                   (key.severity ? severity_name(*key.severity) : "binary");
    fs::create_directories(dir);
    for (std::size_t k = 0; k < pngs.size(); ++k) {
      std::string name = sanitize_path_component(s.id);
      if (s.images.size() > 1) name += "_" + std::to_string(k);
      std::ofstream out(dir / (name + ".png"), std::ios::binary);
      out.write(reinterpret_cast<const char*>(pngs[k].data()),
                static_cast<std::streamsize>(pngs[k].size()));
    }
  }
  return pngs;
}

std::vector<std::vector<std::uint8_t>> clean_pngs(const Sample& s) {
  std::vector<std::vector<std::uint8_t>> pngs;
  pngs.reserve(s.images.size());
  for (const auto& path : s.images) pngs.push_back(encode_png(read_image(path)));
  return pngs;
}

}  // namespace

RunStats run_sweep(const RunConfig& cfg, ResultStore& store,
                   const std::function<bool()>& cancel) {
  Dataset full = load_manifest(cfg.manifest_path);
  Dataset sampled = stratified_sample(full, cfg.sample_fraction, cfg.seeds.sampling_seed);
  std::vector<EvalConfigKey> plan = plan_sweep(cfg);

  RunStats stats;
  stats.planned = sampled.samples.size() * plan.size();

  std::vector<Task> tasks;
  tasks.reserve(stats.planned);
  for (std::size_t i = 0; i < sampled.samples.size(); ++i)
    for (const auto& key : plan)
      if (!store.done(sampled.samples[i].id, key))
        tasks.push_back(Task{i, key});
  stats.skipped = stats.planned - tasks.size();

  ModelClient client(cfg.endpoint);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> completed{0};
  std::atomic<std::size_t> failed{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  std::atomic<bool> stop{false};

  auto worker = [&]() {
    while (!stop.load()) {
      if (cancel && cancel()) break;
      std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) break;
      const Task& task = tasks[t];
      const Sample& s = sampled.samples[task.sample_index];
      EvalRecord rec;
      rec.sample_id = s.id;
      rec.key = task.key;
      try {
        std::vector<std::vector<std::uint8_t>> pngs;
        if (task.key.kind == EvalConfigKey::Kind::Clean)
          pngs = clean_pngs(s);
        else if (task.key.kind == EvalConfigKey::Kind::Corrupted)
          pngs = corrupted_pngs(s, task.key, task.sample_index, cfg);
        json messages = build_prompt_with_images(s, cfg.mode, pngs);
        QueryResult qr = client.query(messages, cfg.gen, cfg.seeds.generation_seed);
        rec.raw_response = qr.raw_text;
        rec.extracted = extract_answer(qr.raw_text, cfg.mode, s.option_letters());
        rec.correct = rec.extracted && *rec.extracted == s.answer;
        rec.unparsable = !rec.extracted.has_value();
        rec.latency_seconds = qr.latency_seconds;
        rec.timestamp = iso8601_utc_now();
        store.append(rec);
        std::size_t done = completed.fetch_add(1) + 1;
        if (cfg.verbose && (done % 50 == 0 || done == tasks.size()))
          std::fprintf(stderr, "progress: %zu/%zu tasks\n", done, tasks.size());
      } catch (const Error& e) {
        rec.failed = true;
        rec.error = e.what();
        rec.unparsable = false;
        rec.timestamp = iso8601_utc_now();
        try {
          store.append(rec);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          stop.store(true);
          return;
        }
        failed.fetch_add(1);
        if (cfg.verbose)
          std::fprintf(stderr, "failure: %s %s: %s\n", s.id.c_str(),
                       task.key.str().c_str(), e.what());
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        stop.store(true);
        return;
      }
    }
  };

  int n = cfg.workers > 0 ? cfg.workers : cfg.endpoint.max_concurrent;
  n = std::max(1, n);
  n = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n),
                                             std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  stats.completed = completed.load();
  stats.failed = failed.load();
  return stats;
}

ResultStore run(const RunConfig& cfg, const std::function<bool()>& cancel, RunStats* stats) {
  ResultStore store = ResultStore::open(store_dir(cfg), config_hash(cfg),
                                        cfg.endpoint.model_name, dataset_name_of(cfg));
  RunStats st = run_sweep(cfg, store, cancel);
  if (stats) *stats = st;
  return store;
}

}  // namespace robench
