// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failures. Invoked as: robench_acceptance --cli <path-to-robench-binary>.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "robench/base64.hpp"
#include "robench/corruptions.hpp"
#include "robench/dataset.hpp"
#include "robench/determinism.hpp"
#include "robench/errors.hpp"
#include "robench/image_io.hpp"
#include "robench/metrics.hpp"
#include "robench/model_client.hpp"
#include "robench/orchestrator.hpp"
#include "robench/reference_tables.hpp"
#include "robench/store.hpp"

#include <json.hpp>

// httplib drags in <resolv.h>, whose `_res` macro corrupts Eigen's headers;
// keep it after every Eigen-reachable include.
#include <httplib.h>

namespace fs = std::filesystem;
using namespace robench;
using json = nlohmann::json;

namespace {

struct CheckFailure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure{what};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("robench_accept_" + tag + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// ---------- criterion 1: catalog fidelity ----------

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell.push_back(c);
      }
    }
    cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

void criterion_catalog(const std::string& cli) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string cmd = cli + " catalog --format csv";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  expect(pipe != nullptr, "could not launch the cli");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int rc = ::pclose(pipe);
  const double elapsed = seconds_since(t0);
  expect(rc == 0, "catalog exited nonzero");
  expect(elapsed < 1.0, "catalog took " + std::to_string(elapsed) + "s (limit 1s)");

  auto rows = parse_csv(out);
  expect(rows.size() == 50, "expected header + 49 rows, got " + std::to_string(rows.size()));
  const auto& reg = registry();
  expect(reg.size() == 49, "registry size");
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const auto& spec = reg[i];
    const auto& row = rows[i + 1];
    expect(row.size() == 6, "row width");
    expect(row[0] == spec.id, "row " + std::to_string(i) + " id: " + row[0]);
    expect(row[1] == category_name(spec.category), spec.id + " category");
    expect(row[2] == spec.param_name, spec.id + " parameter name");
    if (spec.severity_based()) {
      expect(row[3] == fmt_param(spec.param(Severity::Low)), spec.id + " low");
      expect(row[4] == fmt_param(spec.param(Severity::Mid)), spec.id + " mid");
      expect(row[5] == fmt_param(spec.param(Severity::High)), spec.id + " high");
    } else {
      expect(row[3].empty() && row[4].empty() && row[5].empty(),
             spec.id + " binary row must carry no schedule");
    }
  }
}

// ---------- criterion 2: determinism ----------

Image random_image(RngStream& rng, int w, int h) {
  Image img(w, h);
  for (auto& b : img.data) b = static_cast<std::uint8_t>(rng.next_below(256));
  return img;
}

std::vector<CorruptionConfig> all_configs(std::uint64_t sample_index) {
  std::vector<CorruptionConfig> cfgs;
  for (const auto& spec : registry()) {
    CorruptionConfig c;
    c.aug_id = spec.id;
    c.sample_index = sample_index;
    if (spec.severity_based()) {
      for (Severity sev : kSeverities) {
        c.severity = sev;
        cfgs.push_back(c);
      }
    } else {
      c.severity.reset();
      cfgs.push_back(c);
    }
  }
  return cfgs;
}

void criterion_determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  SeedScheme seeds;
  RngStream rng = make_rng(777u);
  std::vector<Image> images;
  for (int i = 0; i < 20; ++i)
    images.push_back(random_image(rng, 16 + static_cast<int>(rng.next_below(17)),
                                  16 + static_cast<int>(rng.next_below(17))));

  struct Task {
    std::size_t img;
    CorruptionConfig cfg;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (const auto& cfg : all_configs(i)) tasks.push_back({i, cfg});
  expect(tasks.size() == 20 * 133, "task count");

  auto run_pass = [&](int workers) {
    std::vector<std::vector<std::uint8_t>> out(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= tasks.size()) return;
        out[t] = encode_png(apply(images[tasks[t].img], tasks[t].cfg, seeds));
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
  };

  auto pass1 = run_pass(1);
  auto pass2 = run_pass(1);
  auto pass3 = run_pass(3);  // different worker count
  expect(pass1 == pass2, "two single-worker passes differ");
  expect(pass1 == pass3, "worker count changed the outputs");
  const double elapsed = seconds_since(t0);
  expect(elapsed < 300.0, "determinism sweep took " + std::to_string(elapsed) + "s");
}

// ---------- criterion 3: algebraic identities ----------

std::vector<EvalRecord> records_for(const EvalConfigKey& key, int n, int correct_n) {
  std::vector<EvalRecord> out;
  for (int i = 0; i < n; ++i) {
    EvalRecord r;
    r.sample_id = "s" + std::to_string(i);
    r.key = key;
    r.correct = i < correct_n;
    r.extracted = r.correct ? 'A' : 'B';
    r.raw_response = std::string(1, *r.extracted);
    out.push_back(r);
  }
  return out;
}

void criterion_identities() {
  RngStream rng = make_rng(31337u);
  for (int iter = 0; iter < 1000; ++iter) {
    const int n = 1 + static_cast<int>(rng.next_below(24));
    auto draw = [&] { return static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n) + 1)); };

    std::vector<EvalRecord> latest;
    auto add = [&](const EvalConfigKey& k, int correct) {
      auto recs = records_for(k, n, correct);
      latest.insert(latest.end(), recs.begin(), recs.end());
    };
    add(EvalConfigKey::clean(), draw());
    add(EvalConfigKey::no_image(), draw());
    const std::vector<EvalConfigKey> keys = {
        EvalConfigKey::corrupted("glass_blur", Severity::Low),
        EvalConfigKey::corrupted("glass_blur", Severity::Mid),
        EvalConfigKey::corrupted("glass_blur", Severity::High),
        EvalConfigKey::corrupted("invert"),
    };
    for (const auto& k : keys) add(k, draw());

    AccuracyTable t = accuracy_table(latest);
    DropTable d = drop_table(t);

    // flip-net identity: net == delta, exact
    std::vector<EvalRecord> clean_recs(latest.begin(), latest.begin() + n);
    for (const auto& k : keys) {
      std::vector<EvalRecord> sub;
      for (const auto& r : latest)
        if (r.key == k) sub.push_back(r);
      FlipStats fsv = flip_stats(clean_recs, sub);
      expect(fsv.net == accuracy(clean_recs) - accuracy(sub), "flip-net identity violated");
      expect(fsv.net == t.acc_clean - t.acc.at(k.str()), "flip-net vs table drop");
    }

    // tier partition totals
    std::size_t total = 0;
    for (Tier ti :
         {Tier::Positive, Tier::Benign, Tier::Mild, Tier::Moderate, Tier::Catastrophic})
      total += keys_in_tier(d, ti).size();
    expect(total == d.entries.size(), "tiers do not partition the drops");

    // mce(ref, ref) = 100 exact, over random positive error sums
    MceInputs mi;
    for (const auto& k : keys)
      mi.error_sums[k.aug_id] += 0.001 + rng.next_f64();
    expect(mce(mi, mi) == 100.0, "mce self-reference not exactly 100");

    // rce(VG, VG) = 100 exact for a random positive gain
    const double vg = 0.001 + 99.0 * rng.next_f64();
    expect(rce(vg, vg) == 100.0, "rce(VG, VG) not exactly 100");
  }
}

// ---------- criterion 4: published-table arithmetic ----------

void criterion_published_arithmetic() {
  // mean visual gain per dataset
  for (const auto& [ds, want] :
       std::vector<std::pair<std::string, double>>{{"mmbench", 46.7}, {"mmmu_pro", 11.9}}) {
    double sum = 0.0;
    const auto& rows = published::main_summary(ds);
    for (const auto& r : rows) sum += r.vg;
    const double mean = sum / static_cast<double>(rows.size());
    expect(std::fabs(mean - want) <= 0.05,
           ds + " mean VG " + std::to_string(mean) + " vs " + std::to_string(want));
  }

  // 13 of 133 severe renders as 9.8
  std::vector<double> drops(133, 0.0);
  for (int i = 0; i < 13; ++i) drops[static_cast<std::size_t>(i)] = 50.0;
  expect(fmt1(severe_failure_rate(drops, 80.0)) == "9.8", "13/133 severe rate rendering");

  // flip_v net = plus - minus at one decimal
  bool flip_checked = false;
  for (const auto& r : published::binary_flips()) {
    if (std::string(r.aug_id) == "flip_v") {
      expect(fmt1(r.net_mmbench) == "10.4", "published flip_v net");
      expect(fmt1(r.plus_mmbench - r.minus_mmbench) == "10.4", "recomputed flip_v net");
      expect(fmt1(r.plus_mmbench) == "12.4" && fmt1(r.minus_mmbench) == "2.0",
             "flip_v flip components");
      flip_checked = true;
    }
  }
  expect(flip_checked, "flip_v row present");

  // tier row sums: 378 for severity rows, 63 for the binary row
  for (const std::string ds : {"mmbench", "mmmu_pro"}) {
    for (const auto& r : published::tier_counts(ds)) {
      const long long sum =
          static_cast<long long>(r.benign) + r.mild + r.moderate + r.catastrophic;
      const long long want = std::string(r.severity) == "binary" ? 63 : 378;
      expect(sum == want, ds + " " + r.severity + " tier row sums to " + std::to_string(sum));
    }
  }

  // Molmo2 scaling fit recomputed by OLS
  auto [slope, r2] = scaling_slope(published::molmo2_mmbench_points());
  expect(round1(slope) == -1.0, "Molmo2 slope " + std::to_string(slope));
  expect(round1(r2) == 1.0, "Molmo2 R^2 " + std::to_string(r2));
}

// ---------- criterion 5: involutions & idempotence ----------

void criterion_involutions() {
  RngStream rng = make_rng(4242u);
  SeedScheme seeds;
  auto apply_id = [&](const Image& img, const std::string& aug) {
    CorruptionConfig cfg;
    cfg.aug_id = aug;
    cfg.sample_index = 0;
    return apply(img, cfg, seeds);
  };
  for (int i = 0; i < 50; ++i) {
    Image img = random_image(rng, 8 + static_cast<int>(rng.next_below(25)),
                             8 + static_cast<int>(rng.next_below(25)));
    expect(apply_id(apply_id(img, "flip_h"), "flip_h") == img, "flip_h^2 != id");
    expect(apply_id(apply_id(img, "flip_v"), "flip_v") == img, "flip_v^2 != id");
    expect(apply_id(apply_id(img, "invert"), "invert") == img, "invert^2 != id");
    Image gray = apply_id(img, "grayscale");
    expect(apply_id(gray, "grayscale") == gray, "grayscale not idempotent");
    Image ac = apply_id(img, "autocontrast");
    expect(apply_id(ac, "autocontrast") == ac, "autocontrast not idempotent");
    expect(apply_id(apply_id(apply_id(img, "channel_swap"), "channel_swap"), "channel_swap") ==
               img,
           "channel_swap^3 != id");
  }
}

// ---------- criterion 6: severity-mismatch vectors ----------

void criterion_severity_vectors() {
  expect(monotonicity_violation(1.0, 2.0, 3.0) == false, "monotone triple flagged");
  expect(spearman_rho(1.0, 2.0, 3.0) == 1.0, "monotone rho not exactly 1");
  expect(monotonicity_violation(3.0, 2.0, 1.0) == true, "reversed triple not flagged");
  expect(spearman_rho(3.0, 2.0, 1.0) == -1.0, "reversed rho not exactly -1");
  expect(monotonicity_violation(6.96, 5.59, 4.10) == true, "published triple not flagged");
  expect(spearman_rho(6.96, 5.59, 4.10) == -1.0, "published triple rho not exactly -1");
}

// ---------- criterion 7: end-to-end mock endpoint ----------

struct MockModel {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::map<std::string, char> answers;      // sample id -> ground truth
  std::map<std::string, std::string> clean_b64;  // sample id -> clean png base64

  void start() {
    server.Post("/chat/completions", [this](const httplib::Request& req,
                                            httplib::Response& res) {
      std::string reply = "E";  // deliberately unparsable fallback
      try {
        json body = json::parse(req.body);
        const json& content = body.at("messages").at(0).at("content");
        std::string text;
        std::vector<std::string> images;
        for (const auto& part : content) {
          if (part.at("type") == "text") text = part.at("text").get<std::string>();
          if (part.at("type") == "image_url") {
            std::string url = part.at("image_url").at("url").get<std::string>();
            const std::string prefix = "data:image/png;base64,";
            if (url.rfind(prefix, 0) == 0) images.push_back(url.substr(prefix.size()));
          }
        }
        // the question embeds its sample id as [sid:<id>]
        std::string id;
        if (auto pos = text.find("[sid:"); pos != std::string::npos) {
          auto end = text.find(']', pos);
          id = text.substr(pos + 5, end - pos - 5);
        }
        auto it = answers.find(id);
        if (it != answers.end()) {
          if (images.empty()) {
            reply = it->second;  // no-image baseline: ground truth
          } else if (images.size() == 1 && images[0] == clean_b64.at(id)) {
            reply = it->second;  // clean image: ground truth
          } else {
            reply = 'A';  // any corrupted input
          }
        }
      } catch (const std::exception&) {
        // fall through to the unparsable reply
      }
      json out{{"choices", {{{"message", {{"content", reply}}}}}},
               {"usage", {{"total_tokens", 1}}}};
      res.set_content(out.dump(), "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    expect(port > 0, "mock endpoint could not bind");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~MockModel() {
    server.stop();
    if (thread.joinable()) thread.join();
  }
};

std::vector<EvalRecord> sorted_logical(const ResultStore& store) {
  auto recs = store.latest_records();
  std::sort(recs.begin(), recs.end(), [](const EvalRecord& a, const EvalRecord& b) {
    return std::tie(a.sample_id, a.key.aug_id, a.key.severity, a.key.kind) <
           std::tie(b.sample_id, b.key.aug_id, b.key.severity, b.key.kind);
  });
  return recs;
}

void criterion_e2e_mock() {
  const auto t0 = std::chrono::steady_clock::now();
  TempDir tmp("e2e");

  // 10-sample manifest; 4 of 10 have ground truth A
  const std::string letters = "AAAABBCCDD";
  RngStream rng = make_rng(909u);
  std::vector<std::string> lines;
  MockModel mock;
  for (int i = 0; i < 10; ++i) {
    const std::string id = "s" + std::to_string(i);
    const std::string png_name = id + ".png";
    Image img = random_image(rng, 12, 10);
    write_png(img, (tmp.path / png_name).string());
    json sample{{"id", id},
                {"question", "[sid:" + id + "] which letter?"},
                {"options",
                 json::array({{{"letter", "A"}, {"text", "first"}},
                              {{"letter", "B"}, {"text", "second"}},
                              {{"letter", "C"}, {"text", "third"}},
                              {{"letter", "D"}, {"text", "fourth"}}})},
                {"answer", std::string(1, letters[static_cast<std::size_t>(i)])},
                {"stratum", i < 5 ? "left" : "right"},
                {"images", json::array({png_name})}};
    lines.push_back(sample.dump());
    mock.answers[id] = letters[static_cast<std::size_t>(i)];
    mock.clean_b64[id] =
        base64_encode(encode_png(read_image((tmp.path / png_name).string())));
  }
  {
    std::ofstream out(tmp.path / "mock_ds.jsonl");
    for (const auto& l : lines) out << l << "\n";
  }
  mock.start();

  RunConfig cfg;
  cfg.manifest_path = (tmp.path / "mock_ds.jsonl").string();
  cfg.sample_fraction = 1.0;
  cfg.endpoint.base_url = "http://127.0.0.1:" + std::to_string(mock.port);
  cfg.endpoint.model_name = "mock-model";
  cfg.endpoint.max_retries = 1;
  cfg.endpoint.timeout_seconds = 10;
  cfg.workers = 2;
  cfg.out_dir = (tmp.path / "uninterrupted").string();

  // Predict each corrupted config's accuracy from the deterministic pipeline:
  // the mock replies with ground truth when the image bytes equal the clean
  // encoding (some transforms, e.g. equalize on tiny images, are legitimate
  // no-ops) and with 'A' otherwise. Fraction 1.0 keeps manifest order, so
  // sample i corrupts under sample_index i.
  std::vector<Image> originals;
  for (int i = 0; i < 10; ++i)
    originals.push_back(read_image((tmp.path / ("s" + std::to_string(i) + ".png")).string()));
  std::map<std::string, double> want_acc;
  std::size_t keys_at_40 = 0;
  for (const auto& key : plan_sweep(cfg)) {
    if (key.kind != EvalConfigKey::Kind::Corrupted) continue;
    int correct = 0;
    for (int i = 0; i < 10; ++i) {
      CorruptionConfig cc;
      cc.aug_id = key.aug_id;
      cc.severity = key.severity;
      cc.sample_index = static_cast<std::uint64_t>(i);
      const std::string b64 =
          base64_encode(encode_png(apply(originals[static_cast<std::size_t>(i)], cc, cfg.seeds)));
      const std::string id = "s" + std::to_string(i);
      const char reply = b64 == mock.clean_b64.at(id) ? mock.answers.at(id) : 'A';
      if (reply == mock.answers.at(id)) ++correct;
    }
    const double acc = 100.0 * static_cast<double>(correct) / 10.0;
    want_acc[key.str()] = acc;
    if (acc == 40.0) ++keys_at_40;
  }
  expect(want_acc.size() == 133, "prediction covers 133 configs");
  expect(keys_at_40 >= 120, "only " + std::to_string(keys_at_40) +
                                " configs actually perturb the bytes; pipeline suspect");

  // uninterrupted reference run
  RunStats stats;
  ResultStore full = run(cfg, {}, &stats);
  expect(stats.planned == 1350, "planned 135 x 10 tasks");
  expect(stats.completed == 1350 && stats.failed == 0, "all tasks completed");

  auto latest = full.latest_records();
  expect(latest.size() == 1350, "store holds 1350 records");
  std::set<std::string> keys;
  for (const auto& r : latest) keys.insert(r.key.str());
  expect(keys.size() == 135, "all 135 configurations present");

  AccuracyTable t = accuracy_table(latest);
  expect(t.acc_clean == 100.0, "clean accuracy not 100");
  expect(t.acc_noimage == 100.0, "no-image accuracy not 100");
  expect(!t.partial, "table unexpectedly partial");
  for (const auto& [key, acc] : t.acc)
    expect(acc == want_acc.at(key),
           key + " accuracy " + std::to_string(acc) + " != predicted " +
               std::to_string(want_acc.at(key)));

  // interrupted run: cancel mid-sweep, simulate a kill mid-append, resume
  cfg.out_dir = (tmp.path / "interrupted").string();
  std::atomic<int> polls{0};
  RunStats s1;
  {
    ResultStore store =
        run(cfg, [&polls] { return ++polls > 300; }, &s1);
    expect(s1.completed < 1350, "cancel did not interrupt the run");
  }
  {
    // a kill mid-append leaves a truncated trailing line
    std::ofstream out(fs::path(store_dir(cfg)) / "records.jsonl", std::ios::app);
    out << "{\"sample_id\": \"s9\", \"config\": \"gla";
  }
  RunStats s2;
  ResultStore resumed = run(cfg, {}, &s2);
  expect(s2.skipped > 0, "resume did not skip completed work");
  expect(s2.skipped + s2.completed == 1350, "resume did not finish the sweep");

  auto a = sorted_logical(full);
  auto b = sorted_logical(resumed);
  expect(a.size() == b.size(), "resumed store size differs");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const EvalRecord& x = a[i];
    const EvalRecord& y = b[i];
    expect(x.sample_id == y.sample_id && x.key == y.key && x.raw_response == y.raw_response &&
               x.extracted == y.extracted && x.correct == y.correct &&
               x.unparsable == y.unparsable && x.failed == y.failed && x.error == y.error,
           "record mismatch at " + x.sample_id + "/" + x.key.str());
  }

  const double elapsed = seconds_since(t0);
  expect(elapsed < 120.0, "e2e took " + std::to_string(elapsed) + "s (limit 120)");
}

// ---------- criterion 8: stratified sampling ----------

void criterion_sampling() {
  TempDir tmp("sampling");
  std::vector<std::size_t> sizes = {55, 65, 75, 85, 95, 105, 115, 125, 135, 145};  // sum 1000
  std::vector<std::string> ids;
  {
    std::ofstream out(tmp.path / "big.jsonl");
    int n = 0;
    for (std::size_t s = 0; s < sizes.size(); ++s) {
      for (std::size_t k = 0; k < sizes[s]; ++k) {
        const std::string id = "q" + std::to_string(n++);
        ids.push_back(id);
        json sample{{"id", id},
                    {"question", "?"},
                    {"options",
                     json::array({{{"letter", "A"}, {"text", "x"}},
                                  {{"letter", "B"}, {"text", "y"}}})},
                    {"answer", "A"},
                    {"stratum", "cat" + std::to_string(s)},
                    {"images", json::array()}};
        out << sample.dump() << "\n";
      }
    }
  }
  Dataset ds = load_manifest((tmp.path / "big.jsonl").string());
  expect(ds.samples.size() == 1000, "manifest rows");

  Dataset picked = stratified_sample(ds, 0.2, 42u);
  std::map<std::string, std::size_t> counts;
  for (const auto& s : picked.samples) counts[s.stratum]++;
  std::size_t want_total = 0;
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    const auto want = static_cast<std::size_t>(
        std::ceil(static_cast<double>(sizes[s]) * 0.2));
    expect(counts["cat" + std::to_string(s)] == want,
           "stratum " + std::to_string(s) + " selected " +
               std::to_string(counts["cat" + std::to_string(s)]) + " want " +
               std::to_string(want));
    want_total += want;
  }
  expect(picked.samples.size() == want_total, "total selected");

  // deterministic under the same seed
  Dataset again = stratified_sample(ds, 0.2, 42u);
  expect(again.samples.size() == picked.samples.size(), "re-draw size");
  for (std::size_t i = 0; i < picked.samples.size(); ++i)
    expect(again.samples[i].id == picked.samples[i].id, "re-draw differs");

  // order-stable: selected ids appear in manifest order
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < ids.size(); ++i) position[ids[i]] = i;
  for (std::size_t i = 1; i < picked.samples.size(); ++i)
    expect(position[picked.samples[i - 1].id] < position[picked.samples[i].id],
           "selection not in manifest order");
}

// ---------- criterion 9: extraction corpus ----------

struct Fixture {
  const char* text;
  PromptMode mode;
  std::optional<char> expected;
};

void criterion_extraction() {
  const std::vector<char> valid = {'A', 'B', 'C', 'D'};
  const Fixture corpus[] = {
      {"B", PromptMode::Direct, 'B'},
      {"A", PromptMode::Direct, 'A'},
      {"d", PromptMode::Direct, 'D'},
      {" C ", PromptMode::Direct, 'C'},
      {"B.", PromptMode::Direct, 'B'},
      {"(A)", PromptMode::Direct, 'A'},
      {"[D]", PromptMode::Direct, 'D'},
      {"C)", PromptMode::Direct, 'C'},
      {"*B*", PromptMode::Direct, 'B'},
      {"\"A\"", PromptMode::Direct, 'A'},
      {"B\n", PromptMode::Direct, 'B'},
      {"\nC", PromptMode::Direct, 'C'},
      {"A:", PromptMode::Direct, 'A'},
      {"Answer: B", PromptMode::Direct, 'B'},
      {"The answer is (D).", PromptMode::Direct, 'D'},
      {"The correct option is C.", PromptMode::Direct, 'C'},
      {"It's B", PromptMode::Direct, 'B'},
      {"Option A is correct", PromptMode::Direct, 'A'},
      {"I think the answer is b.", PromptMode::Direct, 'B'},
      {"D, because the shape is a hexagon", PromptMode::Direct, 'D'},
      {"A or B", PromptMode::Direct, 'A'},
      {"Between C and D, choose C", PromptMode::Direct, 'C'},
      {"Banana", PromptMode::Direct, std::nullopt},
      {"cab", PromptMode::Direct, std::nullopt},
      {"ABCD", PromptMode::Direct, std::nullopt},
      {"42", PromptMode::Direct, std::nullopt},
      {"", PromptMode::Direct, std::nullopt},
      {"I cannot tell", PromptMode::Direct, std::nullopt},
      {"The image is unclear.", PromptMode::Direct, std::nullopt},
      {"E", PromptMode::Direct, std::nullopt},
      {"The answer is E", PromptMode::Direct, std::nullopt},
      {"Answer: C", PromptMode::CoT, 'C'},
      {"Let me think.\nThe sides rule out A.\nAnswer: B", PromptMode::CoT, 'B'},
      {"Answer: A\nWait, reconsidering.\nAnswer: B", PromptMode::CoT, 'B'},
      {"answer: d", PromptMode::CoT, 'D'},
      {"ANSWER:   C", PromptMode::CoT, 'C'},
      {"The answer: B", PromptMode::CoT, 'B'},
      {"Reasoning...\nAnswer:\nC", PromptMode::CoT, 'C'},
      {"Answer: (B)", PromptMode::CoT, 'B'},
      {"Answer: B.", PromptMode::CoT, 'B'},
      {"Step 1: look at sides. Step 2: count. Answer: D", PromptMode::CoT, 'D'},
      {"B", PromptMode::CoT, 'B'},
      {"The answer is C, final.", PromptMode::CoT, 'C'},
      {"Answer: maybe\nSo I pick C", PromptMode::CoT, 'C'},
      {"Answer: 7", PromptMode::CoT, std::nullopt},
      {"No answer applies", PromptMode::CoT, std::nullopt},
      {"Answer: E", PromptMode::CoT, std::nullopt},
      {"I refuse to answer.", PromptMode::CoT, std::nullopt},
      {"Answer: B is wrong, Answer: C", PromptMode::CoT, 'C'},
      {"Final answer: A", PromptMode::CoT, 'A'},
  };
  std::size_t n = 0;
  std::size_t agreed = 0;
  for (const Fixture& f : corpus) {
    ++n;
    if (extract_answer(f.text, f.mode, valid) == f.expected) ++agreed;
  }
  expect(n == 50, "corpus size " + std::to_string(n));
  expect(agreed == n, "agreement " + std::to_string(agreed) + "/" + std::to_string(n));
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--cli") == 0) cli = argv[i + 1];
  }
  if (cli.empty()) {
    std::fprintf(stderr, "usage: robench_acceptance --cli <path-to-robench>\n");
    return 64;
  }

  struct Criterion {
    const char* name;
    std::function<void()> fn;
  };
  const std::vector<Criterion> criteria = {
      {"catalog fidelity (49 schedules, <1s)", [&] { criterion_catalog(cli); }},
      {"determinism (20 images x 133 configs, worker-count invariant)", criterion_determinism},
      {"algebraic identities (1000 randomized stores)", criterion_identities},
      {"published-table derived arithmetic", criterion_published_arithmetic},
      {"involutions and idempotence (50 images)", criterion_involutions},
      {"severity-mismatch unit vectors", criterion_severity_vectors},
      {"end-to-end mock sweep with kill/resume", criterion_e2e_mock},
      {"stratified sampling ceil rule (1000 rows, 10 strata)", criterion_sampling},
      {"extraction corpus (50 fixtures)", criterion_extraction},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].fn();
      std::printf("PASS  %zu  %s  (%.2fs)\n", i + 1, criteria[i].name, seconds_since(t0));
    } catch (const CheckFailure& f) {
      std::printf("FAIL  %zu  %s: %s\n", i + 1, criteria[i].name, f.what.c_str());
      ++failures;
    } catch (const std::exception& e) {
      std::printf("FAIL  %zu  %s: unexpected error: %s\n", i + 1, criteria[i].name, e.what());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures;
}
