#include "robench/store.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "robench/errors.hpp"

namespace robench {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fnv1a64_hex(const std::string& s) {
  std::uint64_t h = fnv1a64(s.data(), s.size());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string EvalConfigKey::str() const {
  switch (kind) {
    case Kind::Clean:
      return "clean";
    case Kind::NoImage:
      return "no_image";
    case Kind::Corrupted:
      return severity ? aug_id + ":" + severity_name(*severity) : aug_id;
  }
  return "clean";
}

std::optional<EvalConfigKey> EvalConfigKey::parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "clean") return clean();
  if (s == "no_image") return no_image();
  auto colon = s.find(':');
  if (colon == std::string::npos) return corrupted(s, std::nullopt);
  std::string aug = s.substr(0, colon);
  auto sev = severity_from_name(s.substr(colon + 1));
  if (aug.empty() || !sev) return std::nullopt;
  return corrupted(aug, sev);
}

namespace {

json record_to_json(const EvalRecord& r) {
  json j;
  j["sample_id"] = r.sample_id;
  j["config"] = r.key.str();
  j["raw_response"] = r.raw_response;
  if (r.extracted)
    j["extracted"] = std::string(1, *r.extracted);
  else
    j["extracted"] = nullptr;
  j["correct"] = r.correct;
  j["unparsable"] = r.unparsable;
  j["failed"] = r.failed;
  j["error"] = r.error;
  j["latency_seconds"] = r.latency_seconds;
  j["timestamp"] = r.timestamp;
  return j;
}

EvalRecord record_from_json(const json& j, int line) {
  EvalRecord r;
  try {
    r.sample_id = j.at("sample_id").get<std::string>();
    auto key = EvalConfigKey::parse(j.at("config").get<std::string>());
    if (!key) throw ParseError(line, "bad config key");
    r.key = *key;
    r.raw_response = j.at("raw_response").get<std::string>();
    if (!j.at("extracted").is_null()) {
      auto s = j.at("extracted").get<std::string>();
      if (s.size() != 1) throw ParseError(line, "bad extracted letter");
      r.extracted = s[0];
    }
    r.correct = j.at("correct").get<bool>();
    r.unparsable = j.at("unparsable").get<bool>();
    r.failed = j.value("failed", false);
    r.error = j.value("error", std::string());
    r.latency_seconds = j.at("latency_seconds").get<double>();
    r.timestamp = j.at("timestamp").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(line, e.what());
  }
  return r;
}

}  // namespace

ResultStore ResultStore::open(const std::string& dir, const std::string& config_hash,
                              const std::string& model_name,
                              const std::string& dataset_name) {
  ResultStore s;
  s.dir_ = dir;
  s.config_hash_ = config_hash;
  s.model_name_ = model_name;
  s.dataset_name_ = dataset_name;
  fs::create_directories(dir);
  fs::path meta_path = fs::path(dir) / "meta.json";
  if (fs::exists(meta_path)) {
    std::ifstream in(meta_path);
    json meta = json::parse(in, nullptr, true);
    auto stored = meta.at("config_hash").get<std::string>();
    if (stored != config_hash)
      throw ConfigMismatch("store at " + dir + " was created with config hash " + stored +
                           ", current run has " + config_hash);
    s.model_name_ = meta.at("model").get<std::string>();
    s.dataset_name_ = meta.at("dataset").get<std::string>();
    s.load_records();
  } else {
    json meta;
    meta["config_hash"] = config_hash;
    meta["model"] = model_name;
    meta["dataset"] = dataset_name;
    meta["created"] = iso8601_utc_now();
    std::ofstream out(meta_path);
    out << meta.dump(2) << "\n";
    if (!out) throw ValidationError("cannot write " + meta_path.string());
  }
  return s;
}

ResultStore ResultStore::load(const std::string& dir) {
  fs::path meta_path = fs::path(dir) / "meta.json";
  if (!fs::exists(meta_path))
    throw ValidationError("no result store at " + dir + " (missing meta.json)");
  ResultStore s;
  s.dir_ = dir;
  std::ifstream in(meta_path);
  json meta = json::parse(in, nullptr, true);
  s.config_hash_ = meta.at("config_hash").get<std::string>();
  s.model_name_ = meta.at("model").get<std::string>();
  s.dataset_name_ = meta.at("dataset").get<std::string>();
  s.load_records();
  return s;
}

void ResultStore::load_records() {
  fs::path rec_path = fs::path(dir_) / "records.jsonl";
  if (!fs::exists(rec_path)) return;
  std::ifstream in(rec_path);
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.emplace_back(lineno, line);
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    json j = json::parse(lines[i].second, nullptr, false);
    if (j.is_discarded()) {
      // A kill mid-append can leave a truncated final line; drop it. Anywhere
      // else it is corruption.
      if (i + 1 == lines.size()) break;
      throw ParseError(lines[i].first, "invalid JSON record");
    }
    EvalRecord r = record_from_json(j, lines[i].first);
    auto k = std::make_pair(r.sample_id, r.key.str());
    if (latest_.find(k) == latest_.end()) order_.push_back(k);
    latest_[k] = std::move(r);
  }
}

void ResultStore::append(const EvalRecord& r) {
  std::lock_guard<std::mutex> lock(*mu_);
  fs::path rec_path = fs::path(dir_) / "records.jsonl";
  std::ofstream out(rec_path, std::ios::app);
  out << record_to_json(r).dump() << "\n";
  out.flush();
  if (!out) throw ValidationError("cannot append to " + rec_path.string());
  auto k = std::make_pair(r.sample_id, r.key.str());
  if (latest_.find(k) == latest_.end()) order_.push_back(k);
  latest_[k] = r;
}

bool ResultStore::done(const std::string& sample_id, const EvalConfigKey& key) const {
  std::lock_guard<std::mutex> lock(*mu_);
  auto it = latest_.find(std::make_pair(sample_id, key.str()));
  return it != latest_.end() && !it->second.failed;
}

std::vector<EvalRecord> ResultStore::latest_records() const {
  std::lock_guard<std::mutex> lock(*mu_);
  std::vector<EvalRecord> out;
  out.reserve(order_.size());
  for (const auto& k : order_) out.push_back(latest_.at(k));
  return out;
}

std::size_t ResultStore::unresolved_failures() const {
  std::lock_guard<std::mutex> lock(*mu_);
  std::size_t n = 0;
  for (const auto& [k, r] : latest_)
    if (r.failed) ++n;
  return n;
}

}  // namespace robench
