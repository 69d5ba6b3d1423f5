#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "robench/corruptions.hpp"

namespace robench {

// 64-bit FNV-1a; the store's config fingerprint.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 14695981039346656037ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& s);

std::string iso8601_utc_now();

// One evaluation setting: clean baseline, no-image baseline, or a corrupted
// configuration.
struct EvalConfigKey {
  enum class Kind { Clean, NoImage, Corrupted };
  Kind kind = Kind::Clean;
  std::string aug_id;                // Corrupted only
  std::optional<Severity> severity;  // Corrupted and severity-based only

  static EvalConfigKey clean() { return {Kind::Clean, "", std::nullopt}; }
  static EvalConfigKey no_image() { return {Kind::NoImage, "", std::nullopt}; }
  static EvalConfigKey corrupted(std::string aug, std::optional<Severity> sev = std::nullopt) {
    return {Kind::Corrupted, std::move(aug), sev};
  }

  // "clean", "no_image", "<aug>" or "<aug>:<severity>"
  std::string str() const;
  static std::optional<EvalConfigKey> parse(const std::string& s);

  bool operator==(const EvalConfigKey&) const = default;
};

struct EvalRecord {
  std::string sample_id;
  EvalConfigKey key;
  std::string raw_response;
  std::optional<char> extracted;
  bool correct = false;
  bool unparsable = false;
  bool failed = false;  // query failed after retries; retried on resume
  std::string error;
  double latency_seconds = 0.0;
  std::string timestamp;  // ISO-8601 UTC
};

// Append-only JSONL store for one (model, dataset) pair:
//   {dir}/records.jsonl  one record per line
//   {dir}/meta.json      config hash + names
// Appends are serialized and flushed per record, so an interrupted run loses
// at most a partial trailing line (which the loader discards). The logical
// view keeps the latest record per (sample, key); failed records are
// superseded by their retry.
class ResultStore {
 public:
  // Creates the directory and meta.json on first open; on reopen validates
  // that the stored config hash matches (ConfigMismatch otherwise).
  static ResultStore open(const std::string& dir, const std::string& config_hash,
                          const std::string& model_name, const std::string& dataset_name);

  // Loads an existing store without a hash check (reporting path).
  static ResultStore load(const std::string& dir);

  void append(const EvalRecord& r);  // thread-safe

  // (sample_id, key) resolved by a non-failed record.
  bool done(const std::string& sample_id, const EvalConfigKey& key) const;

  // Latest record per (sample_id, key), insertion-ordered by first sight.
  std::vector<EvalRecord> latest_records() const;

  // Count of keys whose latest record is a failure.
  std::size_t unresolved_failures() const;

  const std::string& dir() const { return dir_; }
  const std::string& config_hash() const { return config_hash_; }
  const std::string& model_name() const { return model_name_; }
  const std::string& dataset_name() const { return dataset_name_; }

 private:
  ResultStore() = default;
  void load_records();

  std::string dir_;
  std::string config_hash_;
  std::string model_name_;
  std::string dataset_name_;
  std::map<std::pair<std::string, std::string>, EvalRecord> latest_;
  std::vector<std::pair<std::string, std::string>> order_;
  // unique_ptr keeps the store movable (returned by value from open/load)
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

}  // namespace robench
