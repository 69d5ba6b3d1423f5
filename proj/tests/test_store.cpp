#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "robench/errors.hpp"
#include "robench/store.hpp"

using namespace robench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("robench_store_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

EvalRecord make_record(const std::string& sample, EvalConfigKey key, char letter, bool correct) {
  EvalRecord r;
  r.sample_id = sample;
  r.key = key;
  r.raw_response = std::string(1, letter);
  r.extracted = letter;
  r.correct = correct;
  r.unparsable = false;
  r.failed = false;
  r.latency_seconds = 0.25;
  r.timestamp = "2026-01-01T00:00:00Z";
  return r;
}

}  // namespace

TEST_CASE("config key string forms round-trip") {
  EvalConfigKey clean = EvalConfigKey::clean();
  EvalConfigKey noimg = EvalConfigKey::no_image();
  EvalConfigKey flip = EvalConfigKey::corrupted("flip_v");
  EvalConfigKey blur = EvalConfigKey::corrupted("glass_blur", Severity::Mid);

  CHECK(clean.str() == "clean");
  CHECK(noimg.str() == "no_image");
  CHECK(flip.str() == "flip_v");
  CHECK(blur.str() == "glass_blur:mid");

  for (const auto& k : {clean, noimg, flip, blur}) {
    auto back = EvalConfigKey::parse(k.str());
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }

  CHECK_FALSE(EvalConfigKey::parse("glass_blur:").has_value());
  CHECK_FALSE(EvalConfigKey::parse("glass_blur:extreme").has_value());
  CHECK_FALSE(EvalConfigKey::parse("").has_value());
  CHECK_FALSE(EvalConfigKey::parse(":low").has_value());
}

TEST_CASE("fnv1a64 stability") {
  // Frozen reference values for the 64-bit FNV-1a parameters.
  CHECK(fnv1a64("", 0) == 14695981039346656037ull);
  CHECK(fnv1a64("a", 1) == 12638187200555641996ull);
  CHECK(fnv1a64("hello", 5) == 11831194018420276491ull);
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
}

TEST_CASE("append then reload preserves records") {
  TempDir tmp;
  auto key = EvalConfigKey::corrupted("defocus_blur", Severity::Low);
  {
    ResultStore store = ResultStore::open(tmp.path.string(), "deadbeef01020304", "mock-model", "mock-ds");
    store.append(make_record("s1", EvalConfigKey::clean(), 'A', true));
    store.append(make_record("s1", key, 'B', false));
    store.append(make_record("s2", EvalConfigKey::clean(), 'C', true));
  }
  ResultStore store = ResultStore::load(tmp.path.string());
  CHECK(store.config_hash() == "deadbeef01020304");
  CHECK(store.model_name() == "mock-model");
  CHECK(store.dataset_name() == "mock-ds");
  auto latest = store.latest_records();
  REQUIRE(latest.size() == 3);
  CHECK(store.done("s1", EvalConfigKey::clean()));
  CHECK(store.done("s1", key));
  CHECK(store.done("s2", EvalConfigKey::clean()));
  CHECK_FALSE(store.done("s2", key));
  // Full field fidelity on one record.
  bool found = false;
  for (const auto& r : latest) {
    if (r.sample_id == "s1" && r.key == key) {
      found = true;
      CHECK(r.raw_response == "B");
      REQUIRE(r.extracted.has_value());
      CHECK(*r.extracted == 'B');
      CHECK_FALSE(r.correct);
      CHECK_FALSE(r.unparsable);
      CHECK_FALSE(r.failed);
      CHECK(r.latency_seconds == 0.25);
      CHECK(r.timestamp == "2026-01-01T00:00:00Z");
    }
  }
  CHECK(found);
}

TEST_CASE("latest record supersedes an earlier failure") {
  TempDir tmp;
  auto key = EvalConfigKey::corrupted("jpeg_compression", Severity::High);
  ResultStore store = ResultStore::open(tmp.path.string(), "cafe", "m", "d");

  EvalRecord fail = make_record("s1", key, 'A', false);
  fail.failed = true;
  fail.extracted.reset();
  fail.raw_response.clear();
  fail.error = "connection reset";
  store.append(fail);

  CHECK_FALSE(store.done("s1", key));
  CHECK(store.unresolved_failures() == 1);

  store.append(make_record("s1", key, 'D', true));
  CHECK(store.done("s1", key));
  CHECK(store.unresolved_failures() == 0);
  auto latest = store.latest_records();
  REQUIRE(latest.size() == 1);
  CHECK(latest[0].correct);

  // Reload sees the same logical view even though the file has two lines.
  ResultStore re = ResultStore::load(tmp.path.string());
  REQUIRE(re.latest_records().size() == 1);
  CHECK(re.latest_records()[0].correct);
  CHECK(re.done("s1", key));
}

TEST_CASE("open with a different config hash refuses") {
  TempDir tmp;
  { ResultStore::open(tmp.path.string(), "hash-one", "m", "d"); }
  CHECK_NOTHROW(ResultStore::open(tmp.path.string(), "hash-one", "m", "d"));
  CHECK_THROWS_AS(ResultStore::open(tmp.path.string(), "hash-two", "m", "d"), ConfigMismatch);
}

TEST_CASE("load without metadata refuses") {
  TempDir tmp;
  CHECK_THROWS_AS(ResultStore::load(tmp.path.string()), ValidationError);
}

TEST_CASE("truncated final line is tolerated; mid-file corruption is not") {
  TempDir tmp;
  {
    ResultStore store = ResultStore::open(tmp.path.string(), "h", "m", "d");
    store.append(make_record("s1", EvalConfigKey::clean(), 'A', true));
    store.append(make_record("s2", EvalConfigKey::clean(), 'B', true));
  }
  const fs::path jsonl = tmp.path / "records.jsonl";

  SUBCASE("kill mid-append leaves a partial last line") {
    std::ofstream out(jsonl, std::ios::app);
    out << "{\"sample_id\": \"s3\", \"config\": \"cle";  // no newline, cut short
    out.close();
    ResultStore store = ResultStore::load(tmp.path.string());
    CHECK(store.latest_records().size() == 2);
    CHECK_FALSE(store.done("s3", EvalConfigKey::clean()));
  }

  SUBCASE("garbage before valid lines fails loudly") {
    std::string body;
    {
      std::ifstream in(jsonl);
      std::string line;
      std::getline(in, line);
      body = "this is not json\n" + line + "\n";
    }
    std::ofstream(jsonl, std::ios::trunc) << body;
    CHECK_THROWS_AS(ResultStore::load(tmp.path.string()), ParseError);
  }
}

TEST_CASE("failure records keep their error text") {
  TempDir tmp;
  ResultStore store = ResultStore::open(tmp.path.string(), "h", "m", "d");
  EvalRecord fail = make_record("s9", EvalConfigKey::no_image(), 'A', false);
  fail.failed = true;
  fail.extracted.reset();
  fail.error = "HTTP 503";
  store.append(fail);

  ResultStore re = ResultStore::load(tmp.path.string());
  auto latest = re.latest_records();
  REQUIRE(latest.size() == 1);
  CHECK(latest[0].failed);
  CHECK(latest[0].error == "HTTP 503");
  CHECK_FALSE(latest[0].extracted.has_value());
}
