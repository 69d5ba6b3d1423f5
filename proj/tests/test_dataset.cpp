#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "robench/dataset.hpp"
#include "robench/errors.hpp"
#include "robench/image_io.hpp"

using namespace robench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("robench_ds_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string sample_line(const std::string& id, const std::string& stratum,
                        const std::string& answer = "A",
                        const std::string& images = "[]") {
  return "{\"id\":\"" + id + "\",\"images\":" + images +
         ",\"question\":\"What is shown?\",\"options\":[{\"letter\":\"A\",\"text\":\"a\"},"
         "{\"letter\":\"B\",\"text\":\"b\"},{\"letter\":\"C\",\"text\":\"c\"},"
         "{\"letter\":\"D\",\"text\":\"d\"}],\"answer\":\"" +
         answer + "\",\"stratum\":\"" + stratum + "\"}";
}

fs::path write_manifest(const TempDir& dir, const std::string& name,
                        const std::vector<std::string>& lines) {
  fs::path p = dir.path / name;
  std::ofstream out(p);
  for (const auto& l : lines) out << l << "\n";
  return p;
}

}  // namespace

TEST_CASE("manifest round trip") {
  TempDir dir;
  auto p = write_manifest(dir, "toy.jsonl",
                          {sample_line("q1", "geometry", "B"), "",
                           sample_line("q2", "physics", "A"), "   ",
                           sample_line("q3", "geometry", "D")});
  Dataset d = load_manifest(p.string());
  CHECK(d.name == "toy");
  REQUIRE(d.samples.size() == 3);
  CHECK(d.samples[0].id == "q1");
  CHECK(d.samples[0].answer == 'B');
  CHECK(d.samples[0].stratum == "geometry");
  CHECK(d.samples[0].question == "What is shown?");
  REQUIRE(d.samples[0].options.size() == 4);
  CHECK(d.samples[0].options[1].first == 'B');
  CHECK(d.samples[0].options[1].second == "b");
  CHECK(d.samples[0].option_letters() == std::vector<char>{'A', 'B', 'C', 'D'});
  CHECK(d.samples[2].id == "q3");
}

TEST_CASE("manifest image paths resolve against the manifest directory") {
  TempDir dir;
  Image img(4, 4);
  write_png(img, (dir.path / "pic.png").string());
  auto p = write_manifest(dir, "m.jsonl", {sample_line("q1", "s", "A", "[\"pic.png\"]")});
  Dataset d = load_manifest(p.string());
  REQUIRE(d.samples[0].images.size() == 1);
  CHECK(fs::path(d.samples[0].images[0]).is_absolute());
  CHECK(fs::equivalent(d.samples[0].images[0], dir.path / "pic.png"));

  auto missing = write_manifest(dir, "m2.jsonl",
                                {sample_line("q1", "s", "A", "[\"nope.png\"]")});
  CHECK_THROWS_AS(load_manifest(missing.string()), ValidationError);
}

TEST_CASE("manifest validation errors") {
  TempDir dir;

  SUBCASE("bad json reports the line number") {
    auto p = write_manifest(dir, "m.jsonl", {sample_line("q1", "s"), "{not json"});
    try {
      load_manifest(p.string());
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }
  SUBCASE("answer outside the option letters") {
    auto p = write_manifest(dir, "m.jsonl", {sample_line("q1", "s", "Z")});
    CHECK_THROWS_AS(load_manifest(p.string()), ValidationError);
  }
  SUBCASE("duplicate id") {
    auto p = write_manifest(dir, "m.jsonl",
                            {sample_line("q1", "s"), sample_line("q1", "t")});
    CHECK_THROWS_AS(load_manifest(p.string()), ValidationError);
  }
  SUBCASE("missing field") {
    auto p = write_manifest(dir, "m.jsonl",
                            {"{\"id\":\"q1\",\"images\":[],\"question\":\"?\","
                             "\"options\":[{\"letter\":\"A\",\"text\":\"a\"},"
                             "{\"letter\":\"B\",\"text\":\"b\"}],\"answer\":\"A\"}"});
    CHECK_THROWS_AS(load_manifest(p.string()), ValidationError);
  }
  SUBCASE("single option rejected") {
    auto p = write_manifest(
        dir, "m.jsonl",
        {"{\"id\":\"q1\",\"images\":[],\"question\":\"?\",\"options\":"
         "[{\"letter\":\"A\",\"text\":\"a\"}],\"answer\":\"A\",\"stratum\":\"s\"}"});
    CHECK_THROWS_AS(load_manifest(p.string()), ValidationError);
  }
  SUBCASE("duplicate option letters rejected") {
    auto p = write_manifest(
        dir, "m.jsonl",
        {"{\"id\":\"q1\",\"images\":[],\"question\":\"?\",\"options\":"
         "[{\"letter\":\"A\",\"text\":\"a\"},{\"letter\":\"A\",\"text\":\"b\"}],"
         "\"answer\":\"A\",\"stratum\":\"s\"}"});
    CHECK_THROWS_AS(load_manifest(p.string()), ValidationError);
  }
  SUBCASE("empty stratum rejected") {
    auto p = write_manifest(dir, "m.jsonl", {sample_line("q1", "")});
    CHECK_THROWS_AS(load_manifest(p.string()), ValidationError);
  }
}

TEST_CASE("stratified sampling selects ceil(n_s x fraction) per stratum") {
  TempDir dir;
  std::vector<std::string> lines;
  for (int i = 0; i < 10; ++i) lines.push_back(sample_line("a" + std::to_string(i), "alpha"));
  for (int i = 0; i < 3; ++i) lines.push_back(sample_line("b" + std::to_string(i), "beta"));
  Dataset d = load_manifest(write_manifest(dir, "m.jsonl", lines).string());

  Dataset s = stratified_sample(d, 0.2, 42);
  std::size_t alpha = 0, beta = 0;
  for (const auto& sm : s.samples) (sm.stratum == "alpha" ? alpha : beta)++;
  CHECK(alpha == 2);  // ceil(10 x 0.2)
  CHECK(beta == 1);   // ceil(3 x 0.2)

  SUBCASE("deterministic under the same seed") {
    Dataset s2 = stratified_sample(d, 0.2, 42);
    REQUIRE(s2.samples.size() == s.samples.size());
    for (std::size_t i = 0; i < s.samples.size(); ++i)
      CHECK(s2.samples[i].id == s.samples[i].id);
  }
  SUBCASE("output preserves original relative order") {
    std::vector<std::size_t> positions;
    for (const auto& sm : s.samples) {
      for (std::size_t i = 0; i < d.samples.size(); ++i)
        if (d.samples[i].id == sm.id) positions.push_back(i);
    }
    REQUIRE(positions.size() == s.samples.size());
    for (std::size_t i = 1; i < positions.size(); ++i) CHECK(positions[i] > positions[i - 1]);
  }
  SUBCASE("fraction 1 keeps everything in order") {
    Dataset all = stratified_sample(d, 1.0, 7);
    REQUIRE(all.samples.size() == d.samples.size());
    for (std::size_t i = 0; i < d.samples.size(); ++i)
      CHECK(all.samples[i].id == d.samples[i].id);
  }
  SUBCASE("fraction bounds") {
    CHECK_THROWS_AS(stratified_sample(d, 0.0, 42), ValidationError);
    CHECK_THROWS_AS(stratified_sample(d, 1.5, 42), ValidationError);
    CHECK_THROWS_AS(stratified_sample(d, -0.2, 42), ValidationError);
  }
}

TEST_CASE("stratified sampling ceil rule on a 1000-row, 10-stratum manifest") {
  TempDir dir;
  // Uneven strata: 55, 65, ..., 145 sum to 1000.
  std::vector<std::string> lines;
  std::vector<std::size_t> sizes;
  for (int st = 0; st < 10; ++st) {
    std::size_t n = 55 + 10 * static_cast<std::size_t>(st);
    sizes.push_back(n);
    for (std::size_t i = 0; i < n; ++i)
      lines.push_back(sample_line("s" + std::to_string(st) + "_" + std::to_string(i),
                                  "stratum" + std::to_string(st)));
  }
  Dataset d = load_manifest(write_manifest(dir, "big.jsonl", lines).string());
  REQUIRE(d.samples.size() == 1000);

  Dataset s = stratified_sample(d, 0.2, 42);
  std::map<std::string, std::size_t> counts;
  for (const auto& sm : s.samples) counts[sm.stratum]++;
  for (int st = 0; st < 10; ++st) {
    auto expect = static_cast<std::size_t>(
        std::ceil(static_cast<double>(sizes[static_cast<std::size_t>(st)]) * 0.2));
    CHECK(counts["stratum" + std::to_string(st)] == expect);
  }

  Dataset again = stratified_sample(d, 0.2, 42);
  REQUIRE(again.samples.size() == s.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i)
    CHECK(again.samples[i].id == s.samples[i].id);

  Dataset other_seed = stratified_sample(d, 0.2, 43);
  std::vector<std::string> ids42, ids43;
  for (const auto& sm : s.samples) ids42.push_back(sm.id);
  for (const auto& sm : other_seed.samples) ids43.push_back(sm.id);
  CHECK(ids42 != ids43);  // a different seed picks a different subset
}

TEST_CASE("strip_image clears images and is idempotent") {
  Sample s;
  s.id = "x";
  s.images = {"/a.png", "/b.png"};
  Sample stripped = strip_image(s);
  CHECK(stripped.images.empty());
  CHECK(stripped.id == "x");
  Sample twice = strip_image(stripped);
  CHECK(twice.images.empty());
}
