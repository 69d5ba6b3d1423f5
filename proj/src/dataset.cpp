#include "robench/dataset.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "robench/determinism.hpp"
#include "robench/errors.hpp"

namespace robench {

namespace {

using nlohmann::json;

char parse_letter(const json& j, int line, const char* what) {
  if (!j.is_string()) throw ParseError(line, std::string(what) + " must be a string");
  const std::string s = j.get<std::string>();
  if (s.size() != 1 || s[0] < 'A' || s[0] > 'J') {
    throw ValidationError("line " + std::to_string(line) + ": " + what +
                          " must be a single letter A-J, got \"" + s + "\"");
  }
  return s[0];
}

Sample parse_sample(const json& j, int line, const std::string& manifest_dir) {
  if (!j.is_object()) throw ParseError(line, "record is not an object");
  for (const char* field : {"id", "images", "question", "options", "answer", "stratum"}) {
    if (!j.contains(field)) {
      throw ValidationError("line " + std::to_string(line) + ": missing field \"" + field + "\"");
    }
  }
  Sample s;
  s.id = j.at("id").get<std::string>();
  s.question = j.at("question").get<std::string>();
  s.stratum = j.at("stratum").get<std::string>();
  if (s.stratum.empty()) {
    throw ValidationError("line " + std::to_string(line) + ": stratum must be non-empty");
  }

  for (const json& img : j.at("images")) {
    std::filesystem::path p = img.get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(manifest_dir) / p;
    if (!std::filesystem::exists(p)) {
      throw ValidationError("line " + std::to_string(line) + ": missing image file " +
                            p.string());
    }
    s.images.push_back(p.string());
  }

  const json& opts = j.at("options");
  if (!opts.is_array() || opts.size() < 2 || opts.size() > 10) {
    throw ValidationError("line " + std::to_string(line) + ": need 2-10 options");
  }
  std::set<char> letters;
  for (const json& o : opts) {
    const char letter = parse_letter(o.at("letter"), line, "option letter");
    if (!letters.insert(letter).second) {
      throw ValidationError("line " + std::to_string(line) + ": duplicate option letter " +
                            std::string(1, letter));
    }
    s.options.emplace_back(letter, o.at("text").get<std::string>());
  }
  s.answer = parse_letter(j.at("answer"), line, "answer");
  if (!letters.count(s.answer)) {
    throw ValidationError("line " + std::to_string(line) + ": answer " +
                          std::string(1, s.answer) + " is not among the option letters");
  }
  return s;
}

}  // namespace

Dataset load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest: " + path);
  const std::string dir = std::filesystem::path(path).parent_path().string();

  Dataset d;
  d.name = std::filesystem::path(path).stem().string();
  std::set<std::string> ids;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(lineno, e.what());
    }
    Sample s = parse_sample(j, lineno, dir);
    if (!ids.insert(s.id).second) {
      throw ValidationError("line " + std::to_string(lineno) + ": duplicate id \"" + s.id +
                            "\"");
    }
    d.samples.push_back(std::move(s));
  }
  return d;
}

Dataset stratified_sample(const Dataset& d, double fraction, std::uint32_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ValidationError("sampling fraction must be in (0, 1], got " +
                          std::to_string(fraction));
  // Strata in first-appearance order; one stream advances across all of them.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    const std::string& key = d.samples[i].stratum;
    auto [it, inserted] = buckets.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(i);
  }

  RngStream rng = make_rng(seed);
  std::vector<bool> selected(d.samples.size(), false);
  for (const std::string& key : order) {
    std::vector<std::size_t>& idx = buckets[key];
    const std::size_t k = static_cast<std::size_t>(
        std::ceil(static_cast<double>(idx.size()) * fraction));
    // Fisher-Yates, downward
    for (std::size_t i = idx.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
      std::swap(idx[i], idx[j]);
    }
    for (std::size_t i = 0; i < k && i < idx.size(); ++i) selected[idx[i]] = true;
  }

  Dataset out;
  out.name = d.name;
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    if (selected[i]) out.samples.push_back(d.samples[i]);
  }
  return out;
}

Sample strip_image(Sample s) {
  s.images.clear();
  return s;
}

}  // namespace robench
