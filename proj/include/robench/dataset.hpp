#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace robench {

// One multiple-choice question: images by path, options keyed by letter
// (A through J), ground-truth answer, and the stratum label used for
// proportional sampling.
struct Sample {
  std::string id;
  std::vector<std::string> images;
  std::string question;
  std::vector<std::pair<char, std::string>> options;
  char answer = 0;
  std::string stratum;

  std::vector<char> option_letters() const {
    std::vector<char> ls;
    ls.reserve(options.size());
    for (const auto& [letter, text] : options) ls.push_back(letter);
    return ls;
  }
};

// Ordered sample list; the position of a sample defines its seeding index.
struct Dataset {
  std::string name;
  std::vector<Sample> samples;
};

// Line-delimited JSON manifest, one sample per line:
//   {"id", "images": [paths], "question",
//    "options": [{"letter", "text"}, ...], "answer", "stratum"}
// Throws ParseError (bad JSON) or ValidationError (contract violations,
// including a listed image file that does not exist).
Dataset load_manifest(const std::string& path);

// Selects ceil(n_s * fraction) samples per stratum. Strata are processed in
// first-appearance order with a single seed-driven shuffle stream; output
// keeps the original relative order.
Dataset stratified_sample(const Dataset& d, double fraction, std::uint32_t seed);

// Same sample without its images (the no-image baseline input).
Sample strip_image(Sample s);

}  // namespace robench
