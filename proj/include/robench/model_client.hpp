#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robench/dataset.hpp"

namespace robench {

// Two prompting modes; they differ in template text and extraction rules.
// Thinking-style decoding differs only in generation parameters.
enum class PromptMode { Direct, CoT };

const char* prompt_mode_name(PromptMode m);
std::optional<PromptMode> prompt_mode_from_name(const std::string& name);

struct GenerationParams {
  int max_new_tokens = 2048;
  std::optional<double> temperature;
  std::optional<double> top_p;
  std::optional<int> top_k;
  bool deterministic = true;  // greedy decoding; samplers above unset

  static GenerationParams thinking_preset() {
    GenerationParams p;
    p.max_new_tokens = 8192;
    p.temperature = 0.6;
    p.top_p = 0.95;
    p.top_k = 20;
    p.deterministic = false;
    return p;
  }
};

struct ModelEndpoint {
  std::string base_url;  // scheme://host[:port][/prefix], e.g. http://localhost:8000/v1
  std::string model_name;
  std::string auth_env;  // name of the env var holding the bearer token ("" = none)
  int timeout_seconds = 120;
  int max_retries = 3;
  int max_concurrent = 4;
  int backoff_ms = 500;  // exponential backoff base for retries
};

// Question, option lines ("A. text"), then the fixed instruction template.
std::string prompt_text(const Sample& s, PromptMode mode);

// One user message; images come first as base64 PNG parts. This variant
// reads the sample's image files and re-encodes them as PNG (pixels must
// survive transmission exactly, so lossy re-encoding is never used).
nlohmann::json build_prompt(const Sample& s, PromptMode mode, bool include_image);

// Same message shape with the image bytes supplied by the caller (already
// PNG-encoded), for corrupted in-memory images.
nlohmann::json build_prompt_with_images(const Sample& s, PromptMode mode,
                                        const std::vector<std::vector<std::uint8_t>>& pngs);

// The answer extractor: returns the chosen letter (normalized uppercase) or
// nullopt when no rule matches. Total and deterministic.
//   Direct: first standalone valid letter from the start.
//   CoT:    letter of the last "Answer:" occurrence; falls back to the
//           Direct rule when no occurrence yields a valid standalone letter.
std::optional<char> extract_answer(const std::string& text, PromptMode mode,
                                   const std::vector<char>& valid_letters);

struct QueryResult {
  std::string raw_text;
  double latency_seconds = 0.0;
  std::optional<long> total_tokens;
};

class ModelClient {
 public:
  explicit ModelClient(ModelEndpoint ep) : ep_(std::move(ep)) {}

  // POSTs an OpenAI-style chat completion. Transport failures and 5xx are
  // retried with exponential backoff up to max_retries; other HTTP errors
  // throw immediately.
  QueryResult query(const nlohmann::json& messages, const GenerationParams& params,
                    std::uint32_t generation_seed) const;

  const ModelEndpoint& endpoint() const { return ep_; }

 private:
  ModelEndpoint ep_;
};

}  // namespace robench
