#include "robench/model_client.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "robench/base64.hpp"
#include "robench/errors.hpp"
#include "robench/image_io.hpp"

// httplib drags in <resolv.h>, whose `_res` macro corrupts Eigen's headers;
// keep it after every Eigen-reachable include.
#include <httplib.h>

namespace robench {

namespace {

constexpr const char* kDirectTemplate =
    "Please select the correct answer from the options above. Respond with only the letter "
    "of the correct option. Do not explain. Answer:";

constexpr const char* kCotTemplate =
    "Answer the preceding multiple choice question. The last line of your response should be "
    "of the following format: 'Answer: $LETTER' (without quotes) where LETTER is one of "
    "options. Think step by step before answering.";

bool is_ascii_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_valid_letter(char upper, const std::vector<char>& valid) {
  for (char v : valid) {
    if (v == upper) return true;
  }
  return false;
}

// A letter token bounded by non-alphanumerics (or the string edges).
bool standalone_at(const std::string& text, std::size_t i) {
  const bool left_ok = i == 0 || !is_ascii_alnum(text[i - 1]);
  const bool right_ok = i + 1 >= text.size() || !is_ascii_alnum(text[i + 1]);
  return left_ok && right_ok;
}

std::optional<char> first_standalone(const std::string& text, const std::vector<char>& valid) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
    if (is_valid_letter(upper, valid) && standalone_at(text, i)) return upper;
  }
  return std::nullopt;
}

// Letter after an "answer:" marker at `pos`: optional whitespace, then a
// standalone valid letter.
std::optional<char> letter_after_marker(const std::string& text, std::size_t pos,
                                        const std::vector<char>& valid) {
  std::size_t i = pos;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i >= text.size()) return std::nullopt;
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
  if (is_valid_letter(upper, valid) && standalone_at(text, i)) return upper;
  return std::nullopt;
}

std::string lowercase(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

const char* prompt_mode_name(PromptMode m) { return m == PromptMode::Direct ? "direct" : "cot"; }

std::optional<PromptMode> prompt_mode_from_name(const std::string& name) {
  if (name == "direct") return PromptMode::Direct;
  if (name == "cot") return PromptMode::CoT;
  return std::nullopt;
}

std::string prompt_text(const Sample& s, PromptMode mode) {
  std::string text = s.question;
  text.push_back('\n');
  for (const auto& [letter, option] : s.options) {
    text.push_back(letter);
    text.append(". ");
    text.append(option);
    text.push_back('\n');
  }
  text.append(mode == PromptMode::Direct ? kDirectTemplate : kCotTemplate);
  return text;
}

nlohmann::json build_prompt_with_images(const Sample& s, PromptMode mode,
                                        const std::vector<std::vector<std::uint8_t>>& pngs) {
  nlohmann::json content = nlohmann::json::array();
  for (const auto& png : pngs) {
    content.push_back({{"type", "image_url"},
                       {"image_url", {{"url", "data:image/png;base64," + base64_encode(png)}}}});
  }
  content.push_back({{"type", "text"}, {"text", prompt_text(s, mode)}});
  return nlohmann::json::array({nlohmann::json{{"role", "user"}, {"content", content}}});
}

nlohmann::json build_prompt(const Sample& s, PromptMode mode, bool include_image) {
  std::vector<std::vector<std::uint8_t>> pngs;
  if (include_image) {
    for (const std::string& path : s.images) {
      pngs.push_back(encode_png(read_image(path)));
    }
  }
  return build_prompt_with_images(s, mode, pngs);
}

std::optional<char> extract_answer(const std::string& text, PromptMode mode,
                                   const std::vector<char>& valid_letters) {
  if (mode == PromptMode::CoT) {
    const std::string lower = lowercase(text);
    static const std::string marker = "answer:";
    std::size_t pos = lower.rfind(marker);
    while (pos != std::string::npos) {
      if (auto letter = letter_after_marker(text, pos + marker.size(), valid_letters)) {
        return letter;
      }
      if (pos == 0) break;
      pos = lower.rfind(marker, pos - 1);
    }
  }
  return first_standalone(text, valid_letters);
}

QueryResult ModelClient::query(const nlohmann::json& messages, const GenerationParams& params,
                               std::uint32_t generation_seed) const {
  // Split base_url into origin and path prefix.
  const std::size_t scheme_end = ep_.base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw TransportError("base_url must start with http:// or https://: " + ep_.base_url);
  }
  const std::size_t path_start = ep_.base_url.find('/', scheme_end + 3);
  const std::string origin =
      path_start == std::string::npos ? ep_.base_url : ep_.base_url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : ep_.base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  nlohmann::json body{
      {"model", ep_.model_name},
      {"messages", messages},
      {"max_tokens", params.max_new_tokens},
  };
  if (params.deterministic) {
    body["temperature"] = 0.0;
  } else {
    if (params.temperature) body["temperature"] = *params.temperature;
    if (params.top_p) body["top_p"] = *params.top_p;
    if (params.top_k) body["top_k"] = *params.top_k;
    body["seed"] = generation_seed;
  }
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!ep_.auth_env.empty()) {
    if (const char* token = std::getenv(ep_.auth_env.c_str()); token && *token) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }

  std::string last_error;
  for (int attempt = 0; attempt <= ep_.max_retries; ++attempt) {
    if (attempt > 0) {
      const int delay = ep_.backoff_ms * (1 << std::min(attempt - 1, 4));
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
    httplib::Client client(origin);
    client.set_connection_timeout(ep_.timeout_seconds, 0);
    client.set_read_timeout(ep_.timeout_seconds, 0);
    client.set_write_timeout(ep_.timeout_seconds, 0);

    const auto start = std::chrono::steady_clock::now();
    httplib::Result res =
        client.Post(prefix + "/chat/completions", headers, payload, "application/json");
    const double latency =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "http status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw HttpError(res->status, res->body);
    }

    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw TransportError(std::string("malformed response body: ") + e.what());
    }
    QueryResult out;
    out.latency_seconds = latency;
    try {
      out.raw_text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw TransportError(std::string("unexpected response shape: ") + e.what());
    }
    if (reply.contains("usage") && reply["usage"].contains("total_tokens") &&
        reply["usage"]["total_tokens"].is_number()) {
      out.total_tokens = reply["usage"]["total_tokens"].get<long>();
    }
    return out;
  }
  throw RetriesExhausted("query failed after " + std::to_string(ep_.max_retries + 1) +
                         " attempts; last error: " + last_error);
}

}  // namespace robench
