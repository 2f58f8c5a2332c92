#include "xot/llm_client.hpp"

#include "xot/errors.hpp"

#include "httplib.h"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <thread>

namespace xot {

using nlohmann::json;

namespace {

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json to_json(const TranscriptEntry& e) {
  return {{"seq", e.seq},
          {"purpose", e.purpose},
          {"model", e.model},
          {"system", e.system},
          {"user", e.user},
          {"temperature", e.temperature},
          {"top_p", e.top_p},
          {"response", e.response},
          {"prompt_tokens", e.prompt_tokens},
          {"completion_tokens", e.completion_tokens},
          {"timestamp", e.timestamp}};
}

TranscriptEntry from_json(const json& j) {
  TranscriptEntry e;
  e.seq = j.at("seq").get<std::size_t>();
  e.purpose = j.at("purpose").get<std::string>();
  e.model = j.value("model", "");
  e.system = j.at("system").get<std::string>();
  e.user = j.at("user").get<std::string>();
  e.temperature = j.value("temperature", 0.0);
  e.top_p = j.value("top_p", 0.0);
  e.response = j.at("response").get<std::string>();
  e.prompt_tokens = j.value("prompt_tokens", 0);
  e.completion_tokens = j.value("completion_tokens", 0);
  e.timestamp = j.value("timestamp", "");
  return e;
}

const char* env_or_null(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

} // namespace

EndpointConfig EndpointConfig::from_environment() {
  EndpointConfig c;
  if (const char* v = env_or_null("XOT_LLM_BASE_URL"))
    c.base_url = v;
  if (const char* v = env_or_null("XOT_LLM_MODEL"))
    c.model = v;
  if (const char* v = env_or_null("XOT_LLM_PATH"))
    c.path = v;
  return c;
}

void LlmTranscript::append(TranscriptEntry entry) {
  entry.seq = entries_.size();
  entries_.push_back(std::move(entry));
}

std::size_t LlmTranscript::count(const std::string& purpose) const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                [&](const auto& e) { return e.purpose == purpose; }));
}

void LlmTranscript::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write transcript " + path);
  for (const auto& e : entries_)
    out << to_json(e).dump() << '\n';
}

LlmTranscript LlmTranscript::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read transcript " + path);
  LlmTranscript t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    try {
      t.entries_.push_back(from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(lineno, std::string("transcript line: ") + e.what());
    }
  }
  return t;
}

LlmClient::LlmClient(EndpointConfig endpoint, LlmMode mode, LlmTranscript replay_source)
    : endpoint_(std::move(endpoint)), mode_(mode), replay_(std::move(replay_source)),
      replay_used_(replay_.entries().size(), false),
      slots_(std::max(1, endpoint_.max_concurrency)) {
  if (mode_ != LlmMode::replay && endpoint_.base_url.empty())
    throw ContractError("LLM endpoint base URL is not configured (set XOT_LLM_BASE_URL)");
}

std::string LlmClient::post(const ChatRequest& request, int& prompt_tokens, int& completion_tokens) {
  json body = {{"model", request.model.empty() ? endpoint_.model : request.model},
               {"temperature", request.temperature},
               {"top_p", request.top_p},
               {"max_tokens", request.max_tokens},
               {"messages",
                json::array({{{"role", "system"}, {"content", request.system}},
                             {{"role", "user"}, {"content", request.user}}})}};
  httplib::Headers headers;
  if (const char* key = env_or_null(endpoint_.api_key_env.c_str()))
    headers.emplace("Authorization", std::string("Bearer ") + key);

  httplib::Client cli(endpoint_.base_url);
  const auto timeout = std::chrono::duration<double>(request.timeout_seconds);
  cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
  cli.set_read_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));
  cli.set_write_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(timeout));

  double delay = endpoint_.backoff_initial;
  std::string last_error;
  for (int attempt = 0; attempt <= endpoint_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
      delay = std::min(delay * 2, endpoint_.backoff_max);
    }
    {
      std::lock_guard lock(mutex_);
      ++attempts_;
    }
    auto res = cli.Post(endpoint_.path, headers, body.dump(), "application/json");
    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw ProtocolError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    json reply;
    try {
      reply = json::parse(res->body);
    } catch (const json::exception&) {
      throw ProtocolError("reply is not JSON: " + res->body.substr(0, 200));
    }
    try {
      const auto& content = reply.at("choices").at(0).at("message").at("content");
      if (reply.contains("usage")) {
        prompt_tokens = reply["usage"].value("prompt_tokens", 0);
        completion_tokens = reply["usage"].value("completion_tokens", 0);
      }
      return content.get<std::string>();
    } catch (const json::exception& e) {
      throw ProtocolError(std::string("unexpected reply shape: ") + e.what());
    }
  }
  throw TransportError("giving up after " + std::to_string(endpoint_.max_retries + 1) +
                       " attempts, last: " + last_error);
}

std::string LlmClient::complete(const ChatRequest& request) {
  if (mode_ == LlmMode::replay) {
    // Matched by content so that worker scheduling cannot change the pairing.
    std::lock_guard lock(mutex_);
    const auto& entries = replay_.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      if (replay_used_[i] || e.purpose != request.purpose || e.system != request.system ||
          e.user != request.user)
        continue;
      replay_used_[i] = true;
      record_.append(e);
      ++counts_[request.purpose];
      return e.response;
    }
    throw ProtocolError("no recorded " + request.purpose + " reply matches this request");
  }
  slots_.acquire();
  struct Release {
    std::counting_semaphore<>& s;
    ~Release() { s.release(); }
  } release{slots_};
  TranscriptEntry e;
  e.timestamp = utc_now();
  e.response = post(request, e.prompt_tokens, e.completion_tokens);
  e.purpose = request.purpose;
  e.model = request.model.empty() ? endpoint_.model : request.model;
  e.system = request.system;
  e.user = request.user;
  e.temperature = request.temperature;
  e.top_p = request.top_p;
  std::lock_guard lock(mutex_);
  record_.append(e);
  ++counts_[request.purpose];
  return e.response;
}

std::size_t LlmClient::invocations() const {
  std::lock_guard lock(mutex_);
  return record_.entries().size();
}

std::size_t LlmClient::invocations(const std::string& purpose) const {
  std::lock_guard lock(mutex_);
  auto it = counts_.find(purpose);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t LlmClient::http_attempts() const {
  std::lock_guard lock(mutex_);
  return attempts_;
}

LlmTranscript LlmClient::transcript() const {
  std::lock_guard lock(mutex_);
  return record_;
}

Critique LlmCritic::review(const ThoughtTrajectory& trajectory, const std::string&) {
  return parse_critique(client_.complete(build_critique_prompt(trajectory)));
}

} // namespace xot
