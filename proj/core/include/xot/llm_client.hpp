#pragma once

#include "xot/prompts.hpp"
#include "xot/revision.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <semaphore>
#include <string>
#include <vector>

namespace xot {

struct EndpointConfig {
  std::string base_url;                         // e.g. https://api.example.com
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env = "XOT_LLM_API_KEY";  // the key itself is never stored in config
  int max_retries = 4;
  double backoff_initial = 1.0;                 // seconds, doubled per retry
  double backoff_max = 30.0;
  int max_concurrency = 4;                      // simultaneous requests per client

  /// Reads XOT_LLM_BASE_URL, XOT_LLM_MODEL and XOT_LLM_PATH when set.
  static EndpointConfig from_environment();
};

enum class LlmMode { live, record, replay };

struct TranscriptEntry {
  std::size_t seq = 0;
  std::string purpose;
  std::string model;
  std::string system;
  std::string user;
  double temperature = 0.0;
  double top_p = 0.0;
  std::string response;
  int prompt_tokens = 0;
  int completion_tokens = 0;
  std::string timestamp; // UTC, ISO 8601
};

/// Append-only record of every request sent and the reply received.
class LlmTranscript {
public:
  const std::vector<TranscriptEntry>& entries() const { return entries_; }
  void append(TranscriptEntry entry);
  std::size_t count(const std::string& purpose) const;

  void save(const std::string& path) const; // JSON lines
  static LlmTranscript load(const std::string& path);

private:
  std::vector<TranscriptEntry> entries_;
};

/// Chat-completions client. Live calls retry transport failures, 429 and 5xx
/// with exponential backoff; a retried call still counts once. Replay serves
/// recorded replies for identical requests and never touches the network.
class LlmClient {
public:
  LlmClient(EndpointConfig endpoint, LlmMode mode, LlmTranscript replay_source = {});

  /// Throws TransportError when retries run out, ProtocolError on a malformed
  /// reply or (in replay) when the request differs from the recorded one.
  std::string complete(const ChatRequest& request);

  std::size_t invocations() const;
  std::size_t invocations(const std::string& purpose) const;
  std::size_t http_attempts() const; // includes retries
  LlmTranscript transcript() const;
  LlmMode mode() const { return mode_; }

private:
  std::string post(const ChatRequest& request, int& prompt_tokens, int& completion_tokens);

  EndpointConfig endpoint_;
  LlmMode mode_;
  LlmTranscript replay_;
  std::vector<bool> replay_used_;
  std::counting_semaphore<> slots_;
  LlmTranscript record_;
  std::map<std::string, std::size_t> counts_;
  std::size_t attempts_ = 0;
  mutable std::mutex mutex_;
};

/// Critic that asks the LLM with the revision prompt and parses its verdict.
class LlmCritic final : public Critic {
public:
  explicit LlmCritic(LlmClient& client) : client_(client) {}
  Critique review(const ThoughtTrajectory& trajectory, const std::string& rendered) override;

private:
  LlmClient& client_;
};

} // namespace xot
