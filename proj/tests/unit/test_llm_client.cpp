#include "doctest.h"
#include "examples.hpp"
#include "mock_llm.hpp"

#include "xot/errors.hpp"
#include "xot/llm_client.hpp"

#include <cstdlib>
#include <filesystem>

using namespace xot;
using namespace xot::testing;

namespace {

EndpointConfig fast_endpoint(const MockLlm& mock) {
  EndpointConfig e;
  e.base_url = mock.base_url();
  e.model = "mock-model";
  e.backoff_initial = 0.01;
  e.backoff_max = 0.02;
  e.max_retries = 2;
  e.api_key_env = "XOT_TEST_MOCK_KEY";
  return e;
}

ChatRequest request(const std::string& user, const std::string& purpose = "solve") {
  ChatRequest r;
  r.system = "sys";
  r.user = user;
  r.purpose = purpose;
  r.timeout_seconds = 5;
  return r;
}

} // namespace

TEST_CASE("llm client: a 429 followed by 200 counts as one invocation") {
  MockLlm mock([](const nlohmann::json&, int call, httplib::Response& res) {
    if (call == 0)
      res.status = 429;
    else
      MockLlm::reply(res, "ok");
  });
  LlmClient client(fast_endpoint(mock), LlmMode::live);
  CHECK(client.complete(request("q")) == "ok");
  CHECK(client.invocations() == 1);
  CHECK(client.http_attempts() == 2);
  CHECK(mock.calls() == 2);
}

TEST_CASE("llm client: two identical calls count twice and send the fixed sampling settings") {
  nlohmann::json seen;
  MockLlm mock([&](const nlohmann::json& body, int, httplib::Response& res) {
    seen = body;
    MockLlm::reply(res, "same");
  });
  ::setenv("XOT_TEST_MOCK_KEY", "test-key", 1);
  LlmClient client(fast_endpoint(mock), LlmMode::live);
  client.complete(request("q"));
  client.complete(request("q"));
  ::unsetenv("XOT_TEST_MOCK_KEY");
  CHECK(client.invocations() == 2);
  CHECK(client.invocations("solve") == 2);
  CHECK(seen["temperature"] == 0.0);
  CHECK(seen["top_p"] == 0.0);
  CHECK(seen["model"] == "mock-model");
  CHECK(seen["messages"][0]["role"] == "system");
  CHECK(seen["messages"][1]["content"] == "q");
  CHECK(mock.last_auth() == "Bearer test-key");
  const auto t = client.transcript();
  REQUIRE(t.entries().size() == 2);
  CHECK(t.entries()[1].seq == 1);
  CHECK(t.entries()[0].prompt_tokens == 10);
  CHECK_FALSE(t.entries()[0].timestamp.empty());
}

TEST_CASE("llm client: malformed replies are protocol errors") {
  SUBCASE("non-JSON body") {
    MockLlm mock([](const nlohmann::json&, int, httplib::Response& res) {
      res.status = 200;
      res.set_content("<html>oops</html>", "text/html");
    });
    LlmClient client(fast_endpoint(mock), LlmMode::live);
    CHECK_THROWS_AS(client.complete(request("q")), ProtocolError);
    CHECK(client.invocations() == 0);
  }
  SUBCASE("JSON without choices") {
    MockLlm mock([](const nlohmann::json&, int, httplib::Response& res) {
      res.status = 200;
      res.set_content("{\"error\":1}", "application/json");
    });
    LlmClient client(fast_endpoint(mock), LlmMode::live);
    CHECK_THROWS_AS(client.complete(request("q")), ProtocolError);
  }
  SUBCASE("client error status is not retried") {
    MockLlm mock([](const nlohmann::json&, int, httplib::Response& res) { res.status = 401; });
    LlmClient client(fast_endpoint(mock), LlmMode::live);
    CHECK_THROWS_AS(client.complete(request("q")), ProtocolError);
    CHECK(mock.calls() == 1);
  }
}

TEST_CASE("llm client: exhausted retries are transport errors") {
  MockLlm mock([](const nlohmann::json&, int, httplib::Response& res) { res.status = 503; });
  LlmClient client(fast_endpoint(mock), LlmMode::live);
  CHECK_THROWS_AS(client.complete(request("q")), TransportError);
  CHECK(mock.calls() == 3);
  CHECK(client.invocations() == 0);
  CHECK(client.transcript().entries().empty());
}

TEST_CASE("llm client: unreachable endpoint is a transport error") {
  EndpointConfig e;
  e.base_url = "http://127.0.0.1:1";
  e.max_retries = 1;
  e.backoff_initial = 0.01;
  LlmClient client(e, LlmMode::live);
  CHECK_THROWS_AS(client.complete(request("q")), TransportError);
  CHECK(client.http_attempts() == 2);
}

TEST_CASE("llm client: missing endpoint is rejected outside replay") {
  CHECK_THROWS_AS(LlmClient(EndpointConfig{}, LlmMode::live), ContractError);
  CHECK_NOTHROW(LlmClient(EndpointConfig{}, LlmMode::replay));
}

TEST_CASE("llm client: replay serves recorded replies without network access") {
  LlmTranscript recorded;
  {
    MockLlm mock([](const nlohmann::json& body, int, httplib::Response& res) {
      MockLlm::reply(res, "echo " + body["messages"][1]["content"].get<std::string>());
    });
    LlmClient client(fast_endpoint(mock), LlmMode::record);
    client.complete(request("a"));
    client.complete(request("b", "critique"));
    client.complete(request("a"));
    recorded = client.transcript();
    CHECK(recorded.count("solve") == client.invocations("solve"));
    CHECK(recorded.count("critique") == client.invocations("critique"));
  }
  const auto path = std::filesystem::temp_directory_path() / "xot_transcript_test.jsonl";
  recorded.save(path.string());
  const auto loaded = LlmTranscript::load(path.string());
  std::filesystem::remove(path);
  REQUIRE(loaded.entries().size() == 3);
  CHECK(loaded.entries()[1].purpose == "critique");
  CHECK(loaded.entries()[2].response == "echo a");

  // Unreachable URL: any network use would fail.
  EndpointConfig dead;
  dead.base_url = "http://127.0.0.1:1";
  LlmClient replay(dead, LlmMode::replay, loaded);
  CHECK(replay.complete(request("b", "critique")) == "echo b");
  CHECK(replay.complete(request("a")) == "echo a");
  CHECK(replay.complete(request("a")) == "echo a");
  CHECK_THROWS_AS(replay.complete(request("a")), ProtocolError);
  CHECK_THROWS_AS(replay.complete(request("c")), ProtocolError);
  CHECK(replay.http_attempts() == 0);
  CHECK(replay.invocations() == 3);
  CHECK(replay.transcript().count("solve") == replay.invocations("solve"));
}

TEST_CASE("llm client: critic parses the model verdict") {
  MockLlm mock([](const nlohmann::json& body, int, httplib::Response& res) {
    const auto user = body["messages"][1]["content"].get<std::string>();
    CHECK(user.find("identify the exact wrong step") != std::string::npos);
    MockLlm::reply(res, "[Step 2] is wrong, with Move: 24 - 10 = 14.");
  });
  LlmClient client(fast_endpoint(mock), LlmMode::live);
  LlmCritic critic(client);
  const auto c = critic.review(game24_wrong(), "");
  CHECK(c.verdict == Verdict::wrong_step);
  CHECK(c.step == 2);
  CHECK(client.invocations("critique") == 1);
}
