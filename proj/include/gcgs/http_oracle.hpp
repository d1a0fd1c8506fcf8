#pragma once

#include <cstdlib>
#include <memory>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "gcgs/oracle.hpp"

namespace gcgs {

struct HttpOracleConfig {
  std::string endpoint;   // full URL of a chat-completions-compatible API
  std::string model;
  std::string token_env;  // environment variable holding the bearer token
  int timeout_seconds = 120;
};

// Chat-completions wire format: {model, messages, temperature, logprobs,
// max_tokens}. Assistant prefill rides as a trailing assistant message.
// Token logprobs are surfaced when the provider returns them; otherwise the
// search runs without feedback.
class HttpOracle : public Oracle {
 public:
  explicit HttpOracle(HttpOracleConfig cfg) : cfg_(std::move(cfg)) {
    split_endpoint();
  }

  std::string id() const override { return "http:" + cfg_.model; }

  OracleReply invoke(const OracleRequest& request) override {
    nlohmann::json body;
    body["model"] = cfg_.model;
    body["temperature"] = request.decode.temperature;
    body["max_tokens"] = request.decode.max_tokens;
    if (request.wants_logprobs) body["logprobs"] = true;
    nlohmann::json msgs = nlohmann::json::array();
    if (request.messages.empty()) {
      msgs.push_back({{"role", "user"}, {"content", request.rendered_input}});
    } else {
      for (const ChatMessage& m : request.messages)
        msgs.push_back({{"role", m.role}, {"content", m.content}});
    }
    body["messages"] = std::move(msgs);

    httplib::Client client(base_);
    client.set_read_timeout(cfg_.timeout_seconds, 0);
    client.set_connection_timeout(10, 0);
    httplib::Headers headers;
    if (!cfg_.token_env.empty()) {
      const char* token = std::getenv(cfg_.token_env.c_str());
      if (token && *token)
        headers.emplace("Authorization", std::string("Bearer ") + token);
    }

    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res)
      throw TransportError("no response from " + cfg_.endpoint, true);
    if (res->status >= 500)
      throw TransportError("server error " + std::to_string(res->status), true);
    if (res->status != 200)
      throw TransportError("request rejected with status " +
                               std::to_string(res->status) + ": " + res->body,
                           false);
    return parse_reply(res->body);
  }

 private:
  void split_endpoint() {
    const std::string& url = cfg_.endpoint;
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
      throw Error("endpoint must be a full URL: " + url);
    std::size_t path_at = url.find('/', scheme + 3);
    if (path_at == std::string::npos) {
      base_ = url;
      path_ = "/";
    } else {
      base_ = url.substr(0, path_at);
      path_ = url.substr(path_at);
    }
  }

  static OracleReply parse_reply(const std::string& body) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedReply(std::string("bad JSON reply: ") + e.what());
    }
    if (!j.contains("choices") || !j["choices"].is_array() ||
        j["choices"].empty())
      throw MalformedReply("reply has no choices");
    const nlohmann::json& choice = j["choices"][0];

    OracleReply reply;
    reply.kind = ReplyKind::generation;
    if (choice.contains("message") && choice["message"].contains("content"))
      reply.text = choice["message"]["content"].get<std::string>();
    else if (choice.contains("text"))
      reply.text = choice["text"].get<std::string>();
    else
      throw MalformedReply("choice carries no content");

    if (choice.contains("logprobs") && choice["logprobs"].is_object() &&
        choice["logprobs"].contains("content") &&
        choice["logprobs"]["content"].is_array()) {
      std::vector<double> lps;
      for (const auto& tok : choice["logprobs"]["content"])
        if (tok.contains("logprob"))
          lps.push_back(std::min(0.0, tok["logprob"].get<double>()));
      if (!lps.empty()) reply.token_logprobs = std::move(lps);
    }
    return reply;
  }

  HttpOracleConfig cfg_;
  std::string base_;
  std::string path_;
};

}  // namespace gcgs
