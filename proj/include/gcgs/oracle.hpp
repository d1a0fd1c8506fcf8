#pragma once

#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "gcgs/digest.hpp"
#include "gcgs/errors.hpp"

namespace gcgs {

struct ChatMessage {
  std::string role;
  std::string content;
};

struct DecodeParams {
  double temperature = 0.0;  // greedy decoding throughout
  int max_tokens = 1024;
};

// One model invocation: either a classification input or a rendered chat
// prompt. `rendered_input` is the canonical text; its digest keys the cache.
struct OracleRequest {
  std::string rendered_input;
  std::vector<ChatMessage> messages;  // present for chat-style oracles
  bool wants_logprobs = false;
  DecodeParams decode;

  std::string digest() const {
    return digest_hex(rendered_input + (wants_logprobs ? "\x1f+lp" : "\x1f-lp"));
  }

  static OracleRequest classification(std::string input) {
    OracleRequest r;
    r.rendered_input = std::move(input);
    return r;
  }

  static OracleRequest chat(std::vector<ChatMessage> messages,
                            bool wants_logprobs, int max_tokens) {
    OracleRequest r;
    for (const ChatMessage& m : messages) {
      r.rendered_input += m.role;
      r.rendered_input += ":\n";
      r.rendered_input += m.content;
      r.rendered_input += "\n";
    }
    r.messages = std::move(messages);
    r.wants_logprobs = wants_logprobs;
    r.decode.max_tokens = max_tokens;
    return r;
  }
};

enum class ReplyKind { classification, generation };

struct OracleReply {
  ReplyKind kind = ReplyKind::classification;
  std::optional<int> label;
  std::optional<std::map<int, double>> class_probs;
  std::optional<std::string> text;
  std::optional<std::vector<double>> token_logprobs;

  void validate() const {
    if (class_probs) {
      double sum = 0;
      for (const auto& [cls, p] : *class_probs) sum += p;
      if (std::abs(sum - 1.0) > 1e-6)
        throw MalformedReply("class probabilities sum to " + std::to_string(sum));
    }
    if (token_logprobs) {
      for (double lp : *token_logprobs)
        if (lp > 1e-12)
          throw MalformedReply("positive token logprob " + std::to_string(lp));
    }
  }
};

// The raw black-box model. Implementations must be safe to call from
// multiple threads.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual OracleReply invoke(const OracleRequest& request) = 0;
  virtual std::string id() const = 0;
};

struct QueryLedger {
  std::size_t queries_used = 0;
  std::size_t budget = 0;
};

// Budgeted, cached access to an oracle. Duplicate requests are served from
// the cache and do not consume budget; #Queries therefore counts actual
// model calls. Thread-safe; one instance per attack.
class QueryClient {
 public:
  QueryClient(Oracle& oracle, std::size_t budget, int max_retries = 3)
      : oracle_(oracle), max_retries_(max_retries) {
    ledger_.budget = budget;
  }

  OracleReply query(const OracleRequest& request) {
    return do_query(request, /*count=*/true);
  }

  // Uncounted call used for baseline checks; still cached.
  OracleReply query_uncounted(const OracleRequest& request) {
    return do_query(request, /*count=*/false);
  }

  bool cached(const OracleRequest& request) const {
    std::lock_guard lock(mu_);
    return cache_.count(request.digest()) > 0;
  }

  std::size_t queries_used() const {
    std::lock_guard lock(mu_);
    return ledger_.queries_used;
  }
  std::size_t budget() const { return ledger_.budget; }
  bool exhausted() const {
    std::lock_guard lock(mu_);
    return ledger_.queries_used >= ledger_.budget;
  }

  // True if the last query() was answered from the cache.
  bool last_was_cache_hit() const { return last_cache_hit_; }

  void clear_cache() {
    std::lock_guard lock(mu_);
    cache_.clear();
  }

 private:
  OracleReply do_query(const OracleRequest& request, bool count) {
    const std::string key = request.digest();
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) {
        last_cache_hit_ = true;
        return it->second;
      }
      if (count && ledger_.queries_used >= ledger_.budget)
        throw BudgetExhausted();
    }
    OracleReply reply = invoke_with_retries(request);
    reply.validate();
    {
      std::lock_guard lock(mu_);
      auto [it, fresh] = cache_.emplace(key, reply);
      if (fresh && count) ++ledger_.queries_used;
      last_cache_hit_ = false;
      return it->second;
    }
  }

  OracleReply invoke_with_retries(const OracleRequest& request) {
    int attempt = 0;
    std::chrono::milliseconds delay{100};
    while (true) {
      try {
        return oracle_.invoke(request);
      } catch (const TransportError& e) {
        if (!e.retryable || attempt >= max_retries_) throw;
        std::this_thread::sleep_for(delay);
        delay *= 2;
        ++attempt;
      }
    }
  }

  Oracle& oracle_;
  QueryLedger ledger_;
  std::unordered_map<std::string, OracleReply> cache_;
  int max_retries_;
  bool last_cache_hit_ = false;
  mutable std::mutex mu_;
};

}  // namespace gcgs
