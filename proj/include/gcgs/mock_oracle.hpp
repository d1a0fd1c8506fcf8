#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcgs/lexer.hpp"
#include "gcgs/oracle.hpp"

namespace gcgs {

// Per-task behavior of a mock oracle. The marker is a substring that
// identifies the task inside a rendered input (task statements are never
// transformed, so matching stays stable under attack).
struct MockTask {
  std::string marker;
  int base_label = 1;
  std::string correct_text;
  std::string buggy_text;
};

// Deterministic test double. Confidence decreases linearly in the number of
// distinct trigger names present in the input, and the output flips once
// `threshold` of them are present — so error is monotone in composed trigger
// renames by construction.
struct MockSpec {
  std::string oracle_id = "mock";
  ReplyKind kind = ReplyKind::classification;
  std::vector<std::string> triggers;
  int threshold = 1;
  std::vector<MockTask> tasks;
  int default_base_label = 1;
  std::string default_correct_text;
  std::string default_buggy_text;

  static MockSpec from_json(const nlohmann::json& j) {
    MockSpec s;
    s.oracle_id = j.value("oracle_id", "mock");
    s.kind = j.value("kind", std::string("classification")) == "generation"
                 ? ReplyKind::generation
                 : ReplyKind::classification;
    for (const auto& t : j.value("triggers", nlohmann::json::array()))
      s.triggers.push_back(t.get<std::string>());
    s.threshold = j.value("threshold", 1);
    s.default_base_label = j.value("default_base_label", 1);
    s.default_correct_text = j.value("default_correct_text", "");
    s.default_buggy_text = j.value("default_buggy_text", "");
    for (const auto& t : j.value("tasks", nlohmann::json::array())) {
      MockTask task;
      task.marker = t.value("marker", "");
      task.base_label = t.value("base_label", s.default_base_label);
      task.correct_text = t.value("correct_text", s.default_correct_text);
      task.buggy_text = t.value("buggy_text", s.default_buggy_text);
      s.tasks.push_back(std::move(task));
    }
    return s;
  }

  static MockSpec load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open mock spec: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
  }
};

class MockOracle : public Oracle {
 public:
  explicit MockOracle(MockSpec spec) : spec_(std::move(spec)) {
    if (spec_.threshold < 1) throw Error("mock threshold must be >= 1");
  }

  std::string id() const override { return spec_.oracle_id; }

  // alpha = max(0, 1 - |present triggers| / threshold)
  double confidence_for(const std::string& input) const {
    int m = present_triggers(input);
    double a = 1.0 - static_cast<double>(m) / spec_.threshold;
    return a < 0.0 ? 0.0 : a;
  }

  bool flips_for(const std::string& input) const {
    return present_triggers(input) >= spec_.threshold;
  }

  OracleReply invoke(const OracleRequest& request) override {
    const std::string& input = request.rendered_input;
    const double alpha = confidence_for(input);
    const bool flipped = flips_for(input);
    const MockTask* task = match_task(input);

    OracleReply reply;
    reply.kind = spec_.kind;
    if (spec_.kind == ReplyKind::classification) {
      int base = task ? task->base_label : spec_.default_base_label;
      reply.label = flipped ? 1 - base : base;
      reply.class_probs = std::map<int, double>{{base, alpha}, {1 - base, 1.0 - alpha}};
    } else {
      std::string correct = task ? task->correct_text : spec_.default_correct_text;
      std::string buggy = task ? task->buggy_text : spec_.default_buggy_text;
      reply.text = flipped ? buggy : correct;
      if (request.wants_logprobs) {
        double lp = std::log(std::max(alpha, 1e-9));
        reply.token_logprobs = std::vector<double>(5, lp);
      }
    }
    return reply;
  }

  const MockSpec& spec() const { return spec_; }

 private:
  // Distinct trigger names present as whole identifier-shaped words.
  int present_triggers(const std::string& input) const {
    int count = 0;
    for (const std::string& t : spec_.triggers) {
      std::size_t p = 0;
      bool found = false;
      while (!found && (p = input.find(t, p)) != std::string::npos) {
        bool left = p == 0 || !is_ident_char(input[p - 1]);
        bool right = p + t.size() >= input.size() || !is_ident_char(input[p + t.size()]);
        if (left && right) found = true;
        p += t.size();
      }
      if (found) ++count;
    }
    return count;
  }

  const MockTask* match_task(const std::string& input) const {
    for (const MockTask& t : spec_.tasks)
      if (!t.marker.empty() && input.find(t.marker) != std::string::npos)
        return &t;
    return nullptr;
  }

  MockSpec spec_;
};

}  // namespace gcgs
