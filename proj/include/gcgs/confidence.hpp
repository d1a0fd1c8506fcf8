#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gcgs/errors.hpp"
#include "gcgs/oracle.hpp"

namespace gcgs {

enum class ConfidenceMode { classification, generation_perplexity, none };

inline std::string_view confidence_mode_name(ConfidenceMode m) {
  switch (m) {
    case ConfidenceMode::classification: return "confidence";
    case ConfidenceMode::generation_perplexity: return "perplexity";
    case ConfidenceMode::none: return "none";
  }
  return "?";
}

inline ConfidenceMode confidence_mode_from_name(std::string_view s) {
  if (s == "confidence" || s == "classification") return ConfidenceMode::classification;
  if (s == "perplexity") return ConfidenceMode::generation_perplexity;
  if (s == "none") return ConfidenceMode::none;
  throw Error("unknown confidence mode: " + std::string(s));
}

// Probability the model assigns to the correct class.
inline double score_classification(const OracleReply& reply, int correct_label) {
  if (!reply.class_probs) throw MissingProbabilities();
  auto it = reply.class_probs->find(correct_label);
  if (it == reply.class_probs->end()) throw MissingProbabilities();
  return std::clamp(it->second, 0.0, 1.0);
}

// Inverse per-token perplexity: exp(mean logprob), in (0, 1]. With
// length_normalize off, exp(sum logprob) — the raw-sum ordering, which is
// length-sensitive across generations.
inline double score_generation(const OracleReply& reply,
                               bool length_normalize = true) {
  if (!reply.token_logprobs || reply.token_logprobs->empty())
    throw MissingLogprobs();
  const auto& lps = *reply.token_logprobs;
  double sum = std::accumulate(lps.begin(), lps.end(), 0.0);
  double exponent = length_normalize ? sum / static_cast<double>(lps.size()) : sum;
  return std::clamp(std::exp(exponent), 0.0, 1.0);
}

// No-feedback mode: constant score. Composition order then degenerates to
// the seeded sampling order via the stable sort in the search.
inline double score_none() { return 1.0; }

struct ConfidenceScorer {
  ConfidenceMode mode = ConfidenceMode::none;
  bool length_normalize = true;
  int correct_label = 0;

  double score(const OracleReply& reply) const {
    switch (mode) {
      case ConfidenceMode::classification:
        return score_classification(reply, correct_label);
      case ConfidenceMode::generation_perplexity:
        return score_generation(reply, length_normalize);
      case ConfidenceMode::none:
        return score_none();
    }
    return score_none();
  }
};

}  // namespace gcgs
