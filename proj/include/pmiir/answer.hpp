#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmiir/hit_source.hpp"

namespace pmiir {

// Score of a choice that cannot be evidenced (zero denominator, unknown word).
inline constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

struct ScoreBreakdown {
  std::string choice;
  HitCount numerator_hits = 0;
  HitCount denominator_hits = 0;
  double score = kMinusInfinity;
  std::array<std::string, 2> query_texts;  // numerator, denominator; empty for LSA

  friend bool operator==(const ScoreBreakdown&, const ScoreBreakdown&) = default;
};

struct AnswerResult {
  std::size_t chosen_index = 0;
  std::vector<ScoreBreakdown> breakdowns;
  bool tie = false;
  // Every index attaining the maximum score, ascending; chosen_index is the first.
  std::vector<std::size_t> best_indices;
  std::optional<std::string> context_used;
  // Set when a context method had to fall back to the context-free score.
  bool context_fallback = false;

  friend bool operator==(const AnswerResult&, const AnswerResult&) = default;
};

struct Argmax {
  std::size_t index = 0;
  std::vector<std::size_t> best;
  [[nodiscard]] bool tie() const noexcept { return best.size() > 1; }
};

// Lowest index wins ties. An empty span yields index 0 with no best entries.
Argmax argmax(std::span<const double> scores);

// Fills chosen_index, tie and best_indices from the breakdown scores.
void settle(AnswerResult& result);

}  // namespace pmiir
