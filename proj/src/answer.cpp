#include "pmiir/answer.hpp"

#include <algorithm>
#include <unordered_set>

#include "pmiir/errors.hpp"
#include "pmiir/question.hpp"

namespace pmiir {

void validate(const SynonymQuestion& q) {
  if (q.problem.empty()) {
    throw ValidationError("question has an empty problem word");
  }
  if (q.choices.size() < 2) {
    throw ValidationError("question '" + q.problem + "' needs at least two choices");
  }
  std::unordered_set<std::string> seen;
  for (const auto& c : q.choices) {
    if (c.empty()) {
      throw ValidationError("question '" + q.problem + "' has an empty choice");
    }
    if (c == q.problem) {
      throw ValidationError("question '" + q.problem + "' lists the problem word as a choice");
    }
    if (!seen.insert(c).second) {
      throw ValidationError("question '" + q.problem + "' repeats choice '" + c + "'");
    }
  }
  if (q.answer_index && *q.answer_index >= q.choices.size()) {
    throw ValidationError("answer " + std::to_string(*q.answer_index) + " out of range for " +
                          std::to_string(q.choices.size()) + " choices");
  }
}

Argmax argmax(std::span<const double> scores) {
  Argmax out;
  if (scores.empty()) return out;
  const double best = *std::max_element(scores.begin(), scores.end());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == best) out.best.push_back(i);
  }
  out.index = out.best.front();
  return out;
}

void settle(AnswerResult& result) {
  std::vector<double> scores;
  scores.reserve(result.breakdowns.size());
  for (const auto& b : result.breakdowns) scores.push_back(b.score);
  Argmax am = argmax(scores);
  result.chosen_index = am.index;
  result.tie = am.tie();
  result.best_indices = std::move(am.best);
}

}  // namespace pmiir
