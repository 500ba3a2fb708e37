#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pmiir {

struct SynonymQuestion {
  std::string problem;
  std::vector<std::string> choices;
  std::optional<std::string> context_sentence;  // raw text, problem word in [brackets]
  std::optional<std::size_t> answer_index;

  friend bool operator==(const SynonymQuestion&, const SynonymQuestion&) = default;
};

// Throws ValidationError unless: at least two distinct choices, problem not
// among them, answer (if any) in range.
void validate(const SynonymQuestion& question);

}  // namespace pmiir
