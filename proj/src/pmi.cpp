#include "pmiir/pmi.hpp"

#include <algorithm>
#include <unordered_set>

#include "pmiir/errors.hpp"

namespace pmiir {

std::string_view method_name(PmiMethod method) {
  switch (method) {
    case PmiMethod::S1: return "s1";
    case PmiMethod::S2: return "s2";
    case PmiMethod::S3: return "s3";
    case PmiMethod::S4: return "s4";
  }
  return "";
}

double score_from_hits(HitCount numerator_hits, HitCount denominator_hits) {
  if (denominator_hits == 0) return kMinusInfinity;
  return static_cast<double>(numerator_hits) / static_cast<double>(denominator_hits);
}

namespace {

std::string cat(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) out += p;
  return out;
}

}  // namespace

std::string build_score_query(std::string_view problem_word, std::string_view choice_word,
                              PmiMethod method, QueryPart part) {
  const std::string problem = format_term(problem_word);
  const std::string choice = format_term(choice_word);
  const bool num = part == QueryPart::Numerator;
  switch (method) {
    case PmiMethod::S1:
      return num ? cat({problem, " AND ", choice}) : choice;
    case PmiMethod::S2:
      return num ? cat({problem, " NEAR ", choice}) : choice;
    case PmiMethod::S3:
      return num ? cat({"(", problem, " NEAR ", choice, ") AND NOT ((", problem, " OR ", choice,
                        ") NEAR \"not\")"})
                 : cat({choice, " AND NOT (", choice, " NEAR \"not\")"});
    case PmiMethod::S4:
      break;
  }
  throw UsageError("S4 queries need a context word");
}

std::string build_score4_query(std::string_view problem_word, std::string_view choice_word,
                               std::string_view context_word, QueryPart part) {
  const std::string problem = format_term(problem_word);
  const std::string choice = format_term(choice_word);
  const std::string context = format_term(context_word);
  if (part == QueryPart::Numerator) {
    return cat({"(", problem, " NEAR ", choice, ") AND ", context, " AND NOT ((", problem, " OR ",
                choice, ") NEAR \"not\")"});
  }
  return cat({choice, " AND ", context, " AND NOT (", choice, " NEAR \"not\")"});
}

ScoreBreakdown score_choice(std::string_view problem, std::string_view choice, PmiMethod method,
                            const std::optional<std::string>& context, const HitSource& source) {
  ScoreBreakdown b;
  b.choice = std::string(choice);
  if (method == PmiMethod::S4) {
    if (!context) throw UsageError("score4 needs a context word");
    b.query_texts = {build_score4_query(problem, choice, *context, QueryPart::Numerator),
                     build_score4_query(problem, choice, *context, QueryPart::Denominator)};
  } else {
    if (context) throw UsageError("only score4 takes a context word");
    b.query_texts = {build_score_query(problem, choice, method, QueryPart::Numerator),
                     build_score_query(problem, choice, method, QueryPart::Denominator)};
  }
  b.numerator_hits = source.hits(b.query_texts[0]);
  b.denominator_hits = source.hits(b.query_texts[1]);
  b.score = score_from_hits(b.numerator_hits, b.denominator_hits);
  return b;
}

std::vector<std::string> context_candidates(const SynonymQuestion& question, const StopWordList& stoplist) {
  if (!question.context_sentence) {
    throw UsageError("question '" + question.problem + "' has no context sentence");
  }
  std::unordered_set<std::string> excluded(question.choices.begin(), question.choices.end());
  excluded.insert(question.problem);
  std::vector<std::string> out;
  for (auto& word : tokenize(*question.context_sentence)) {
    if (is_stopword(word, stoplist) || !excluded.insert(word).second) continue;
    out.push_back(std::move(word));
  }
  return out;
}

std::optional<std::string> select_context(const SynonymQuestion& question, const StopWordList& stoplist,
                                          const HitSource& source) {
  std::optional<std::string> best;
  double best_score = kMinusInfinity;
  for (const auto& candidate : context_candidates(question, stoplist)) {
    const double s = score_choice(question.problem, candidate, PmiMethod::S3, std::nullopt, source).score;
    // Strict comparison keeps the earliest candidate on ties and rejects -inf.
    if (s > best_score) {
      best_score = s;
      best = candidate;
    }
  }
  return best;
}

AnswerResult answer_question(const SynonymQuestion& question, PmiMethod method,
                             const StopWordList& stoplist, const HitSource& source) {
  AnswerResult result;
  std::optional<std::string> context;
  if (method == PmiMethod::S4) {
    if (question.context_sentence) {
      context = select_context(question, stoplist, source);
    }
    if (!context) {
      method = PmiMethod::S3;
      result.context_fallback = true;
    }
  }
  result.context_used = context;
  result.breakdowns.reserve(question.choices.size());
  for (const auto& choice : question.choices) {
    result.breakdowns.push_back(score_choice(question.problem, choice, method, context, source));
  }
  settle(result);
  return result;
}

}  // namespace pmiir
