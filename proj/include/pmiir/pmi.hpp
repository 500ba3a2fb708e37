#pragma once

// PMI-IR: each choice is scored by p(problem | choice) estimated from hit
// counts, hits(co-occurrence query) / hits(choice query), and the question is
// answered by the highest-scoring choice. Four co-occurrence readings:
//
//   S1  problem AND choice                      / choice
//   S2  problem NEAR choice                     / choice
//   S3  (problem NEAR choice) AND NOT ((problem OR choice) NEAR "not")
//                                               / choice AND NOT (choice NEAR "not")
//   S4  S3 with `AND context` added to both sides, context being one word
//       picked from the question's sentence.

#include <optional>
#include <string>
#include <string_view>

#include "pmiir/answer.hpp"
#include "pmiir/corpus.hpp"
#include "pmiir/hit_source.hpp"
#include "pmiir/question.hpp"

namespace pmiir {

enum class PmiMethod { S1, S2, S3, S4 };
enum class QueryPart { Numerator, Denominator };

std::string_view method_name(PmiMethod method);

// hits ratio, or kMinusInfinity when the denominator is zero.
double score_from_hits(HitCount numerator_hits, HitCount denominator_hits);

// S1..S3 only; throws UsageError for S4.
std::string build_score_query(std::string_view problem, std::string_view choice, PmiMethod method,
                              QueryPart part);
std::string build_score4_query(std::string_view problem, std::string_view choice,
                               std::string_view context, QueryPart part);

// S4 requires a context word and the other methods forbid one (UsageError).
ScoreBreakdown score_choice(std::string_view problem, std::string_view choice, PmiMethod method,
                            const std::optional<std::string>& context, const HitSource& source);

// Sentence words minus the problem, the choices and stop words, first
// occurrence kept, in sentence order.
std::vector<std::string> context_candidates(const SynonymQuestion& question, const StopWordList& stoplist);

// Candidate maximising score3(problem, candidate); earliest wins ties. Absent
// when there is no candidate or none has a finite score. Throws UsageError
// when the question has no sentence.
std::optional<std::string> select_context(const SynonymQuestion& question, const StopWordList& stoplist,
                                          const HitSource& source);

// For S4 a context word is selected first; without one the question is
// scored with S3 and `context_fallback` is set.
AnswerResult answer_question(const SynonymQuestion& question, PmiMethod method,
                             const StopWordList& stoplist, const HitSource& source);

}  // namespace pmiir
