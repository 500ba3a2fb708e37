#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pmiir/answer.hpp"
#include "pmiir/corpus.hpp"
#include "pmiir/hit_source.hpp"
#include "pmiir/lsa.hpp"
#include "pmiir/pmi.hpp"
#include "pmiir/question.hpp"

namespace pmiir {

enum class Method { S1, S2, S3, S4, Lsa };

std::string_view method_name(Method method);
// Accepts s1..s4 and lsa, case-insensitive.
std::optional<Method> parse_method(std::string_view name);

// One JSON object: {"problem": str, "choices": [str...], "answer": int?,
// "sentence": str?}. Words are normalised; the sentence must contain the
// problem word in square brackets. Throws ValidationError.
SynonymQuestion parse_question_record(std::string_view json_text);
// One record per non-blank line; errors name the line number.
std::vector<SynonymQuestion> parse_questions(std::istream& in);
std::vector<SynonymQuestion> parse_questions(const std::filesystem::path& path);

// (correct - incorrect / (n_choices - 1)) / total
double corrected_score(double num_correct, double num_incorrect, std::size_t total, std::size_t n_choices);

struct QuestionRecord {
  SynonymQuestion question;
  AnswerResult answer;
  bool correct = false;  // chosen_index is the key
  // 1 when the unique best choice is the key, 1/j when the key is one of j
  // tied best choices, else 0.
  double credit = 0.0;

  friend bool operator==(const QuestionRecord&, const QuestionRecord&) = default;
};

struct EvalReport {
  std::string method;
  std::vector<QuestionRecord> records;
  double num_correct = 0.0;
  std::size_t total = 0;
  double accuracy = 0.0;            // NaN when total == 0
  double corrected_accuracy = 0.0;  // NaN when total == 0
};

struct EvalBackend {
  const HitSource* hits = nullptr;       // S1..S4
  const SvdFactors* factors = nullptr;   // LSA
};

double question_credit(const AnswerResult& answer, std::size_t key);

// Every question needs an answer key. Throws UsageError when the backend
// lacks what the method needs.
EvalReport run_evaluation(const std::vector<SynonymQuestion>& questions, Method method,
                          const EvalBackend& backend, const StopWordList& stoplist);

enum class ReportFormat { Summary, Table, Machine };

std::optional<ReportFormat> parse_report_format(std::string_view name);

void emit_report(const EvalReport& report, ReportFormat format, std::ostream& out);
// Inverse of the Machine format.
EvalReport read_machine_report(std::istream& in);

// Trims trailing zeros: 73.75 -> "73.75", 74.0 -> "74".
std::string format_decimal(double value, int max_decimals);
std::string format_percent(double fraction);

}  // namespace pmiir
