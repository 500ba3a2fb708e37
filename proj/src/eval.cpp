#include "pmiir/eval.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pmiir/errors.hpp"

namespace pmiir {

using nlohmann::json;

std::string_view method_name(Method method) {
  switch (method) {
    case Method::S1: return "s1";
    case Method::S2: return "s2";
    case Method::S3: return "s3";
    case Method::S4: return "s4";
    case Method::Lsa: return "lsa";
  }
  return "";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (auto m : {Method::S1, Method::S2, Method::S3, Method::S4, Method::Lsa}) {
    if (lower == method_name(m)) return m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Question files

namespace {

std::string single_word(const json& value, std::string_view field) {
  if (!value.is_string()) {
    throw ValidationError("field '" + std::string(field) + "' must be a string");
  }
  auto words = tokenize(value.get<std::string>());
  if (words.size() != 1) {
    throw ValidationError("field '" + std::string(field) + "' must hold exactly one word, got '" +
                          value.get<std::string>() + "'");
  }
  return std::move(words.front());
}

void check_bracket(const std::string& sentence, const std::string& problem) {
  const auto open = sentence.find('[');
  const auto close = open == std::string::npos ? std::string::npos : sentence.find(']', open);
  if (close == std::string::npos) {
    throw ValidationError("sentence must mark the problem word in [brackets]");
  }
  const auto inside = tokenize(std::string_view(sentence).substr(open + 1, close - open - 1));
  if (inside.size() != 1 || inside.front() != problem) {
    throw ValidationError("sentence bracket does not hold the problem word '" + problem + "'");
  }
}

}  // namespace

SynonymQuestion parse_question_record(std::string_view json_text) {
  json record;
  try {
    record = json::parse(json_text);
  } catch (const json::parse_error&) {
    throw ValidationError("malformed question record");
  }
  if (!record.is_object()) throw ValidationError("question record must be an object");
  if (!record.contains("problem")) throw ValidationError("question record lacks 'problem'");
  if (!record.contains("choices") || !record["choices"].is_array()) {
    throw ValidationError("question record lacks a 'choices' list");
  }
  SynonymQuestion q;
  q.problem = single_word(record["problem"], "problem");
  for (const auto& c : record["choices"]) q.choices.push_back(single_word(c, "choices"));
  if (record.contains("answer") && !record["answer"].is_null()) {
    const auto& a = record["answer"];
    if (!a.is_number_integer() || a.get<long long>() < 0) {
      throw ValidationError("'answer' must be a non-negative integer");
    }
    q.answer_index = a.get<std::size_t>();
  }
  if (record.contains("sentence") && !record["sentence"].is_null()) {
    if (!record["sentence"].is_string()) throw ValidationError("'sentence' must be a string");
    q.context_sentence = record["sentence"].get<std::string>();
    check_bracket(*q.context_sentence, q.problem);
  }
  validate(q);
  return q;
}

std::vector<SynonymQuestion> parse_questions(std::istream& in) {
  std::vector<SynonymQuestion> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_question_record(line));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<SynonymQuestion> parse_questions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read question file " + path.string());
  return parse_questions(in);
}

// ---------------------------------------------------------------------------
// Scoring

double corrected_score(double num_correct, double num_incorrect, std::size_t total, std::size_t n_choices) {
  if (n_choices < 2) throw UsageError("guessing correction needs at least two choices");
  if (total == 0) return std::numeric_limits<double>::quiet_NaN();
  return (num_correct - num_incorrect / static_cast<double>(n_choices - 1)) / static_cast<double>(total);
}

double question_credit(const AnswerResult& answer, std::size_t key) {
  for (auto i : answer.best_indices) {
    if (i == key) return 1.0 / static_cast<double>(answer.best_indices.size());
  }
  return 0.0;
}

EvalReport run_evaluation(const std::vector<SynonymQuestion>& questions, Method method,
                          const EvalBackend& backend, const StopWordList& stoplist) {
  if (method == Method::Lsa ? backend.factors == nullptr : backend.hits == nullptr) {
    throw UsageError(std::string("method ") + std::string(method_name(method)) +
                     (method == Method::Lsa ? " needs LSA factors" : " needs a hit-count backend"));
  }
  EvalReport report;
  report.method = std::string(method_name(method));
  report.total = questions.size();
  double corrected_sum = 0.0;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const auto& q = questions[i];
    if (!q.answer_index) {
      throw UsageError("question " + std::to_string(i + 1) + " ('" + q.problem + "') has no answer key");
    }
    QuestionRecord rec;
    rec.question = q;
    switch (method) {
      case Method::S1: rec.answer = answer_question(q, PmiMethod::S1, stoplist, *backend.hits); break;
      case Method::S2: rec.answer = answer_question(q, PmiMethod::S2, stoplist, *backend.hits); break;
      case Method::S3: rec.answer = answer_question(q, PmiMethod::S3, stoplist, *backend.hits); break;
      case Method::S4: rec.answer = answer_question(q, PmiMethod::S4, stoplist, *backend.hits); break;
      case Method::Lsa: rec.answer = lsa_answer(q, *backend.factors); break;
    }
    rec.correct = rec.answer.chosen_index == *q.answer_index;
    rec.credit = question_credit(rec.answer, *q.answer_index);
    report.num_correct += rec.credit;
    // Per-question penalty so mixed choice counts still correct properly.
    corrected_sum += rec.credit - (1.0 - rec.credit) / static_cast<double>(q.choices.size() - 1);
    report.records.push_back(std::move(rec));
  }
  if (report.total == 0) {
    report.accuracy = std::numeric_limits<double>::quiet_NaN();
    report.corrected_accuracy = std::numeric_limits<double>::quiet_NaN();
  } else {
    report.accuracy = report.num_correct / static_cast<double>(report.total);
    report.corrected_accuracy = corrected_sum / static_cast<double>(report.total);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Reports

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "summary") return ReportFormat::Summary;
  if (name == "table") return ReportFormat::Table;
  if (name == "machine") return ReportFormat::Machine;
  return std::nullopt;
}

std::string format_decimal(double value, int max_decimals) {
  if (std::isnan(value)) return "n/a";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(max_decimals) << value;
  std::string s = os.str();
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string format_percent(double fraction) {
  if (std::isnan(fraction)) return "n/a";
  return format_decimal(fraction * 100.0, 2) + "%";
}

namespace {

std::string score_text(double score) {
  if (std::isinf(score) && score < 0) return "-inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(7) << score;
  return os.str();
}

void emit_summary(const EvalReport& r, std::ostream& out) {
  const std::string correct = format_decimal(r.num_correct, 4) + "/" + std::to_string(r.total);
  const std::string acc = format_percent(r.accuracy);
  const std::string cor = format_percent(r.corrected_accuracy);
  out << std::left << std::setw(8) << "method" << std::setw(12) << "correct" << std::setw(12) << "accuracy"
      << "corrected\n";
  out << std::left << std::setw(8) << r.method << std::setw(12) << correct << std::setw(12) << acc << cor
      << "\n";
}

void emit_table(const EvalReport& r, std::ostream& out) {
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& rec = r.records[i];
    const auto& q = rec.question;
    out << "#" << (i + 1) << " " << q.problem;
    if (rec.answer.context_used) out << "  context=" << *rec.answer.context_used;
    if (rec.answer.context_fallback) out << "  (no context word, scored without context)";
    out << "\n";
    for (std::size_t c = 0; c < rec.answer.breakdowns.size(); ++c) {
      const auto& b = rec.answer.breakdowns[c];
      out << "  " << (c == rec.answer.chosen_index ? '>' : ' ') << (q.answer_index == c ? '*' : ' ') << ' '
          << std::left << std::setw(16) << b.choice << std::setw(14) << score_text(b.score);
      if (!b.query_texts[0].empty()) {
        out << b.numerator_hits << " / " << b.denominator_hits << "    " << b.query_texts[0] << "  |  "
            << b.query_texts[1];
      }
      out << "\n";
    }
    out << "  credit " << format_decimal(rec.credit, 4) << (rec.answer.tie ? "  (tie)" : "") << "\n";
  }
  emit_summary(r, out);
}

json score_json(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return v;
}

double score_from_json(const json& v, double null_value) {
  return v.is_null() ? null_value : v.get<double>();
}

json question_json(const SynonymQuestion& q) {
  json j{{"problem", q.problem}, {"choices", q.choices}};
  j["answer"] = q.answer_index ? json(*q.answer_index) : json(nullptr);
  j["sentence"] = q.context_sentence ? json(*q.context_sentence) : json(nullptr);
  return j;
}

SynonymQuestion question_from_json(const json& j) {
  SynonymQuestion q;
  q.problem = j.at("problem").get<std::string>();
  q.choices = j.at("choices").get<std::vector<std::string>>();
  if (!j.at("answer").is_null()) q.answer_index = j.at("answer").get<std::size_t>();
  if (!j.at("sentence").is_null()) q.context_sentence = j.at("sentence").get<std::string>();
  return q;
}

json report_json(const EvalReport& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    json breakdowns = json::array();
    for (const auto& b : rec.answer.breakdowns) {
      breakdowns.push_back({{"choice", b.choice},
                            {"numerator_hits", b.numerator_hits},
                            {"denominator_hits", b.denominator_hits},
                            {"score", score_json(b.score)},
                            {"queries", b.query_texts}});
    }
    records.push_back({{"question", question_json(rec.question)},
                       {"chosen_index", rec.answer.chosen_index},
                       {"correct", rec.correct},
                       {"tie", rec.answer.tie},
                       {"best_indices", rec.answer.best_indices},
                       {"credit", rec.credit},
                       {"context_used", rec.answer.context_used ? json(*rec.answer.context_used) : json(nullptr)},
                       {"context_fallback", rec.answer.context_fallback},
                       {"breakdowns", std::move(breakdowns)}});
  }
  return {{"method", r.method},
          {"num_correct", r.num_correct},
          {"total", r.total},
          {"accuracy", score_json(r.accuracy)},
          {"corrected_accuracy", score_json(r.corrected_accuracy)},
          {"records", std::move(records)}};
}

}  // namespace

void emit_report(const EvalReport& report, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::Summary: emit_summary(report, out); break;
    case ReportFormat::Table: emit_table(report, out); break;
    case ReportFormat::Machine: out << report_json(report).dump(2) << "\n"; break;
  }
  if (!out) throw InputError("failed writing report");
}

EvalReport read_machine_report(std::istream& in) {
  try {
    const json j = json::parse(in);
    EvalReport r;
    r.method = j.at("method").get<std::string>();
    r.num_correct = j.at("num_correct").get<double>();
    r.total = j.at("total").get<std::size_t>();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.accuracy = score_from_json(j.at("accuracy"), nan);
    r.corrected_accuracy = score_from_json(j.at("corrected_accuracy"), nan);
    for (const auto& jr : j.at("records")) {
      QuestionRecord rec;
      rec.question = question_from_json(jr.at("question"));
      rec.answer.chosen_index = jr.at("chosen_index").get<std::size_t>();
      rec.correct = jr.at("correct").get<bool>();
      rec.answer.tie = jr.at("tie").get<bool>();
      rec.answer.best_indices = jr.at("best_indices").get<std::vector<std::size_t>>();
      rec.credit = jr.at("credit").get<double>();
      if (!jr.at("context_used").is_null()) rec.answer.context_used = jr.at("context_used").get<std::string>();
      rec.answer.context_fallback = jr.at("context_fallback").get<bool>();
      for (const auto& jb : jr.at("breakdowns")) {
        ScoreBreakdown b;
        b.choice = jb.at("choice").get<std::string>();
        b.numerator_hits = jb.at("numerator_hits").get<HitCount>();
        b.denominator_hits = jb.at("denominator_hits").get<HitCount>();
        b.score = score_from_json(jb.at("score"), kMinusInfinity);
        b.query_texts = jb.at("queries").get<std::array<std::string, 2>>();
        rec.answer.breakdowns.push_back(std::move(b));
      }
      r.records.push_back(std::move(rec));
    }
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed machine report: ") + e.what());
  }
}

}  // namespace pmiir
