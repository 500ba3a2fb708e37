#include "pmiir/cli.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "pmiir/corpus.hpp"
#include "pmiir/errors.hpp"
#include "pmiir/eval.hpp"
#include "pmiir/hit_source.hpp"
#include "pmiir/index.hpp"
#include "pmiir/lsa.hpp"
#include "pmiir/pmi.hpp"
#include "pmiir/query.hpp"

namespace pmiir::cli {

namespace {

// Owns whichever hit-count backend the flags select.
struct HitBackend {
  std::optional<PositionalIndex> index;
  std::unique_ptr<HitSource> source;
};

HitBackend open_hit_backend(const CliConfig& c) {
  HitBackend b;
  if (!c.inject_hits.empty()) {
    b.source = std::make_unique<InjectedHitSource>(InjectedHitSource::load(c.inject_hits));
    return b;
  }
  if (!c.index.empty()) {
    b.index = PositionalIndex::load(c.index);
  } else if (!c.corpus.empty()) {
    b.index = build_index(load_corpus(c.corpus));
  } else {
    throw UsageError("need --index, --corpus or --inject-hits");
  }
  b.source = std::make_unique<IndexHitSource>(*b.index, EvalOptions{c.near_window});
  return b;
}

SvdFactors open_factors(const CliConfig& c) {
  if (!c.factors.empty()) return SvdFactors::load(c.factors);
  if (c.corpus.empty()) throw UsageError("LSA needs --factors or --corpus");
  const TermDocMatrix m = build_matrix(load_corpus(c.corpus));
  return c.k ? truncated_svd(m, *c.k) : truncated_svd(m);
}

StopWordList stoplist_for(const CliConfig& c) {
  return c.stopwords.empty() ? StopWordList::defaults() : StopWordList::load(c.stopwords);
}

Method method_for(const CliConfig& c) {
  auto m = parse_method(c.method);
  if (!m) throw UsageError("unknown method '" + c.method + "'");
  return *m;
}

PmiMethod pmi_method(Method m) {
  switch (m) {
    case Method::S1: return PmiMethod::S1;
    case Method::S2: return PmiMethod::S2;
    case Method::S3: return PmiMethod::S3;
    case Method::S4: return PmiMethod::S4;
    case Method::Lsa: break;
  }
  throw UsageError("lsa is not a PMI method");
}

std::string score_cell(double score, int decimals) {
  if (score == kMinusInfinity) return "-inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << score;
  return os.str();
}

void print_answer(const SynonymQuestion& q, const AnswerResult& r, bool lsa, std::ostream& out) {
  if (!lsa) {
    std::size_t width = 5;
    for (const auto& b : r.breakdowns)
      for (const auto& text : b.query_texts) width = std::max(width, text.size());
    out << std::left << std::setw(static_cast<int>(width + 2)) << "Query" << "Hits\n";
    for (int part = 1; part >= 0; --part) {
      for (const auto& b : r.breakdowns) {
        out << std::left << std::setw(static_cast<int>(width + 2)) << b.query_texts[part]
            << (part == 0 ? b.numerator_hits : b.denominator_hits) << "\n";
      }
    }
    out << "\n";
  }
  std::size_t width = 6;
  for (const auto& b : r.breakdowns) width = std::max(width, q.problem.size() + b.choice.size() + 6);
  out << std::left << std::setw(static_cast<int>(width + 2)) << "Choice" << "Score\n";
  for (const auto& b : r.breakdowns) {
    const std::string label = lsa ? b.choice : "p(" + q.problem + " | " + b.choice + ")";
    out << std::left << std::setw(static_cast<int>(width + 2)) << label;
    if (!lsa) {
      out << std::setw(24) << (std::to_string(b.numerator_hits) + " / " + std::to_string(b.denominator_hits));
    }
    out << score_cell(b.score, lsa ? 4 : 7) << "\n";
  }
  out << "\n";
  if (r.context_used) out << "context: " << *r.context_used << "\n";
  if (r.context_fallback) out << "note: no context word available, scored with s3\n";
  if (r.tie) {
    out << "warning: tie between";
    for (auto i : r.best_indices) out << " " << q.choices[i];
    out << "; picked the first\n";
  }
  out << "answer: " << q.choices[r.chosen_index] << "\n";
}

void write_report(const CliConfig& c, const EvalReport& report, std::ostream& out) {
  auto format = parse_report_format(c.format);
  if (!format) throw UsageError("unknown format '" + c.format + "'");
  if (c.out.empty()) {
    emit_report(report, *format, out);
    return;
  }
  std::ofstream file(c.out, std::ios::trunc);
  if (!file) throw InputError("cannot write report to " + c.out);
  emit_report(report, *format, file);
  if (*format != ReportFormat::Summary) emit_report(report, ReportFormat::Summary, out);
  out << "report written to " << c.out << "\n";
}

}  // namespace

int cmd_index(const CliConfig& c, std::ostream& out) {
  if (c.corpus.empty()) throw UsageError("index needs --corpus");
  const Corpus corpus = load_corpus(c.corpus);
  const PositionalIndex index = build_index(corpus);
  out << index.doc_count() << " documents, " << index.term_count() << " terms\n";
  if (!c.index.empty()) {
    index.save(c.index);
    out << "index written to " << c.index << "\n";
  }
  return kOk;
}

int cmd_hits(const CliConfig& c, const std::string& query, std::ostream& out) {
  // Parse before opening the backend so malformed queries fail fast.
  parse_query(query);
  const HitBackend backend = open_hit_backend(c);
  out << backend.source->hits(query) << "\n";
  return kOk;
}

int cmd_answer(const CliConfig& c, const std::string& record, std::ostream& out) {
  const SynonymQuestion q = parse_question_record(record);
  const Method method = method_for(c);
  if (method == Method::Lsa) {
    const SvdFactors factors = open_factors(c);
    print_answer(q, lsa_answer(q, factors), true, out);
    return kOk;
  }
  const HitBackend backend = open_hit_backend(c);
  print_answer(q, answer_question(q, pmi_method(method), stoplist_for(c), *backend.source), false, out);
  return kOk;
}

int cmd_eval(const CliConfig& c, const std::string& questions_path, std::ostream& out) {
  const auto questions = parse_questions(std::filesystem::path(questions_path));
  const Method method = method_for(c);
  EvalReport report;
  if (method == Method::Lsa) {
    const SvdFactors factors = open_factors(c);
    report = run_evaluation(questions, method, EvalBackend{nullptr, &factors}, stoplist_for(c));
  } else {
    const HitBackend backend = open_hit_backend(c);
    report = run_evaluation(questions, method, EvalBackend{backend.source.get(), nullptr}, stoplist_for(c));
  }
  write_report(c, report, out);
  return kOk;
}

int cmd_lsa_build(const CliConfig& c, std::ostream& out) {
  if (c.corpus.empty()) throw UsageError("lsa-build needs --corpus");
  const std::string& path = c.factors.empty() ? c.out : c.factors;
  if (path.empty()) throw UsageError("lsa-build needs --factors (or --out) for the factor file");
  const TermDocMatrix m = build_matrix(load_corpus(c.corpus));
  const SvdFactors factors = c.k ? truncated_svd(m, *c.k) : truncated_svd(m);
  factors.save(path);
  out << m.row_terms.size() << " terms, " << m.col_chunks.size() << " chunks, k=" << factors.k() << "\n";
  out << "factors written to " << path << "\n";
  return kOk;
}

int cmd_lsa_eval(const CliConfig& c, const std::string& questions_path, std::ostream& out) {
  CliConfig lsa = c;
  lsa.method = "lsa";
  return cmd_eval(lsa, questions_path, out);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"PMI-IR and LSA synonym recognition over a local positional index", "pmiir"};
  app.require_subcommand(1);
  CliConfig c;
  std::size_t k = 0;
  std::string positional;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--corpus", c.corpus, "Corpus directory or JSON-lines record file");
    sub->add_option("--index", c.index, "Serialized positional index");
    sub->add_option("--stopwords", c.stopwords, "Stop-word file (one word per line)");
    sub->add_option("--factors", c.factors, "Serialized LSA factors");
    sub->add_option("--method", c.method, "s1, s2, s3, s4 or lsa")
        ->check(CLI::IsMember({"s1", "s2", "s3", "s4", "lsa"}, CLI::ignore_case));
    sub->add_option("--k", k, "LSA rank")->check(CLI::PositiveNumber);
    sub->add_option("--near-window", c.near_window, "NEAR distance in words")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "summary, table or machine")
        ->check(CLI::IsMember({"summary", "table", "machine"}));
    sub->add_option("--out", c.out, "Output file");
    sub->add_option("--inject-hits", c.inject_hits, "query<TAB>count table used instead of an index");
  };

  auto* index_cmd = app.add_subcommand("index", "Build (and optionally save) the positional index");
  auto* hits_cmd = app.add_subcommand("hits", "Count documents matching a query");
  hits_cmd->add_option("query", positional, "Query text")->required();
  auto* answer_cmd = app.add_subcommand("answer", "Answer one question given as a JSON record");
  answer_cmd->add_option("question", positional, "Question record")->required();
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a method over a question file");
  eval_cmd->add_option("questions", positional, "Question file")->required();
  auto* lsa_build_cmd = app.add_subcommand("lsa-build", "Build and save LSA factors");
  auto* lsa_eval_cmd = app.add_subcommand("lsa-eval", "Evaluate LSA over a question file");
  lsa_eval_cmd->add_option("questions", positional, "Question file")->required();
  for (auto* sub : {index_cmd, hits_cmd, answer_cmd, eval_cmd, lsa_build_cmd, lsa_eval_cmd}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUserError;
  }
  if (k > 0) c.k = k;
  for (auto& ch : c.method) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));

  try {
    if (*index_cmd) return cmd_index(c, out);
    if (*hits_cmd) return cmd_hits(c, positional, out);
    if (*answer_cmd) return cmd_answer(c, positional, out);
    if (*eval_cmd) return cmd_eval(c, positional, out);
    if (*lsa_build_cmd) return cmd_lsa_build(c, out);
    if (*lsa_eval_cmd) return cmd_lsa_eval(c, positional, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUserError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("pmiir");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pmiir::cli
