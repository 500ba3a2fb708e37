#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pmiir::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kUserError = 2;

struct CliConfig {
  std::string corpus;
  std::string index;
  std::string stopwords;
  std::string factors;
  std::string method = "s3";
  std::optional<std::size_t> k;  // LSA rank; default picked from the matrix rank
  std::size_t near_window = 10;
  std::string format = "summary";
  std::string out;
  std::string inject_hits;
};

int cmd_index(const CliConfig& config, std::ostream& out);
int cmd_hits(const CliConfig& config, const std::string& query, std::ostream& out);
int cmd_answer(const CliConfig& config, const std::string& question_record, std::ostream& out);
int cmd_eval(const CliConfig& config, const std::string& questions_path, std::ostream& out);
int cmd_lsa_build(const CliConfig& config, std::ostream& out);
int cmd_lsa_eval(const CliConfig& config, const std::string& questions_path, std::ostream& out);

// Parses argv, dispatches to a subcommand and maps errors to exit statuses:
// 0 success, 1 internal failure, 2 bad input or usage.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmiir::cli
