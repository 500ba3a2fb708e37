#pragma once

// Latent semantic analysis baseline: a TF.IDF term x document matrix is
// compressed by a rank-k truncated SVD and words are compared by the cosine
// of their rows in U_k L_k.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "pmiir/answer.hpp"
#include "pmiir/corpus.hpp"
#include "pmiir/question.hpp"

namespace pmiir {

struct TermDocMatrix {
  std::vector<std::string> row_terms;   // lexicographic
  std::vector<std::string> col_chunks;  // corpus document order
  Eigen::MatrixXd weights;              // row_terms.size() x col_chunks.size()
};

// weight(t, d) = (1 + log2 tf) * log2(n / df) for tf > 0, otherwise 0.
// Throws UsageError on an empty corpus.
TermDocMatrix build_matrix(const Corpus& corpus);

class SvdFactors {
 public:
  SvdFactors() = default;
  SvdFactors(Eigen::MatrixXd u, Eigen::VectorXd sigma, Eigen::MatrixXd a, std::vector<std::string> row_terms,
             std::vector<std::string> col_chunks);

  [[nodiscard]] std::size_t k() const noexcept { return static_cast<std::size_t>(sigma_.size()); }
  [[nodiscard]] const Eigen::MatrixXd& u() const noexcept { return u_; }
  [[nodiscard]] const Eigen::VectorXd& sigma() const noexcept { return sigma_; }
  [[nodiscard]] const Eigen::MatrixXd& a() const noexcept { return a_; }
  [[nodiscard]] const std::vector<std::string>& row_terms() const noexcept { return row_terms_; }
  [[nodiscard]] const std::vector<std::string>& col_chunks() const noexcept { return col_chunks_; }

  [[nodiscard]] bool has_term(std::string_view term) const;
  // Throws LookupError for unknown terms.
  [[nodiscard]] std::size_t row_of(std::string_view term) const;

  // U_k L_k A_k^T
  [[nodiscard]] Eigen::MatrixXd reconstruct() const;

  // Binary form headed by the magic "LSAFAC1".
  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static SvdFactors load(std::istream& in);
  static SvdFactors load(const std::filesystem::path& path);

 private:
  Eigen::MatrixXd u_;
  Eigen::VectorXd sigma_;
  Eigen::MatrixXd a_;
  std::vector<std::string> row_terms_;
  std::vector<std::string> col_chunks_;
  std::unordered_map<std::string, std::size_t> rows_;
};

// Singular values at or below 1e-10 of the largest count as zero.
constexpr double kRankTolerance = 1e-10;

// 300 when the matrix rank allows it, otherwise min(50, rank).
std::size_t default_rank(std::size_t matrix_rank);

// Keeps the k largest singular triplets. k must lie in [1, min(m, n)] and the
// matrix must not be zero (UsageError). When k exceeds the numerical rank the
// factors are truncated to that rank; check SvdFactors::k().
SvdFactors truncated_svd(const TermDocMatrix& matrix, std::size_t k);
// As above with k = default_rank(numerical rank).
SvdFactors truncated_svd(const TermDocMatrix& matrix);

// Row of U_k L_k for the term; LookupError when unknown.
Eigen::VectorXd word_vector(const SvdFactors& factors, std::string_view term);

// Throws UndefinedSimilarity when either vector is zero.
double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Unknown choices and zero vectors score kMinusInfinity; an unknown problem
// word makes every choice do so.
AnswerResult lsa_answer(const SynonymQuestion& question, const SvdFactors& factors);

}  // namespace pmiir
