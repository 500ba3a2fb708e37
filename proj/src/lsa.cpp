#include "pmiir/lsa.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "binary_io.hpp"
#include "pmiir/errors.hpp"
#include "pmiir/svd.hpp"

namespace pmiir {

namespace {

constexpr std::string_view kMagic = "LSAFAC1\n";

}  // namespace

TermDocMatrix build_matrix(const Corpus& corpus) {
  if (corpus.empty()) {
    throw UsageError("cannot build a term-document matrix from an empty corpus");
  }
  // term -> (doc -> tf)
  std::map<std::string, std::map<std::size_t, std::size_t>> counts;
  for (std::size_t d = 0; d < corpus.doc_count(); ++d) {
    for (const auto& tok : corpus[d].tokens) {
      ++counts[tok][d];
    }
  }
  TermDocMatrix m;
  m.row_terms.reserve(counts.size());
  for (const auto& doc : corpus.documents()) m.col_chunks.push_back(doc.doc_id);
  m.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(counts.size()),
                                    static_cast<Eigen::Index>(corpus.doc_count()));
  const double n = static_cast<double>(corpus.doc_count());
  Eigen::Index row = 0;
  for (const auto& [term, per_doc] : counts) {
    m.row_terms.push_back(term);
    const double idf = std::log2(n / static_cast<double>(per_doc.size()));
    for (const auto& [doc, tf] : per_doc) {
      m.weights(row, static_cast<Eigen::Index>(doc)) = (1.0 + std::log2(static_cast<double>(tf))) * idf;
    }
    ++row;
  }
  return m;
}

SvdFactors::SvdFactors(Eigen::MatrixXd u, Eigen::VectorXd sigma, Eigen::MatrixXd a,
                       std::vector<std::string> row_terms, std::vector<std::string> col_chunks)
    : u_(std::move(u)),
      sigma_(std::move(sigma)),
      a_(std::move(a)),
      row_terms_(std::move(row_terms)),
      col_chunks_(std::move(col_chunks)) {
  if (u_.rows() != static_cast<Eigen::Index>(row_terms_.size()) ||
      a_.rows() != static_cast<Eigen::Index>(col_chunks_.size()) || u_.cols() != sigma_.size() ||
      a_.cols() != sigma_.size()) {
    throw ValidationError("inconsistent SVD factor shapes");
  }
  for (std::size_t i = 0; i < row_terms_.size(); ++i) {
    if (!rows_.emplace(row_terms_[i], i).second) {
      throw ValidationError("duplicate term '" + row_terms_[i] + "' in factors");
    }
  }
}

bool SvdFactors::has_term(std::string_view term) const { return rows_.contains(std::string(term)); }

std::size_t SvdFactors::row_of(std::string_view term) const {
  auto it = rows_.find(std::string(term));
  if (it == rows_.end()) throw LookupError("term '" + std::string(term) + "' not in LSA vocabulary");
  return it->second;
}

Eigen::MatrixXd SvdFactors::reconstruct() const { return u_ * sigma_.asDiagonal() * a_.transpose(); }

void SvdFactors::save(std::ostream& out) const {
  using namespace detail;
  out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
  write_u64(out, k());
  write_u64(out, row_terms_.size());
  write_u64(out, col_chunks_.size());
  for (const auto& t : row_terms_) write_string(out, t);
  for (const auto& c : col_chunks_) write_string(out, c);
  for (Eigen::Index i = 0; i < sigma_.size(); ++i) write_f64(out, sigma_(i));
  for (Eigen::Index j = 0; j < u_.cols(); ++j)
    for (Eigen::Index i = 0; i < u_.rows(); ++i) write_f64(out, u_(i, j));
  for (Eigen::Index j = 0; j < a_.cols(); ++j)
    for (Eigen::Index i = 0; i < a_.rows(); ++i) write_f64(out, a_(i, j));
  if (!out) throw InputError("failed writing LSA factors");
}

void SvdFactors::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  save(out);
}

SvdFactors SvdFactors::load(std::istream& in) {
  using namespace detail;
  expect_magic(in, kMagic);
  const auto k = static_cast<Eigen::Index>(read_u64(in));
  const auto m = static_cast<Eigen::Index>(read_u64(in));
  const auto n = static_cast<Eigen::Index>(read_u64(in));
  if (k < 1 || k > std::min(m, n)) throw ValidationError("bad rank in LSA factor file");
  std::vector<std::string> terms(static_cast<std::size_t>(m));
  std::vector<std::string> chunks(static_cast<std::size_t>(n));
  for (auto& t : terms) t = read_string(in);
  for (auto& c : chunks) c = read_string(in);
  Eigen::VectorXd sigma(k);
  for (Eigen::Index i = 0; i < k; ++i) sigma(i) = read_f64(in);
  Eigen::MatrixXd u(m, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < m; ++i) u(i, j) = read_f64(in);
  Eigen::MatrixXd a(n, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = read_f64(in);
  return SvdFactors(std::move(u), std::move(sigma), std::move(a), std::move(terms), std::move(chunks));
}

SvdFactors SvdFactors::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read LSA factors " + path.string());
  return load(in);
}

std::size_t default_rank(std::size_t matrix_rank) {
  if (matrix_rank >= 300) return 300;
  return std::min<std::size_t>(50, matrix_rank);
}

namespace {

SvdFactors truncate(const TermDocMatrix& matrix, const SvdResult& svd, std::size_t k) {
  const auto kk = static_cast<Eigen::Index>(k);
  return SvdFactors(svd.u.leftCols(kk), svd.singular_values.head(kk), svd.v.leftCols(kk), matrix.row_terms,
                    matrix.col_chunks);
}

SvdResult checked_svd(const TermDocMatrix& matrix, std::size_t& rank) {
  if (matrix.weights.size() == 0 || matrix.weights.isZero(0.0)) {
    throw UsageError("term-document matrix is all zero; nothing to decompose");
  }
  SvdResult svd = jacobi_svd(matrix.weights);
  rank = numerical_rank(svd.singular_values, kRankTolerance);
  return svd;
}

}  // namespace

SvdFactors truncated_svd(const TermDocMatrix& matrix, std::size_t k) {
  const auto limit = static_cast<std::size_t>(std::min(matrix.weights.rows(), matrix.weights.cols()));
  if (k < 1 || k > limit) {
    throw UsageError("rank k=" + std::to_string(k) + " outside [1, " + std::to_string(limit) + "]");
  }
  std::size_t rank = 0;
  const SvdResult svd = checked_svd(matrix, rank);
  return truncate(matrix, svd, std::min(k, rank));
}

SvdFactors truncated_svd(const TermDocMatrix& matrix) {
  std::size_t rank = 0;
  const SvdResult svd = checked_svd(matrix, rank);
  return truncate(matrix, svd, default_rank(rank));
}

Eigen::VectorXd word_vector(const SvdFactors& factors, std::string_view term) {
  const auto row = static_cast<Eigen::Index>(factors.row_of(term));
  return factors.u().row(row).transpose().cwiseProduct(factors.sigma());
}

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw UndefinedSimilarity("cosine with a zero vector is undefined");
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

AnswerResult lsa_answer(const SynonymQuestion& question, const SvdFactors& factors) {
  AnswerResult result;
  const bool known_problem = factors.has_term(question.problem);
  Eigen::VectorXd problem;
  if (known_problem) problem = word_vector(factors, question.problem);
  for (const auto& choice : question.choices) {
    ScoreBreakdown b;
    b.choice = choice;
    if (known_problem && factors.has_term(choice)) {
      try {
        b.score = cosine_similarity(problem, word_vector(factors, choice));
      } catch (const UndefinedSimilarity&) {
        b.score = kMinusInfinity;
      }
    }
    result.breakdowns.push_back(std::move(b));
  }
  settle(result);
  return result;
}

}  // namespace pmiir
