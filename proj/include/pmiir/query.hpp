#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pmiir/index.hpp"

namespace pmiir {

enum class QueryOp { And, Or, AndNot, Near };

// Immutable query tree with value semantics; subtrees are shared on copy.
class QueryExpr {
 public:
  static QueryExpr term(std::string token);
  static QueryExpr binary(QueryOp op, QueryExpr left, QueryExpr right);

  [[nodiscard]] bool is_term() const noexcept;
  [[nodiscard]] const std::string& token() const;  // requires is_term()
  [[nodiscard]] QueryOp op() const;                // requires !is_term()
  [[nodiscard]] const QueryExpr& left() const;
  [[nodiscard]] const QueryExpr& right() const;

  // Terms and ORs of terms carry positions; only those may sit under NEAR.
  [[nodiscard]] bool is_positional() const noexcept;

  friend bool operator==(const QueryExpr& a, const QueryExpr& b);

 private:
  struct Node;
  explicit QueryExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline QueryExpr term(std::string token) { return QueryExpr::term(std::move(token)); }
inline QueryExpr and_(QueryExpr l, QueryExpr r) { return QueryExpr::binary(QueryOp::And, std::move(l), std::move(r)); }
inline QueryExpr or_(QueryExpr l, QueryExpr r) { return QueryExpr::binary(QueryOp::Or, std::move(l), std::move(r)); }
inline QueryExpr and_not(QueryExpr l, QueryExpr r) { return QueryExpr::binary(QueryOp::AndNot, std::move(l), std::move(r)); }
inline QueryExpr near(QueryExpr l, QueryExpr r) { return QueryExpr::binary(QueryOp::Near, std::move(l), std::move(r)); }

// Grammar (keywords case-insensitive, one left-associative level for AND,
// AND NOT and NEAR, below which OR binds loosest):
//   expr  := and ("OR" and)*
//   and   := unary (("AND" | "AND NOT" | "NEAR") unary)*
//   unary := WORD | "\"" WORD "\"" | "(" expr ")"
// Throws ParseError carrying the character offset of the problem. When the
// input ends early the offset is that of its last character.
QueryExpr parse_query(std::string_view text);

// Fully parenthesised form with keyword-like terms quoted, e.g.
// `(levied NEAR imposed) AND NOT ((levied OR imposed) NEAR "not")`.
// parse_query(to_string(e)) == e.
std::string to_string(const QueryExpr& expr);

// A single term as query text: quoted when it would read as an operator.
std::string format_term(std::string_view token);

constexpr std::size_t kDefaultNearWindow = 10;

struct EvalOptions {
  // Two occurrences are NEAR when their token positions differ by at most this.
  std::size_t near_window = kDefaultNearWindow;
};

// Sorted, duplicate-free document ordinals.
using DocSet = std::vector<DocOrdinal>;

// Throws QueryError when a NEAR operand is not positional.
DocSet eval_query(const QueryExpr& expr, const PositionalIndex& index, const EvalOptions& options = {});

inline std::size_t hits(const QueryExpr& expr, const PositionalIndex& index, const EvalOptions& options = {}) {
  return eval_query(expr, index, options).size();
}

}  // namespace pmiir
