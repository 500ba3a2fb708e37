#include "pmiir/query.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <optional>

#include "pmiir/corpus.hpp"
#include "pmiir/errors.hpp"

namespace pmiir {

struct QueryExpr::Node {
  bool is_term = false;
  std::string token;
  QueryOp op = QueryOp::And;
  std::optional<QueryExpr> left;
  std::optional<QueryExpr> right;
};

QueryExpr QueryExpr::term(std::string token) {
  auto node = std::make_shared<Node>();
  node->is_term = true;
  node->token = std::move(token);
  return QueryExpr(std::move(node));
}

QueryExpr QueryExpr::binary(QueryOp op, QueryExpr left, QueryExpr right) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->left = std::move(left);
  node->right = std::move(right);
  return QueryExpr(std::move(node));
}

bool QueryExpr::is_term() const noexcept { return node_->is_term; }

const std::string& QueryExpr::token() const {
  if (!node_->is_term) throw UsageError("not a term node");
  return node_->token;
}

QueryOp QueryExpr::op() const {
  if (node_->is_term) throw UsageError("term node has no operator");
  return node_->op;
}

const QueryExpr& QueryExpr::left() const {
  if (node_->is_term) throw UsageError("term node has no operands");
  return *node_->left;
}

const QueryExpr& QueryExpr::right() const {
  if (node_->is_term) throw UsageError("term node has no operands");
  return *node_->right;
}

bool QueryExpr::is_positional() const noexcept {
  if (node_->is_term) return true;
  return node_->op == QueryOp::Or && node_->left->is_positional() && node_->right->is_positional();
}

bool operator==(const QueryExpr& a, const QueryExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_term() != b.is_term()) return false;
  if (a.is_term()) return a.token() == b.token();
  return a.op() == b.op() && a.left() == b.left() && a.right() == b.right();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class TokKind { Word, Quoted, LParen, RParen, And, Or, Not, Near, End };

struct Tok {
  TokKind kind;
  std::string text;
  std::size_t offset;
};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

std::vector<Tok> lex(std::string_view text) {
  std::vector<Tok> toks;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      toks.push_back({TokKind::LParen, "(", i++});
    } else if (c == ')') {
      toks.push_back({TokKind::RParen, ")", i++});
    } else if (c == '"') {
      const std::size_t close = text.find('"', i + 1);
      if (close == std::string_view::npos) {
        throw ParseError("unterminated quote", i);
      }
      toks.push_back({TokKind::Quoted, std::string(text.substr(i + 1, close - i - 1)), i});
      i = close + 1;
    } else {
      const std::size_t start = i;
      while (i < n && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
             text[i] != ')' && text[i] != '"') {
        ++i;
      }
      std::string word(text.substr(start, i - start));
      TokKind kind = TokKind::Word;
      if (iequals(word, "and")) kind = TokKind::And;
      else if (iequals(word, "or")) kind = TokKind::Or;
      else if (iequals(word, "not")) kind = TokKind::Not;
      else if (iequals(word, "near")) kind = TokKind::Near;
      toks.push_back({kind, std::move(word), start});
    }
  }
  toks.push_back({TokKind::End, "", n == 0 ? 0 : n - 1});
  return toks;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  QueryExpr parse() {
    if (peek().kind == TokKind::End) {
      throw ParseError("empty query", peek().offset);
    }
    QueryExpr e = parse_or();
    const Tok& t = peek();
    if (t.kind == TokKind::RParen) {
      throw ParseError("unbalanced ')'", t.offset);
    }
    if (t.kind != TokKind::End) {
      throw ParseError("expected an operator before '" + t.text + "'", t.offset);
    }
    return e;
  }

 private:
  const Tok& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Tok& next() {
    const Tok& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  QueryExpr parse_or() {
    QueryExpr e = parse_and();
    while (peek().kind == TokKind::Or) {
      next();
      e = or_(std::move(e), parse_and());
    }
    return e;
  }

  QueryExpr parse_and() { return parse_and_tail(parse_unary()); }

  QueryExpr parse_and_tail(QueryExpr e) {
    for (;;) {
      const Tok& t = peek();
      if (t.kind == TokKind::And) {
        next();
        if (peek().kind == TokKind::Not) {
          next();
          e = and_not(std::move(e), parse_unary());
        } else {
          e = and_(std::move(e), parse_unary());
        }
      } else if (t.kind == TokKind::Near) {
        next();
        e = near(std::move(e), parse_unary());
      } else if (t.kind == TokKind::Not) {
        throw ParseError("NOT must follow AND (quote \"not\" to search for the word)", t.offset);
      } else {
        return e;
      }
    }
  }

  QueryExpr parse_unary() {
    const Tok& t = next();
    switch (t.kind) {
      case TokKind::Word:
        return term_from(t, false);
      case TokKind::Quoted:
        return term_from(t, true);
      case TokKind::LParen: {
        QueryExpr e = parse_or();
        const Tok& close = peek();
        if (close.kind != TokKind::RParen) {
          if (close.kind == TokKind::End) {
            throw ParseError("missing ')'", close.offset);
          }
          throw ParseError("expected ')' before '" + close.text + "'", close.offset);
        }
        next();
        return e;
      }
      case TokKind::End:
        throw ParseError("unexpected end of query", t.offset);
      case TokKind::RParen:
        throw ParseError("unbalanced ')'", t.offset);
      default:
        throw ParseError("expected a term before operator '" + t.text + "'", t.offset);
    }
  }

  static QueryExpr term_from(const Tok& t, bool quoted) {
    auto words = tokenize(t.text);
    if (words.empty()) {
      throw ParseError(quoted ? "empty quoted term" : "term '" + t.text + "' has no letters", t.offset);
    }
    if (words.size() > 1) {
      throw ParseError(quoted ? "multi-word quoted phrase \"" + t.text + "\""
                              : "term '" + t.text + "' splits into several words",
                       t.offset);
    }
    return term(std::move(words.front()));
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

QueryExpr parse_query(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

bool is_keyword(std::string_view token) {
  return token == "and" || token == "or" || token == "not" || token == "near";
}

std::string_view op_name(QueryOp op) {
  switch (op) {
    case QueryOp::And: return "AND";
    case QueryOp::Or: return "OR";
    case QueryOp::AndNot: return "AND NOT";
    case QueryOp::Near: return "NEAR";
  }
  return "";
}

void print(const QueryExpr& e, std::string& out, bool wrap) {
  if (e.is_term()) {
    out += format_term(e.token());
    return;
  }
  if (wrap) out += '(';
  print(e.left(), out, true);
  out += ' ';
  out += op_name(e.op());
  out += ' ';
  print(e.right(), out, true);
  if (wrap) out += ')';
}

}  // namespace

std::string format_term(std::string_view token) {
  if (is_keyword(token)) {
    return "\"" + std::string(token) + "\"";
  }
  return std::string(token);
}

std::string to_string(const QueryExpr& expr) {
  std::string out;
  print(expr, out, false);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

DocSet docs_of(const PostingList& list) {
  DocSet out;
  out.reserve(list.size());
  for (const auto& p : list) out.push_back(p.doc);
  return out;
}

PostingList merge_positions(const PostingList& a, const PostingList& b) {
  PostingList out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->doc < ib->doc)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->doc < ia->doc) {
      out.push_back(*ib++);
    } else {
      Posting merged{ia->doc, {}};
      std::set_union(ia->positions.begin(), ia->positions.end(), ib->positions.begin(),
                     ib->positions.end(), std::back_inserter(merged.positions));
      out.push_back(std::move(merged));
      ++ia;
      ++ib;
    }
  }
  return out;
}

PostingList positional(const QueryExpr& e, const PositionalIndex& index) {
  if (e.is_term()) {
    return index.postings(e.token());
  }
  if (e.op() != QueryOp::Or) {
    throw QueryError("NEAR operand '" + to_string(e) + "' has no word positions");
  }
  return merge_positions(positional(e.left(), index), positional(e.right(), index));
}

// Some pa in a, pb in b with pa != pb and |pa - pb| <= window. Distinct
// positions are distinct occurrences, which is what makes `t NEAR t` need two.
bool positions_near(const std::vector<Position>& a, const std::vector<Position>& b, std::size_t window) {
  std::size_t j = 0;
  for (const Position pa : a) {
    const std::size_t lo = pa >= window ? pa - window : 0;
    while (j < b.size() && b[j] < lo) ++j;
    for (std::size_t k = j; k < b.size() && b[k] <= pa + window; ++k) {
      if (b[k] != pa) return true;
    }
  }
  return false;
}

DocSet eval_near(const QueryExpr& e, const PositionalIndex& index, std::size_t window) {
  const PostingList a = positional(e.left(), index);
  const PostingList b = positional(e.right(), index);
  DocSet out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->doc < ib->doc) {
      ++ia;
    } else if (ib->doc < ia->doc) {
      ++ib;
    } else {
      if (positions_near(ia->positions, ib->positions, window)) out.push_back(ia->doc);
      ++ia;
      ++ib;
    }
  }
  return out;
}

DocSet eval(const QueryExpr& e, const PositionalIndex& index, const EvalOptions& options) {
  if (e.is_term()) {
    return docs_of(index.postings(e.token()));
  }
  if (e.op() == QueryOp::Near) {
    return eval_near(e, index, options.near_window);
  }
  const DocSet l = eval(e.left(), index, options);
  const DocSet r = eval(e.right(), index, options);
  DocSet out;
  switch (e.op()) {
    case QueryOp::And:
      std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(out));
      break;
    case QueryOp::Or:
      std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(out));
      break;
    case QueryOp::AndNot:
      std::set_difference(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(out));
      break;
    case QueryOp::Near:
      break;
  }
  return out;
}

}  // namespace

DocSet eval_query(const QueryExpr& expr, const PositionalIndex& index, const EvalOptions& options) {
  return eval(expr, index, options);
}

}  // namespace pmiir
