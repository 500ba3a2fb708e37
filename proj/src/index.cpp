#include "pmiir/index.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "binary_io.hpp"
#include "pmiir/errors.hpp"

namespace pmiir {

namespace {

constexpr std::string_view kMagic = "PMIIDX1\n";

const PostingList& empty_postings() {
  static const PostingList empty;
  return empty;
}

}  // namespace

PositionalIndex PositionalIndex::build(const Corpus& corpus) {
  if (corpus.doc_count() > std::numeric_limits<DocOrdinal>::max()) {
    throw UsageError("corpus too large to index");
  }
  PositionalIndex index;
  index.doc_ids_.reserve(corpus.doc_count());
  index.doc_lengths_.reserve(corpus.doc_count());
  for (std::size_t d = 0; d < corpus.doc_count(); ++d) {
    const auto& doc = corpus[d];
    const auto ord = static_cast<DocOrdinal>(d);
    index.doc_ids_.push_back(doc.doc_id);
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(doc.tokens.size()));
    for (std::size_t p = 0; p < doc.tokens.size(); ++p) {
      auto& list = index.terms_[doc.tokens[p]];
      // Documents arrive in ordinal order, so only the tail entry can match.
      if (list.empty() || list.back().doc != ord) {
        list.push_back({ord, {}});
      }
      list.back().positions.push_back(static_cast<Position>(p));
    }
  }
  return index;
}

const PostingList& PositionalIndex::postings(std::string_view term) const {
  auto it = terms_.find(std::string(term));
  return it == terms_.end() ? empty_postings() : it->second;
}

std::vector<std::string> PositionalIndex::terms() const {
  std::vector<std::string> out;
  out.reserve(terms_.size());
  for (const auto& [term, _] : terms_) {
    out.push_back(term);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void PositionalIndex::save(std::ostream& out) const {
  using namespace detail;
  out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
  write_u32(out, static_cast<std::uint32_t>(doc_ids_.size()));
  for (std::size_t d = 0; d < doc_ids_.size(); ++d) {
    write_string(out, doc_ids_[d]);
    write_u32(out, doc_lengths_[d]);
  }
  const auto sorted = terms();
  write_u64(out, sorted.size());
  for (const auto& term : sorted) {
    const auto& list = terms_.at(term);
    write_string(out, term);
    write_u32(out, static_cast<std::uint32_t>(list.size()));
    for (const auto& posting : list) {
      write_u32(out, posting.doc);
      write_u32(out, static_cast<std::uint32_t>(posting.positions.size()));
      for (auto p : posting.positions) {
        write_u32(out, p);
      }
    }
  }
  if (!out) {
    throw InputError("failed writing index");
  }
}

void PositionalIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InputError("cannot write " + path.string());
  }
  save(out);
}

PositionalIndex PositionalIndex::load(std::istream& in) {
  using namespace detail;
  expect_magic(in, kMagic);
  PositionalIndex index;
  const std::uint32_t docs = read_u32(in);
  index.doc_ids_.reserve(docs);
  index.doc_lengths_.reserve(docs);
  for (std::uint32_t d = 0; d < docs; ++d) {
    index.doc_ids_.push_back(read_string(in));
    index.doc_lengths_.push_back(read_u32(in));
  }
  std::vector<std::uint64_t> indexed_tokens(docs, 0);
  const std::uint64_t term_count = read_u64(in);
  for (std::uint64_t t = 0; t < term_count; ++t) {
    std::string term = read_string(in);
    const std::uint32_t entries = read_u32(in);
    PostingList list;
    list.reserve(entries);
    for (std::uint32_t e = 0; e < entries; ++e) {
      Posting posting{read_u32(in), {}};
      if (posting.doc >= docs || (!list.empty() && posting.doc <= list.back().doc)) {
        throw ValidationError("corrupt posting list for '" + term + "'");
      }
      const std::uint32_t count = read_u32(in);
      if (count == 0) {
        throw ValidationError("empty position list for '" + term + "'");
      }
      posting.positions.reserve(count);
      for (std::uint32_t i = 0; i < count; ++i) {
        const Position p = read_u32(in);
        if (p >= index.doc_lengths_[posting.doc] ||
            (!posting.positions.empty() && p <= posting.positions.back())) {
          throw ValidationError("corrupt positions for '" + term + "'");
        }
        posting.positions.push_back(p);
      }
      indexed_tokens[posting.doc] += count;
      list.push_back(std::move(posting));
    }
    if (!index.terms_.emplace(std::move(term), std::move(list)).second) {
      throw ValidationError("duplicate term in index file");
    }
  }
  for (std::uint32_t d = 0; d < docs; ++d) {
    if (indexed_tokens[d] != index.doc_lengths_[d]) {
      throw ValidationError("index does not cover every token of '" + index.doc_ids_[d] + "'");
    }
  }
  return index;
}

PositionalIndex PositionalIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot read index " + path.string());
  }
  return load(in);
}

}  // namespace pmiir
