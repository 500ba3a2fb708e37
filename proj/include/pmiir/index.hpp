#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pmiir/corpus.hpp"

namespace pmiir {

using DocOrdinal = std::uint32_t;
using Position = std::uint32_t;

struct Posting {
  DocOrdinal doc;
  std::vector<Position> positions;  // non-empty, strictly increasing

  friend bool operator==(const Posting&, const Posting&) = default;
};

// Entries ordered by strictly increasing doc ordinal.
using PostingList = std::vector<Posting>;

class PositionalIndex {
 public:
  PositionalIndex() = default;

  static PositionalIndex build(const Corpus& corpus);

  [[nodiscard]] std::size_t doc_count() const noexcept { return doc_ids_.size(); }
  [[nodiscard]] std::size_t term_count() const noexcept { return terms_.size(); }
  [[nodiscard]] const std::string& doc_id(DocOrdinal ord) const { return doc_ids_.at(ord); }
  [[nodiscard]] std::uint32_t doc_length(DocOrdinal ord) const { return doc_lengths_.at(ord); }

  // Empty list for unknown terms.
  [[nodiscard]] const PostingList& postings(std::string_view term) const;
  [[nodiscard]] std::size_t doc_frequency(std::string_view term) const {
    return postings(term).size();
  }

  // Terms in lexicographic order.
  [[nodiscard]] std::vector<std::string> terms() const;

  // Binary form headed by the magic "PMIIDX1"; all integers little-endian.
  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static PositionalIndex load(std::istream& in);
  static PositionalIndex load(const std::filesystem::path& path);

 private:
  std::unordered_map<std::string, PostingList> terms_;
  std::vector<std::string> doc_ids_;
  std::vector<std::uint32_t> doc_lengths_;
};

inline PositionalIndex build_index(const Corpus& corpus) { return PositionalIndex::build(corpus); }

}  // namespace pmiir
