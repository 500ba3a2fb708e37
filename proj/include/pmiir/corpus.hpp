#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace pmiir {

struct Document {
  std::string doc_id;
  std::vector<std::string> tokens;  // position == index

  friend bool operator==(const Document&, const Document&) = default;
};

class Corpus {
 public:
  Corpus() = default;
  // Sorts documents by doc_id; throws ValidationError on a duplicate id.
  explicit Corpus(std::vector<Document> documents);

  [[nodiscard]] const std::vector<Document>& documents() const noexcept { return documents_; }
  [[nodiscard]] std::size_t doc_count() const noexcept { return documents_.size(); }
  [[nodiscard]] bool empty() const noexcept { return documents_.empty(); }
  [[nodiscard]] const Document& operator[](std::size_t i) const { return documents_[i]; }

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<Document> documents_;
};

// Lowercased maximal runs of ASCII letters. An apostrophe stays in a token only
// when it sits between two letters ("don't"); everything else separates.
std::vector<std::string> tokenize(std::string_view raw_text);

// `source` is either a directory (one document per regular file, doc_id = file
// name) or a line-delimited JSON file of {"id": ..., "text": ...} records.
Corpus load_corpus(const std::filesystem::path& source);
Corpus load_corpus_records(std::istream& in);

class StopWordList {
 public:
  StopWordList() = default;
  explicit StopWordList(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  // The shipped list of common English function words.
  static const StopWordList& defaults();
  // One token per line, `#` starts a comment.
  static StopWordList load(const std::filesystem::path& path);
  static StopWordList parse(std::istream& in);

  [[nodiscard]] bool contains(std::string_view token) const;
  [[nodiscard]] std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

inline bool is_stopword(std::string_view token, const StopWordList& list) {
  return list.contains(token);
}

}  // namespace pmiir
