#include "pmiir/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pmiir/errors.hpp"

namespace pmiir {

namespace {

bool is_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// Function words only. Content words that commonly survive as context
// candidates ("every", "year", "early", ...) must stay out of this list.
constexpr std::string_view kDefaultStopWords[] = {
    "a",    "about", "an",    "and",  "are",   "as",    "at",    "be",   "been",
    "but",  "by",    "for",   "from", "had",   "has",   "have",  "he",   "her",
    "his",  "i",     "if",    "in",   "into",  "is",    "it",    "its",  "me",
    "my",   "not",   "of",    "on",   "or",    "our",   "she",   "so",   "than",
    "that", "the",   "their", "them", "then",  "there", "these", "they", "this",
    "those", "to",   "was",   "we",   "were",  "what",  "which", "who",  "will",
    "with", "you",   "your",
};

}  // namespace

std::vector<std::string> tokenize(std::string_view raw_text) {
  std::vector<std::string> tokens;
  std::string current;
  const std::size_t n = raw_text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = raw_text[i];
    if (is_letter(c)) {
      current.push_back(to_lower(c));
    } else if (c == '\'' && !current.empty() && i + 1 < n && is_letter(raw_text[i + 1])) {
      current.push_back(c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) {
    tokens.push_back(std::move(current));
  }
  return tokens;
}

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  std::sort(documents_.begin(), documents_.end(),
            [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });
  auto dup = std::adjacent_find(
      documents_.begin(), documents_.end(),
      [](const Document& a, const Document& b) { return a.doc_id == b.doc_id; });
  if (dup != documents_.end()) {
    throw ValidationError("duplicate document id '" + dup->doc_id + "'");
  }
}

Corpus load_corpus_records(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": malformed record");
    }
    if (!record.is_object() || !record.contains("id") || !record["id"].is_string() ||
        !record.contains("text") || !record["text"].is_string()) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": record needs string fields 'id' and 'text'");
    }
    docs.push_back({record["id"].get<std::string>(), tokenize(record["text"].get<std::string>())});
  }
  return Corpus(std::move(docs));
}

Corpus load_corpus(const std::filesystem::path& source) {
  std::error_code ec;
  if (std::filesystem::is_directory(source, ec)) {
    std::vector<Document> docs;
    for (const auto& entry : std::filesystem::directory_iterator(source, ec)) {
      if (!entry.is_regular_file()) {
        continue;
      }
      docs.push_back({entry.path().filename().string(), tokenize(read_file(entry.path()))});
    }
    if (ec) {
      throw InputError("cannot list " + source.string() + ": " + ec.message());
    }
    return Corpus(std::move(docs));
  }
  if (!std::filesystem::is_regular_file(source, ec)) {
    throw InputError("corpus source not found: " + source.string());
  }
  std::ifstream in(source);
  if (!in) {
    throw InputError("cannot read " + source.string());
  }
  return load_corpus_records(in);
}

const StopWordList& StopWordList::defaults() {
  static const StopWordList list = [] {
    std::unordered_set<std::string> words;
    for (auto w : kDefaultStopWords) {
      words.emplace(w);
    }
    return StopWordList(std::move(words));
  }();
  return list;
}

StopWordList StopWordList::parse(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    for (auto& token : tokenize(line)) {
      words.insert(std::move(token));
    }
  }
  return StopWordList(std::move(words));
}

StopWordList StopWordList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read stop-word file " + path.string());
  }
  return parse(in);
}

bool StopWordList::contains(std::string_view token) const {
  if (token.empty()) {
    return false;
  }
  return words_.contains(std::string(token));
}

}  // namespace pmiir
