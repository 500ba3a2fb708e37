#include "pmiir/hit_source.hpp"

#include <fstream>

#include "pmiir/errors.hpp"

namespace pmiir {

HitCount IndexHitSource::hits(std::string_view query) const {
  return pmiir::hits(parse_query(query), index_, options_);
}

void InjectedHitSource::set(std::string_view query, HitCount count) {
  table_[to_string(parse_query(query))] = count;
}

InjectedHitSource InjectedHitSource::parse(std::istream& in) {
  InjectedHitSource source;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') {
      continue;
    }
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw ValidationError("hits table line " + std::to_string(line_no) + ": expected query<TAB>count");
    }
    std::string digits;
    for (char c : line.substr(tab + 1)) {
      if (c >= '0' && c <= '9') {
        digits.push_back(c);
      } else if (c != ',' && c != ' ') {
        throw ValidationError("hits table line " + std::to_string(line_no) + ": bad count");
      }
    }
    if (digits.empty()) {
      throw ValidationError("hits table line " + std::to_string(line_no) + ": missing count");
    }
    try {
      source.set(line.substr(0, tab), std::stoull(digits));
    } catch (const ParseError& e) {
      throw ValidationError("hits table line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw ValidationError("hits table line " + std::to_string(line_no) + ": count out of range");
    }
  }
  return source;
}

InjectedHitSource InjectedHitSource::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read hits table " + path.string());
  }
  return parse(in);
}

HitCount InjectedHitSource::hits(std::string_view query) const {
  const std::string key = to_string(parse_query(query));
  auto it = table_.find(key);
  if (it == table_.end()) {
    throw LookupError("query not in injected hits table: " + key);
  }
  return it->second;
}

}  // namespace pmiir
