#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>

#include "pmiir/index.hpp"
#include "pmiir/query.hpp"

namespace pmiir {

using HitCount = std::uint64_t;

// Anything that can answer hits(query) for a query string.
class HitSource {
 public:
  virtual ~HitSource() = default;
  [[nodiscard]] virtual HitCount hits(std::string_view query) const = 0;
};

class IndexHitSource final : public HitSource {
 public:
  explicit IndexHitSource(const PositionalIndex& index, EvalOptions options = {})
      : index_(index), options_(options) {}

  [[nodiscard]] HitCount hits(std::string_view query) const override;
  [[nodiscard]] const PositionalIndex& index() const noexcept { return index_; }

 private:
  const PositionalIndex& index_;
  EvalOptions options_;
};

// Static query -> count table. Keys are stored in canonical printed form, so
// lookups are insensitive to spacing, keyword case and redundant parentheses.
class InjectedHitSource final : public HitSource {
 public:
  InjectedHitSource() = default;

  void set(std::string_view query, HitCount count);

  // Lines of `query<TAB>count`; counts may use thousands separators
  // ("1,147,535"); blank lines and lines starting with '#' are skipped.
  static InjectedHitSource parse(std::istream& in);
  static InjectedHitSource load(const std::filesystem::path& path);

  // Throws LookupError for a query absent from the table.
  [[nodiscard]] HitCount hits(std::string_view query) const override;
  [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }

 private:
  std::map<std::string, HitCount> table_;
};

}  // namespace pmiir
