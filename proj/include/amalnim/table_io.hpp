#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "amalnim/solver.hpp"

namespace amalnim {

// Grundy table text format, bit-exact:
//
//   # amalgam-nim grundy v1; ruleset=<kind>; threshold=<m>; piles=<k>; bound=<mode>:<limit>
//   x1,...,xk,grundy
//
// Rows are in lexicographic order of canonical positions, every line
// newline-terminated.
struct TableIoError : std::runtime_error {
  enum class Kind { malformed, ruleset_mismatch, truncated };

  Kind kind;
  std::size_t line;  // 1-based line the problem was found on

  TableIoError(Kind kind, std::size_t line, const std::string& what);
};

std::string table_to_string(const GrundyTable& table);
GrundyTable table_from_string(std::string_view text,
                              const std::optional<Ruleset>& expect = std::nullopt);

void save_table(const GrundyTable& table, const std::filesystem::path& path);

// When `expect` is given, a header naming a different ruleset raises
// TableIoError with kind ruleset_mismatch.
GrundyTable load_table(const std::filesystem::path& path,
                       const std::optional<Ruleset>& expect = std::nullopt);

}  // namespace amalnim
