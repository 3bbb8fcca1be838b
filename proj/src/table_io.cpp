#include "amalnim/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace amalnim {

namespace {

std::string kind_name(TableIoError::Kind kind) {
  switch (kind) {
    case TableIoError::Kind::malformed: return "malformed table file";
    case TableIoError::Kind::ruleset_mismatch: return "ruleset mismatch";
    case TableIoError::Kind::truncated: return "truncated table file";
  }
  return "?";
}

}  // namespace

TableIoError::TableIoError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error(kind_name(kind) + " (line " + std::to_string(line) + "): " + what),
      kind(kind),
      line(line) {}

std::string table_to_string(const GrundyTable& table) {
  std::string out = "# amalgam-nim grundy v1; ruleset=";
  out += to_string(table.ruleset.kind);
  out += "; threshold=" + std::to_string(table.ruleset.merge_threshold);
  out += "; piles=" + std::to_string(table.bound.pile_count);
  out += "; bound=";
  out += to_string(table.bound.mode);
  out += ":" + std::to_string(table.bound.limit);
  out += '\n';
  for (const auto& [pos, value] : table.entries) {
    out += to_text(pos);
    out += ',' + std::to_string(value) + '\n';
  }
  return out;
}

namespace {

std::uint64_t parse_u64(std::string_view text, std::size_t line, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw TableIoError(TableIoError::Kind::malformed, line,
                       "expected " + std::string(what) + ", got '" + std::string(text) + "'");
  return v;
}

// Consumes "key=" then everything up to `stop`, advancing `text`.
std::string_view take_field(std::string_view& text, std::string_view key, char stop,
                            std::size_t line) {
  if (text.substr(0, key.size()) != key)
    throw TableIoError(TableIoError::Kind::malformed, line,
                       "expected '" + std::string(key) + "' in header");
  text.remove_prefix(key.size());
  const std::size_t end = text.find(stop);
  std::string_view value = text.substr(0, end);
  text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
  return value;
}

}  // namespace

GrundyTable table_from_string(std::string_view text, const std::optional<Ruleset>& expect) {
  if (text.empty())
    throw TableIoError(TableIoError::Kind::malformed, 1, "empty file");
  if (text.back() != '\n') {
    const std::size_t lines = static_cast<std::size_t>(
        std::count(text.begin(), text.end(), '\n'));
    throw TableIoError(TableIoError::Kind::truncated, lines + 1,
                       "file does not end with a newline");
  }

  std::size_t line_no = 1;
  std::size_t eol = text.find('\n');
  std::string_view header = text.substr(0, eol);
  text.remove_prefix(eol + 1);

  GrundyTable table;
  {
    std::string_view h = header;
    if (h.substr(0, 24) != "# amalgam-nim grundy v1;")
      throw TableIoError(TableIoError::Kind::malformed, 1, "unrecognized header");
    h.remove_prefix(24);
    if (!h.empty() && h.front() == ' ') h.remove_prefix(1);

    const std::string_view ruleset = take_field(h, "ruleset=", ';', 1);
    const auto kind = rule_kind_from_string(ruleset);
    if (!kind)
      throw TableIoError(TableIoError::Kind::malformed, 1,
                         "unknown ruleset '" + std::string(ruleset) + "'");
    table.ruleset.kind = *kind;
    if (!h.empty() && h.front() == ' ') h.remove_prefix(1);
    table.ruleset.merge_threshold = parse_u64(take_field(h, "threshold=", ';', 1), 1, "threshold");
    if (!h.empty() && h.front() == ' ') h.remove_prefix(1);
    table.bound.pile_count =
        static_cast<int>(parse_u64(take_field(h, "piles=", ';', 1), 1, "pile count"));
    if (table.bound.pile_count < 1)
      throw TableIoError(TableIoError::Kind::malformed, 1, "pile count must be positive");
    if (!h.empty() && h.front() == ' ') h.remove_prefix(1);
    const std::string_view mode = take_field(h, "bound=", ':', 1);
    if (mode == "max_pile") {
      table.bound.mode = BoundSpec::Mode::max_pile;
    } else if (mode == "total_stones") {
      table.bound.mode = BoundSpec::Mode::total_stones;
    } else {
      throw TableIoError(TableIoError::Kind::malformed, 1,
                         "unknown bound mode '" + std::string(mode) + "'");
    }
    table.bound.limit = parse_u64(h, 1, "bound limit");
  }

  if (expect && !(table.ruleset == *expect))
    throw TableIoError(TableIoError::Kind::ruleset_mismatch, 1,
                       "table is for ruleset=" + std::string(to_string(table.ruleset.kind)) +
                           " threshold=" + std::to_string(table.ruleset.merge_threshold) +
                           ", expected ruleset=" + std::string(to_string(expect->kind)) +
                           " threshold=" + std::to_string(expect->merge_threshold));

  const std::size_t fields = static_cast<std::size_t>(table.bound.pile_count) + 1;
  while (!text.empty()) {
    ++line_no;
    eol = text.find('\n');
    std::string_view row = text.substr(0, eol);
    text.remove_prefix(eol + 1);

    Position pos;
    std::uint64_t value = 0;
    std::size_t field = 0;
    while (true) {
      const std::size_t comma = row.find(',');
      const std::string_view tok =
          row.substr(0, comma == std::string_view::npos ? row.size() : comma);
      const std::uint64_t v = parse_u64(tok, line_no, "a pile size or grundy value");
      ++field;
      if (field < fields) {
        pos.piles.push_back(v);
      } else {
        value = v;
      }
      if (comma == std::string_view::npos) break;
      row.remove_prefix(comma + 1);
    }
    if (field != fields)
      throw TableIoError(TableIoError::Kind::malformed, line_no,
                         "expected " + std::to_string(fields) + " fields, got " +
                             std::to_string(field));
    if (!is_canonical(pos))
      throw TableIoError(TableIoError::Kind::malformed, line_no,
                         "position " + to_text(pos) + " is not sorted");
    if (!table.entries.empty() && !(table.entries.rbegin()->first < pos))
      throw TableIoError(TableIoError::Kind::malformed, line_no,
                         "rows not in ascending position order at " + to_text(pos));
    table.entries.emplace_hint(table.entries.end(), std::move(pos), value);
  }
  return table;
}

void save_table(const GrundyTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string text = table_to_string(table);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

GrundyTable load_table(const std::filesystem::path& path, const std::optional<Ruleset>& expect) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return table_from_string(buf.str(), expect);
}

}  // namespace amalnim
