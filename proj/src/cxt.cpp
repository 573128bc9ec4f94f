#include "concept_nmr/cxt.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "concept_nmr/error.hpp"

namespace cnmr::fca {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  // A terminating newline does not open a new line.
  if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n') lines.pop_back();
  return lines;
}

std::size_t parse_count(const std::string& line, std::size_t lineno, const char* what) {
  std::size_t value = 0;
  auto first = line.data();
  auto last = line.data() + line.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && *(last - 1) == ' ') --last;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (first == last || ec != std::errc() || ptr != last)
    throw ParseError(std::string("expected ") + what + " count, got '" + line + "'", lineno);
  return value;
}

}  // namespace

FormalContext parse_cxt(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t pos = 0;
  auto next = [&](const char* expecting) -> const std::string& {
    if (pos >= lines.size())
      throw ParseError(std::string("unexpected end of input, expected ") + expecting, lines.size() + 1);
    return lines[pos++];
  };

  if (next("header 'B'") != "B") throw ParseError("header must be 'B'", 1);
  if (!next("blank line").empty()) throw ParseError("expected blank line after header", pos);
  const std::size_t n_objects = parse_count(next("object count"), pos, "object");
  const std::size_t n_attributes = parse_count(next("attribute count"), pos, "attribute");
  if (!next("blank line").empty()) throw ParseError("expected blank line after counts", pos);

  std::vector<std::string> objects;
  for (std::size_t i = 0; i < n_objects; ++i) objects.push_back(next("object name"));
  std::vector<std::string> attributes;
  for (std::size_t i = 0; i < n_attributes; ++i) attributes.push_back(next("attribute name"));
  // Name lines start right after the second blank line (line 6).
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (!seen.insert(objects[i]).second) throw ParseError("duplicate object '" + objects[i] + "'", 6 + i);
  seen.clear();
  for (std::size_t i = 0; i < attributes.size(); ++i)
    if (!seen.insert(attributes[i]).second)
      throw ParseError("duplicate attribute '" + attributes[i] + "'", 6 + objects.size() + i);

  std::vector<IndexSet> rows;
  for (std::size_t i = 0; i < n_objects; ++i) {
    const std::string& row = next("incidence row");
    if (row.size() != n_attributes)
      throw ParseError("incidence row has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(n_attributes),
                       pos);
    IndexSet r(n_attributes);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 'X' || row[j] == 'x') {
        r.set(j);
      } else if (row[j] != '.') {
        throw ParseError(std::string("invalid incidence character '") + row[j] + "'", pos, j + 1);
      }
    }
    rows.push_back(std::move(r));
  }
  for (; pos < lines.size(); ++pos)
    if (!lines[pos].empty()) throw ParseError("trailing content after incidence rows", pos + 1);

  return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
}

FormalContext read_cxt_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open context file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_cxt(buffer.str());
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string write_cxt(const FormalContext& ctx) {
  std::string out = "B\n\n";
  out += std::to_string(ctx.object_count()) + "\n";
  out += std::to_string(ctx.attribute_count()) + "\n\n";
  for (const auto& g : ctx.objects()) out += g + "\n";
  for (const auto& m : ctx.attributes()) out += m + "\n";
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) out += ctx.incident(g, m) ? 'X' : '.';
    out += '\n';
  }
  return out;
}

}  // namespace cnmr::fca
