#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "cf/error.hpp"
#include "cf/quiver.hpp"

namespace cf {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Offset of element `index` of the top-level array stored under `key`;
// falls back to the key itself, then to the start of the text.
std::size_t locate(const std::string& text, const std::string& key,
                   std::optional<std::size_t> index = std::nullopt) {
  const std::size_t k = text.find('"' + key + '"');
  if (k == std::string::npos) return 0;
  if (!index) return k;
  std::size_t pos = text.find('[', k);
  if (pos == std::string::npos) return k;
  std::size_t depth = 0;
  std::size_t element = 0;
  bool at_element_start = true;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '[') {
      ++depth;
      if (depth == 2 && at_element_start) {
        if (element == *index) return pos;
        at_element_start = false;
      }
      continue;
    }
    if (c == ']') {
      if (--depth == 0) break;
      continue;
    }
    if (depth == 1 && c == ',') {
      ++element;
      at_element_start = true;
    } else if (depth == 1 && at_element_start && c != ' ' && c != '\n' && c != '\t' &&
               c != '\r') {
      if (element == *index) return pos;
      at_element_start = false;
    }
  }
  return k;
}

[[noreturn]] void reject(const std::string& text, std::size_t offset, const std::string& what) {
  auto [line, col] = line_column(text, offset);
  throw ParseError(what, line, col);
}

std::int64_t as_integer(const json& v, const std::string& text, std::size_t offset,
                        const std::string& what) {
  if (!v.is_number_integer()) reject(text, offset, what + " must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

QuiverFile parse_quiver_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    auto [line, col] = line_column(text, byte);
    throw ParseError("malformed JSON", line, col);
  }
  if (!doc.is_object()) reject(text, 0, "quiver file must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "n" && key != "frozen" && key != "arrows" && key != "vars" && key != "name") {
      reject(text, locate(text, key), "unknown key \"" + key + "\"");
    }
  }
  if (!doc.contains("n")) reject(text, 0, "missing \"n\"");
  const std::int64_t n_signed = as_integer(doc["n"], text, locate(text, "n"), "\"n\"");
  if (n_signed < 0) reject(text, locate(text, "n"), "\"n\" must be nonnegative");
  const auto n = static_cast<std::size_t>(n_signed);

  std::vector<std::size_t> frozen;
  if (doc.contains("frozen")) {
    const json& fz = doc["frozen"];
    if (!fz.is_array()) reject(text, locate(text, "frozen"), "\"frozen\" must be an array");
    for (std::size_t i = 0; i < fz.size(); ++i) {
      const std::size_t at = locate(text, "frozen", i);
      const std::int64_t v = as_integer(fz[i], text, at, "frozen vertex");
      if (v < 1 || static_cast<std::size_t>(v) > n) reject(text, at, "frozen vertex out of range");
      frozen.push_back(static_cast<std::size_t>(v - 1));
    }
  }

  std::vector<Arrow> arrows;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  if (doc.contains("arrows")) {
    const json& ar = doc["arrows"];
    if (!ar.is_array()) reject(text, locate(text, "arrows"), "\"arrows\" must be an array");
    for (std::size_t i = 0; i < ar.size(); ++i) {
      const std::size_t at = locate(text, "arrows", i);
      const json& a = ar[i];
      if (!a.is_array() || a.size() != 3) reject(text, at, "arrow must be [from, to, multiplicity]");
      const std::int64_t from = as_integer(a[0], text, at, "arrow source");
      const std::int64_t to = as_integer(a[1], text, at, "arrow target");
      const std::int64_t mult = as_integer(a[2], text, at, "arrow multiplicity");
      if (from < 1 || to < 1 || static_cast<std::size_t>(from) > n ||
          static_cast<std::size_t>(to) > n) {
        reject(text, at, "arrow endpoint out of range");
      }
      if (from == to) reject(text, at, "loops are not allowed");
      if (mult < 0) reject(text, at, "negative arrow multiplicity");
      const auto f = static_cast<std::size_t>(from - 1);
      const auto t = static_cast<std::size_t>(to - 1);
      if (!seen.insert({f, t}).second) reject(text, at, "duplicate arrow");
      if (seen.count({t, f}) != 0) reject(text, at, "opposing arrows form a 2-cycle");
      arrows.push_back(Arrow{f, t, mult});
    }
  }

  QuiverFile out;
  try {
    out.quiver = Quiver::from_arrows(n, arrows, frozen);
  } catch (const std::overflow_error& e) {
    reject(text, locate(text, "arrows"), e.what());
  }
  if (doc.contains("vars")) {
    const json& vs = doc["vars"];
    if (!vs.is_array() || vs.size() != n) {
      reject(text, locate(text, "vars"), "\"vars\" must list one rendering per vertex");
    }
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (!vs[i].is_string()) reject(text, locate(text, "vars", i), "variable must be a string");
      vars.push_back(vs[i].get<std::string>());
    }
    out.vars = std::move(vars);
  }
  return out;
}

QuiverFile load_quiver_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open quiver file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_quiver_file(buffer.str());
}

std::string quiver_to_json(const Quiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows()) {
    arrows.push_back({a.from + 1, a.to + 1, a.multiplicity});
  }
  json frozen = json::array();
  for (std::size_t v : q.frozen_vertices()) frozen.push_back(v + 1);
  nlohmann::ordered_json doc;
  doc["n"] = q.size();
  doc["frozen"] = frozen;
  doc["arrows"] = arrows;
  return doc.dump();
}

std::string quiver_hash(const Quiver& q) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::int64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= static_cast<std::uint64_t>(v >> (8 * byte)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<std::int64_t>(q.size()));
  for (bool f : q.frozen_mask()) feed(f ? 1 : 0);
  for (std::int64_t v : q.exchange_matrix()) feed(v);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cf
