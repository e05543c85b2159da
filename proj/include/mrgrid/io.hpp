#pragma once

// JSON interchange. Cells are 1-based on disk and 0-based in memory; field
// elements are their digit-packed encodings.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "mrgrid/code.hpp"
#include "mrgrid/decoder.hpp"
#include "mrgrid/error.hpp"
#include "mrgrid/field.hpp"
#include "mrgrid/gridgraph.hpp"
#include "mrgrid/matrix.hpp"
#include "mrgrid/search.hpp"
#include "mrgrid/verifier.hpp"

namespace mrgrid::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormat = 1;

namespace detail {

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::uint64_t unsigned_value(const Json& j, const char* what) {
  // Parsed text yields unsigned numbers, values built in memory may be signed.
  const bool ok = j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
  if (!ok) throw InvalidArgument(std::string(what) + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline int small_int(const Json& j, const char* what) {
  const std::uint64_t v = unsigned_value(j, what);
  if (v > 1'000'000) throw InvalidArgument(std::string(what) + " is too large");
  return static_cast<int>(v);
}

inline void check_format(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("expected a JSON object");
  if (j.contains("format") && (!j.at("format").is_number_integer() || j.at("format").get<int>() != kFormat)) {
    throw InvalidArgument("unsupported format version (expected " + std::to_string(kFormat) + ")");
  }
}

}  // namespace detail

inline Json to_json(Cell c) { return Json::array({c.row + 1, c.col + 1}); }

inline Cell cell_from_json(const Json& j, int m, int n) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("a cell is a pair [i, j]");
  const int i = detail::small_int(j[0], "cell row");
  const int k = detail::small_int(j[1], "cell column");
  if (i < 1 || i > m || k < 1 || k > n) {
    throw InvalidArgument("cell [" + std::to_string(i) + ", " + std::to_string(k) + "] outside the grid");
  }
  return {i - 1, k - 1};
}

inline Json to_json(const Pattern& e) {
  Json out = Json::array();
  for (const Cell& c : e.cells()) out.push_back(to_json(c));
  return out;
}

inline Pattern pattern_from_json(const Json& j, int m, int n) {
  if (!j.is_array()) throw InvalidArgument("a pattern is a list of cells");
  std::vector<Cell> cells;
  for (const Json& c : j) cells.push_back(cell_from_json(c, m, n));
  return Pattern(m, n, std::move(cells));
}

inline Json to_json(const CycleRep& c) {
  Json out = Json::array();
  for (const Cell& x : c.cells()) out.push_back(to_json(x));
  return out;
}

inline Json to_json(const std::vector<Element>& v) {
  Json out = Json::array();
  for (const Element e : v) out.push_back(e.value);
  return out;
}

inline Json field_json(const Field& f) {
  Json modulus = Json::array();
  for (const std::uint64_t c : f.modulus()) modulus.push_back(c);
  return Json{{"p", f.characteristic()}, {"d", f.degree()}, {"modulus", modulus}};
}

inline Json to_json(const GridCode& code) {
  Json out{{"format", kFormat}};
  const Json field = field_json(code.field());
  for (const auto& [k, v] : field.items()) out[k] = v;
  out["m"] = code.rows();
  out["n"] = code.cols();
  out["h"] = code.globals();
  Json gp = Json::array();
  for (int i = 0; i < code.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < code.cols(); ++j) {
      Json vec = Json::array();
      for (const Element e : code.parity({i, j})) vec.push_back(e.value);
      row.push_back(std::move(vec));
    }
    gp.push_back(std::move(row));
  }
  out["gp"] = std::move(gp);
  return out;
}

inline Field field_from_json(const Json& j) {
  const std::uint64_t p = detail::unsigned_value(detail::member(j, "p"), "p");
  const std::uint64_t d = detail::unsigned_value(detail::member(j, "d"), "d");
  if (!j.contains("modulus")) return Field::make(p, static_cast<unsigned>(d));
  const Json& mod = j.at("modulus");
  if (!mod.is_array()) throw InvalidArgument("modulus must be a list of coefficients");
  std::vector<std::uint64_t> digits;
  for (const Json& c : mod) digits.push_back(detail::unsigned_value(c, "modulus coefficient"));
  if (digits.size() != d + 1) throw InvalidArgument("modulus must have d + 1 coefficients");
  return Field::with_modulus(p, std::move(digits));
}

inline GridCode code_from_json(const Json& j) {
  detail::check_format(j);
  const Field f = field_from_json(j);
  const int m = detail::small_int(detail::member(j, "m"), "m");
  const int n = detail::small_int(detail::member(j, "n"), "n");
  const int h = detail::small_int(detail::member(j, "h"), "h");
  GridCode code(f, m, n, h);
  const Json& gp = detail::member(j, "gp");
  if (!gp.is_array() || gp.size() != static_cast<std::size_t>(m)) throw InvalidArgument("gp must have m rows");
  for (int i = 0; i < m; ++i) {
    const Json& row = gp[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) throw InvalidArgument("each gp row must have n cells");
    for (int c = 0; c < n; ++c) {
      const Json& vec = row[static_cast<std::size_t>(c)];
      if (!vec.is_array() || vec.size() != static_cast<std::size_t>(h)) {
        throw InvalidArgument("each gp entry must have h elements");
      }
      for (int k = 0; k < h; ++k) {
        code.set_parity({i, c}, k, f.element(detail::unsigned_value(vec[static_cast<std::size_t>(k)], "gp entry")));
      }
    }
  }
  return code;
}

inline Json to_json(const Matrix& a) {
  Json out = Json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a(r, c).value);
    out.push_back(std::move(row));
  }
  return out;
}

inline Json to_json(const Witness& w) {
  Json cycles = Json::array();
  for (const CycleRep& c : w.cycles) cycles.push_back(to_json(c));
  Json sums = Json::array();
  for (const auto& s : w.sums) sums.push_back(to_json(s));
  Json extras = Json::array();
  for (const Cell& c : w.extras) extras.push_back(to_json(c));
  return Json{{"pattern", to_json(w.pattern)},
              {"tree", to_json(w.tree)},
              {"extras", extras},
              {"cycles", cycles},
              {"cycle_sums", sums}};
}

inline Json to_json(const MrReport& r) {
  Json out{{"is_mr", r.is_mr}, {"patterns_checked", r.patterns_checked}, {"dedup_hits", r.dedup_hits}};
  out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return out;
}

inline Json word_json(const PartialWord& w) {
  Json symbols = Json::array();
  for (const auto& s : w) symbols.push_back(s ? Json(s->value) : Json(nullptr));
  return Json{{"format", kFormat}, {"symbols", symbols}};
}

inline Json word_json(const Codeword& w) { return word_json(PartialWord(w.begin(), w.end())); }

inline PartialWord word_from_json(const Json& j, const Field& f) {
  detail::check_format(j);
  const Json& symbols = detail::member(j, "symbols");
  if (!symbols.is_array()) throw InvalidArgument("symbols must be a list");
  PartialWord out;
  for (const Json& s : symbols) {
    if (s.is_null()) {
      out.push_back(std::nullopt);
    } else {
      out.push_back(f.element(detail::unsigned_value(s, "symbol")));
    }
  }
  return out;
}

inline Json to_json(const SearchResult& r) {
  Json steps = Json::array();
  for (const SearchStep& s : r.steps) {
    steps.push_back(Json{{"q", s.q}, {"outcome", to_string(s.outcome)}, {"labelings", s.labelings}});
  }
  Json out{{"steps", steps}};
  out["q"] = r.q ? Json(*r.q) : Json(nullptr);
  out["code"] = r.code ? to_json(*r.code) : Json(nullptr);
  return out;
}

inline Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(source + ": " + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

inline void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("write to " + path + " failed");
}

}  // namespace mrgrid::io
