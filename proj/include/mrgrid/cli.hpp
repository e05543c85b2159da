#pragma once

// Command-line front end: construct, verify, reduce, decode, encode, search,
// table. Every command logs its configuration to the error stream, writes a
// JSON artifact (to --out when given, otherwise to the output stream) and a
// plain-text summary (to the output stream when the JSON went to a file,
// otherwise to the error stream).
//
// Exit codes: 0 success or MR, 1 negative result, 2 cap exceeded, 3 invalid
// input.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mrgrid/code.hpp"
#include "mrgrid/constructions.hpp"
#include "mrgrid/decoder.hpp"
#include "mrgrid/error.hpp"
#include "mrgrid/io.hpp"
#include "mrgrid/reductions.hpp"
#include "mrgrid/search.hpp"
#include "mrgrid/verifier.hpp"

namespace mrgrid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitCap = 2;
inline constexpr int kExitInvalid = 3;

/// Plain-text table with left-aligned columns.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      if (width.size() < row.size()) width.resize(row.size(), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t c = 0; c < rows_[r].size(); ++c) {
        if (c > 0) out << "  ";
        if (c + 1 == rows_[r].size()) {
          out << rows_[r][c];
        } else {
          out << std::left << std::setw(static_cast<int>(width[c])) << rows_[r][c];
        }
      }
      out << '\n';
      if (r == 0) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c > 0 ? 2 : 0);
        out << std::string(total, '-') << '\n';
      }
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

namespace detail {

struct Shared {
  std::string out;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> cap;
  unsigned workers = 1;
};

inline void add_shared(CLI::App* sub, Shared& s) {
  sub->add_option("--out", s.out, "write the JSON artifact here instead of standard output");
  sub->add_option("--seed", s.seed, "random seed");
  sub->add_option("--cap", s.cap, "resource cap for exhaustive enumeration");
  sub->add_option("--workers", s.workers, "verifier worker threads")->check(CLI::Range(1u, 256u));
}

inline io::Json shared_json(const Shared& s) {
  io::Json j{{"out", s.out.empty() ? io::Json(nullptr) : io::Json(s.out)}, {"seed", s.seed}};
  j["cap"] = s.cap ? io::Json(*s.cap) : io::Json(nullptr);
  j["workers"] = s.workers;
  return j;
}

/// Artifact and summary routing shared by all commands.
inline void emit(const Shared& s, const io::Json& artifact, const std::string& summary, std::ostream& out,
                 std::ostream& err) {
  if (s.out.empty()) {
    out << artifact.dump(2) << '\n';
    err << summary;
  } else {
    io::write_file(s.out, artifact);
    out << summary;
  }
}

inline std::string field_name(const Field& f) { return f.describe(); }

inline std::string code_summary(const GridCode& code) {
  TextTable t({"m", "n", "h", "field", "q"});
  t.add({std::to_string(code.rows()), std::to_string(code.cols()), std::to_string(code.globals()),
         field_name(code.field()), std::to_string(code.field().order())});
  return t.str();
}

inline std::string cells_text(const std::vector<Cell>& cells) {
  std::string s;
  for (const Cell& c : cells) {
    if (!s.empty()) s += ' ';
    s += "(" + std::to_string(c.row + 1) + "," + std::to_string(c.col + 1) + ")";
  }
  return s;
}

struct ConstructArgs {
  std::string family;
  int m = 0;
  int n = 0;
  int h = 1;
  std::uint64_t q = 0;
  std::string seed_code;
};

inline int cmd_construct(const ConstructArgs& a, const Shared& s, std::ostream& out, std::ostream& err) {
  CycleCriterionOptions verify;
  verify.cap = s.cap.value_or(kDefaultPairCap);
  verify.workers = s.workers;
  std::optional<GridCode> code;
  if (a.family == "binary") {
    if (a.h != 1) throw InvalidArgument("the binary construction has h = 1");
    code = construct_binary(a.m, a.n);
  } else if (a.family == "bch") {
    code = construct_bch_simple(a.m, a.n, a.h);
  } else if (a.family == "bch-zero") {
    code = construct_bch_zero(a.m, a.n, a.h);
  } else if (a.family == "ap3") {
    if (a.m != 0 && a.m != 3) throw InvalidArgument("the 3-AP construction has m = 3");
    if (a.h != 1) throw InvalidArgument("the 3-AP construction has h = 1");
    const std::uint64_t q = a.q != 0 ? a.q : smallest_ap3_prime(static_cast<std::size_t>(a.n));
    code = construct_ap3(a.n, q);
  } else {
    if (a.seed_code.empty()) throw InvalidArgument("bootstrap needs --seed-code");
    if (a.h != 1) throw InvalidArgument("the bootstrap construction has h = 1");
    code = bootstrap_h1(io::code_from_json(io::read_file(a.seed_code)), a.n, verify);
  }
  emit(s, io::to_json(*code), "family " + a.family + "\n" + code_summary(*code), out, err);
  return kExitOk;
}

struct VerifyArgs {
  std::string code;
  std::string method = "cycles";
  std::string rank_mode = "auto";
  std::uint64_t pattern_cap = kDefaultPatternCap;
  bool no_dedup = false;
};

inline int cmd_verify(const VerifyArgs& a, const Shared& s, std::ostream& out, std::ostream& err) {
  const GridCode code = io::code_from_json(io::read_file(a.code));
  TextTable t({"method", "is_mr", "patterns_checked", "dedup_hits", "witness"});
  io::Json artifact{{"format", io::kFormat}, {"method", a.method}};
  std::optional<bool> verdict;
  auto record = [&](const std::string& name, const MrReport& r) {
    t.add({name, r.is_mr ? "yes" : "no", std::to_string(r.patterns_checked), std::to_string(r.dedup_hits),
           r.witness ? cells_text(r.witness->pattern.cells()) : "-"});
    artifact[name] = io::to_json(r);
    if (verdict && *verdict != r.is_mr) throw Error("cycle criterion and rank oracle disagree");
    verdict = r.is_mr;
  };
  if (a.method == "cycles" || a.method == "both") {
    CycleCriterionOptions o;
    o.cap = s.cap.value_or(kDefaultPairCap);
    o.workers = s.workers;
    o.dedup = !a.no_dedup;
    record("cycles", is_mr_cycle_criterion(code, o));
  }
  if (a.method == "rank" || a.method == "both") {
    RankOracleOptions o;
    o.cap = a.pattern_cap;
    if (a.rank_mode == "full") {
      o.mode = RankMode::kFull;
    } else if (a.rank_mode == "restricted") {
      o.mode = RankMode::kRestricted;
    } else {
      o.mode = code.cells() <= 20 ? RankMode::kFull : RankMode::kRestricted;
    }
    artifact["rank_mode"] = o.mode == RankMode::kFull ? "full" : "restricted";
    record("rank", is_mr_rank_oracle(code, o));
  }
  artifact["is_mr"] = *verdict;
  emit(s, artifact, t.str(), out, err);
  return *verdict ? kExitOk : kExitNegative;
}

struct ReduceArgs {
  std::string method;
  int h_prime = 0;
  int h1 = 0;
  int h2 = 0;
  bool verify_input = false;
  std::string input;
  std::string output;
};

inline int cmd_reduce(const ReduceArgs& a, Shared s, std::ostream& out, std::ostream& err) {
  if (!a.output.empty()) s.out = a.output;
  const GridCode code = io::code_from_json(io::read_file(a.input));
  ReduceOptions o;
  o.verify_input = a.verify_input;
  o.verify.cap = s.cap.value_or(kDefaultPairCap);
  o.verify.workers = s.workers;
  const Reduction r = a.method == "monotone" ? reduce_monotone(code, a.h_prime, o)
                                             : reduce_box(code, a.h_prime, a.h1, a.h2, o);
  TextTable t({"", "m", "n", "h", "field"});
  t.add({"input", std::to_string(code.rows()), std::to_string(code.cols()), std::to_string(code.globals()),
         field_name(code.field())});
  t.add({"output", std::to_string(r.code.rows()), std::to_string(r.code.cols()), std::to_string(r.code.globals()),
         field_name(r.code.field())});
  std::string summary = t.str();
  for (const CycleRep& c : r.cycles) summary += "killed cycle " + cells_text(c.cells()) + "\n";
  emit(s, io::to_json(r.code), summary, out, err);
  return kExitOk;
}

struct DecodeArgs {
  std::string code;
  std::string word;
};

inline int cmd_decode(const DecodeArgs& a, const Shared& s, std::ostream& out, std::ostream& err) {
  const GridCode code = io::code_from_json(io::read_file(a.code));
  const PartialWord word = io::word_from_json(io::read_file(a.word), code.field());
  const Pattern e = erased_pattern(code, word);
  try {
    const Codeword w = recover(code, word);
    TextTable t({"erased", "circuit_rank", "status"});
    t.add({std::to_string(e.size()), std::to_string(circuit_rank(e)), "recovered"});
    emit(s, io::word_json(w), t.str(), out, err);
    return kExitOk;
  } catch (const NotCorrectable& nc) {
    io::Json report{{"format", io::kFormat},
                    {"correctable", false},
                    {"erased", io::to_json(e)},
                    {"rank", nc.rank()},
                    {"deficiency", nc.deficiency()}};
    TextTable t({"erased", "rank", "deficiency", "status"});
    t.add({std::to_string(nc.erased()), std::to_string(nc.rank()), std::to_string(nc.deficiency()),
           "not correctable"});
    emit(s, report, t.str(), out, err);
    return kExitNegative;
  }
}

struct EncodeArgs {
  std::string code;
  std::string erase;
};

inline int cmd_encode(const EncodeArgs& a, const Shared& s, std::ostream& out, std::ostream& err) {
  const GridCode code = io::code_from_json(io::read_file(a.code));
  const Codeword w = random_codeword(code, s.seed);
  Pattern e(code.rows(), code.cols());
  if (!a.erase.empty()) e = io::pattern_from_json(io::parse(a.erase, "--erase"), code.rows(), code.cols());
  TextTable t({"symbols", "erased", "seed"});
  t.add({std::to_string(w.size()), std::to_string(e.size()), std::to_string(s.seed)});
  emit(s, io::word_json(erase(w, e)), t.str(), out, err);
  return kExitOk;
}

struct SearchArgs {
  int m = 0;
  int n = 0;
  int h = 1;
  std::uint64_t max_q = 0;
  std::string family = "generic";
};

inline int cmd_search(const SearchArgs& a, const Shared& s, std::ostream& out, std::ostream& err) {
  SearchOptions o;
  o.cap = s.cap.value_or(o.cap);
  const SearchFamily family = a.family == "generic" ? SearchFamily::kGeneric : SearchFamily::kGabidulin;
  const SearchResult r = min_field_size_search(a.m, a.n, a.h, a.max_q, family, o);
  TextTable t({"q", "outcome", "labelings"});
  for (const SearchStep& step : r.steps) {
    t.add({std::to_string(step.q), to_string(step.outcome), std::to_string(step.labelings)});
  }
  std::string summary = t.str();
  summary += r.q ? "minimum q = " + std::to_string(*r.q) + "\n"
                 : "no MR code with q <= " + std::to_string(a.max_q) + "\n";
  io::Json artifact{{"format", io::kFormat}, {"m", a.m}, {"n", a.n}, {"h", a.h}, {"family", a.family}};
  const io::Json result = io::to_json(r);
  for (const auto& [k, v] : result.items()) artifact[k] = v;
  emit(s, artifact, summary, out, err);
  return r.q ? kExitOk : kExitNegative;
}

inline std::uint64_t pow_u64(std::uint64_t base, std::uint64_t exp) {
  return mrgrid::detail::saturating_pow(base, exp);
}

inline std::uint64_t least_power_of_two_above(std::uint64_t x) {
  std::uint64_t v = 1;
  while (v <= x) v <<= 1;
  return v;
}

inline std::string format_bound(std::uint64_t v) {
  if (v == UINT64_MAX) return "overflow";
  if (mrgrid::detail::is_power_of_two(v) && v > 2) return "2^" + std::to_string(mrgrid::detail::log2_exact(v));
  return std::to_string(v);
}

/// Builds a code, verifies it, and returns "<q> ok", "<q> cap" or "<q> FAIL".
template <class Build>
std::string built_cell(Build build, std::uint64_t cap, io::Json& record) {
  try {
    const GridCode code = build();
    CycleCriterionOptions o;
    o.cap = cap;
    std::string status;
    try {
      status = is_mr_cycle_criterion(code, o).is_mr ? "ok" : "FAIL";
    } catch (const CapExceeded&) {
      status = "cap";
    }
    record = io::Json{{"q", code.field().order()}, {"verified", status}};
    return format_bound(code.field().order()) + " " + status;
  } catch (const InvalidArgument&) {
    record = nullptr;
    return "-";
  }
}

/// Tries one field at a time so a cap on a large field still reports the
/// range already certified.
inline std::string search_cell(int m, int n, int h, SearchFamily family, std::uint64_t max_q, std::uint64_t cap,
                               io::Json& record) {
  std::uint64_t exhausted = 1;
  bool capped = false;
  for (std::uint64_t q = 2; q <= max_q; ++q) {
    if (mrgrid::detail::prime_power(q).first == 0) continue;
    SearchOptions o;
    o.cap = cap;
    o.min_q = q;
    SearchResult r;
    try {
      r = min_field_size_search(m, n, h, q, family, o);
    } catch (const CapExceeded&) {
      capped = true;
      break;
    }
    if (r.q) {
      record = io::Json{{"minimum", *r.q}};
      return std::to_string(*r.q);
    }
    exhausted = q;
  }
  record = io::Json{{"minimum", nullptr}, {"exhausted_up_to", exhausted}, {"capped", capped}};
  if (exhausted < 2) return "cap";
  return "> " + std::to_string(exhausted) + (capped ? " (cap)" : "");
}

struct TableArgs {
  std::string identifier;
  std::uint64_t max_q = 16;
};

inline int cmd_table(const TableArgs& a, const Shared& s, std::ostream& out, std::ostream& err) {
  if (a.identifier != "bounds-summary") throw InvalidArgument("unknown table \"" + a.identifier + "\"");
  const std::uint64_t cap = s.cap.value_or(1'000'000);
  struct Row {
    int m, n, h;
  };
  const std::vector<Row> grid = {{2, 2, 1}, {2, 4, 1}, {2, 8, 1}, {3, 4, 1}, {4, 4, 1}, {2, 4, 2}, {3, 4, 2}};
  TextTable t({"m", "n", "h", "2^((m-1)(n-1))", "n^(m-1)", "binary", "2(2^k n)^(m+h-1)", "bch", "2(2^k n)^(m+h-2)",
               "2(2mn)^(m+h-2)", "bch-zero", "ap3", "lower n", "C(n,ceil(h/2))", "n^ceil(h/2)", "search generic",
               "search gabidulin"});
  io::Json rows = io::Json::array();
  for (const Row& r : grid) {
    const auto m = static_cast<std::uint64_t>(r.m);
    const auto n = static_cast<std::uint64_t>(r.n);
    const auto h = static_cast<std::uint64_t>(r.h);
    const std::uint64_t half = (h + 1) / 2;
    io::Json rec{{"m", r.m}, {"n", r.n}, {"h", r.h}};
    std::vector<std::string> row = {std::to_string(r.m), std::to_string(r.n), std::to_string(r.h)};

    const std::uint64_t holzbaur = pow_u64(2, (m - 1) * (n - 1));
    row.push_back(format_bound(holzbaur));
    rec["holzbaur"] = holzbaur;

    if (h == 1) {
      const std::uint64_t f = pow_u64(n, m - 1);
      row.push_back(format_bound(f));
      rec["binary_formula"] = f;
      io::Json built;
      row.push_back(built_cell([&] { return construct_binary(r.m, r.n); }, cap, built));
      rec["binary"] = built;
    } else {
      row.push_back("-");
      row.push_back("-");
    }

    const std::uint64_t simple = 2 * pow_u64(least_power_of_two_above(m) * n, m + h - 1);
    row.push_back(format_bound(simple));
    rec["bch_formula"] = simple;
    io::Json built_simple;
    row.push_back(built_cell([&] { return construct_bch_simple(r.m, r.n, r.h); }, cap, built_simple));
    rec["bch"] = built_simple;

    const std::uint64_t zero = 2 * pow_u64(least_power_of_two_above(m - 1) * n, m + h - 2);
    const std::uint64_t zero_loose = 2 * pow_u64(2 * m * n, m + h - 2);
    row.push_back(format_bound(zero));
    row.push_back(std::to_string(zero_loose));
    rec["bch_zero_formula"] = zero;
    rec["bch_zero_table_bound"] = zero_loose;
    io::Json built_zero;
    row.push_back(built_cell([&] { return construct_bch_zero(r.m, r.n, r.h); }, cap, built_zero));
    rec["bch_zero"] = built_zero;

    if (r.m == 3 && r.h == 1) {
      io::Json built_ap3;
      row.push_back(built_cell(
          [&] { return construct_ap3(r.n, smallest_ap3_prime(static_cast<std::size_t>(r.n))); }, cap, built_ap3));
      rec["ap3"] = built_ap3;
    } else {
      row.push_back("-");
    }

    row.push_back(h == 1 ? std::to_string(n) : "-");
    const std::uint64_t gab_lb = mrgrid::detail::binomial(n, half);
    const std::uint64_t gab_table = pow_u64(n, half);
    row.push_back(std::to_string(gab_lb));
    row.push_back(std::to_string(gab_table));
    rec["gabidulin_lower"] = gab_lb;
    rec["gabidulin_table_bound"] = gab_table;

    io::Json generic;
    row.push_back(search_cell(r.m, r.n, r.h, SearchFamily::kGeneric, a.max_q, cap, generic));
    rec["search_generic"] = generic;
    if (h == 1) {
      row.push_back("(= generic)");
      rec["search_gabidulin"] = generic;
    } else {
      io::Json gab;
      row.push_back(search_cell(r.m, r.n, r.h, SearchFamily::kGabidulin, a.max_q, cap, gab));
      rec["search_gabidulin"] = gab;
    }
    t.add(std::move(row));
    rows.push_back(std::move(rec));
  }
  std::string summary = t.str();
  summary += "built columns: constructed field size, then ok (verified MR), cap (verification over cap) or FAIL\n";
  summary += "search columns: smallest q <= " + std::to_string(a.max_q) + " with an MR code; '> q' means none up to q\n";
  const io::Json artifact{{"format", io::kFormat}, {"table", a.identifier}, {"max_q", a.max_q}, {"cap", cap},
                          {"rows", rows}};
  if (s.out.empty()) {
    out << summary;
  } else {
    io::write_file(s.out, artifact);
    out << summary;
  }
  (void)err;
  return kExitOk;
}

}  // namespace detail

/// Runs one command; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"MR grid code toolkit"};
  app.require_subcommand(1, 1);
  // --h is a grid parameter, so help is long-form only.
  app.set_help_flag("--help", "print help and exit");

  detail::Shared shared;
  detail::ConstructArgs construct;
  detail::VerifyArgs verify;
  detail::ReduceArgs reduce;
  detail::DecodeArgs decode;
  detail::EncodeArgs encode;
  detail::SearchArgs search;
  detail::TableArgs table;

  auto* c_construct = app.add_subcommand("construct", "build a code from an explicit construction");
  c_construct->add_option("--family", construct.family)
      ->required()
      ->check(CLI::IsMember({"binary", "bch", "bch-zero", "ap3", "bootstrap"}));
  c_construct->add_option("--m", construct.m, "rows")->check(CLI::Range(1, 64));
  c_construct->add_option("--n", construct.n, "columns (target columns for bootstrap)")->required()->check(CLI::Range(1, 64));
  c_construct->add_option("--h", construct.h, "global parities")->check(CLI::Range(0, 64));
  c_construct->add_option("--q", construct.q, "prime field order for ap3 (default: smallest that works)");
  c_construct->add_option("--seed-code", construct.seed_code, "seed code JSON for bootstrap");
  detail::add_shared(c_construct, shared);

  auto* c_verify = app.add_subcommand("verify", "decide whether a code is MR");
  c_verify->add_option("code", verify.code, "code JSON")->required();
  c_verify->add_option("--method", verify.method)->check(CLI::IsMember({"cycles", "rank", "both"}));
  c_verify->add_option("--rank-mode", verify.rank_mode)->check(CLI::IsMember({"auto", "full", "restricted"}));
  c_verify->add_option("--pattern-cap", verify.pattern_cap, "cap on patterns for the rank oracle");
  c_verify->add_flag("--no-dedup", verify.no_dedup, "check every (tree, extras) pair");
  detail::add_shared(c_verify, shared);

  auto* c_reduce = app.add_subcommand("reduce", "trade global parities for a smaller grid");
  c_reduce->add_option("--method", reduce.method)->required()->check(CLI::IsMember({"monotone", "box"}));
  c_reduce->add_option("--h-prime", reduce.h_prime, "global parities kept")->required();
  c_reduce->add_option("--h1", reduce.h1, "box rows");
  c_reduce->add_option("--h2", reduce.h2, "box columns");
  c_reduce->add_flag("--verify-input", reduce.verify_input, "run the full cycle criterion on the input first");
  c_reduce->add_option("input", reduce.input, "input code JSON")->required();
  c_reduce->add_option("output", reduce.output, "output code JSON");
  detail::add_shared(c_reduce, shared);

  auto* c_decode = app.add_subcommand("decode", "recover erased symbols");
  c_decode->add_option("code", decode.code, "code JSON")->required();
  c_decode->add_option("word", decode.word, "word JSON with null for erasures")->required();
  detail::add_shared(c_decode, shared);

  auto* c_encode = app.add_subcommand("encode", "write a random codeword, optionally with erasures");
  c_encode->add_option("code", encode.code, "code JSON")->required();
  c_encode->add_option("--erase", encode.erase, "cells to erase as JSON, e.g. [[1,1],[2,2]]");
  detail::add_shared(c_encode, shared);

  auto* c_search = app.add_subcommand("search", "exhaustive minimum field size search");
  c_search->add_option("--m", search.m)->required()->check(CLI::Range(1, 8));
  c_search->add_option("--n", search.n)->required()->check(CLI::Range(1, 8));
  c_search->add_option("--h", search.h)->check(CLI::Range(0, 8));
  c_search->add_option("--max-q", search.max_q)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 20));
  c_search->add_option("--family", search.family)->check(CLI::IsMember({"generic", "gabidulin"}));
  detail::add_shared(c_search, shared);

  auto* c_table = app.add_subcommand("table", "recompute a summary table");
  c_table->add_option("identifier", table.identifier, "bounds-summary")->required();
  c_table->add_option("--max-q", table.max_q, "largest field tried by the searches");
  detail::add_shared(c_table, shared);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  io::Json config = detail::shared_json(shared);
  try {
    if (c_construct->parsed()) {
      config["command"] = "construct";
      config["family"] = construct.family;
      config["m"] = construct.m;
      config["n"] = construct.n;
      config["h"] = construct.h;
      config["q"] = construct.q;
      config["seed_code"] = construct.seed_code;
      err << "config " << config.dump() << '\n';
      if (construct.family != "bootstrap" && construct.family != "ap3" && construct.m == 0) {
        throw InvalidArgument("--m is required for this family");
      }
      return detail::cmd_construct(construct, shared, out, err);
    }
    if (c_verify->parsed()) {
      config["command"] = "verify";
      config["code"] = verify.code;
      config["method"] = verify.method;
      config["rank_mode"] = verify.rank_mode;
      config["pattern_cap"] = verify.pattern_cap;
      config["dedup"] = !verify.no_dedup;
      err << "config " << config.dump() << '\n';
      return detail::cmd_verify(verify, shared, out, err);
    }
    if (c_reduce->parsed()) {
      config["command"] = "reduce";
      config["method"] = reduce.method;
      config["h_prime"] = reduce.h_prime;
      config["h1"] = reduce.h1;
      config["h2"] = reduce.h2;
      config["verify_input"] = reduce.verify_input;
      config["input"] = reduce.input;
      config["output"] = reduce.output;
      err << "config " << config.dump() << '\n';
      if (reduce.method == "box" && (reduce.h1 == 0 || reduce.h2 == 0)) {
        throw InvalidArgument("box reduction needs --h1 and --h2");
      }
      return detail::cmd_reduce(reduce, shared, out, err);
    }
    if (c_decode->parsed()) {
      config["command"] = "decode";
      config["code"] = decode.code;
      config["word"] = decode.word;
      err << "config " << config.dump() << '\n';
      return detail::cmd_decode(decode, shared, out, err);
    }
    if (c_encode->parsed()) {
      config["command"] = "encode";
      config["code"] = encode.code;
      config["erase"] = encode.erase;
      err << "config " << config.dump() << '\n';
      return detail::cmd_encode(encode, shared, out, err);
    }
    if (c_search->parsed()) {
      config["command"] = "search";
      config["m"] = search.m;
      config["n"] = search.n;
      config["h"] = search.h;
      config["max_q"] = search.max_q;
      config["family"] = search.family;
      err << "config " << config.dump() << '\n';
      return detail::cmd_search(search, shared, out, err);
    }
    config["command"] = "table";
    config["identifier"] = table.identifier;
    config["max_q"] = table.max_q;
    err << "config " << config.dump() << '\n';
    return detail::cmd_table(table, shared, out, err);
  } catch (const CapExceeded& e) {
    err << "error: cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const NotMaximallyRecoverable& e) {
    err << "error: " << e.what() << '\n';
    return kExitNegative;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace mrgrid::cli
