// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <iomanip>
#include <iostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mrgrid/constructions.hpp"
#include "mrgrid/decoder.hpp"
#include "mrgrid/moore.hpp"
#include "mrgrid/reductions.hpp"
#include "mrgrid/search.hpp"
#include "mrgrid/verifier.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mrgrid;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (ok) detail.str("");
    if (!ok) detail << "; ";
    ok = false;
    detail << why;
  }
};

struct Named {
  std::string name;
  GridCode code;
};

std::string shape(const GridCode& c) {
  return std::to_string(c.rows()) + "x" + std::to_string(c.cols()) + " h=" + std::to_string(c.globals());
}

/// Every construction that admits a shape with m <= 3, n <= 4, h <= 2.
std::vector<Named> construction_corpus() {
  std::vector<Named> out;
  auto add = [&](const std::string& name, const std::function<GridCode()>& make) {
    try {
      GridCode code = make();
      out.push_back({name + " " + shape(code), std::move(code)});
    } catch (const InvalidArgument&) {
      // shape outside the family's hypotheses
    }
  };
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 4; ++n) {
      add("binary", [=] { return construct_binary(m, n); });
      add("gabidulin(binary)", [=] { return gabidulin_lift(labeling_of(construct_binary(m, n)), 2); });
      for (int h = 0; h <= 2; ++h) {
        add("bch", [=] { return construct_bch_simple(m, n, h); });
        add("bch-zero", [=] { return construct_bch_zero(m, n, h); });
      }
      if (m == 3) add("ap3", [=] { return construct_ap3(n, smallest_ap3_prime(static_cast<std::size_t>(n))); });
    }
  }
  add("bootstrap", [] { return bootstrap_h1(construct_binary(2, 2), 4); });
  return out;
}

RankOracleOptions rank_options(const GridCode& code) {
  RankOracleOptions o;
  if (code.cells() > 16) {
    o.mode = RankMode::kRestricted;
    o.cap = std::uint64_t{1} << 24;
  }
  return o;
}

/// Both verifiers must report MR.
bool verified(const GridCode& code, Outcome& r, const std::string& name) {
  const bool cycles = is_mr_cycle_criterion(code).is_mr;
  const bool ranks = is_mr_rank_oracle(code, rank_options(code)).is_mr;
  if (!cycles || !ranks) {
    r.fail(name + ": cycle criterion " + (cycles ? "MR" : "not MR") + ", rank oracle " + (ranks ? "MR" : "not MR"));
  }
  return cycles && ranks;
}

Outcome oracle_equivalence() {
  Outcome r;
  std::vector<Named> corpus = construction_corpus();
  const std::size_t constructions = corpus.size();
  std::mt19937_64 rng(20261016);
  const std::vector<std::vector<int>> shapes = {{2, 3, 1}, {2, 4, 1}, {3, 3, 1}, {3, 4, 1}, {2, 4, 2}, {3, 3, 2}, {3, 4, 2}};
  for (int t = 0; t < 100; ++t) {
    const Field f = Field::make(2, t % 2 == 0 ? 2 : 3);
    const auto& s = shapes[static_cast<std::size_t>(t) % shapes.size()];
    GridCode code = testing_support::random_code(f, s[0], s[1], s[2], rng);
    corpus.push_back({"random " + f.describe() + " " + shape(code), std::move(code)});
  }
  std::size_t mr = 0;
  for (const Named& c : corpus) {
    RankOracleOptions full;
    full.mode = RankMode::kFull;
    const bool cycles = is_mr_cycle_criterion(c.code).is_mr;
    const bool ranks = is_mr_rank_oracle(c.code, full).is_mr;
    if (cycles != ranks) r.fail(c.name + " disagrees");
    mr += cycles ? 1 : 0;
  }
  if (r.ok) {
    r.detail << corpus.size() << " codes (" << constructions << " constructions, 100 random), " << mr << " MR, "
             << corpus.size() - mr << " not MR, all agree";
  }
  if (mr == corpus.size()) r.fail("random codes never produced a non-MR case");
  return r;
}

/// q = 2 (2^k n)^e with 2^k the least power of two above `above`.
std::uint64_t bch_formula(std::uint64_t above, std::uint64_t n, std::uint64_t e) {
  std::uint64_t two_k = 1;
  while (two_k <= above) two_k *= 2;
  std::uint64_t q = 2;
  for (std::uint64_t i = 0; i < e; ++i) q *= two_k * n;
  return q;
}

Outcome construction_validity() {
  Outcome r;
  std::size_t checked = 0;
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {2, 8}, {3, 4}, {4, 4}}) {
    const GridCode code = construct_binary(m, n);
    std::uint64_t expected = 1;
    for (int i = 1; i < m; ++i) expected *= static_cast<std::uint64_t>(n);
    if (code.field().order() != expected) r.fail("binary " + shape(code) + " field " + code.field().describe());
    verified(code, r, "binary " + shape(code));
    ++checked;
  }
  for (const auto& s : std::vector<std::vector<int>>{{2, 4, 1}, {2, 4, 2}, {3, 4, 1}, {3, 4, 2}}) {
    const auto m = static_cast<std::uint64_t>(s[0]);
    const auto n = static_cast<std::uint64_t>(s[1]);
    const auto h = static_cast<std::uint64_t>(s[2]);
    const GridCode simple = construct_bch_simple(s[0], s[1], s[2]);
    if (simple.field().order() != bch_formula(m, n, m + h - 1)) r.fail("bch " + shape(simple) + " field size");
    verified(simple, r, "bch " + shape(simple));
    const GridCode zero = construct_bch_zero(s[0], s[1], s[2]);
    if (zero.field().order() != bch_formula(m - 1, n, m + h - 2)) r.fail("bch-zero " + shape(zero) + " field size");
    verified(zero, r, "bch-zero " + shape(zero));
    checked += 2;
  }
  const std::uint64_t q5 = smallest_ap3_prime(5);
  if (oracle::greedy_3ap_free(q5, 5).size() != 5) r.fail("greedy oracle stalls at q=" + std::to_string(q5));
  for (std::uint64_t q = 3; q < q5; q += 2) {
    bool prime = true;
    for (std::uint64_t d = 3; d * d <= q; d += 2) prime = prime && q % d != 0;
    if (prime && oracle::greedy_3ap_free(q, 5).size() == 5) r.fail("greedy oracle succeeds at smaller q=" + std::to_string(q));
  }
  for (const auto& [n, q] : std::vector<std::pair<int, std::uint64_t>>{{4, 11}, {5, q5}}) {
    const GridCode code = construct_ap3(n, q);
    if (code.field().order() != q) r.fail("ap3 field size");
    verified(code, r, "ap3 " + shape(code) + " q=" + std::to_string(q));
    ++checked;
  }
  if (r.ok) r.detail << checked << " instances MR with the stated field sizes, ap3 n=5 uses q=" << q5;
  return r;
}

std::string steps_text(const SearchResult& s) {
  std::ostringstream out;
  for (const SearchStep& step : s.steps) out << " q=" << step.q << ":" << to_string(step.outcome);
  return out.str();
}

Outcome search_lower_bound() {
  Outcome r;
  for (const auto& [n, expected] : std::vector<std::pair<int, std::uint64_t>>{{3, 3}, {4, 4}}) {
    const SearchResult s = min_field_size_search(2, n, 1, 5, SearchFamily::kGeneric);
    for (const SearchStep& step : s.steps) {
      if (step.q < expected && step.outcome != FieldOutcome::kNone) r.fail("unexpected outcome below q=" + std::to_string(expected));
    }
    if (s.q != expected) r.fail("(2," + std::to_string(n) + ",1) minimum " + (s.q ? std::to_string(*s.q) : "none"));
    if (s.code) verified(*s.code, r, "search code");
    r.detail << "(2," << n << ",1)" << steps_text(s) << " ";
  }
  return r;
}

Outcome gabidulin_lower_bound() {
  Outcome r;
  const SearchResult s = min_field_size_search(2, 3, 2, 16, SearchFamily::kGabidulin);
  for (const SearchStep& step : s.steps) {
    if (step.q < 3 && step.outcome == FieldOutcome::kFound) r.fail("found a code below q=3");
  }
  // The minimum is a search result, frozen here.
  if (s.q != 4u) r.fail("minimum " + (s.q ? std::to_string(*s.q) : std::string("none")) + ", expected 4");
  if (s.code) verified(*s.code, r, "gabidulin search code");
  r.detail << "(2,3,2)" << steps_text(s);
  return r;
}

Outcome reduction_preservation() {
  Outcome r;
  // The 4x8 input needs about 1.8e9 (tree, extras) pairs, so only the outputs are verified.
  const GridCode in = construct_bch_zero(4, 8, 2);
  const Reduction mono = reduce_monotone(in, 1);
  const Reduction box = reduce_box(in, 1, 2, 2);
  for (const auto& [name, red] : std::vector<std::pair<std::string, const Reduction*>>{{"monotone", &mono}, {"box", &box}}) {
    const GridCode& out = red->code;
    if (out.rows() != 2 || out.cols() != 6 || out.globals() != 1) r.fail(name + " output is " + shape(out));
    verified(out, r, name);
  }
  if (r.ok) r.detail << "both reductions give a verified MR 2x6 h=1 code over " << in.field().describe();
  return r;
}

/// Fundamental cycle cells by breadth-first search in the tree, independent of
/// the library's path structure.
std::set<std::pair<int, int>> bfs_cycle(int m, int n, const std::vector<Cell>& tree, Cell e) {
  std::vector<std::vector<std::pair<int, Cell>>> adj(static_cast<std::size_t>(m + n));
  for (const Cell& c : tree) {
    adj[static_cast<std::size_t>(c.row)].push_back({m + c.col, c});
    adj[static_cast<std::size_t>(m + c.col)].push_back({c.row, c});
  }
  std::vector<int> parent(static_cast<std::size_t>(m + n), -1);
  std::vector<Cell> via(static_cast<std::size_t>(m + n));
  std::queue<int> todo;
  const int start = e.row;
  const int goal = m + e.col;
  parent[static_cast<std::size_t>(start)] = start;
  todo.push(start);
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop();
    for (const auto& [w, c] : adj[static_cast<std::size_t>(v)]) {
      if (parent[static_cast<std::size_t>(w)] != -1) continue;
      parent[static_cast<std::size_t>(w)] = v;
      via[static_cast<std::size_t>(w)] = c;
      todo.push(w);
    }
  }
  std::set<std::pair<int, int>> cells{{e.row, e.col}};
  for (int v = goal; v != start; v = parent[static_cast<std::size_t>(v)]) {
    cells.insert({via[static_cast<std::size_t>(v)].row, via[static_cast<std::size_t>(v)].col});
  }
  return cells;
}

Outcome cycle_union_bound() {
  Outcome r;
  std::mt19937_64 rng(7);
  std::size_t samples = 0;
  for (int m = 2; m <= 4; ++m) {
    for (int h = 1; h <= 3; ++h) {
      const std::size_t bound = static_cast<std::size_t>(2 * (m + h - 1));
      std::size_t largest = 0;
      for (int t = 0; t < 10'000; ++t) {
        const int n = m + h + t % 3;
        const Pattern tree = random_spanning_tree(m, n, rng);
        std::vector<Cell> free;
        for (int i = 0; i < m; ++i) {
          for (int j = 0; j < n; ++j) {
            if (!tree.contains({i, j})) free.push_back({i, j});
          }
        }
        std::shuffle(free.begin(), free.end(), rng);
        free.resize(static_cast<std::size_t>(h));
        const std::size_t size = cycle_union_size(tree, free);
        std::set<std::pair<int, int>> united;
        for (const Cell& e : free) {
          for (const auto& c : bfs_cycle(m, n, tree.cells(), e)) united.insert(c);
        }
        if (united.size() != size) r.fail("union size disagrees with the BFS oracle");
        if (size > bound) r.fail("union of size " + std::to_string(size) + " exceeds " + std::to_string(bound));
        largest = std::max(largest, size);
        ++samples;
      }
      const auto [tree, extras] = tight_cycle_union_family(m, m + h, h);
      const std::size_t tight = cycle_union_size(tree, extras);
      if (tight != bound) {
        r.fail("tight family at m=" + std::to_string(m) + " h=" + std::to_string(h) + " has size " + std::to_string(tight));
      }
      if (!r.ok) return r;
      r.detail << "(" << m << "," << h << ") max " << largest << "/" << bound << " ";
    }
  }
  r.detail << "over " << samples << " samples, tight family attains every bound";
  return r;
}

Outcome moore_criterion() {
  Outcome r;
  const Field f = Field::make(2, 3);
  std::size_t tuples = 0;
  std::size_t independent = 0;
  for (std::size_t h = 2; h <= 3; ++h) {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < h; ++k) total *= f.order();
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<Element> alphas;
      std::vector<std::uint64_t> raw;
      for (std::uint64_t c = code, k = 0; k < h; ++k, c /= f.order()) {
        alphas.push_back(Element{c % f.order()});
        raw.push_back(c % f.order());
      }
      const bool nonsingular = determinant(moore_matrix(f, alphas)).value != 0;
      const bool indep = oracle::gf2_independent(raw);
      if (nonsingular != indep) r.fail("tuple " + std::to_string(code) + " at h=" + std::to_string(h));
      independent += indep ? 1 : 0;
      ++tuples;
    }
  }
  if (r.ok) r.detail << tuples << " tuples over GF(8), " << independent << " independent, determinant agrees on all";
  return r;
}

Outcome decoder_round_trip() {
  Outcome r;
  std::mt19937_64 rng(11);
  std::size_t codes = 0;
  std::size_t recovered = 0;
  std::size_t rejected = 0;
  for (const Named& c : construction_corpus()) {
    const GridCode& code = c.code;
    const int m = code.rows();
    const int n = code.cols();
    const auto h = static_cast<std::size_t>(code.globals());
    const CellMask all = (CellMask{1} << (m * n)) - 1;
    std::vector<CellMask> correctable;
    for (CellMask mask = 0; mask <= all; ++mask) {
      const Pattern e = Pattern::from_mask(m, n, mask);
      if (circuit_rank(e) <= h) {
        correctable.push_back(mask);
        continue;
      }
      try {
        recover(code, erase(random_codeword(code, mask), e));
        r.fail(c.name + " recovered a non-correctable pattern");
      } catch (const NotCorrectable&) {
        ++rejected;
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, correctable.size() - 1);
    for (int t = 0; t < 100; ++t) {
      const Codeword w = random_codeword(code, rng());
      const Pattern e = Pattern::from_mask(m, n, correctable[pick(rng)]);
      try {
        if (recover(code, erase(w, e)) == w) {
          ++recovered;
        } else {
          r.fail(c.name + " recovered the wrong word");
        }
      } catch (const std::exception& ex) {
        r.fail(c.name + " failed on a correctable pattern: " + ex.what());
      }
    }
    ++codes;
    if (!r.ok) return r;
  }
  r.detail << codes << " codes, " << recovered << " round trips exact, " << rejected << " non-correctable patterns rejected";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"construction validity", construction_validity},
      {"lower bound q >= n by search", search_lower_bound},
      {"gabidulin lower bound by search", gabidulin_lower_bound},
      {"reduction preservation", reduction_preservation},
      {"cycle-union bound", cycle_union_bound},
      {"moore criterion", moore_criterion},
      {"decoder round trip", decoder_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (r.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << r.detail.str() << " ("
              << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
    failures += r.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
