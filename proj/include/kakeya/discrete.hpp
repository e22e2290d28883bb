#pragma once

// Exact minimal Kakeya sets in finite groups: subsets containing a left
// coset of every cyclic subgroup. Any such set contains, per cyclic
// subgroup, a full coset, and the union of those cosets is again a Kakeya
// set, so the optimum is a minimal-union choice of one coset per subgroup.
// The exact solver is a branch-and-bound over those choices; the oracle is
// a plain exhaustive product; the greedy picks maximal overlaps.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kakeya/common.hpp"

namespace kakeya {
namespace discrete {

using json = nlohmann::json;

// Small dynamic bitset over group elements.
struct ElementSet {
  std::vector<std::uint64_t> w;
  int n = 0;

  explicit ElementSet(int n_ = 0) : w(static_cast<size_t>((n_ + 63) / 64), 0), n(n_) {}
  void insert(int i) { w[static_cast<size_t>(i) >> 6] |= (1ull << (i & 63)); }
  bool contains(int i) const { return (w[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1; }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool superset_of(const ElementSet& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if ((o.w[i] & ~w[i]) != 0) return false;
    return true;
  }
  int count_missing(const ElementSet& o) const {  // |o \ this|
    int c = 0;
    for (size_t i = 0; i < w.size(); ++i) c += std::popcount(o.w[i] & ~w[i]);
    return c;
  }
  void unite(const ElementSet& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }
  bool operator==(const ElementSet& o) const { return w == o.w; }
};

class FiniteGroup {
 public:
  int order = 0;
  std::vector<std::uint16_t> table;  // row-major multiplication table
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::string> labels;
  std::string name;

  int mul(int a, int b) const { return table[static_cast<size_t>(a) * static_cast<size_t>(order) + static_cast<size_t>(b)]; }
  int inv(int a) const { return inverse[static_cast<size_t>(a)]; }

  int element_order(int a) const {
    int x = a, k = 1;
    while (x != identity) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  long exponent() const {
    long e = 1;
    for (int a = 0; a < order; ++a) e = std::lcm(e, static_cast<long>(element_order(a)));
    return e;
  }
};

// --- construction and validation -------------------------------------------

namespace detail {

inline void validate_group(FiniteGroup& g, std::uint64_t seed = 12345) {
  const int m = g.order;
  if (m <= 0 || static_cast<int>(g.table.size()) != m * m)
    throw input_error("multiplication table has the wrong size");
  // Latin square
  for (int r = 0; r < m; ++r) {
    std::vector<bool> seen_row(static_cast<size_t>(m), false), seen_col(static_cast<size_t>(m), false);
    for (int c = 0; c < m; ++c) {
      int rc = g.mul(r, c), cr = g.mul(c, r);
      if (rc < 0 || rc >= m || cr < 0 || cr >= m) throw input_error("table entry out of range");
      if (seen_row[static_cast<size_t>(rc)]) throw input_error("table row is not a permutation");
      if (seen_col[static_cast<size_t>(cr)]) throw input_error("table column is not a permutation");
      seen_row[static_cast<size_t>(rc)] = true;
      seen_col[static_cast<size_t>(cr)] = true;
    }
  }
  // identity
  int id = -1;
  for (int e = 0; e < m; ++e) {
    bool ok = true;
    for (int a = 0; a < m && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw input_error("table has no identity element");
  g.identity = id;
  // associativity: full check for small groups, sampled above
  if (m <= 64) {
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
            throw input_error("table is not associative");
  } else {
    for (int k = 0; k < 100000; ++k) {
      int a = static_cast<int>(splitmix64(seed + 3 * static_cast<std::uint64_t>(k)) % static_cast<std::uint64_t>(m));
      int b = static_cast<int>(splitmix64(seed + 3 * static_cast<std::uint64_t>(k) + 1) % static_cast<std::uint64_t>(m));
      int c = static_cast<int>(splitmix64(seed + 3 * static_cast<std::uint64_t>(k) + 2) % static_cast<std::uint64_t>(m));
      if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
        throw input_error("table is not associative (sampled)");
    }
  }
  // inverses
  g.inverse.assign(static_cast<size_t>(m), -1);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (g.mul(a, b) == id && g.mul(b, a) == id) {
        g.inverse[static_cast<size_t>(a)] = b;
        break;
      }
    }
    if (g.inverse[static_cast<size_t>(a)] < 0) throw input_error("element without inverse");
  }
  if (g.labels.size() != static_cast<size_t>(m)) {
    g.labels.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
      if (g.labels[static_cast<size_t>(i)].empty()) g.labels[static_cast<size_t>(i)] = "g" + std::to_string(i);
  }
}

}  // namespace detail

inline FiniteGroup group_from_table(std::vector<std::uint16_t> table, int order,
                                    std::string name = "table",
                                    std::vector<std::string> labels = {}) {
  if (order > 4096) throw input_error("group order capped at 4096");
  FiniteGroup g;
  g.order = order;
  g.table = std::move(table);
  g.labels = std::move(labels);
  g.name = std::move(name);
  detail::validate_group(g);
  return g;
}

inline FiniteGroup cyclic_group(int m) {
  if (m < 1 || m > 4096) throw input_error("cyclic order out of range");
  std::vector<std::uint16_t> t(static_cast<size_t>(m) * static_cast<size_t>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[static_cast<size_t>(a) * static_cast<size_t>(m) + static_cast<size_t>(b)] = static_cast<std::uint16_t>((a + b) % m);
  return group_from_table(std::move(t), m, "Z" + std::to_string(m));
}

inline FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
  long m = static_cast<long>(g1.order) * g2.order;
  if (m > 4096) throw input_error("product order exceeds the cap");
  int n = static_cast<int>(m);
  std::vector<std::uint16_t> t(static_cast<size_t>(n) * static_cast<size_t>(n));
  auto idx = [&](int a1, int a2) { return a1 * g2.order + a2; };
  for (int a1 = 0; a1 < g1.order; ++a1)
    for (int a2 = 0; a2 < g2.order; ++a2)
      for (int b1 = 0; b1 < g1.order; ++b1)
        for (int b2 = 0; b2 < g2.order; ++b2)
          t[static_cast<size_t>(idx(a1, a2)) * static_cast<size_t>(n) + static_cast<size_t>(idx(b1, b2))] =
              static_cast<std::uint16_t>(idx(g1.mul(a1, b1), g2.mul(a2, b2)));
  return group_from_table(std::move(t), n, g1.name + "x" + g2.name);
}

// Dihedral group of the m-gon, order 2m; element r^i s^j with j in {0,1}.
inline FiniteGroup dihedral_group(int m) {
  if (m < 1 || m > 2048) throw input_error("dihedral parameter out of range");
  int n = 2 * m;
  auto code = [&](int i, int j) { return i + m * j; };
  std::vector<std::uint16_t> t(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i1 = 0; i1 < m; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < m; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + (-1)^j1 i2) s^(j1+j2)
          int i = j1 == 0 ? (i1 + i2) % m : ((i1 - i2) % m + m) % m;
          int j = (j1 + j2) % 2;
          t[static_cast<size_t>(code(i1, j1)) * static_cast<size_t>(n) + static_cast<size_t>(code(i2, j2))] =
              static_cast<std::uint16_t>(code(i, j));
        }
  return group_from_table(std::move(t), n, "D" + std::to_string(m));
}

// Unitriangular 3x3 matrices over Z_p (the discrete Heisenberg group),
// order p^3; element (a,b,c) is [[1,a,c],[0,1,b],[0,0,1]].
inline FiniteGroup unitriangular_group(int p) {
  long m = static_cast<long>(p) * p * p;
  if (p < 2 || m > 4096) throw input_error("unitriangular parameter out of range");
  int n = static_cast<int>(m);
  auto code = [&](int a, int b, int c) { return (a * p + b) * p + c; };
  std::vector<std::uint16_t> t(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int a1 = 0; a1 < p; ++a1)
    for (int b1 = 0; b1 < p; ++b1)
      for (int c1 = 0; c1 < p; ++c1)
        for (int a2 = 0; a2 < p; ++a2)
          for (int b2 = 0; b2 < p; ++b2)
            for (int c2 = 0; c2 < p; ++c2) {
              int a = (a1 + a2) % p;
              int b = (b1 + b2) % p;
              int c = (c1 + c2 + a1 * b2) % p;
              t[static_cast<size_t>(code(a1, b1, c1)) * static_cast<size_t>(n) +
                static_cast<size_t>(code(a2, b2, c2))] = static_cast<std::uint16_t>(code(a, b, c));
            }
  return group_from_table(std::move(t), n, "UT3_" + std::to_string(p));
}

// Quaternion group Q8 = {1, -1, i, -i, j, -j, k, -k} via an explicit table.
inline FiniteGroup quaternion_group() {
  // encode 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
  auto neg = [](int x) { return x ^ 1; };
  auto base_mul = [&](int x, int y) -> int {
    // multiplication of {1,i,j,k} signs handled by caller; x,y in {0,2,4,6}
    if (x == 0) return y;
    if (y == 0) return x;
    if (x == y) return 1;  // i*i = j*j = k*k = -1
    // cyclic rule i*j=k, j*k=i, k*i=j; reversed pairs pick up a sign
    if (x == 2 && y == 4) return 6;
    if (x == 4 && y == 6) return 2;
    if (x == 6 && y == 2) return 4;
    if (x == 4 && y == 2) return neg(6);
    if (x == 6 && y == 4) return neg(2);
    if (x == 2 && y == 6) return neg(4);
    throw input_error("unreachable quaternion product");
  };
  std::vector<std::uint16_t> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int p = base_mul(x & ~1, y & ~1);
      int sign = (x & 1) ^ (y & 1);
      t[static_cast<size_t>(x) * 8 + static_cast<size_t>(y)] = static_cast<std::uint16_t>(sign ? neg(p) : p);
    }
  return group_from_table(std::move(t), 8, "Q8",
                          {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

// Parse specs like "Z6", "Z3xZ3", "D4", "UT3_2", "Q8", and products thereof.
inline FiniteGroup build_group(const std::string& spec) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t x = spec.find('x', pos);
    if (x == std::string::npos) {
      parts.push_back(spec.substr(pos));
      break;
    }
    parts.push_back(spec.substr(pos, x - pos));
    pos = x + 1;
  }
  if (parts.empty()) throw input_error("empty group spec");
  auto build_one = [](const std::string& p) -> FiniteGroup {
    if (p.size() >= 2 && p[0] == 'Z') return cyclic_group(std::stoi(p.substr(1)));
    if (p.size() >= 2 && p[0] == 'D') return dihedral_group(std::stoi(p.substr(1)));
    if (p.rfind("UT3_", 0) == 0) return unitriangular_group(std::stoi(p.substr(4)));
    if (p == "Q8") return quaternion_group();
    if (p == "S3") return dihedral_group(3);
    throw input_error("unknown group spec '" + p + "'");
  };
  FiniteGroup g = build_one(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) g = direct_product(g, build_one(parts[i]));
  return g;
}

// --- cyclic subgroups and cosets --------------------------------------------

struct CyclicSubgroup {
  std::vector<int> elems;  // sorted
  int generator = 0;       // smallest generating element
  int order = 1;
  std::vector<ElementSet> cosets;      // one per left coset, deduplicated
  std::vector<int> coset_reps;         // smallest element of each coset
};

// Every cyclic subgroup listed once (the trivial one included), sorted by
// decreasing order then by element list.
inline std::vector<CyclicSubgroup> enumerate_cyclic_subgroups(const FiniteGroup& g) {
  std::map<std::vector<int>, int> seen;  // elements -> smallest generator
  for (int a = 0; a < g.order; ++a) {
    std::vector<int> elems;
    int x = g.identity;
    elems.push_back(x);
    x = a;
    while (x != g.identity) {
      elems.push_back(x);
      x = g.mul(x, a);
    }
    std::sort(elems.begin(), elems.end());
    auto it = seen.find(elems);
    if (it == seen.end()) seen.emplace(std::move(elems), a);
  }
  std::vector<CyclicSubgroup> out;
  for (const auto& [elems, gen] : seen) {
    CyclicSubgroup h;
    h.elems = elems;
    h.generator = gen;
    h.order = static_cast<int>(elems.size());
    // left cosets aH, deduplicated, ordered by smallest element
    std::vector<bool> used(static_cast<size_t>(g.order), false);
    for (int a = 0; a < g.order; ++a) {
      if (used[static_cast<size_t>(a)]) continue;
      ElementSet coset(g.order);
      int rep = g.order;
      for (int e : h.elems) {
        int m = g.mul(a, e);
        coset.insert(m);
        used[static_cast<size_t>(m)] = true;
        rep = std::min(rep, m);
      }
      h.cosets.push_back(std::move(coset));
      h.coset_reps.push_back(rep);
    }
    // deterministic coset order
    std::vector<size_t> idx(h.cosets.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) { return h.coset_reps[x] < h.coset_reps[y]; });
    std::vector<ElementSet> cs;
    std::vector<int> rs;
    for (size_t i : idx) {
      cs.push_back(h.cosets[i]);
      rs.push_back(h.coset_reps[i]);
    }
    h.cosets = std::move(cs);
    h.coset_reps = std::move(rs);
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const CyclicSubgroup& a, const CyclicSubgroup& b) {
    if (a.order != b.order) return a.order > b.order;
    return a.elems < b.elems;
  });
  return out;
}

// --- verification -------------------------------------------------------------

struct KakeyaWitness {
  int subgroup = 0;     // index into the subgroup list
  int coset_rep = -1;   // -1 when violated
};

struct VerifyResult {
  bool kakeya = false;
  std::vector<KakeyaWitness> witnesses;  // one entry per subgroup
};

inline VerifyResult verify_kakeya(const FiniteGroup& g, const ElementSet& E,
                                  const std::vector<CyclicSubgroup>* subs_cache = nullptr) {
  std::vector<CyclicSubgroup> local;
  const std::vector<CyclicSubgroup>* subs = subs_cache;
  if (!subs) {
    local = enumerate_cyclic_subgroups(g);
    subs = &local;
  }
  VerifyResult res;
  res.kakeya = true;
  for (size_t i = 0; i < subs->size(); ++i) {
    const auto& h = (*subs)[i];
    KakeyaWitness w;
    w.subgroup = static_cast<int>(i);
    for (size_t c = 0; c < h.cosets.size(); ++c) {
      if (E.superset_of(h.cosets[c])) {
        w.coset_rep = h.coset_reps[c];
        break;
      }
    }
    if (w.coset_rep < 0) res.kakeya = false;
    res.witnesses.push_back(w);
  }
  return res;
}

struct KakeyaCover {
  std::vector<std::pair<int, int>> choices;  // (subgroup index, coset rep)
  ElementSet elements{0};
};

struct MinReport {
  int min_size = 0;
  double ratio = 0;
  KakeyaCover cover;
  long nodes = 0;
  bool optimal = false;
  std::string method;
  std::string group_name;
  int group_order = 0;
};

// --- greedy upper bound --------------------------------------------------------

inline KakeyaCover greedy_upper_bound(const FiniteGroup& g,
                                      const std::vector<CyclicSubgroup>& subs) {
  KakeyaCover cover;
  cover.elements = ElementSet(g.order);
  for (size_t i = 0; i < subs.size(); ++i) {
    const auto& h = subs[i];
    // already satisfied?
    int chosen = -1;
    for (size_t c = 0; c < h.cosets.size(); ++c)
      if (cover.elements.superset_of(h.cosets[c])) {
        chosen = static_cast<int>(c);
        break;
      }
    if (chosen < 0) {
      int best_missing = g.order + 1;
      for (size_t c = 0; c < h.cosets.size(); ++c) {
        int miss = cover.elements.count_missing(h.cosets[c]);
        if (miss < best_missing) {
          best_missing = miss;
          chosen = static_cast<int>(c);
        }
      }
      cover.elements.unite(h.cosets[static_cast<size_t>(chosen)]);
    }
    cover.choices.emplace_back(static_cast<int>(i), h.coset_reps[static_cast<size_t>(chosen)]);
  }
  return cover;
}

inline KakeyaCover greedy_upper_bound(const FiniteGroup& g) {
  auto subs = enumerate_cyclic_subgroups(g);
  return greedy_upper_bound(g, subs);
}

// --- exact branch and bound -----------------------------------------------------

namespace detail {

struct BnB {
  const FiniteGroup& g;
  const std::vector<CyclicSubgroup>& subs;
  std::vector<std::vector<int>> inter;  // pairwise |H_i cap H_j|
  long nodes = 0;
  long node_budget = 0;
  std::chrono::steady_clock::time_point deadline;
  bool budget_hit = false;

  int best_size = 0;
  std::vector<int> best_choice;    // coset index per subgroup
  bool lex_phase = false;
  int lex_target = 0;
  std::vector<int> lex_best_elems;
  std::vector<int> lex_best_choice;

  BnB(const FiniteGroup& g_, const std::vector<CyclicSubgroup>& s) : g(g_), subs(s) {
    size_t n = subs.size();
    inter.assign(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        std::vector<int> tmp;
        std::set_intersection(subs[i].elems.begin(), subs[i].elems.end(), subs[j].elems.begin(),
                              subs[j].elems.end(), std::back_inserter(tmp));
        inter[i][j] = static_cast<int>(tmp.size());
      }
  }

  bool over_budget() {
    if ((nodes & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline) budget_hit = true;
    if (node_budget > 0 && nodes > node_budget) budget_hit = true;
    return budget_hit;
  }

  // Sound lower bound on the elements still to be added: pick a greedy
  // family of unsatisfied subgroups and charge each its cheapest coset
  // minus the pairwise intersection capacity with earlier picks.
  int lower_bound(const ElementSet& u, size_t from) {
    struct Cand {
      int cost;
      size_t idx;
    };
    std::vector<Cand> cands;
    for (size_t i = from; i < subs.size(); ++i) {
      int cheapest = g.order + 1;
      for (const auto& c : subs[i].cosets) {
        cheapest = std::min(cheapest, u.count_missing(c));
        if (cheapest == 0) break;
      }
      if (cheapest > 0) cands.push_back({cheapest, i});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.cost > b.cost; });
    int bound = 0;
    std::vector<size_t> family;
    for (const auto& c : cands) {
      int marginal = c.cost;
      for (size_t f : family) marginal -= inter[c.idx][f];
      if (marginal > 0) {
        bound += marginal;
        family.push_back(c.idx);
      }
    }
    return bound;
  }

  void dfs(size_t i, ElementSet u, std::vector<int>& choice) {
    ++nodes;
    if (over_budget()) return;
    // skip satisfied subgroups
    while (i < subs.size()) {
      int sat = -1;
      for (size_t c = 0; c < subs[i].cosets.size(); ++c)
        if (u.superset_of(subs[i].cosets[c])) {
          sat = static_cast<int>(c);
          break;
        }
      if (sat < 0) break;
      choice[i] = sat;
      ++i;
    }
    if (i == subs.size()) {
      int size = u.count();
      if (!lex_phase) {
        if (size < best_size) {
          best_size = size;
          best_choice = choice;
        }
      } else if (size == lex_target) {
        auto elems = u.elements();
        if (lex_best_elems.empty() || elems < lex_best_elems) {
          lex_best_elems = elems;
          lex_best_choice = choice;
        }
      }
      return;
    }
    int used = u.count();
    int lb = used + lower_bound(u, i);
    if (!lex_phase ? lb >= best_size : lb > lex_target) return;

    // order candidate cosets by fewest new elements, then by representative
    struct Opt {
      int miss;
      int rep;
      size_t c;
    };
    std::vector<Opt> opts;
    for (size_t c = 0; c < subs[i].cosets.size(); ++c)
      opts.push_back({u.count_missing(subs[i].cosets[c]), subs[i].coset_reps[c], c});
    std::sort(opts.begin(), opts.end(), [](const Opt& a, const Opt& b) {
      if (a.miss != b.miss) return a.miss < b.miss;
      return a.rep < b.rep;
    });
    for (const auto& o : opts) {
      if (!lex_phase && used + o.miss >= best_size) continue;
      if (lex_phase && used + o.miss > lex_target) continue;
      ElementSet u2 = u;
      u2.unite(subs[i].cosets[o.c]);
      choice[i] = static_cast<int>(o.c);
      dfs(i + 1, u2, choice);
      if (over_budget()) return;
    }
  }
};

}  // namespace detail

inline MinReport min_kakeya_exact(const FiniteGroup& g, long time_budget_ms = 60000,
                                  long node_budget = 0) {
  auto subs = enumerate_cyclic_subgroups(g);
  detail::BnB bnb(g, subs);
  bnb.node_budget = node_budget;
  bnb.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(time_budget_ms);

  auto greedy = greedy_upper_bound(g, subs);
  bnb.best_size = greedy.elements.count() + 1;  // strict upper sentinel
  std::vector<int> choice(subs.size(), 0);
  bnb.dfs(0, ElementSet(g.order), choice);

  MinReport rep;
  rep.group_name = g.name;
  rep.group_order = g.order;
  rep.method = "branch-and-bound";
  rep.nodes = bnb.nodes;
  rep.optimal = !bnb.budget_hit;

  std::vector<int> chosen = bnb.best_choice;
  if (chosen.empty()) {  // budget hit before any leaf: fall back to greedy
    rep.min_size = greedy.elements.count();
    rep.cover = greedy;
    rep.optimal = false;
    rep.ratio = static_cast<double>(rep.min_size) / g.order;
    return rep;
  }
  rep.min_size = bnb.best_size;

  // second phase: lexicographically smallest cover of the optimal size;
  // a budget hit here keeps the proven minimum but loses the lex guarantee
  if (rep.optimal) {
    bnb.lex_phase = true;
    bnb.lex_target = rep.min_size;
    std::vector<int> c2(subs.size(), 0);
    bnb.dfs(0, ElementSet(g.order), c2);
    if (!bnb.budget_hit && !bnb.lex_best_choice.empty()) chosen = bnb.lex_best_choice;
    rep.nodes = bnb.nodes;
  }

  KakeyaCover cover;
  cover.elements = ElementSet(g.order);
  for (size_t i = 0; i < subs.size(); ++i) {
    cover.elements.unite(subs[i].cosets[static_cast<size_t>(chosen[i])]);
    cover.choices.emplace_back(static_cast<int>(i), subs[i].coset_reps[static_cast<size_t>(chosen[i])]);
  }
  rep.cover = cover;
  rep.min_size = cover.elements.count();
  rep.ratio = static_cast<double>(rep.min_size) / g.order;
  return rep;
}

// Plain exhaustive product over all coset choices; certified but only
// feasible while prod [G:H] stays small.
inline MinReport min_kakeya_oracle(const FiniteGroup& g, double max_product = 1e7) {
  auto subs = enumerate_cyclic_subgroups(g);
  double prod = 1;
  for (const auto& h : subs) prod *= static_cast<double>(h.cosets.size());
  if (prod > max_product) throw input_error("oracle product bound exceeded");

  MinReport rep;
  rep.group_name = g.name;
  rep.group_order = g.order;
  rep.method = "exhaustive";
  rep.optimal = true;

  size_t n = subs.size();
  std::vector<size_t> idx(n, 0);
  int best = g.order + 1;
  std::vector<int> best_elems;
  std::vector<size_t> best_idx;
  while (true) {
    ElementSet u(g.order);
    for (size_t i = 0; i < n; ++i) u.unite(subs[i].cosets[idx[i]]);
    int size = u.count();
    ++rep.nodes;
    if (size < best) {
      best = size;
      best_elems = u.elements();
      best_idx = idx;
    } else if (size == best) {
      auto e = u.elements();
      if (e < best_elems) {
        best_elems = e;
        best_idx = idx;
      }
    }
    size_t k = 0;
    while (k < n && ++idx[k] == subs[k].cosets.size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  rep.min_size = best;
  rep.ratio = static_cast<double>(best) / g.order;
  rep.cover.elements = ElementSet(g.order);
  for (size_t i = 0; i < n; ++i) {
    rep.cover.elements.unite(subs[i].cosets[best_idx[i]]);
    rep.cover.choices.emplace_back(static_cast<int>(i), subs[i].coset_reps[best_idx[i]]);
  }
  return rep;
}

// --- generators and ratio tables ----------------------------------------------

// Minimal generating set size by exhaustive search over ascending sizes;
// exact for the orders this artifact targets.
inline int generator_count(const FiniteGroup& g, int max_k = 3) {
  if (g.order == 1) return 0;
  auto closure_is_group = [&](const std::vector<int>& gens) {
    std::vector<bool> in(static_cast<size_t>(g.order), false);
    std::vector<int> frontier = {g.identity};
    in[static_cast<size_t>(g.identity)] = true;
    int count = 1;
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x : frontier)
        for (int gen : gens) {
          int y = g.mul(x, gen);
          if (!in[static_cast<size_t>(y)]) {
            in[static_cast<size_t>(y)] = true;
            ++count;
            next.push_back(y);
          }
        }
      frontier = std::move(next);
    }
    return count == g.order;
  };
  for (int a = 0; a < g.order; ++a)
    if (a != g.identity && closure_is_group({a})) return 1;
  if (max_k >= 2)
    for (int a = 0; a < g.order; ++a)
      for (int b = a + 1; b < g.order; ++b)
        if (closure_is_group({a, b})) return 2;
  if (max_k >= 3)
    for (int a = 0; a < g.order; ++a)
      for (int b = a + 1; b < g.order; ++b)
        for (int c = b + 1; c < g.order; ++c)
          if (closure_is_group({a, b, c})) return 3;
  return -1;  // not found within the cap
}

struct RatioRow {
  std::string group;
  int order = 0;
  long exponent = 0;
  int generators = 0;
  int min_size = 0;
  double ratio = 0;
  bool optimal = false;
};

inline RatioRow ratio_row(const FiniteGroup& g, long budget_ms = 60000) {
  auto rep = min_kakeya_exact(g, budget_ms);
  RatioRow row;
  row.group = g.name;
  row.order = g.order;
  row.exponent = g.exponent();
  row.generators = g.order <= 256 ? generator_count(g) : -1;
  row.min_size = rep.min_size;
  row.ratio = rep.ratio;
  row.optimal = rep.optimal;
  return row;
}

inline std::string ratio_table_csv(const std::vector<RatioRow>& rows) {
  std::string out = "group,order,exponent,generators,min_e,c,optimal\n";
  for (const auto& r : rows) {
    out += r.group + "," + std::to_string(r.order) + "," + std::to_string(r.exponent) + "," +
           std::to_string(r.generators) + "," + std::to_string(r.min_size) + "," +
           std::to_string(r.ratio) + "," + (r.optimal ? "1" : "0") + "\n";
  }
  return out;
}

// --- json ----------------------------------------------------------------------

inline json cover_to_json(const FiniteGroup& g, const KakeyaCover& cover) {
  json j;
  j["elements"] = cover.elements.elements();
  json ch = json::array();
  for (const auto& [sub, rep] : cover.choices) ch.push_back(json{{"subgroup", sub}, {"coset_rep", rep}});
  j["choices"] = ch;
  j["group"] = g.name;
  return j;
}

inline ElementSet element_set_from_json(const FiniteGroup& g, const json& j) {
  ElementSet e(g.order);
  for (int idx : j.at("elements").get<std::vector<int>>()) {
    if (idx < 0 || idx >= g.order) throw input_error("element index out of range");
    e.insert(idx);
  }
  return e;
}

inline json min_report_to_json(const MinReport& rep) {
  json j;
  j["group"] = rep.group_name;
  j["order"] = rep.group_order;
  j["min_size"] = rep.min_size;
  j["ratio"] = rep.ratio;
  j["optimal"] = rep.optimal;
  j["nodes"] = rep.nodes;
  j["method"] = rep.method;
  j["elements"] = rep.cover.elements.elements();
  return j;
}

}  // namespace discrete
}  // namespace kakeya
