#pragma once

// Slow, independent re-derivations used to check the library. Nothing here calls the
// library's own algorithms for the quantity being checked.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fqw/group.hpp"
#include "fqw/io.hpp"
#include "fqw/lattice.hpp"

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Perm = std::vector<int>;
using Matrix = std::vector<std::vector<long long>>;

inline std::filesystem::path data_dir() {
#ifdef FQW_TEST_DATA_DIR
  return FQW_TEST_DATA_DIR;
#else
  return "data/groups";
#endif
}

// ---------------------------------------------------------------- permutations

// (p*q)(i) = q(p(i)), the same left-to-right convention as the group tables.
inline Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

inline Perm identity(std::size_t n) {
  Perm r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

inline Perm invert(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

inline int order(const Perm& p) {
  const Perm e = identity(p.size());
  Perm q = p;
  int k = 1;
  while (q != e) {
    q = compose(q, p);
    ++k;
  }
  return k;
}

// Closure of a set of permutations by breadth-first search.
inline std::set<Perm> closure(const std::vector<Perm>& gens, std::size_t degree) {
  std::set<Perm> seen{identity(degree)};
  std::deque<Perm> queue{identity(degree)};
  while (!queue.empty()) {
    Perm x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Perm y = compose(x, g);
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return seen;
}

// A group given by its elements as explicit permutations (index -> perm).
struct PermGroup {
  std::vector<Perm> elems;
  std::map<Perm, fqw::Element> index;

  explicit PermGroup(std::vector<Perm> e) : elems(std::move(e)) {
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<fqw::Element>(i);
  }
  std::size_t degree() const { return elems.front().size(); }
  const Perm& operator[](fqw::Element e) const { return elems[e]; }
  fqw::Element at(const Perm& p) const { return index.at(p); }
};

inline PermGroup perm_group(const fqw::GroupFile& f) { return PermGroup(fqw::enumerate_permutations(f.generators)); }

// Conjugates of powers of the entries, minus the identity, on explicit permutations.
inline std::set<fqw::Element> sigma(const PermGroup& g, const std::vector<fqw::Element>& entries) {
  std::set<Perm> out;
  for (fqw::Element v : entries) {
    const Perm& p = g[v];
    Perm q = p;
    for (int k = 1; k <= order(p); ++k) {
      for (const auto& h : g.elems) out.insert(compose(compose(invert(h), q), h));
      q = compose(q, p);
    }
  }
  out.erase(identity(g.degree()));
  std::set<fqw::Element> idx;
  for (const auto& p : out) idx.insert(g.at(p));
  return idx;
}

// Orders, product 1 and generation, checked on the permutations themselves.
inline std::optional<std::string> generating_vector_problem(const PermGroup& g, const std::vector<fqw::Element>& entries,
                                                            const std::vector<int>& periods) {
  if (entries.size() != periods.size()) return "length";
  Perm prod = identity(g.degree());
  std::vector<Perm> gens;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Perm& p = g[entries[i]];
    if (order(p) != periods[i]) return "order of entry " + std::to_string(i);
    prod = compose(prod, p);
    gens.push_back(p);
  }
  if (prod != identity(g.degree())) return "product";
  if (closure(gens, g.degree()).size() != g.elems.size()) return "generation";
  return std::nullopt;
}

// Least simultaneous conjugate under index-lexicographic order.
inline std::vector<fqw::Element> canonical(const PermGroup& g, const std::vector<fqw::Element>& entries) {
  std::vector<fqw::Element> best;
  for (const auto& h : g.elems) {
    const Perm hi = invert(h);
    std::vector<fqw::Element> c;
    for (fqw::Element v : entries) c.push_back(g.at(compose(compose(hi, g[v]), h)));
    if (best.empty() || c < best) best = c;
  }
  return best;
}

// Every generating vector for `periods`, reduced to canonical conjugates. Brute force
// over the first s-1 entries; the last is forced by the product.
inline std::set<std::vector<fqw::Element>> all_canonical_vectors(const PermGroup& g, const std::vector<int>& periods) {
  std::vector<std::vector<fqw::Element>> by_order(periods.size());
  for (std::size_t i = 0; i < periods.size(); ++i) {
    for (fqw::Element e = 0; e < g.elems.size(); ++e) {
      if (order(g[e]) == periods[i]) by_order[i].push_back(e);
    }
  }
  std::set<std::vector<fqw::Element>> out;
  std::vector<fqw::Element> cur;
  const std::size_t s = periods.size();
  auto rec = [&](auto&& self, std::size_t pos, const Perm& prod) -> void {
    if (pos + 1 == s) {
      const fqw::Element last = g.at(invert(prod));
      cur.push_back(last);
      if (!generating_vector_problem(g, cur, periods)) out.insert(canonical(g, cur));
      cur.pop_back();
      return;
    }
    for (fqw::Element e : by_order[pos]) {
      cur.push_back(e);
      self(self, pos + 1, compose(prod, g[e]));
      cur.pop_back();
    }
  };
  rec(rec, 0, identity(g.degree()));
  return out;
}

// ---------------------------------------------------------------- integer matrices

inline Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Fraction-free Gaussian elimination.
inline Int bareiss_det(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

struct Cokernel {
  std::vector<long long> factors;  // invariant factors >= 2
  long long free_rank = 0;
};

// Invariant factors from determinantal divisors: d_k = gcd of all k x k minors,
// s_k = d_k / d_{k-1}.
inline Cokernel cokernel_by_minors(const Matrix& m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<Int> d{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(rows, k, rs);
    subsets(cols, k, cs);
    Int g = 0;
    for (const auto& r : rs) {
      for (const auto& c : cs) {
        std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        g = gcd(g, bareiss_det(std::move(sub)));
      }
    }
    if (g == 0) break;
    d.push_back(g);
  }
  Cokernel out;
  const std::size_t rank = d.size() - 1;
  out.free_rank = static_cast<long long>(cols - rank);
  for (std::size_t k = 1; k <= rank; ++k) {
    const Int s = d[k] / d[k - 1];
    if (s > 1) out.factors.push_back(static_cast<long long>(s));
  }
  return out;
}

// Textbook diagonalization: move the smallest nonzero entry to the pivot, clear its row
// and column by division with remainder, and repeat until the pivot divides the rest.
inline Cokernel cokernel_by_diagonalization(const Matrix& input, std::size_t cols) {
  std::vector<std::vector<Int>> m(input.size(), std::vector<Int>(cols));
  for (std::size_t i = 0; i < input.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = input[i][j];
  const std::size_t rows = m.size();
  std::vector<Int> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) pi = i, pj = j;
      if (pi == rows) break;
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const Int q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        clean = clean && m[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const Int q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        clean = clean && m[t][j] == 0;
      }
      if (!clean) continue;
      // Divisibility: fold a row holding a non-multiple into the pivot row.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) m[t][j] += m[bad][j];
    }
    if (t >= rows || m[t][t] == 0) break;
    diag.push_back(abs(m[t][t]));
  }
  Cokernel out;
  out.free_rank = static_cast<long long>(cols - diag.size());
  for (const auto& s : diag)
    if (s > 1) out.factors.push_back(static_cast<long long>(s));
  return out;
}

// ---------------------------------------------------------------- lattices

// Gram entries written out directly.
inline long long dot(fqw::FormKind k, long long a1, long long b1, long long a2, long long b2) {
  return k == fqw::FormKind::Even ? a1 * b2 + b1 * a2 : a1 * a2 - b1 * b2;
}

inline std::vector<fqw::DivisorClass> negative_curves(fqw::FormKind k, long long bound, bool char0) {
  const long long ka = k == fqw::FormKind::Even ? 2 : 3, kb = k == fqw::FormKind::Even ? 2 : -1;
  std::vector<fqw::DivisorClass> out;
  for (long long a = -bound; a <= bound; ++a) {
    for (long long b = -bound; b <= bound; ++b) {
      const long long c2 = dot(k, a, b, a, b), kc = dot(k, ka, kb, a, b);
      if (c2 >= 0 || kc <= 0) continue;
      if ((c2 + kc) % 2 != 0) continue;
      const long long pa = 1 + (c2 + kc) / 2;
      if (pa < 0 || (char0 && pa < 1)) continue;
      out.push_back({a, b});
    }
  }
  return out;
}

}  // namespace oracle
