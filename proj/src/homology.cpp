#include "fqw/homology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "fqw/error.hpp"

namespace fqw {

void validate(const Presentation& pres) {
  if (pres.generator_count < 0) throw InputError("negative generator count");
  for (const auto& rel : pres.relators) {
    for (int l : rel) {
      if (l == 0 || letter_generator(l) >= pres.generator_count) {
        throw InputError("relator letter " + std::to_string(l) + " outside generator range");
      }
    }
  }
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

Word freely_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

BigInt AbelianInvariants::torsion_order() const {
  BigInt n = 1;
  for (long long f : factors) n *= f;
  return n;
}

std::string to_string(const AbelianInvariants& inv) {
  std::ostringstream out;
  bool first = true;
  for (long long f : inv.factors) {
    out << (first ? "" : " x ") << "Z" << f;
    first = false;
  }
  if (inv.free_rank > 0) {
    out << (first ? "" : " x ") << "Z^" << inv.free_rank;
    first = false;
  }
  return first ? "0" : out.str();
}

std::string primary_decomposition(const AbelianInvariants& inv) {
  std::map<std::pair<long long, long long>, int> counts;  // (prime, prime power) -> multiplicity
  for (long long f : inv.factors) {
    long long n = f;
    for (long long p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      long long q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      ++counts[{p, q}];
    }
    if (n > 1) ++counts[{n, n}];
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, mult] : counts) {
    out << (first ? "" : " x ");
    if (mult == 1) {
      out << "Z" << key.second;
    } else {
      out << "(Z" << key.second << ")^" << mult;
    }
    first = false;
  }
  if (inv.free_rank > 0) {
    out << (first ? "" : " x ") << "Z^" << inv.free_rank;
    first = false;
  }
  return first ? "0" : out.str();
}

Presentation polygonal_presentation(const Signature& sig) {
  Presentation pres;
  pres.generator_count = static_cast<int>(sig.size());
  Word product;
  for (int i = 0; i < pres.generator_count; ++i) {
    pres.relators.push_back(Word(sig[i], letter(i)));
    product.push_back(letter(i));
  }
  pres.relators.push_back(std::move(product));
  return pres;
}

Presentation product_presentation(const Signature& sig1, const Signature& sig2) {
  const int s = static_cast<int>(sig1.size());
  const int t = static_cast<int>(sig2.size());
  Presentation pres;
  pres.generator_count = s + t;
  for (const auto& rel : polygonal_presentation(sig1).relators) pres.relators.push_back(rel);
  for (auto rel : polygonal_presentation(sig2).relators) {
    for (int& l : rel) l = l > 0 ? l + s : l - s;
    pres.relators.push_back(std::move(rel));
  }
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < t; ++j) {
      pres.relators.push_back({letter(i), letter(s + j), letter(i, true), letter(s + j, true)});
    }
  }
  return pres;
}

// ---------------------------------------------------------------------------

void CosetTable::validate() const {
  for (const auto& perm : action) {
    if (perm.size() != size) throw InputError("coset action has wrong length");
    std::vector<bool> hit(size, false);
    for (std::size_t c : perm) {
      if (c >= size || hit[c]) throw InputError("generator does not act as a permutation of cosets");
      hit[c] = true;
    }
  }
}

bool CosetTable::is_transitive() const {
  if (size == 0) return false;
  std::vector<bool> seen(size, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (const auto& perm : action) {
      if (!seen[perm[c]]) {
        seen[perm[c]] = true;
        ++count;
        queue.push_back(perm[c]);
      }
    }
  }
  return count == size;
}

SubgroupPresentation reidemeister_schreier(const Presentation& pres, const CosetTable& table) {
  validate(pres);
  table.validate();
  if (static_cast<int>(table.action.size()) != pres.generator_count) {
    throw InputError("coset table and presentation disagree on generator count");
  }
  if (!table.is_transitive()) throw InputError("coset action is not transitive");

  const std::size_t n = table.size;
  const int k = pres.generator_count;
  std::vector<std::vector<std::size_t>> inverse_action(k, std::vector<std::size_t>(n));
  for (int g = 0; g < k; ++g) {
    for (std::size_t c = 0; c < n; ++c) inverse_action[g][table.action[g][c]] = c;
  }

  SubgroupPresentation out;
  out.transversal.assign(n, {});
  // Schreier generator id of (coset, generator); -1 on tree edges.
  std::vector<std::vector<int>> sgen(n, std::vector<int>(k, -2));
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (int g = 0; g < k; ++g) {
      const std::size_t d = table.action[g][c];
      if (seen[d]) continue;
      seen[d] = true;
      sgen[c][g] = -1;
      out.transversal[d] = out.transversal[c];
      out.transversal[d].push_back(letter(g));
      queue.push_back(d);
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (int g = 0; g < k; ++g) {
      if (sgen[c][g] == -2) {
        sgen[c][g] = static_cast<int>(out.generator_labels.size());
        out.generator_labels.emplace_back(c, g);
      }
    }
  }
  out.presentation.generator_count = static_cast<int>(out.generator_labels.size());

  // Each conjugate rep(c) r rep(c)^-1 of a relator, rewritten from coset c.
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& rel : pres.relators) {
      Word rewritten;
      std::size_t cur = c;
      for (int l : rel) {
        const int g = letter_generator(l);
        if (l > 0) {
          if (sgen[cur][g] >= 0) rewritten.push_back(letter(sgen[cur][g]));
          cur = table.action[g][cur];
        } else {
          cur = inverse_action[g][cur];
          if (sgen[cur][g] >= 0) rewritten.push_back(letter(sgen[cur][g], true));
        }
      }
      if (cur != c) throw InputError("relator does not act trivially on the cosets");
      out.presentation.relators.push_back(freely_reduce(rewritten));
    }
  }
  return out;
}

std::vector<std::vector<long long>> relation_matrix(const Presentation& pres) {
  validate(pres);
  std::vector<std::vector<long long>> m(pres.relators.size(), std::vector<long long>(pres.generator_count, 0));
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    for (int l : pres.relators[r]) m[r][letter_generator(l)] += l > 0 ? 1 : -1;
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

using SparseRow = std::vector<std::pair<std::size_t, BigInt>>;

// row -= f * pivot_row
void axpy(SparseRow& row, const BigInt& f, const SparseRow& pivot_row) {
  SparseRow out;
  out.reserve(row.size() + pivot_row.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot_row.size()) {
    if (j == pivot_row.size() || (i < row.size() && row[i].first < pivot_row[j].first)) {
      out.push_back(std::move(row[i++]));
    } else if (i == row.size() || pivot_row[j].first < row[i].first) {
      out.emplace_back(pivot_row[j].first, -f * pivot_row[j].second);
      ++j;
    } else {
      BigInt v = row[i].second - f * pivot_row[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  row = std::move(out);
}

const BigInt* find_entry(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

// Dense Smith reduction; returns the absolute values of the nonzero diagonal.
std::vector<BigInt> dense_smith_diagonal(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      BigInt best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          BigInt v = abs(a[i][j]);
          if (pi == rows || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) return diag;
      std::swap(a[t], a[pi]);
      if (pj != t) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
      }
      bool clean = true;
      const BigInt p = a[t][t];
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const BigInt q = a[i][t] / p;
        for (std::size_t j = t; j < cols; ++j) {
          if (a[t][j] != 0) a[i][j] -= q * a[t][j];
        }
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const BigInt q = a[t][j] / p;
        for (std::size_t i = t; i < rows; ++i) {
          if (a[i][t] != 0) a[i][j] -= q * a[i][t];
        }
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % p != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

AbelianInvariants finish(std::vector<BigInt> diag, std::size_t cols, std::size_t rank) {
  // Normalize to a divisibility chain.
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      const BigInt g = gcd(diag[i], diag[j]);
      if (g == 0) continue;
      const BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  }
  AbelianInvariants inv;
  inv.free_rank = static_cast<long long>(cols - rank);
  for (const auto& d : diag) {
    if (d == 1) continue;
    if (d > std::numeric_limits<long long>::max()) throw InvariantViolation("invariant factor exceeds 64 bits");
    inv.factors.push_back(static_cast<long long>(d));
  }
  return inv;
}

AbelianInvariants smith_sparse(std::vector<SparseRow> rows, std::size_t cols) {
  // Column -> rows that may hold an entry there (stale entries are re-checked).
  std::vector<std::vector<std::size_t>> col_rows(cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, v] : rows[r]) {
      if (c >= cols) throw InputError("matrix entry outside column range");
      col_rows[c].push_back(r);
    }
  }
  std::vector<bool> row_alive(rows.size(), true);
  std::vector<bool> col_alive(cols, true);
  std::size_t unit_pivots = 0;

  // Unit pivots: clear the column with row operations, then drop the row and column.
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!row_alive[r] || rows[r].empty()) continue;
      std::size_t pc = cols;
      for (const auto& [c, v] : rows[r]) {
        if ((v == 1 || v == -1) && (pc == cols || col_rows[c].size() < col_rows[pc].size())) pc = c;
      }
      if (pc == cols) continue;
      const BigInt pv = *find_entry(rows[r], pc);
      const SparseRow pivot_row = rows[r];
      std::vector<std::size_t> touched;
      for (std::size_t q : col_rows[pc]) {
        if (q == r || !row_alive[q]) continue;
        const BigInt* w = find_entry(rows[q], pc);
        if (!w) continue;
        const BigInt f = *w * pv;
        axpy(rows[q], f, pivot_row);
        touched.push_back(q);
      }
      for (std::size_t q : touched) {
        for (const auto& [c, v] : rows[q]) {
          if (c != pc) col_rows[c].push_back(q);
        }
      }
      for (const auto& [c, v] : pivot_row) {
        auto& list = col_rows[c];
        list.erase(std::remove(list.begin(), list.end(), r), list.end());
      }
      col_rows[pc].clear();
      row_alive[r] = false;
      col_alive[pc] = false;
      ++unit_pivots;
      progress = true;
    }
    if (progress) {
      for (auto& list : col_rows) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
      }
    }
  }

  std::vector<std::size_t> col_index(cols, cols);
  std::size_t remaining_cols = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_alive[c]) col_index[c] = remaining_cols++;
  }
  std::vector<std::vector<BigInt>> dense;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!row_alive[r] || rows[r].empty()) continue;
    std::vector<BigInt> row(remaining_cols, 0);
    for (const auto& [c, v] : rows[r]) row[col_index[c]] = v;
    dense.push_back(std::move(row));
  }
  auto diag = dense_smith_diagonal(std::move(dense));
  const std::size_t rank = unit_pivots + diag.size();
  return finish(std::move(diag), cols, rank);
}

}  // namespace

AbelianInvariants smith_normal_form(const std::vector<std::vector<BigInt>>& matrix, std::size_t cols) {
  std::vector<SparseRow> rows;
  rows.reserve(matrix.size());
  for (const auto& dense : matrix) {
    if (dense.size() != cols) throw InputError("ragged matrix");
    SparseRow row;
    for (std::size_t c = 0; c < cols; ++c) {
      if (dense[c] != 0) row.emplace_back(c, dense[c]);
    }
    rows.push_back(std::move(row));
  }
  return smith_sparse(std::move(rows), cols);
}

AbelianInvariants smith_normal_form(const std::vector<std::vector<long long>>& matrix, std::size_t cols) {
  std::vector<SparseRow> rows;
  rows.reserve(matrix.size());
  for (const auto& dense : matrix) {
    if (dense.size() != cols) throw InputError("ragged matrix");
    SparseRow row;
    for (std::size_t c = 0; c < cols; ++c) {
      if (dense[c] != 0) row.emplace_back(c, BigInt(dense[c]));
    }
    rows.push_back(std::move(row));
  }
  return smith_sparse(std::move(rows), cols);
}

AbelianInvariants abelianization(const Presentation& pres) {
  return smith_normal_form(relation_matrix(pres), static_cast<std::size_t>(pres.generator_count));
}

CosetTable fiber_product_cosets(const GroupTable& group, const GeneratingVector& v1, const GeneratingVector& v2) {
  CosetTable table;
  table.size = group.order();
  for (Element v : v1.entries) {
    std::vector<std::size_t> perm(table.size);
    for (Element x = 0; x < table.size; ++x) perm[x] = group.mul(group.inverse(v), x);
    table.action.push_back(std::move(perm));
  }
  for (Element w : v2.entries) {
    std::vector<std::size_t> perm(table.size);
    for (Element x = 0; x < table.size; ++x) perm[x] = group.mul(x, w);
    table.action.push_back(std::move(perm));
  }
  return table;
}

AbelianInvariants fiber_product_h1(const GroupTable& group, const GeneratingVector& v1, const GeneratingVector& v2) {
  if (auto d = generating_vector_defect(group, v1)) throw InputError("first vector: " + *d);
  if (auto d = generating_vector_defect(group, v2)) throw InputError("second vector: " + *d);
  if (sigma_set(group, v1.entries).intersects(sigma_set(group, v2.entries))) {
    throw InputError("sigma sets intersect: the diagonal action is not free");
  }
  const CosetTable table = fiber_product_cosets(group, v1, v2);
  if (!table.is_transitive()) throw InvariantViolation("coset action is not transitive");
  const auto sub = reidemeister_schreier(product_presentation(v1.signature, v2.signature), table);
  AbelianInvariants inv = abelianization(sub.presentation);
  if (inv.free_rank != 0) {
    throw InvariantViolation("H1 has free rank " + std::to_string(inv.free_rank) + "; expected q = 0");
  }
  return inv;
}

}  // namespace fqw
