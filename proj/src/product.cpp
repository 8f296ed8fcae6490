#include "fqw/product.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <cctype>
#include <map>
#include <sstream>
#include <thread>

#include "fqw/error.hpp"

namespace fqw {

Signature::Signature(std::vector<int> periods) : periods_(std::move(periods)) {
  if (periods_.empty()) throw InputError("signature must have at least one period");
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (periods_[i] < 2) throw InputError("signature periods must be >= 2");
    if (i > 0 && periods_[i] < periods_[i - 1]) throw InputError("signature periods must be non-decreasing");
  }
}

std::string Signature::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < periods_.size(); ++i) out << (i ? "," : "") << periods_[i];
  out << ']';
  return out.str();
}

Signature parse_signature(std::string_view text) {
  std::vector<int> periods;
  std::size_t i = 0;
  auto read_int = [&]() {
    int v = 0;
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    if (i == start) throw InputError("malformed signature '" + std::string(text) + "'");
    return v;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '[' || c == ']' || c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const int m = read_int();
    int reps = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      reps = read_int();
    }
    periods.insert(periods.end(), reps, m);
  }
  std::sort(periods.begin(), periods.end());
  return Signature(std::move(periods));
}

std::optional<std::string> generating_vector_defect(const GroupTable& group, const GeneratingVector& v) {
  if (v.entries.size() != v.signature.size()) return "entry count differs from signature length";
  Element prod = GroupTable::identity;
  for (std::size_t i = 0; i < v.entries.size(); ++i) {
    if (v.entries[i] >= group.order()) return "entry index out of range";
    if (group.element_order(v.entries[i]) != v.signature[i]) {
      return "entry " + std::to_string(i) + " has order " + std::to_string(group.element_order(v.entries[i])) +
             ", expected " + std::to_string(v.signature[i]);
    }
    prod = group.mul(prod, v.entries[i]);
  }
  if (prod != GroupTable::identity) return "product of entries is not the identity";
  if (!group.generates(v.entries)) return "entries do not generate the group";
  return std::nullopt;
}

long long rh_genus(long long order, const Signature& sig, bool require_general_type) {
  if (order < 1) throw InputError("group order must be positive");
  using Q = boost::rational<long long>;
  Q c(-2);
  for (int m : sig.periods()) c += Q(1) - Q(1, m);
  const Q twice_g_minus_2 = c * order;
  if (twice_g_minus_2.denominator() != 1 || twice_g_minus_2.numerator() % 2 != 0) {
    throw ParityViolation("2g-2 = " + std::to_string(twice_g_minus_2.numerator()) + "/" +
                          std::to_string(twice_g_minus_2.denominator()) + " is not an even integer for order " +
                          std::to_string(order) + " and signature " + sig.to_string());
  }
  if (twice_g_minus_2 < 0) {
    throw InputError("signature " + sig.to_string() + " gives negative 2g-2 for order " + std::to_string(order));
  }
  const long long g = twice_g_minus_2.numerator() / 2 + 1;
  if (require_general_type && g <= 1) {
    throw InputError("genus " + std::to_string(g) + " < 2 for signature " + sig.to_string());
  }
  return g;
}

// ---------------------------------------------------------------------------

namespace {

// reach[j]: prefix products p for which some tail with orders m_j.. closes p to 1.
std::vector<std::vector<bool>> tail_reachability(const GroupTable& group, const Signature& sig) {
  const std::size_t n = group.order();
  const std::size_t s = sig.size();
  std::vector<std::vector<bool>> reach(s + 1, std::vector<bool>(n, false));
  reach[s][GroupTable::identity] = true;
  for (std::size_t j = s; j-- > 0;) {
    for (Element p = 0; p < n; ++p) {
      for (Element x : group.elements_of_order(sig[j])) {
        if (reach[j + 1][group.mul(p, x)]) {
          reach[j][p] = true;
          break;
        }
      }
    }
  }
  return reach;
}

class Searcher {
 public:
  Searcher(const GroupTable& group, const Signature& sig)
      : group_(group), sig_(sig), reach_(tail_reachability(group, sig)) {
    entries_.resize(sig.size());
  }

  // Candidates for the first entry.
  std::span<const Element> first_candidates() const { return group_.elements_of_order(sig_[0]); }

  // Runs the search restricted to entries[0] == first. Returns false if stopped.
  bool run(Element first, const std::function<bool(const GeneratingVector&)>& visit) {
    visit_ = &visit;
    std::vector<Element> tied;
    tied.reserve(group_.order());
    for (Element h = 0; h < group_.order(); ++h) tied.push_back(h);
    return place(0, first, GroupTable::identity, tied);
  }

 private:
  // Places `x` at position i given prefix product `prod` and conjugators tying the prefix.
  bool place(std::size_t i, Element x, Element prod, const std::vector<Element>& tied) {
    std::vector<Element> still;
    still.reserve(tied.size());
    for (Element h : tied) {
      const Element cx = group_.conjugate(h, x);
      if (cx < x) return true;  // a conjugate of this prefix is smaller
      if (cx == x) still.push_back(h);
    }
    entries_[i] = x;
    prod = group_.mul(prod, x);
    if (!reach_[i + 1][prod]) return true;

    const std::size_t s = sig_.size();
    if (i + 1 == s) {
      if (!group_.generates(entries_)) return true;
      return (*visit_)(GeneratingVector{entries_, sig_});
    }
    if (i + 2 == s) {
      const Element last = group_.inverse(prod);
      if (group_.element_order(last) != sig_[s - 1]) return true;
      return place(i + 1, last, prod, still);
    }
    for (Element y : group_.elements_of_order(sig_[i + 1])) {
      if (!place(i + 1, y, prod, still)) return false;
    }
    return true;
  }

  const GroupTable& group_;
  const Signature& sig_;
  std::vector<std::vector<bool>> reach_;
  std::vector<Element> entries_;
  const std::function<bool(const GeneratingVector&)>* visit_ = nullptr;
};

// Runs `work(first_index)` for every first-entry candidate, spread over `jobs` threads.
template <typename Work>
void parallel_over_first(std::size_t count, unsigned jobs, Work&& work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs <= 1) {
    for (std::size_t k = 0; k < count; ++k) work(k);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < count; k += jobs) work(k);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

void for_each_generating_vector(const GroupTable& group, const Signature& sig,
                                const std::function<bool(const GeneratingVector&)>& visit) {
  Searcher searcher(group, sig);
  for (Element first : searcher.first_candidates()) {
    if (!searcher.run(first, visit)) return;
  }
}

std::vector<GeneratingVector> enumerate_generating_vectors(const GroupTable& group, const Signature& sig,
                                                           const EnumerationOptions& options) {
  const std::size_t limit = options.limit.value_or(static_cast<std::size_t>(-1));
  if (limit == 0) return {};
  if (options.jobs <= 1) {
    std::vector<GeneratingVector> out;
    for_each_generating_vector(group, sig, [&](const GeneratingVector& v) {
      out.push_back(v);
      return out.size() < limit;
    });
    return out;
  }

  const auto firsts = group.elements_of_order(sig[0]);
  std::vector<std::vector<GeneratingVector>> buckets(firsts.size());
  parallel_over_first(firsts.size(), options.jobs, [&](std::size_t k) {
    Searcher searcher(group, sig);
    auto& bucket = buckets[k];
    searcher.run(firsts[k], [&](const GeneratingVector& v) {
      bucket.push_back(v);
      return bucket.size() < limit;
    });
  });
  std::vector<GeneratingVector> out;
  for (auto& bucket : buckets) {
    for (auto& v : bucket) {
      if (out.size() >= limit) return out;
      out.push_back(std::move(v));
    }
  }
  return out;
}

GeneratingVector conjugate_vector(const GroupTable& group, Element h, const GeneratingVector& v) {
  GeneratingVector out = v;
  for (auto& e : out.entries) e = group.conjugate(h, e);
  return out;
}

GeneratingVector canonical_conjugate(const GroupTable& group, const GeneratingVector& v) {
  GeneratingVector best = v;
  for (Element h = 0; h < group.order(); ++h) {
    GeneratingVector c = conjugate_vector(group, h, v);
    if (c.entries < best.entries) best = std::move(c);
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

// Distinct sigma sets in order of first appearance, each with its first vector.
struct SigmaClasses {
  std::vector<ElementSet> sets;
  std::vector<GeneratingVector> first_vector;
  std::size_t visited = 0;
};

SigmaClasses collect_sigma_classes(const GroupTable& group, const Signature& sig, unsigned jobs) {
  const auto firsts = group.elements_of_order(sig[0]);
  std::vector<SigmaClasses> buckets(firsts.size());
  parallel_over_first(firsts.size(), jobs, [&](std::size_t k) {
    Searcher searcher(group, sig);
    auto& bucket = buckets[k];
    std::map<ElementSet, std::size_t> seen;
    searcher.run(firsts[k], [&](const GeneratingVector& v) {
      ++bucket.visited;
      ElementSet s = sigma_set_by_classes(group, v.entries);
      if (seen.emplace(s, bucket.sets.size()).second) {
        bucket.sets.push_back(std::move(s));
        bucket.first_vector.push_back(v);
      }
      return true;
    });
  });
  SigmaClasses merged;
  std::map<ElementSet, std::size_t> seen;
  for (auto& bucket : buckets) {
    merged.visited += bucket.visited;
    for (std::size_t i = 0; i < bucket.sets.size(); ++i) {
      if (seen.emplace(bucket.sets[i], merged.sets.size()).second) {
        merged.sets.push_back(bucket.sets[i]);
        merged.first_vector.push_back(bucket.first_vector[i]);
      }
    }
  }
  return merged;
}

}  // namespace

FreePairSearch search_free_pair(const GroupTable& group, const Signature& sig1, const Signature& sig2,
                                unsigned jobs) {
  rh_genus(static_cast<long long>(group.order()), sig1, true);
  rh_genus(static_cast<long long>(group.order()), sig2, true);

  FreePairSearch result;
  const SigmaClasses first = collect_sigma_classes(group, sig1, jobs);
  result.first_vectors = first.visited;
  result.first_sigma_sets = first.sets.size();
  if (first.sets.empty()) return result;
  const SigmaClasses second = collect_sigma_classes(group, sig2, jobs);
  result.second_vectors = second.visited;
  result.second_sigma_sets = second.sets.size();

  for (std::size_t i = 0; i < first.sets.size(); ++i) {
    for (std::size_t j = 0; j < second.sets.size(); ++j) {
      if (!first.sets[i].intersects(second.sets[j])) {
        result.witness = FreePair{first.first_vector[i], second.first_vector[j]};
        return result;
      }
    }
  }
  return result;
}

std::optional<FreePair> free_pair_exists(const GroupTable& group, const Signature& sig1, const Signature& sig2,
                                         unsigned jobs) {
  return search_free_pair(group, sig1, sig2, jobs).witness;
}

ProductSurface surface_invariants(const GroupTable& group, const GeneratingVector& v1, const GeneratingVector& v2) {
  if (auto d = generating_vector_defect(group, v1)) throw InvariantViolation("first vector: " + *d);
  if (auto d = generating_vector_defect(group, v2)) throw InvariantViolation("second vector: " + *d);
  if (sigma_set(group, v1.entries).intersects(sigma_set(group, v2.entries))) {
    throw InvariantViolation("sigma sets intersect: the diagonal action is not free");
  }
  const auto n = static_cast<long long>(group.order());
  ProductSurface s;
  s.group_name = group.name();
  s.group_order = group.order();
  s.first = v1;
  s.second = v2;
  try {
    s.g1 = rh_genus(n, v1.signature, true);
    s.g2 = rh_genus(n, v2.signature, true);
  } catch (const std::exception& e) {
    throw InvariantViolation(std::string("genus: ") + e.what());
  }
  const long long prod = (s.g1 - 1) * (s.g2 - 1);
  if (prod % n != 0) {
    throw InvariantViolation("(g1-1)(g2-1) = " + std::to_string(prod) + " is not divisible by |G| = " +
                             std::to_string(n));
  }
  s.chi = prod / n;
  s.K2 = 8 * s.chi;
  s.c2 = 4 * s.chi;
  if (prod != n) {
    throw InvariantViolation("(g1-1)(g2-1) = " + std::to_string(prod) + " differs from |G| = " + std::to_string(n) +
                             " (chi = " + std::to_string(s.chi) + ", not a homology quadric)");
  }
  s.moduli_dim = (static_cast<long long>(v1.signature.size()) - 3) + (static_cast<long long>(v2.signature.size()) - 3);
  return s;
}

}  // namespace fqw
