#include "fqw/parity.hpp"

#include <algorithm>
#include <numeric>

namespace fqw {

std::string_view to_string(ParityVerdict v) { return v == ParityVerdict::Even ? "even" : "undetermined"; }

long long lcm_multiplicity(const Signature& sig) {
  long long d = 1;
  for (int m : sig.periods()) d = std::lcm(d, static_cast<long long>(m));
  return d;
}

boost::rational<long long> phi_product(long long order, const Signature& sig1, const Signature& sig2) {
  return boost::rational<long long>(order, lcm_multiplicity(sig1) * lcm_multiplicity(sig2));
}

long long canonical_phi_coefficient(const Signature& sig) {
  const long long d = lcm_multiplicity(sig);
  long long sum = 0;
  for (int m : sig.periods()) sum += d - d / m;
  return sum - 2 * d;
}

std::pair<int, int> delta_vector(const Signature& sig1, const Signature& sig2) {
  auto delta = [](const Signature& sig) {
    const long long d = lcm_multiplicity(sig);
    long long sum = 0;
    for (int m : sig.periods()) sum += d - d / m;
    return static_cast<int>(sum % 2);
  };
  return {delta(sig1), delta(sig2)};
}

ParityReport classify_parity(long long order, const Signature& sig1, const Signature& sig2) {
  ParityReport r;
  r.d1 = lcm_multiplicity(sig1);
  r.d2 = lcm_multiplicity(sig2);
  r.phi_product = phi_product(order, sig1, sig2);
  r.delta = delta_vector(sig1, sig2);
  r.k1 = canonical_phi_coefficient(sig1);
  r.k2 = canonical_phi_coefficient(sig2);

  const auto& phi = r.phi_product;
  if (phi.denominator() != 1 || phi.numerator() <= 0) {
    r.verdict = ParityVerdict::Undetermined;
    r.rule = "R-a";
    r.criterion = "divisibility exceeds lcm: |G|/(d1 d2) is not a positive integer, so a fibre class is "
                  "divisible by a proper multiple of its lcm multiplicity";
    return r;
  }
  const long long p = phi.numerator();
  if (p % 2 == 1) {
    r.verdict = ParityVerdict::Even;
    r.rule = "R-b";
    r.criterion = "Phi1.Phi2 = " + std::to_string(p) +
                  " is odd; an odd form forces Phi1.Phi2 even since (Q1+Q2).(Q1-Q2) = 2";
    return r;
  }
  auto a = sig1.periods();
  auto b = sig2.periods();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (p == 4 && a == b) {
    r.verdict = ParityVerdict::Even;
    r.rule = "R-c";
    r.criterion = "Phi1.Phi2 = 4 with symmetric signatures: Phi1, Phi2 share divisibility, and indivisible "
                  "Phi_j in an odd form would give Phi1.Phi2 = 2";
    return r;
  }
  r.verdict = ParityVerdict::Undetermined;
  if (p == 2) {
    r.rule = "R-d";
    const std::string delta =
        "delta = (" + std::to_string(r.delta.first) + "," + std::to_string(r.delta.second) + ")";
    if (r.delta.first + r.delta.second == 1) {
      const int which = r.delta.first == 1 ? 1 : 2;
      r.criterion = "Phi1.Phi2 = 2, " + delta + ": [K_S] is 2-divisible if and only if Phi" +
                    std::to_string(which) + " (the Phi_j with delta_j = 1) is 2-divisible";
    } else {
      r.criterion = "Phi1.Phi2 = 2, " + delta + ": delta does not single out one Phi_j";
    }
    return r;
  }
  r.rule = "R-e";
  r.criterion = "Phi1.Phi2 = " + std::to_string(p) + ": no parity criterion applies";
  return r;
}

}  // namespace fqw
