#pragma once

#include <boost/rational.hpp>
#include <string>
#include <utility>

#include "fqw/product.hpp"

namespace fqw {

enum class ParityVerdict { Even, Undetermined };

std::string_view to_string(ParityVerdict v);

struct ParityReport {
  long long d1 = 0;
  long long d2 = 0;
  boost::rational<long long> phi_product;
  std::pair<int, int> delta{0, 0};
  // Canonical class K = k1 Phi_1 + k2 Phi_2 in Num(S) tensor Q.
  boost::rational<long long> k1;
  boost::rational<long long> k2;
  ParityVerdict verdict = ParityVerdict::Undetermined;
  std::string rule;       // "R-a" .. "R-e"
  std::string criterion;  // human-readable trace
};

// lcm of the periods: the fibre class is divisible by it in Num(S).
long long lcm_multiplicity(const Signature& sig);

// Phi_1 . Phi_2 = |G| / (d1 d2).
boost::rational<long long> phi_product(long long order, const Signature& sig1, const Signature& sig2);

// Coefficient of Phi in K_S along one fibration, d * (-2 + sum(1 - 1/m_j)), computed
// through the integer sum sum_j (d - d/m_j) - 2d.
long long canonical_phi_coefficient(const Signature& sig);

// delta_k = sum_j (d_k - d_k/m_j) mod 2.
std::pair<int, int> delta_vector(const Signature& sig1, const Signature& sig2);

ParityReport classify_parity(long long order, const Signature& sig1, const Signature& sig2);

}  // namespace fqw
