#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqw/lattice.hpp"
#include "fqw/parity.hpp"
#include "fqw/product.hpp"

namespace fqw {

enum class SurfaceParity { Even, Odd, Unknown };
enum class MdsStatus { MDS, NotMDS, Unknown };

std::string_view to_string(SurfaceParity p);
std::string_view to_string(MdsStatus s);
SurfaceParity surface_parity_from_string(std::string_view s);

// What is known about a fake quadric. Classes are coordinates in the basis of the
// declared parity: (L1, L2) for even, (Q1, Q2) for odd.
struct SurfaceDescriptor {
  std::string name;
  SurfaceParity parity = SurfaceParity::Unknown;
  long long characteristic = 0;  // 0 or a prime
  bool is_isogenous_product = false;
  bool is_shavel_type = false;
  bool p_inert_in_center_field = false;
  std::vector<DivisorClass> known_negative_curves;
  std::vector<DivisorClass> known_fibration_classes;
};

struct RuleCitation {
  std::string rule;       // "R1" .. "R6", "check"
  std::string statement;  // the result the rule relies on
};

struct Verdict {
  MdsStatus status = MdsStatus::Unknown;
  std::vector<RuleCitation> rules_fired;
  std::optional<ConePair> cones;
  std::string unresolved;  // criterion left open when status is Unknown
};

bool is_prime(long long n);

// Throws InputError naming the inconsistency.
void validate(const SurfaceDescriptor& desc);

Verdict evaluate(const SurfaceDescriptor& desc);

// Descriptor of an isogenous product over C. The two fibre classes are filled in
// when the parity report pins them down in the (L1, L2) basis.
SurfaceDescriptor describe_product(const ProductSurface& surface, const ParityReport& parity);

// Shavel-type bidisk quotient; characteristic p > 0 describes its reduction mod p.
SurfaceDescriptor shavel_descriptor(long long characteristic = 0, bool p_inert = false);

// Integer solutions ([A1], [A2]) of A1 + A2 = K, A1.A2 = c2 = 4 in the even lattice.
std::vector<std::pair<DivisorClass, DivisorClass>> cotangent_splitting_solutions();

// Classes -2 L1 + 2p L2 and 2p L1 - 2 L2, effective at primes inert in the centre field.
std::pair<DivisorClass, DivisorClass> inert_prime_effective_classes(long long p);

}  // namespace fqw
