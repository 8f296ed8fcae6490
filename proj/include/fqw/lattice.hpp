#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace fqw {

// Rank-2 unimodular lattices Num(S).
//   Even: hyperbolic plane [[0,1],[1,0]] in the basis (L1, L2).
//   Odd:  diag(1,-1) in the basis (Q1, Q2).
enum class FormKind { Even, Odd };

std::string_view to_string(FormKind kind);
FormKind form_kind_from_string(std::string_view s);

struct DivisorClass {
  long long a = 0;
  long long b = 0;

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

  DivisorClass operator+(const DivisorClass& o) const { return {a + o.a, b + o.b}; }
  DivisorClass operator-(const DivisorClass& o) const { return {a - o.a, b - o.b}; }
  DivisorClass operator-() const { return {-a, -b}; }
  friend DivisorClass operator*(long long k, const DivisorClass& d) { return {k * d.a, k * d.b}; }
};

class IntersectionForm {
 public:
  constexpr explicit IntersectionForm(FormKind kind) : kind_(kind) {}

  static constexpr IntersectionForm even() { return IntersectionForm(FormKind::Even); }
  static constexpr IntersectionForm odd() { return IntersectionForm(FormKind::Odd); }

  FormKind kind() const { return kind_; }
  // Gram matrix entries, row-major.
  std::pair<std::pair<int, int>, std::pair<int, int>> matrix() const;
  int determinant() const { return -1; }

  long long pair(const DivisorClass& x, const DivisorClass& y) const;
  long long square(const DivisorClass& x) const { return pair(x, x); }

 private:
  FormKind kind_;
};

// Primitive generators; ray2 is absent for a single-ray cone.
struct Cone2 {
  DivisorClass ray1;
  std::optional<DivisorClass> ray2;

  friend bool operator==(const Cone2&, const Cone2&) = default;
};

struct ConePair {
  Cone2 nef;
  Cone2 eff;
};

enum class Characteristic { Zero, Positive };

long long pair(const IntersectionForm& form, const DivisorClass& x, const DivisorClass& y);

// K_S: 2L1 + 2L2 for the even form, 3Q1 - Q2 for the odd form.
DivisorClass canonical_class(const IntersectionForm& form);

// p_a = 1 + (C^2 + K.C)/2. Throws ParityViolation when C^2 + K.C is odd.
long long arithmetic_genus(const IntersectionForm& form, const DivisorClass& c);

// chi(D) = chi(O_S) + (D^2 - K.D)/2 with chi(O_S) = 1.
long long rr_chi(const IntersectionForm& form, const DivisorClass& d);

bool is_two_divisible(const IntersectionForm& form, const DivisorClass& d);

// Whether a class can be an irreducible curve of negative self-intersection:
// C^2 < 0, K.C > 0, p_a >= 0, and over characteristic 0 no rational curves (p_a >= 1).
bool is_negative_curve_class(const IntersectionForm& form, const DivisorClass& c, Characteristic ch);

// Every class with |a|, |b| <= bound passing is_negative_curve_class, sorted lexicographically.
std::vector<DivisorClass> negative_curve_candidates(const IntersectionForm& form, long long bound,
                                                    Characteristic ch);

struct FibrationClass {
  DivisorClass fibre;
  long long genus = 0;

  friend bool operator==(const FibrationClass&, const FibrationClass&) = default;
};

// Classes F with F^2 = 0, K.F > 0 on the boundary of the nef quadrant, coordinates
// bounded by `bound`, paired with g = 1 + K.F/2. Ordered family by family, then by multiple.
// The odd form's (Q1 - Q2) family starts at a = 2.
std::vector<FibrationClass> fibration_candidates(const IntersectionForm& form, long long bound);

// Divide by the gcd; first nonzero coordinate made positive.
DivisorClass primitive(const DivisorClass& d);

// The two boundary rays of the nef quadrant: (L1, L2) for even, (Q1+Q2, Q1-Q2) for odd.
std::pair<DivisorClass, DivisorClass> quadrant_rays(const IntersectionForm& form);

// Closure of the effective cone spanned by the quadrant and up to two negative
// curves, and its dual nef cone. Rays are ordered counter-clockwise; nef ray i is
// orthogonal to eff ray i. Throws InputError for inconsistent negatives.
ConePair cone_from_negatives(const IntersectionForm& form, const std::vector<DivisorClass>& negatives);

}  // namespace fqw
