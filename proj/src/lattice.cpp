#include "fqw/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fqw/error.hpp"

namespace fqw {

namespace {

long long det2(const DivisorClass& x, const DivisorClass& y) { return x.a * y.b - x.b * y.a; }

// gcd reduction that keeps the direction of the ray.
DivisorClass reduce_ray(const DivisorClass& d) {
  const long long g = std::gcd(d.a, d.b);
  if (g == 0) return d;
  return {d.a / g, d.b / g};
}

std::string show(const DivisorClass& d) {
  return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")";
}

}  // namespace

std::string_view to_string(FormKind kind) { return kind == FormKind::Even ? "even" : "odd"; }

FormKind form_kind_from_string(std::string_view s) {
  if (s == "even" || s == "Even") return FormKind::Even;
  if (s == "odd" || s == "Odd") return FormKind::Odd;
  throw InputError("unknown form kind '" + std::string(s) + "' (expected even|odd)");
}

std::pair<std::pair<int, int>, std::pair<int, int>> IntersectionForm::matrix() const {
  if (kind_ == FormKind::Even) return {{0, 1}, {1, 0}};
  return {{1, 0}, {0, -1}};
}

long long IntersectionForm::pair(const DivisorClass& x, const DivisorClass& y) const {
  if (kind_ == FormKind::Even) return x.a * y.b + x.b * y.a;
  return x.a * y.a - x.b * y.b;
}

long long pair(const IntersectionForm& form, const DivisorClass& x, const DivisorClass& y) {
  return form.pair(x, y);
}

DivisorClass canonical_class(const IntersectionForm& form) {
  return form.kind() == FormKind::Even ? DivisorClass{2, 2} : DivisorClass{3, -1};
}

long long arithmetic_genus(const IntersectionForm& form, const DivisorClass& c) {
  const long long twice = form.square(c) + form.pair(canonical_class(form), c);
  if (twice % 2 != 0) {
    throw ParityViolation("C^2 + K.C is odd for class " + show(c));
  }
  return 1 + twice / 2;
}

long long rr_chi(const IntersectionForm& form, const DivisorClass& d) {
  const long long twice = form.square(d) - form.pair(canonical_class(form), d);
  if (twice % 2 != 0) {
    throw ParityViolation("D^2 - K.D is odd for class " + show(d));
  }
  return 1 + twice / 2;
}

bool is_two_divisible(const IntersectionForm&, const DivisorClass& d) {
  return d.a % 2 == 0 && d.b % 2 == 0;
}

bool is_negative_curve_class(const IntersectionForm& form, const DivisorClass& c, Characteristic ch) {
  if (form.square(c) >= 0) return false;
  if (form.pair(canonical_class(form), c) <= 0) return false;
  const long long pa = arithmetic_genus(form, c);
  return ch == Characteristic::Zero ? pa >= 1 : pa >= 0;
}

std::vector<DivisorClass> negative_curve_candidates(const IntersectionForm& form, long long bound,
                                                    Characteristic ch) {
  if (bound < 1) throw InputError("bound must be at least 1");
  std::vector<DivisorClass> out;
  for (long long a = -bound; a <= bound; ++a) {
    for (long long b = -bound; b <= bound; ++b) {
      if (is_negative_curve_class(form, {a, b}, ch)) out.push_back({a, b});
    }
  }
  return out;
}

std::vector<FibrationClass> fibration_candidates(const IntersectionForm& form, long long bound) {
  if (bound < 1) throw InputError("bound must be at least 1");
  const auto [first, second] = form.kind() == FormKind::Even
                                   ? std::pair{DivisorClass{1, 0}, DivisorClass{0, 1}}
                                   : std::pair{DivisorClass{1, 1}, DivisorClass{1, -1}};
  const long long second_start = form.kind() == FormKind::Even ? 1 : 2;
  const DivisorClass k = canonical_class(form);

  std::vector<FibrationClass> out;
  auto emit = [&](const DivisorClass& ray, long long start) {
    for (long long m = start; m <= bound; ++m) {
      const DivisorClass f = m * ray;
      out.push_back({f, 1 + form.pair(k, f) / 2});
    }
  };
  emit(first, 1);
  emit(second, second_start);
  return out;
}

DivisorClass primitive(const DivisorClass& d) {
  DivisorClass r = reduce_ray(d);
  if (r.a < 0 || (r.a == 0 && r.b < 0)) r = -r;
  return r;
}

std::pair<DivisorClass, DivisorClass> quadrant_rays(const IntersectionForm& form) {
  if (form.kind() == FormKind::Even) return {{1, 0}, {0, 1}};
  return {{1, -1}, {1, 1}};
}

ConePair cone_from_negatives(const IntersectionForm& form, const std::vector<DivisorClass>& negatives) {
  if (negatives.size() > 2) {
    throw InputError("at most two negative curves are possible, got " + std::to_string(negatives.size()));
  }
  const DivisorClass k = canonical_class(form);
  for (const auto& c : negatives) {
    if (form.square(c) >= 0 || form.pair(k, c) <= 0) {
      throw InputError("class " + show(c) + " is not a negative curve class (need C^2 < 0, K.C > 0)");
    }
  }
  if (negatives.size() == 2) {
    if (negatives[0] == negatives[1] || form.pair(negatives[0], negatives[1]) < 0) {
      throw InputError("negative curves " + show(negatives[0]) + " and " + show(negatives[1]) +
                       " intersect negatively; they cannot lie in the same quadrant");
    }
  }

  std::vector<DivisorClass> gens;
  const auto [q1, q2] = quadrant_rays(form);
  gens.push_back(q1);
  gens.push_back(q2);
  for (const auto& c : negatives) gens.push_back(reduce_ray(c));

  // Extreme pair: every generator lies between ray1 and ray2 counter-clockwise.
  std::optional<std::pair<DivisorClass, DivisorClass>> hull;
  for (const auto& r1 : gens) {
    for (const auto& r2 : gens) {
      if (det2(r1, r2) <= 0) continue;
      const bool spans = std::all_of(gens.begin(), gens.end(), [&](const DivisorClass& v) {
        return det2(r1, v) >= 0 && det2(v, r2) >= 0;
      });
      if (spans) {
        hull = {r1, r2};
        break;
      }
    }
    if (hull) break;
  }
  if (!hull) throw InputError("effective cone is not strictly convex for the given negatives");

  const auto [e1, e2] = *hull;
  auto dual_ray = [&](const DivisorClass& r, const DivisorClass& other) {
    // x.r = x^T M r; the orthogonal line is spanned by (-w2, w1) with w = M r.
    const auto [row1, row2] = form.matrix();
    const long long w1 = row1.first * r.a + row1.second * r.b;
    const long long w2 = row2.first * r.a + row2.second * r.b;
    DivisorClass x{-w2, w1};
    if (form.pair(x, other) < 0) x = -x;
    return reduce_ray(x);
  };
  ConePair out;
  out.eff = Cone2{e1, e2};
  out.nef = Cone2{dual_ray(e1, e2), dual_ray(e2, e1)};
  return out;
}

}  // namespace fqw
