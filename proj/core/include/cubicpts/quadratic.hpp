#pragma once

#include <functional>
#include <vector>

#include "cubicpts/arith.hpp"
#include "cubicpts/counting.hpp"

namespace cubicpts {

// Primitive a T^2 + b T + c with a > 0 and b^2 - 4ac = disc * f^2.
// Twice its Mahler measure is p2 + q2 sqrt(disc).
struct QuadElem {
  i64 a = 1, b = 0, c = 1, f = 1;
  i64 p2 = 2, q2 = 0;
  double mahler = 1.0;
};

struct FieldElementList {
  i64 disc = 0;
  std::vector<QuadElem> elems;  // sorted by Mahler measure
};

// All quadratic elements of Q(sqrt disc) with Mahler measure <= X.
FieldElementList quadratic_elements(i64 disc, double X);
// Same set from a plain coefficient box scan; slow, used as an oracle.
FieldElementList quadratic_elements_naive(i64 disc, i64 X);

// sign of p + q sqrt(D), D > 0
int sign_qi(i128 p, i128 q, i64 D);

// Primitive forms a T^2 + b T + c, a > 0, with k kappa^2 M(a kappa^2, b kappa, c) <= B.
i64 prim_forms_count(i64 B, i64 k, i64 kappa);

// Unordered pairs (diagonal included) from a height histogram with product <= X.
i64 unordered_pairs_leq(const std::vector<i64>& hist, i64 X);

// Histogram of max(kappa |q|, kappa^2 p) over primitive (p, q), p >= 1.
std::vector<i64> twisted_line_histogram(i64 kappa, i64 X, bool allow_q_zero);

// Degree-two points of P^1 with relative height <= B / k, one per conjugate pair.
i64 quadratic_points_P1(i64 B, i64 k = 1);

// Degree-two points on the fiber over a rational (y0 : y1) with max |y_i| = kappa.
i64 fiber_quadratic_count(i64 B, i64 kappa);

struct QuadraticBreakdown {
  i64 lines = 0;
  i64 fiber_rational = 0;   // in U, fibration value rational
  i64 fiber_quadratic = 0;  // in U, fibration value quadratic
  i64 total() const { return lines + fiber_rational + fiber_quadratic; }
  bool operator==(const QuadraticBreakdown&) const = default;
};

i64 count_fiber_quadratic_family(i64 B, unsigned workers = 1);
QuadraticBreakdown count_quadratic_breakdown(i64 B, unsigned workers = 1);
CountResult count_quadratic_points_V(i64 B, unsigned workers = 1);

// 4 * phi(h) rational points of P^1 at each height h >= 2, 4 at h = 1.
std::vector<i64> p1_hist(i64 X);

// Visits every degree-two point of V with height <= B in normal form
// (first nonzero coordinate 1); both conjugates are visited.
using QuadPointVisitor = std::function<void(const std::vector<FieldElement>&, const FieldDescriptor&)>;
void enumerate_quadratic_points_V(i64 B, const QuadPointVisitor& visit);

// Direct search over ratio coordinates in every field with |disc| <= 4 B^2.
QuadraticBreakdown quadratic_points_V_oracle(i64 B);

// Conjugate pairs {(u, v), (u', v')} with u, v in the same quadratic field,
// both irrational, M(u) M(v) <= B.
i64 same_field_pairs(i64 B, unsigned workers = 1);

}  // namespace cubicpts
