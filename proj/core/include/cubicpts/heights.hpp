#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cubicpts/qfield.hpp"

namespace cubicpts {

struct ProjectivePoint {
  std::vector<FieldElement> coords;
  FieldDescriptor field;
};

ProjectivePoint make_point(std::vector<FieldElement> coords, const FieldDescriptor& field);
ProjectivePoint make_point_Q(const std::vector<i64>& coords);

// gcd 1, first nonzero coordinate positive.
std::vector<i64> primitive_normal_form(std::vector<i64> v);
i64 height_Q(const std::vector<i64>& v);

struct HeightValue {
  std::optional<Rational> exact;  // present for Q and imaginary quadratic fields
  double value = 0.0;
};

HeightValue height(const ProjectivePoint& p);

// Exact sign of H(p) - B.
int compare_height(const ProjectivePoint& p, const Rational& B);

// Root of a primitive irreducible a T^2 + b T + c; frame selects which
// coordinate of (x0 : x1) carries the root: frame 0 means (theta : 1).
struct QuadraticPoint {
  i64 a = 1, b = 0, c = -2;
  int frame = 0;
  bool point_at_infinity = false;
};

QuadraticPoint make_quadratic_point(i64 a, i64 b, i64 c);
i64 poly_discriminant(const QuadraticPoint& q);
i64 field_discriminant(const QuadraticPoint& q);

// Root (-b + sign*sqrt(D))/(2a) as an element of Q(sqrt m), m the kernel of D.
FieldElement quadratic_root(const QuadraticPoint& q, int sign);

// Mahler measure max(a, |c|, (|b| + sqrt(D))/2) with the last term only
// when D >= 0.
double mahler_measure(i64 a, i64 b, i64 c);
double quadratic_point_height(const QuadraticPoint& q);

struct RationalFiberCoord {
  i64 y2 = 1, y3 = 1;
};
using FiberCoord = std::variant<RationalFiberCoord, QuadraticPoint>;

struct TwistedHeight {
  double direct = 0.0;
  double factored = 0.0;         // with N(J(alpha,1))^{-1}
  double factored_inverse = 0.0;  // with N(J(alpha,1))^{+1}
};

TwistedHeight twisted_fiber_height(i64 y0, i64 y1, const FiberCoord& alpha);

double sym2_height(const ProjectivePoint& x1, const ProjectivePoint& x2);

}  // namespace cubicpts
