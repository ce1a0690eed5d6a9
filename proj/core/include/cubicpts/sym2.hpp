#pragma once

#include <vector>

#include "cubicpts/geometry.hpp"
#include "cubicpts/qfield.hpp"

namespace cubicpts {

struct Sym2Point {
  enum class Kind { type1, type2 };
  Kind kind = Kind::type1;
  Pt4 x1{}, x2{};                // type1, x1 <= x2 after normalization
  std::vector<FieldElement> xq;  // type2 representative
  FieldDescriptor field;         // type2
};

enum class FiberClass { in_Z, off_Z };

Sym2Point make_sym2_type1(const Pt4& x1, const Pt4& x2);
Sym2Point make_sym2_type2(std::vector<FieldElement> x, const FieldDescriptor& field);

// Pairs on a common fiber, plus every pair inside the base line t2 = t3 = 0.
FiberClass classify_Z(const Sym2Point& p);
double sym2_point_height(const Sym2Point& p);

// Rational points of V by height, h = 0..X.
std::vector<i64> v_height_histogram(i64 X);

struct Sym2VCount {
  i64 type1_Z = 0, type1_offZ = 0;
  i64 type2_Z = 0, type2_offZ = 0;
  i64 diagonal = 0;  // pairs (x, x), inside type1_Z
  i64 N_Z() const { return type1_Z + type2_Z; }
  i64 N_offZ() const { return type1_offZ + type2_offZ; }
  i64 total() const { return N_Z() + N_offZ(); }
  bool operator==(const Sym2VCount&) const = default;
};

Sym2VCount count_sym2_V(i64 B, unsigned workers = 1);
Sym2VCount sym2_V_oracle(i64 B);

struct Sym2P1Count {
  i64 type1 = 0, type2 = 0;
  i64 total() const { return type1 + type2; }
  bool operator==(const Sym2P1Count&) const = default;
};

Sym2P1Count count_sym2_P1(i64 B);
Sym2P1Count sym2_P1_oracle(i64 B);

struct Sym2P1xP1Count {
  i64 type1 = 0;
  i64 rational_first = 0;   // (rational, quadratic)
  i64 quadratic_first = 0;  // (quadratic, rational)
  i64 same_field = 0;
  i64 total() const { return type1 + rational_first + quadratic_first + same_field; }
  bool operator==(const Sym2P1xP1Count&) const = default;
};

Sym2P1xP1Count count_sym2_P1xP1(i64 B, unsigned workers = 1);
Sym2P1xP1Count sym2_P1xP1_oracle(i64 B);

}  // namespace cubicpts
