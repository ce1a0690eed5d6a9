#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubicpts/arith.hpp"

namespace cubicpts {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// a + b*sqrt(m); m == 1 encodes the rational field and forces b == 0.
struct FieldElement {
  Rational a{0};
  Rational b{0};

  FieldElement() = default;
  FieldElement(Rational a_) : a(std::move(a_)) {}
  FieldElement(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
  FieldElement(i64 a_) : a(a_) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
  bool operator==(const FieldElement&) const = default;
};

enum class FieldKind { rational, quadratic };

struct FieldDescriptor {
  FieldKind kind = FieldKind::rational;
  i64 m = 1;
  i64 disc = 1;
  int r = 1;
  int s = 0;
  int omega = 2;
  i64 class_number = 1;
  double regulator = 1.0;
  std::optional<FieldElement> fundamental_unit;

  int degree() const { return r + 2 * s; }
  bool is_rational() const { return kind == FieldKind::rational; }
  bool is_imaginary() const { return kind == FieldKind::quadratic && m < 0; }
  bool is_real_quadratic() const { return kind == FieldKind::quadratic && m > 0; }
  std::string name() const;
};

struct IdealData {
  std::vector<FieldElement> generators;
  Rational norm;
};

FieldDescriptor rational_field();

// Fast path: only structural data (no class number or regulator).
FieldDescriptor quadratic_field_basic(i64 disc);

i64 discriminant(i64 m);
i64 squarefree_kernel_of_disc(i64 disc);
bool is_fundamental_discriminant(i64 d);
int kronecker_symbol(i64 disc, i64 n);
int jacobi_symbol(i64 a, i64 n);

FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement sub(const FieldElement& x, const FieldElement& y);
FieldElement mul(const FieldElement& x, const FieldElement& y, i64 m);
FieldElement conj(const FieldElement& x);
FieldElement inverse(const FieldElement& x, i64 m);
Rational norm(const FieldElement& x, i64 m);
Rational trace(const FieldElement& x);
bool is_integral(const FieldElement& x, i64 m);

// Real embeddings sigma_1 (+sqrt m) and sigma_2 (-sqrt m); for imaginary
// fields embed() returns the complex absolute value of the +i sqrt|m| root.
long double embed(const FieldElement& x, i64 m, int which);
long double abs_at_place(const FieldElement& x, i64 m, int which);

// Sign of p + q*sqrt(m) with m > 0, exact.
int sign_quadratic(const Rational& p, const Rational& q, i64 m);

Rational ideal_gcd_norm(const std::vector<FieldElement>& xs, const FieldDescriptor& field);
IdealData make_ideal(const std::vector<FieldElement>& xs, const FieldDescriptor& field);

FieldDescriptor field_invariants(i64 disc);

// Fundamental unit (x + y sqrt(disc))/2 with x, y > 0, x^2 - disc*y^2 = +-4.
std::pair<BigInt, BigInt> fundamental_unit_xy(i64 disc);
long double log_bigint(const BigInt& v);

std::vector<i64> fundamental_discriminants(double Y);

std::pair<FieldElement, FieldElement> unit_reduce(const std::pair<FieldElement, FieldElement>& pair,
                                                  const FieldDescriptor& field);

}  // namespace cubicpts
