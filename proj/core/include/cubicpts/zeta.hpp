#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cubicpts/arith.hpp"
#include "cubicpts/qfield.hpp"

namespace cubicpts {

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  long terms_used = 0;
};

SeriesValue riemann_zeta(double s);

// Upper incomplete gamma for any real a (including a <= 0), x > 0.
double upper_gamma(double a, double x);

// L(s, chi_disc) for a fundamental discriminant; disc == 1 gives zeta(s).
SeriesValue dirichlet_L(double s, i64 disc, double tol = 1e-13);

SeriesValue dedekind_zeta(double s, i64 disc);

// Exact counts of points of P^1(K) by height for Q and imaginary quadratic
// fields of class number one. Index h holds the number of points of height
// exactly h (relative height over K).
std::vector<i64> p1_height_histogram(const FieldDescriptor& field, i64 hmax);

SeriesValue height_zeta_P1(const FieldDescriptor& field, double s, double cutoff);

double schanuel_constant(const FieldDescriptor& field);

struct NamedConstant {
  std::string name;
  double value = 0.0;
  double tail_bound = 0.0;
  std::vector<std::pair<std::string, double>> inputs;
};

std::vector<NamedConstant> predicted_constants();
const NamedConstant& find_constant(const std::vector<NamedConstant>& cs, const std::string& name);

struct LSumRow {
  double Y = 0.0;
  double S1 = 0.0;
  double S2 = 0.0;
  long discriminants = 0;
};

LSumRow discriminant_L_sums(double Y, unsigned workers = 1);

struct LSumFit {
  std::vector<LSumRow> rows;
  double s1_exponent = 0.0;
  double s2_slope = 0.0;
  double s2_intercept = 0.0;
};

LSumFit fit_L_sums(const std::vector<double>& Ys, unsigned workers = 1);

// Least-squares slope and intercept of y against x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cubicpts
