#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubicpts/geometry.hpp"
#include "cubicpts/qfield.hpp"

namespace cubicpts {

struct CountResult {
  double cutoff_B = 0.0;
  i64 total = 0;
  std::map<std::string, i64> by_locus;
  double predicted_main = 0.0;
  double relative_error = 0.0;
  double wall_time = 0.0;

  bool same_counts(const CountResult& o) const {
    return cutoff_B == o.cutoff_B && total == o.total && by_locus == o.by_locus &&
           predicted_main == o.predicted_main && relative_error == o.relative_error;
  }
};

enum class LocusFilter { V, U, lines, base_line, line_t0_t3, line_t1_t2, singular_line };

// Ring of integers of an imaginary quadratic field, elements u + v w.
struct OKElem {
  i64 u = 0, v = 0;
  bool operator==(const OKElem&) const = default;
  auto operator<=>(const OKElem&) const = default;
};

class ImagQuadRing {
public:
  explicit ImagQuadRing(i64 disc);

  i64 disc() const { return disc_; }
  int omega() const { return omega_; }
  i64 norm(const OKElem& x) const;
  OKElem mul(const OKElem& x, const OKElem& y) const;
  OKElem conj(const OKElem& x) const;
  bool divides(const OKElem& d, const OKElem& x, OKElem* q = nullptr) const;
  // Index of the ideal generated by xs inside O_K.
  i64 ideal_norm(const std::vector<OKElem>& xs) const;
  // Nonzero elements of norm <= X, sorted by (norm, u, v).
  std::vector<OKElem> elements_upto(i64 X) const;
  // Elements of norm n for each n <= X, counting zero in A(0) = 1.
  std::vector<i64> cumulative_counts(i64 X) const;
  FieldElement to_field(const OKElem& x) const;

private:
  i64 disc_;
  i64 tr_;    // trace of w
  i64 nw_;    // norm of w
  int omega_;
};

i64 count_P1(const FieldDescriptor& field, i64 B);
i64 coprime_pairs_box(i64 X, i64 Y, const Sieve& sv);

// Histogram of brute-force V points over Q by height, per locus.
struct BruteHistogram {
  i64 Bmax = 0;
  std::map<Locus, std::vector<i64>> per_height;
  i64 count(Locus l, i64 B) const;
};

BruteHistogram brute_force_histogram_Q(i64 Bmax, unsigned workers = 1);

CountResult brute_force_count(const FieldDescriptor& field, i64 B, LocusFilter filter, unsigned workers = 1);
CountResult parametrized_count_U(const FieldDescriptor& field, i64 B, unsigned workers = 1);
CountResult count_V(const FieldDescriptor& field, i64 B, unsigned workers = 1);
CountResult count_P1_result(const FieldDescriptor& field, i64 B);

struct LatticeBox {
  std::vector<double> kappa_per_place{1.0};
  i64 a2_norm = 1;
  i64 a3_norm = 1;
  double B = 1.0;
  double kappa() const;
};

struct LatticeCount {
  i64 count = 0;
  double main_term = 0.0;
  double deviation = 0.0;
};

LatticeCount lattice_count_M1(const LatticeBox& box, const FieldDescriptor& field);

struct LatticeSlope {
  std::vector<double> Bs;
  std::vector<double> envelope;
  double slope = 0.0;
  double main_ratio = 0.0;  // count / main term at the largest B
};

LatticeSlope lattice_deviation_slope(LatticeBox box, const FieldDescriptor& field, const std::vector<double>& Bs,
                                     int samples = 16);

struct MobiusCheck {
  i64 direct = 0;
  i64 inverted = 0;
};

MobiusCheck mobius_inversion_check(const FieldDescriptor& field, const LatticeBox& box);

// Mobius function on ideals of an imaginary quadratic field of class number
// one, for the ideal generated by g.
int ideal_mobius(const ImagQuadRing& R, const OKElem& g);

}  // namespace cubicpts
