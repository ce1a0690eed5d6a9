#pragma once

#include <array>
#include <string>
#include <vector>

#include "cubicpts/heights.hpp"

namespace cubicpts {

enum class Locus { singular_line, base_line, line_t0_t3, line_t1_t2, U_open, V_other };

const char* locus_name(Locus l);
std::vector<Locus> v_loci();

using Pt4 = std::array<i64, 4>;
using Pt3 = std::array<i64, 3>;
using Pt2 = std::array<i64, 2>;

struct SurfacePoint {
  Pt4 t{};
  Locus locus = Locus::U_open;
};

struct TorsorTuple {
  i64 y0 = 1, y1 = 1, y2 = 1, y3 = 1;
  i64 kappa() const { return std::max(std::llabs(y0), std::llabs(y1)); }
  bool operator==(const TorsorTuple&) const = default;
  auto operator<=>(const TorsorTuple&) const = default;
};

bool on_surface(const Pt4& t);
bool on_surface(const ProjectivePoint& p);

// Classifies a point of W: base_line owns (1:0:0:0) and (0:1:0:0).
Locus classify(const Pt4& t);
SurfacePoint make_surface_point(const Pt4& t);

Pt4 rho(const Pt3& x, const Pt2& y);

struct DesingularPoint {
  Pt3 x;
  Pt2 y;
};
DesingularPoint rho_inverse(const Pt4& t);

Pt2 fibration(const Pt4& t);

SurfacePoint parametrize(const TorsorTuple& y);
i64 torsor_height(const TorsorTuple& y);

std::vector<TorsorTuple> fibers_over(const Pt4& t);

}  // namespace cubicpts
