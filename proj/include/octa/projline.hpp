#pragma once

#include "octa/mat2.hpp"

#include <array>
#include <string>

namespace octa {

// cot(k pi/8), k = 0..8; index 0 and 8 are both infinity.
const std::array<ProjPoint, 9>& sector_boundaries();

// sector i <-> angle in [i pi/8, (i+1) pi/8); infinity is angle 0.
int sector_of(const ProjPoint& u);
// Same, for points of the closed domain [pi/8, pi]: infinity is angle pi, sector 7.
int sector_in_domain(const ProjPoint& u);
// u in the closed sector i (both endpoints included; infinity in 0 and 7)
bool in_closed_sector(const ProjPoint& u, int i);
// u in [pi/8, pi], i.e. u <= 1+sqrt2 or infinity
bool in_domain(const ProjPoint& u);
// v in [1+sqrt2, infinity]
bool in_sector0_closure(const ProjPoint& v);

double angle_from_u(const ProjPoint& u);  // in [0, pi); infinity -> 0
double angle_from_u(double u);
double u_from_angle(double theta);  // inexact

struct GaussSector {
    int k = 0;  // 1..7
    long n = 0;  // 0 for plain sectors 2..6, n_k(u) >= 1 for k = 1, 7
    bool plain() const { return n == 0; }
    friend bool operator==(const GaussSector&, const GaussSector&) = default;
    std::string str() const;
};

// Extended real: finite value or +-infinity.
struct XReal {
    int inf = 0;  // -1, 0, +1
    QSqrt2 v;
    static XReal pos_inf() { return {1, QSqrt2(0)}; }
    static XReal neg_inf() { return {-1, QSqrt2(0)}; }
    double to_double() const;
    double angle() const;  // cot^-1 in [0, pi]: +inf -> 0, -inf -> pi
    std::string str() const;
};
bool operator<=(const XReal& a, const XReal& b);
bool operator==(const XReal& a, const XReal& b);
inline bool operator<(const XReal& a, const XReal& b) { return !(b <= a); }
// infinity resolved to the given sign
XReal to_xreal(const ProjPoint& u, int inf_sign);

// pre: u in [pi/8, pi]. Throws ParabolicFixedPoint for 1+sqrt2 and infinity.
GaussSector gauss_sector_of(const ProjPoint& u);

}  // namespace octa
