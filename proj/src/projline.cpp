#include "octa/projline.hpp"

#include "octa/errors.hpp"

#include <cmath>
#include <limits>

namespace octa {

const std::array<ProjPoint, 9>& sector_boundaries() {
    static const std::array<ProjPoint, 9> b = {
        ProjPoint::infinity(),   ProjPoint(QSqrt2(1, 1)),   ProjPoint(QSqrt2(1)),
        ProjPoint(QSqrt2(-1, 1)), ProjPoint(QSqrt2(0)),      ProjPoint(QSqrt2(1, -1)),
        ProjPoint(QSqrt2(-1)),   ProjPoint(QSqrt2(-1, -1)), ProjPoint::infinity()};
    return b;
}

int sector_of(const ProjPoint& p) {
    if (p.is_inf()) return 0;
    const auto& b = sector_boundaries();
    const QSqrt2& u = p.u();
    for (int i = 0; i < 7; ++i)
        if (u > b[i + 1].u()) return i;
    return 7;
}

int sector_in_domain(const ProjPoint& u) { return u.is_inf() ? 7 : sector_of(u); }

bool in_closed_sector(const ProjPoint& p, int i) {
    if (i < 0 || i > 7) throw OutOfRange("sector index");
    const auto& b = sector_boundaries();
    if (p.is_inf()) return i == 0 || i == 7;
    const QSqrt2& u = p.u();
    bool below_top = b[i].is_inf() || u <= b[i].u();
    bool above_bottom = b[i + 1].is_inf() || u >= b[i + 1].u();
    return below_top && above_bottom;
}

bool in_domain(const ProjPoint& u) { return u.is_inf() || u.u() <= cot_pi8(); }

bool in_sector0_closure(const ProjPoint& v) { return v.is_inf() || v.u() >= cot_pi8(); }

double angle_from_u(double u) {
    if (std::isinf(u)) return 0.0;
    return std::atan2(1.0, u);
}

double angle_from_u(const ProjPoint& u) {
    if (u.is_inf()) return 0.0;
    return angle_from_u(u.u().to_double());
}

double u_from_angle(double theta) { return std::cos(theta) / std::sin(theta); }

std::string GaussSector::str() const {
    if (plain()) return std::to_string(k);
    return "(" + std::to_string(k) + "," + std::to_string(n) + ")";
}

GaussSector gauss_sector_of(const ProjPoint& u) {
    const QSqrt2 p = cot_pi8();
    if (u.is_inf()) throw ParabolicFixedPoint("u = infinity (angle pi) is parabolic");
    if (!in_domain(u)) throw OutOfDomain("gauss_sector_of: u outside [pi/8, pi]");
    if (u.u() == p) throw ParabolicFixedPoint("u = 1+sqrt2 (angle pi/8) is parabolic");
    const int i = sector_of(u);
    if (i >= 2 && i <= 6) return {i, 0};
    if (i == 1) {
        // gamma nu_1 is conjugate to w -> w + 1/sqrt2 by w = 1/(u - p)
        QSqrt2 w = (u.u() - p).inverse();
        QSqrt2 x = -QSqrt2::sqrt2() * w - QSqrt2(1);
        mpz_class n = x.ceil();
        if (n < 1) n = 1;
        if (!n.fits_slong_p()) throw OutOfRange("n_1(u) too large");
        return {1, n.get_si()};
    }
    // sigma: u -> u + 2p
    QSqrt2 y = (-p - u.u()) / (QSqrt2(2) * p);
    mpz_class n = y.floor() + 1;
    if (!n.fits_slong_p()) throw OutOfRange("n_7(u) too large");
    return {7, n.get_si()};
}

}  // namespace octa

namespace octa {

double XReal::to_double() const {
    if (inf) return inf * std::numeric_limits<double>::infinity();
    return v.to_double();
}

double XReal::angle() const {
    if (inf > 0) return 0.0;
    if (inf < 0) return M_PI;
    return std::atan2(1.0, v.to_double());
}

std::string XReal::str() const {
    if (inf) return inf > 0 ? "inf" : "-inf";
    return v.str();
}

bool operator<=(const XReal& a, const XReal& b) {
    if (a.inf == -1 || b.inf == 1) return true;
    if (a.inf == 1 || b.inf == -1) return false;
    return a.v <= b.v;
}

bool operator==(const XReal& a, const XReal& b) { return a.inf == b.inf && (a.inf != 0 || a.v == b.v); }

XReal to_xreal(const ProjPoint& u, int inf_sign) {
    if (u.is_inf()) return {inf_sign, QSqrt2(0)};
    return {0, u.u()};
}

}  // namespace octa
