#pragma once

#include "octa/cfmaps.hpp"
#include "octa/projline.hpp"

#include <string>
#include <vector>

namespace octa {

// (u, v) with u in the closed domain [pi/8, pi] and v in [1+sqrt2, inf]
struct PlanePoint {
    ProjPoint u, v;
    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

bool in_fhat_domain(const PlanePoint& p);
PlanePoint fhat(const PlanePoint& p);
PlanePoint fhat_inverse(const PlanePoint& p);

struct TwoSidedCode {
    std::vector<int> forward;   // s_0, s_1, ...
    std::vector<int> backward;  // s_-1, s_-2, ...
    bool boundary = false;      // some backward step hit a partition endpoint
};
TwoSidedCode two_sided_code(const PlanePoint& p, std::size_t m);

// u-coordinates of the closed domain use -inf, v-coordinates +inf
XReal u_coord(const ProjPoint& u);
XReal v_coord(const ProjPoint& v);

struct Rect {
    XReal a, b;  // u in [a, b]
    XReal c, d;  // v in [c, d]
};

// iint du dv / (u-v)^2; DiagonalTouch when the two closed intervals meet
double mu_hat(const Rect& r);
// mu_hat of the preimage under fhat, summed over the branches meeting r
double mu_hat_preimage(const Rect& r);

double farey_density(double u);            // 1 / (1+sqrt2-u)
double farey_density_angle(double theta);  // same measure in angle coordinates
double mu_farey(const XReal& a, const XReal& b);
double mu_farey_preimage(const XReal& a, const XReal& b);
// quadrature of the angle density over [t1, t2]
double mu_farey_angle_quadrature(double t1, double t2);

// Gauss natural extension
struct DomainPiece {
    std::string name;
    XReal u_lo, u_hi, v_lo, v_hi;
    bool contains(const XReal& u, const XReal& v) const;
};
struct GaussDomain {
    std::vector<DomainPiece> primary;  // D1, D*, D7
    std::vector<DomainPiece> dual;     // D1', D*', D7'
};
const GaussDomain& gauss_domain();
bool in_gauss_domain(const PlanePoint& p);
bool in_gauss_domain_dual(const PlanePoint& p);
// matrix of the Ghat branch at u
Mat2 ghat_matrix(const ProjPoint& u);
PlanePoint ghat(const PlanePoint& p);

double gauss_density(double u);
double mu_gauss(const XReal& a, const XReal& b);
// preimage measure: n_direct exact branches per infinite family, then the summed tail
double mu_gauss_preimage(const XReal& a, const XReal& b, long n_direct = 40);
double gauss_total_mass();             // ln(8 + 4 sqrt2)
double gauss_total_mass_quadrature();  // oracle
// normalized distribution function on [-inf, 1+sqrt2]
double gauss_cdf(double u);
double gauss_quantile(double q);

// pieces with exact corners, for tiling checks
struct Tile {
    std::string name;
    XReal u_lo, u_hi, v_lo, v_hi;
};
std::vector<Tile> fhat_image_tiles();
// image tiles of Ghat with n <= nmax in each infinite family
std::vector<Tile> ghat_image_tiles(long nmax);
struct CheckResult {
    bool ok = true;
    std::string detail;
};
CheckResult check_fhat_tiling();
CheckResult check_ghat_tiling(long nmax);

enum class OrbitMap { Farey, Gauss };
struct Histogram {
    std::vector<double> edges;     // bins+1 edges in u (first -inf)
    std::vector<long> counts;
    std::vector<double> expected;  // expected fraction per bin (Gauss only)
    long n = 0;
    long restarts = 0;             // orbit left the float range and was reseeded
};
// Gauss: bins of equal invariant mass. Farey: bins are the sectors 1..7.
Histogram birkhoff_histogram(OrbitMap map, double u0, long n_iters, int bins, unsigned long seed = 1);

}  // namespace octa
