#include "octa/natext.hpp"

#include "octa/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace octa {

namespace {

const QSqrt2& P() {
    static const QSqrt2 p(1, 1);
    return p;
}
const double kP = 1.0 + std::sqrt(2.0);
const double kQ = 1.0 + 2.0 * std::sqrt(2.0);  // 1 + 2 sqrt2

ProjPoint to_proj(const XReal& x) { return x.inf ? ProjPoint::infinity() : ProjPoint(x.v); }

XReal map_end(const Mat2& m, const XReal& x, int inf_sign) { return to_xreal(m.apply_left(to_proj(x)), inf_sign); }

std::pair<XReal, XReal> map_interval(const Mat2& m, const XReal& a, const XReal& b, int inf_sign) {
    XReal x = map_end(m, a, inf_sign), y = map_end(m, b, inf_sign);
    if (y < x) std::swap(x, y);
    return {x, y};
}

double log_abs(const QSqrt2& x) { return std::log(std::abs(x.to_double())); }

const XReal& max_x(const XReal& a, const XReal& b) { return a <= b ? b : a; }
const XReal& min_x(const XReal& a, const XReal& b) { return a <= b ? a : b; }

XReal X(const QSqrt2& v) { return {0, v}; }

}  // namespace

XReal u_coord(const ProjPoint& u) { return to_xreal(u, -1); }
XReal v_coord(const ProjPoint& v) { return to_xreal(v, 1); }

bool in_fhat_domain(const PlanePoint& p) { return in_domain(p.u) && in_sector0_closure(p.v); }

PlanePoint fhat(const PlanePoint& p) {
    if (!in_fhat_domain(p)) throw OutOfDomain("fhat: point outside the closed domain");
    const Mat2& m = farey_branch(sector_in_domain(p.u));
    return {m.apply_left(p.u), m.apply_left(p.v)};
}

PlanePoint fhat_inverse(const PlanePoint& p) {
    if (!in_fhat_domain(p)) throw OutOfDomain("fhat_inverse: point outside the closed domain");
    const Mat2& m = farey_branch_inv(backward_branch(p.v));
    return {m.apply_left(p.u), m.apply_left(p.v)};
}

TwoSidedCode two_sided_code(const PlanePoint& p, std::size_t m) {
    if (!in_fhat_domain(p)) throw OutOfDomain("two_sided_code: point outside the closed domain");
    TwoSidedCode c;
    ProjPoint x = p.u;
    for (std::size_t k = 0; k < m; ++k) {
        c.forward.push_back(sector_in_domain(x));
        if (k + 1 < m) x = farey(x);
    }
    BackwardExpansion b = backward_expand(p.v, m);
    c.backward = b.entries;
    c.boundary = b.boundary;
    return c;
}

double mu_hat(const Rect& r) {
    const bool below = r.b < r.c, above = r.d < r.a;
    if (!below && !above) throw DiagonalTouch("rectangle meets the diagonal");
    const int ninf = (r.a.inf != 0) + (r.b.inf != 0) + (r.c.inf != 0) + (r.d.inf != 0);
    if (ninf > 1) throw DiagonalTouch("rectangle meets the diagonal at infinity");
    if (r.a == r.b || r.c == r.d) return 0.0;
    // (b-d)(a-c) / ((a-d)(b-c)); an infinite endpoint drops its two factors
    QSqrt2 x(1);
    auto mul = [&](const XReal& s, const XReal& t, bool num) {
        if (s.inf || t.inf) return;
        QSqrt2 f = s.v - t.v;
        x = num ? x * f : x / f;
    };
    mul(r.b, r.d, true);
    mul(r.a, r.c, true);
    mul(r.a, r.d, false);
    mul(r.b, r.c, false);
    return log_abs(x);
}

double mu_hat_preimage(const Rect& r) {
    double total = 0;
    for (const auto& pc : backward_partition().pieces) {
        const XReal lo = v_coord(pc.lo), hi = v_coord(pc.hi);
        XReal c = max_x(r.c, lo), d = min_x(r.d, hi);
        if (!(c < d)) continue;
        const Mat2& m = farey_branch_inv(pc.branch);
        auto [a2, b2] = map_interval(m, r.a, r.b, -1);
        auto [c2, d2] = map_interval(m, c, d, 1);
        total += mu_hat({a2, b2, c2, d2});
    }
    return total;
}

double farey_density(double u) { return 1.0 / (kP - u); }

double farey_density_angle(double t) {
    const double s = std::sin(t), c = std::cos(t);
    return 1.0 / std::abs(s * (kP * s - c));
}

double mu_farey(const XReal& a, const XReal& b) {
    if (!(b <= X(P())) || !(a <= b)) throw OutOfDomain("mu_farey: need a <= b <= 1+sqrt2");
    if (a.inf || b == X(P())) return std::numeric_limits<double>::infinity();
    return log_abs((P() - a.v) / (P() - b.v));
}

double mu_farey_preimage(const XReal& a, const XReal& b) {
    double total = 0;
    for (int i = 1; i <= 7; ++i) {
        auto [x, y] = map_interval(farey_branch_inv(i), a, b, -1);
        total += mu_farey(x, y);
    }
    return total;
}

double mu_farey_angle_quadrature(double t1, double t2) {
    if (t2 < t1) std::swap(t1, t2);
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate(farey_density_angle, t1, t2, 15, 1e-12);
}

bool DomainPiece::contains(const XReal& u, const XReal& v) const {
    return u_lo <= u && u <= u_hi && v_lo <= v && v <= v_hi;
}

const GaussDomain& gauss_domain() {
    static const GaussDomain g = [] {
        const XReal ninf = XReal::neg_inf(), pinf = XReal::pos_inf();
        const XReal one = X(QSqrt2(1)), p = X(P()), q = X(QSqrt2(1, 2)), p3 = X(QSqrt2(3, 3));
        GaussDomain d;
        d.primary = {{"D1", one, p, q, pinf}, {"D*", X(-P()), one, p, pinf}, {"D7", ninf, X(-P()), p, p3}};
        d.dual = {{"D1'", ninf, one, p, q}, {"D*'", ninf, p, q, p3}, {"D7'", X(-P()), p, p3, pinf}};
        return d;
    }();
    return g;
}

namespace {
bool in_pieces(const std::vector<DomainPiece>& ps, const PlanePoint& p) {
    const XReal u = u_coord(p.u), v = v_coord(p.v);
    for (const auto& pc : ps)
        if (pc.contains(u, v)) return true;
    return false;
}
}  // namespace

bool in_gauss_domain(const PlanePoint& p) { return in_pieces(gauss_domain().primary, p); }
bool in_gauss_domain_dual(const PlanePoint& p) { return in_pieces(gauss_domain().dual, p); }

Mat2 ghat_matrix(const ProjPoint& u) {
    GaussSector gs = gauss_sector_of(u);
    if (gs.plain()) return farey_branch(gs.k);
    return power(farey_branch(gs.k), static_cast<unsigned long>(gs.n));
}

PlanePoint ghat(const PlanePoint& p) {
    if (!in_gauss_domain(p)) throw OutOfDomain("ghat: point outside the Gauss domain");
    Mat2 m = ghat_matrix(p.u);
    return {m.apply_left(p.u), m.apply_left(p.v)};
}

double gauss_density(double u) {
    if (u > kP) return 0.0;
    if (u > 1.0) return 1.0 / (kQ - u);
    if (u > -kP) return 1.0 / (kP - u);
    return 2.0 * kP / ((kP - u) * (3.0 * kP - u));
}

double mu_gauss(const XReal& a, const XReal& b) {
    const XReal one = X(QSqrt2(1)), mp = X(-P()), p = X(P());
    if (!(a <= b) || !(b <= p)) throw OutOfDomain("mu_gauss: need a <= b <= 1+sqrt2");
    double total = 0;
    const QSqrt2 q(1, 2), p3 = QSqrt2(3) * P();
    // Sigma_1 piece
    {
        XReal lo = max_x(a, one), hi = min_x(b, p);
        if (lo < hi) total += log_abs((q - lo.v) / (q - hi.v));
    }
    // middle piece
    {
        XReal lo = max_x(a, mp), hi = min_x(b, one);
        if (lo < hi) total += log_abs((P() - lo.v) / (P() - hi.v));
    }
    // Sigma_7 piece
    {
        XReal lo = a, hi = min_x(b, mp);
        if (lo < hi) {
            QSqrt2 r = (p3 - hi.v) / (P() - hi.v);
            if (!lo.inf) r = r * (P() - lo.v) / (p3 - lo.v);
            total += log_abs(r);
        }
    }
    return total;
}

double mu_gauss_preimage(const XReal& a, const XReal& b, long n_direct) {
    double total = 0;
    for (int i = 2; i <= 6; ++i) {
        auto [x, y] = map_interval(farey_branch_inv(i), a, b, -1);
        total += mu_gauss(x, y);
    }
    const XReal one = X(QSqrt2(1)), mp = X(-P()), p = X(P());
    const double r2 = std::sqrt(2.0);
    // Sigma_{1,n}: onto [-inf, 1]
    {
        XReal lo = a, hi = min_x(b, one);
        if (lo < hi) {
            Mat2 m;
            for (long n = 1; n <= n_direct; ++n) {
                m = m * farey_branch_inv(1);
                auto [x, y] = map_interval(m, lo, hi, -1);
                total += mu_gauss(x, y);
            }
            // in w = 1/(u - p) the branch is w -> w + 1/sqrt2 and the tail telescopes
            auto W = [&](const XReal& x) {
                const double w = x.inf ? 0.0 : (x.v - P()).inverse().to_double();
                return w - static_cast<double>(n_direct + 1) / r2;
            };
            total += std::abs(std::log(W(hi) / W(lo)));
        }
    }
    // Sigma_{7,n}: onto [-p, p], translation by 2pn
    {
        XReal lo = max_x(a, mp), hi = min_x(b, p);
        if (lo < hi) {
            for (long n = 1; n <= n_direct; ++n) {
                const QSqrt2 s = QSqrt2(2 * n, 2 * n);
                total += mu_gauss(X(lo.v - s), X(hi.v - s));
            }
            const double al = ((P() - lo.v) / (QSqrt2(2) * P())).to_double();
            const double be = ((P() - hi.v) / (QSqrt2(2) * P())).to_double();
            const double m = static_cast<double>(n_direct + 1);
            total += std::log1p((al - be) / (m + be));
        }
    }
    return total;
}

double gauss_total_mass() { return std::log(8.0 + 4.0 * std::sqrt(2.0)); }

double gauss_total_mass_quadrature() {
    using boost::math::quadrature::gauss_kronrod;
    // density times |du/dtheta| = 1/sin^2
    auto f1 = [](double t) {
        const double s = std::sin(t), c = std::cos(t);
        return 1.0 / (s * (kQ * s - c));
    };
    auto fm = [](double t) {
        const double s = std::sin(t), c = std::cos(t);
        return 1.0 / (s * (kP * s - c));
    };
    auto f7 = [](double t) {
        const double s = std::sin(t), c = std::cos(t);
        return 2.0 * kP / ((kP * s - c) * (3.0 * kP * s - c));
    };
    const double pi = M_PI;
    return gauss_kronrod<double, 61>::integrate(f1, pi / 8, pi / 4, 15, 1e-12) +
           gauss_kronrod<double, 61>::integrate(fm, pi / 4, 7 * pi / 8, 15, 1e-12) +
           gauss_kronrod<double, 61>::integrate(f7, 7 * pi / 8, pi, 15, 1e-12);
}

double gauss_cdf(double u) {
    const double total = gauss_total_mass();
    if (u >= kP) return 1.0;
    auto F7 = [](double x) { return std::log((3.0 * kP - x) / (kP - x)); };  // 0 at -inf
    if (u <= -kP) return F7(u) / total;
    double m = F7(-kP);
    if (u <= 1.0) return (m + std::log((2.0 * kP) / (kP - u))) / total;
    m += std::log(2.0 * kP / (kP - 1.0));
    return (m + std::log((kQ - 1.0) / (kQ - u))) / total;
}

double gauss_quantile(double q) {
    if (q <= 0) return -std::numeric_limits<double>::infinity();
    if (q >= 1) return kP;
    // cdf(cot t) decreases in t on [pi/8, pi]
    double lo = M_PI / 8, hi = M_PI;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (gauss_cdf(1.0 / std::tan(mid)) > q)
            lo = mid;
        else
            hi = mid;
    }
    return 1.0 / std::tan(0.5 * (lo + hi));
}

std::vector<Tile> fhat_image_tiles() {
    std::vector<Tile> out;
    const auto& c = sector_boundaries();
    for (int i = 1; i <= 7; ++i) {
        const Mat2& m = farey_branch(i);
        auto [u0, u1] = map_interval(m, u_coord(c[i + 1]), u_coord(c[i]), -1);
        auto [v0, v1] = map_interval(m, X(P()), XReal::pos_inf(), 1);
        out.push_back({"F" + std::to_string(i), u0, u1, v0, v1});
    }
    return out;
}

std::vector<Tile> ghat_image_tiles(long nmax) {
    std::vector<Tile> out;
    const XReal q = X(QSqrt2(1, 2)), p = X(P()), p3 = X(QSqrt2(3, 3));
    Mat2 m1, m7;
    for (long n = 1; n <= nmax; ++n) {
        m1 = m1 * farey_branch(1);
        auto [u0, u1] = map_interval(m1, to_xreal(gauss_sub_boundary1(n - 1), -1), to_xreal(gauss_sub_boundary1(n), -1), -1);
        auto [v0, v1] = map_interval(m1, q, XReal::pos_inf(), 1);
        out.push_back({"G1," + std::to_string(n), u0, u1, v0, v1});
    }
    const auto& c = sector_boundaries();
    for (int i = 2; i <= 6; ++i) {
        const Mat2& m = farey_branch(i);
        auto [u0, u1] = map_interval(m, u_coord(c[i + 1]), u_coord(c[i]), -1);
        auto [v0, v1] = map_interval(m, p, XReal::pos_inf(), 1);
        out.push_back({"G" + std::to_string(i), u0, u1, v0, v1});
    }
    for (long n = 1; n <= nmax; ++n) {
        m7 = m7 * farey_branch(7);
        auto [u0, u1] = map_interval(m7, to_xreal(gauss_sub_boundary7(n), -1), to_xreal(gauss_sub_boundary7(n - 1), -1), -1);
        auto [v0, v1] = map_interval(m7, p, p3, 1);
        out.push_back({"G7," + std::to_string(n), u0, u1, v0, v1});
    }
    return out;
}

namespace {

void fail(CheckResult& r, const std::string& msg) {
    if (r.ok) r.detail = msg;
    r.ok = false;
}

// v-intervals sorted and contiguous from lo to hi
void check_stack(CheckResult& r, std::vector<Tile> ts, const XReal& lo, const XReal& hi, const std::string& what,
                 bool open_low = false) {
    std::sort(ts.begin(), ts.end(), [](const Tile& x, const Tile& y) { return x.v_lo < y.v_lo; });
    if (ts.empty()) return fail(r, what + ": no tiles");
    if (!open_low && !(ts.front().v_lo == lo)) fail(r, what + ": bottom " + ts.front().v_lo.str() + " != " + lo.str());
    if (open_low && !(lo < ts.front().v_lo)) fail(r, what + ": tiles below " + lo.str());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        if (!(ts[i].v_hi == ts[i + 1].v_lo)) fail(r, what + ": gap or overlap at " + ts[i].v_hi.str());
    if (!(ts.back().v_hi == hi)) fail(r, what + ": top " + ts.back().v_hi.str() + " != " + hi.str());
}

}  // namespace

CheckResult check_fhat_tiling() {
    CheckResult r;
    auto ts = fhat_image_tiles();
    for (const auto& t : ts)
        if (!(t.u_lo == XReal::neg_inf()) || !(t.u_hi == X(P()))) fail(r, t.name + ": u-image is not the full domain");
    check_stack(r, ts, X(P()), XReal::pos_inf(), "fhat v-images");
    if (r.ok) r.detail = "7 image rectangles tile [pi/8,pi] x [1+sqrt2,inf]";
    return r;
}

CheckResult check_ghat_tiling(long nmax) {
    CheckResult r;
    const XReal ninf = XReal::neg_inf(), pinf = XReal::pos_inf();
    const XReal one = X(QSqrt2(1)), p = X(P()), q = X(QSqrt2(1, 2)), p3 = X(QSqrt2(3, 3)), mp = X(-P());
    // domain side: Sigma_{1,n} and Sigma_{7,n} are contiguous and exhaust their sectors
    for (long n = 1; n <= nmax; ++n) {
        XReal b0 = to_xreal(gauss_sub_boundary1(n - 1), -1), b1 = to_xreal(gauss_sub_boundary1(n), -1);
        if (!(b0 < b1) || !(b1 < p)) fail(r, "Sigma_{1,n} endpoints not increasing below 1+sqrt2");
        XReal c0 = to_xreal(gauss_sub_boundary7(n), -1), c1 = to_xreal(gauss_sub_boundary7(n - 1), -1);
        if (!(c0 < c1)) fail(r, "Sigma_{7,n} endpoints not decreasing");
    }
    if (!(to_xreal(gauss_sub_boundary1(0), -1) == one) || !(to_xreal(gauss_sub_boundary7(0), -1) == mp))
        fail(r, "first sub-sector does not start at the sector boundary");
    std::vector<Tile> t1, tm, t7;
    for (const auto& t : ghat_image_tiles(nmax)) {
        if (t.name.rfind("G1,", 0) == 0)
            t1.push_back(t);
        else if (t.name.rfind("G7,", 0) == 0)
            t7.push_back(t);
        else
            tm.push_back(t);
    }
    const auto& dual = gauss_domain().dual;
    for (const auto& t : t1)
        if (!(t.u_lo == dual[0].u_lo) || !(t.u_hi == dual[0].u_hi)) fail(r, t.name + ": u-image differs from D1'");
    for (const auto& t : tm)
        if (!(t.u_lo == dual[1].u_lo) || !(t.u_hi == dual[1].u_hi)) fail(r, t.name + ": u-image differs from D*'");
    for (const auto& t : t7)
        if (!(t.u_lo == dual[2].u_lo) || !(t.u_hi == dual[2].u_hi)) fail(r, t.name + ": u-image differs from D7'");
    // Sigma_1 images accumulate at 1+sqrt2 from above, Sigma_7 images run off to infinity
    check_stack(r, t1, p, q, "D1' stack", true);
    check_stack(r, tm, q, p3, "D*' stack");
    {
        std::vector<Tile> s = t7;
        std::sort(s.begin(), s.end(), [](const Tile& x, const Tile& y) { return x.v_lo < y.v_lo; });
        if (!(s.front().v_lo == p3)) fail(r, "D7' stack does not start at 3+3sqrt2");
        for (std::size_t i = 0; i + 1 < s.size(); ++i)
            if (!(s[i].v_hi == s[i + 1].v_lo)) fail(r, "D7' stack: gap or overlap");
        (void)pinf;
    }
    // the two decompositions describe one set: compare on all corner coordinates and midpoints
    std::vector<XReal> us = {ninf, mp, one, p, X(QSqrt2(-10)), X(QSqrt2(1, -2)), X(QSqrt2::frac(3, 2)), X(QSqrt2(-3))};
    std::vector<XReal> vs = {p, q, p3, pinf, X(QSqrt2(3)), X(QSqrt2(5)), X(QSqrt2(9)), X(QSqrt2(100))};
    for (const auto& u : us)
        for (const auto& v : vs) {
            bool a = false, b = false;
            for (const auto& pc : gauss_domain().primary) a = a || pc.contains(u, v);
            for (const auto& pc : gauss_domain().dual) b = b || pc.contains(u, v);
            if (a != b) fail(r, "decompositions disagree at (" + u.str() + ", " + v.str() + ")");
        }
    if (r.ok) {
        std::ostringstream o;
        o << "Ghat images tile D_G (n <= " << nmax << "); D1' stack bottom "
          << std::min_element(t1.begin(), t1.end(), [](const Tile& x, const Tile& y) { return x.v_lo < y.v_lo; })->v_lo.to_double()
          << " -> 1+sqrt2";
        r.detail = o.str();
    }
    return r;
}

Histogram birkhoff_histogram(OrbitMap map, double u0, long n_iters, int bins, unsigned long seed) {
    Histogram h;
    h.n = n_iters;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    if (map == OrbitMap::Gauss) {
        if (bins < 1) throw std::invalid_argument("bins must be positive");
        h.edges.push_back(-std::numeric_limits<double>::infinity());
        for (int k = 1; k < bins; ++k) h.edges.push_back(gauss_quantile(static_cast<double>(k) / bins));
        h.edges.push_back(kP);
        h.counts.assign(bins, 0);
        h.expected.assign(bins, 1.0 / bins);
    } else {
        // sectors 1..7, edges cot(k pi/8) from 1+sqrt2 down to -inf
        for (int k = 1; k < 8; ++k) h.edges.push_back(1.0 / std::tan(k * M_PI / 8));
        h.edges.push_back(-std::numeric_limits<double>::infinity());
        h.counts.assign(7, 0);
    }
    double u = u0;
    for (long i = 0; i < n_iters; ++i) {
        u = map == OrbitMap::Gauss ? fp::gauss(u) : fp::farey(u);
        if (!std::isfinite(u) || u > kP || std::abs(u) > 1e12) {
            ++h.restarts;
            u = map == OrbitMap::Gauss ? gauss_quantile(ud(rng)) : kP - 1e-3 - 10 * ud(rng);
        }
        if (map == OrbitMap::Gauss) {
            auto it = std::upper_bound(h.edges.begin() + 1, h.edges.end() - 1, u);
            ++h.counts[it - (h.edges.begin() + 1)];
        } else {
            ++h.counts[std::max(fp::sector_of(u), 1) - 1];
        }
    }
    return h;
}

}  // namespace octa
