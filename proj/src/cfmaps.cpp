#include "octa/cfmaps.hpp"

#include "octa/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace octa {

ProjPoint farey(const ProjPoint& u) {
    if (u.is_inf()) return u;
    return farey_branch(sector_of(u)).apply_left(u);
}

ProjPoint farey_inverse(int i, const ProjPoint& u) {
    if (!in_domain(u)) throw OutOfRange("farey_inverse: u outside [pi/8, pi]");
    return farey_branch_inv(i).apply_left(u);
}

const char* to_string(CFStatus s) {
    switch (s) {
        case CFStatus::Generic: return "generic";
        case CFStatus::SuspectedTerminating: return "suspected-terminating";
        case CFStatus::Terminating: return "terminating";
    }
    return "?";
}

std::vector<ProjPoint> farey_orbit(const ProjPoint& u, std::size_t m) {
    std::vector<ProjPoint> out;
    out.reserve(m);
    ProjPoint x = u;
    for (std::size_t k = 0; k < m; ++k) {
        out.push_back(x);
        if (k + 1 < m) x = farey(x);
    }
    return out;
}

CFExpansion cf_expand(const ProjPoint& u, std::size_t m, std::size_t tail_threshold) {
    CFExpansion e;
    e.entries.reserve(m);
    const ProjPoint p(cot_pi8());
    ProjPoint x = u;
    for (std::size_t k = 0; k < m; ++k) {
        bool parabolic = x.is_inf() || x == p;
        if (parabolic && e.parabolic_at < 0) e.parabolic_at = static_cast<long>(k);
        e.entries.push_back(k == 0 ? sector_of(x) : sector_in_domain(x));
        if (parabolic && k > 0) {
            // fixed from here on
            int s = e.entries.back();
            e.entries.resize(m, s);
            break;
        }
        if (k + 1 < m) x = farey(x);
    }
    if (e.parabolic_at >= 0) {
        e.status = CFStatus::Terminating;
    } else if (!e.entries.empty() && tail_threshold > 0) {
        std::size_t run = 0;
        int last = e.entries.back();
        for (auto it = e.entries.rbegin(); it != e.entries.rend() && *it == last; ++it) ++run;
        if ((last == 1 || last == 7) && run >= tail_threshold) e.status = CFStatus::SuspectedTerminating;
    }
    return e;
}

int pairing_j(int i) {
    if (i == 2) return 6;
    if (i == 6) return 2;
    return i;
}

const BackwardPartition& backward_partition() {
    static const BackwardPartition part = [] {
        BackwardPartition bp;
        const auto& c = sector_boundaries();
        // gamma reverses the order of u; gamma [closed sector j] = [gamma c_j, gamma c_{j+1}]
        for (int j = 1; j <= 7; ++j) {
            int i = pairing_j(j);
            ProjPoint lo = gamma_mat().apply_left(c[j]);
            ProjPoint hi = gamma_mat().apply_left(c[j + 1]);
            bp.pieces.push_back({i, lo, hi});
        }
        return bp;
    }();
    return part;
}

namespace {

// a <= b in the extended order of [1+sqrt2, inf]
bool le_ext(const ProjPoint& a, const ProjPoint& b) {
    if (b.is_inf()) return true;
    if (a.is_inf()) return false;
    return a.u() <= b.u();
}

}  // namespace

int backward_branch(const ProjPoint& v, bool* boundary) {
    if (!in_sector0_closure(v)) throw OutOfRange("backward map: v outside [1+sqrt2, inf]");
    int best = -1;
    int hits = 0;
    for (const auto& pc : backward_partition().pieces) {
        if (le_ext(pc.lo, v) && le_ext(v, pc.hi)) {
            ++hits;
            if (best < 0 || pc.branch < best) best = pc.branch;
        }
    }
    if (boundary) *boundary = hits > 1;
    return best;
}

ProjPoint backward_map(const ProjPoint& v) {
    int i = backward_branch(v);
    return farey_branch_inv(i).apply_left(v);
}

BackwardExpansion backward_expand(const ProjPoint& v, std::size_t m) {
    BackwardExpansion e;
    ProjPoint x = v;
    for (std::size_t k = 0; k < m; ++k) {
        bool b = false;
        int i = backward_branch(x, &b);
        e.boundary = e.boundary || b;
        e.entries.push_back(i);
        if (k + 1 < m) x = farey_branch_inv(i).apply_left(x);
    }
    return e;
}

std::pair<ProjPoint, GaussSector> gauss(const ProjPoint& u) {
    GaussSector gs = gauss_sector_of(u);
    if (gs.plain()) return {farey(u), gs};
    const QSqrt2 p = cot_pi8();
    if (gs.k == 7) return {ProjPoint(u.u() + QSqrt2(2 * gs.n, 2 * gs.n)), gs};
    QSqrt2 w = (u.u() - p).inverse();
    w += QSqrt2(0, mpq_class(gs.n, 2));  // n / sqrt2
    if (w.is_zero()) return {ProjPoint::infinity(), gs};
    return {ProjPoint(p + w.inverse()), gs};
}

ProjPoint gauss_sub_boundary1(long n) {
    ProjPoint b(QSqrt2(1));
    for (long k = 0; k < n; ++k) b = farey_branch_inv(1).apply_left(b);
    return b;
}

ProjPoint gauss_sub_boundary7(long n) {
    return ProjPoint(QSqrt2(-1, -1) - QSqrt2(2 * n, 2 * n));
}

namespace fp {

namespace {
const double kR2 = std::sqrt(2.0);
const double kP = 1.0 + kR2;
const std::array<double, 7> kBounds = {kP, 1.0, kR2 - 1.0, 0.0, 1.0 - kR2, -1.0, -kP};

struct FTab {
    std::array<std::array<double, 4>, 8> m;
    FTab() {
        for (int i = 0; i < 8; ++i) m[i] = farey_branch(i).to_double();
    }
};
const FTab& ftab() {
    static const FTab t;
    return t;
}
}  // namespace

int sector_of(double u) {
    for (int i = 0; i < 7; ++i)
        if (u > kBounds[i]) return i;
    return 7;
}

double farey(double u) {
    if (std::isinf(u)) return u;
    const auto& m = ftab().m[sector_of(u)];
    return (m[0] * u + m[1]) / (m[2] * u + m[3]);
}

double gauss(double u, long* n_out, int* k_out) {
    int i = sector_of(u);
    long n = 0;
    double r;
    if (i == 1) {
        double w = 1.0 / (u - kP);
        double x = std::ceil(-kR2 * w - 1.0);
        n = x < 1.0 ? 1 : static_cast<long>(std::min(x, 9.0e18));
        double w2 = w + static_cast<double>(n) / kR2;
        r = w2 == 0.0 ? -std::numeric_limits<double>::infinity() : kP + 1.0 / w2;
    } else if (i == 7) {
        n = static_cast<long>(std::floor((-kP - u) / (2.0 * kP))) + 1;
        r = u + 2.0 * kP * static_cast<double>(n);
    } else {
        r = farey(u);
    }
    if (n_out) *n_out = n;
    if (k_out) *k_out = i;
    return r;
}

}  // namespace fp

std::string map_graph_svg(bool gauss_map, int samples) {
    const double pi = std::numbers::pi, W = 640, M = 40;
    auto X = [&](double th) { return M + (W - 2 * M) * th / pi; };
    auto Y = [&](double th) { return W - M - (W - 2 * M) * th / pi; };
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << W << "\" viewBox=\"0 0 " << W
       << ' ' << W << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<path d=\"M " << X(0) << ' ' << Y(0) << " H " << X(pi) << " V " << Y(pi) << " H " << X(0)
       << " Z\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<g stroke=\"#aaa\" stroke-dasharray=\"3 3\">\n";
    for (int k = 1; k < 8; ++k) {
        os << "<path d=\"M " << X(k * pi / 8) << ' ' << Y(0) << " V " << Y(pi) << "\"/>\n";
        os << "<path d=\"M " << X(0) << ' ' << Y(k * pi / 8) << " H " << X(pi) << "\"/>\n";
    }
    os << "<path d=\"M " << X(0) << ' ' << Y(0) << " L " << X(pi) << ' ' << Y(pi) << "\"/>\n</g>\n";
    os << "<path fill=\"none\" stroke=\"#2050a0\" stroke-width=\"1.2\" d=\"";
    bool pen = false;
    double prev = 0;
    for (int i = 1; i < samples; ++i) {
        const double th = pi / 8 + (7 * pi / 8) * i / samples;
        const double u = std::cos(th) / std::sin(th);
        double img;
        if (gauss_map) {
            img = fp::gauss(u);
            if (!std::isfinite(img)) {
                pen = false;
                continue;
            }
        } else {
            img = fp::farey(u);
        }
        const double t = angle_from_u(img);
        // lift the pen across branch jumps
        if (pen && std::abs(t - prev) > pi / 4) pen = false;
        os << (pen ? " L " : " M ") << X(th) << ' ' << Y(t);
        pen = true;
        prev = t;
    }
    os << "\"/>\n<g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << W - 10 << "\">theta</text>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\">" << (gauss_map ? "G" : "F") << "</text>\n</g>\n</svg>\n";
    return os.str();
}

}  // namespace octa
