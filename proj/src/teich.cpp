#include "octa/teich.hpp"

#include "octa/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

namespace octa {

using cd = std::complex<double>;

namespace {

const Mat2& J() {  // u -> -1/u
    static const Mat2 m(QSqrt2(0), QSqrt2(-1), QSqrt2(1), QSqrt2(0));
    return m;
}

bool is_vertex_coord(const ProjPoint& x) {
    const ProjPoint u = direction_of_boundary(x);
    const auto& c = sector_boundaries();
    for (int k = 0; k < 8; ++k)
        if (c[k] == u) return true;
    return false;
}

// k-1 when x is the vertex between arcs k-1 and k, else arc_of(x)
int arc_left(const ProjPoint& x) {
    const int k = arc_of(x);
    return direction_of_boundary(x) == sector_boundaries()[k] ? (k + 7) % 8 : k;
}

// mode 0: stop at a vertex; 1, 2: continue around the cusp, first turn to the right / left arc
TeichCode code_with(const ProjPoint& u, std::size_t m, int mode) {
    TeichCode r;
    ProjPoint x = boundary_coord(u);
    int prev = -1;
    for (std::size_t l = 0; l < m; ++l) {
        int k = arc_of(x);
        if (is_vertex_coord(x)) {
            r.cuspidal = true;
            if (mode == 0) break;
            const int left = arc_left(x);
            // the path winds around the cusp: never back through the entry side
            if (k == prev) k = left;
            else if (left != prev && mode == 2) k = left;
        }
        r.c.push_back(k);
        // gamma_k is an involution, so its endpoint action is the transpose
        x = gamma_i(k).apply_right(x);
        prev = k;
    }
    return r;
}

double orient(cd a, cd b, cd c) { return (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real()); }

// circle orthogonal to the unit circle through ideal points a, b
void ortho_circle(cd a, cd b, cd& c, double& r2) {
    c = (a + b) / (1.0 + std::real(a * std::conj(b)));
    r2 = std::norm(c) - 1.0;
}

cd invert(cd z, cd c, double r2) { return c + r2 / std::conj(z - c); }

cd reflect_across(cd z, cd a, cd b) {
    cd c;
    double r2;
    ortho_circle(a, b, c, r2);
    return invert(z, c, r2);
}

}  // namespace

ProjPoint boundary_coord(const ProjPoint& u) { return J().apply_left(u); }

// u -> -1/u is an involution
ProjPoint direction_of_boundary(const ProjPoint& x) { return J().apply_left(x); }

int arc_of(const ProjPoint& x) { return sector_of(direction_of_boundary(x)); }

cd disk_point(const ProjPoint& x) {
    if (x.is_inf()) return {1.0, 0.0};
    const cd z(x.u().to_double(), 0.0);
    return (z - cd(0, 1)) / (z + cd(0, 1));
}

cd ideal_vertex(int k) {
    k = ((k % 8) + 8) % 8;
    return std::polar(1.0, std::numbers::pi - k * std::numbers::pi / 4);
}

TeichCode teich_code(const ProjPoint& u, std::size_t m) { return code_with(u, m, 0); }

std::pair<TeichCode, TeichCode> teich_code_two_paths(const ProjPoint& u, std::size_t m) {
    return {code_with(u, m, 1), code_with(u, m, 2)};
}

std::vector<int> normalize_code(const std::vector<int>& c) {
    std::vector<int> out;
    for (std::size_t l = 0; l < c.size(); ++l) out.push_back(l == 0 ? c[0] : nu_quotient(c[l], c[l - 1]));
    return out;
}

namespace {

// tiles along a ray shrink below double resolution within ~20 crossings
using Real = boost::multiprecision::cpp_bin_float_100;

Real to_real(const mpq_class& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

// pi - 2 theta for the direction u, theta = arccot u in [0, pi)
Real endpoint_angle(const ProjPoint& u) {
    const Real pi = boost::math::constants::pi<Real>();
    if (u.is_inf()) return pi;
    const Real x = to_real(u.u().a()) + to_real(u.u().b()) * sqrt(Real(2));
    Real th = atan2(Real(1), x);
    return pi - 2 * th;
}

Real rem2pi(const Real& x) {
    const Real tau = 2 * boost::math::constants::pi<Real>();
    Real r = x - tau * floor(x / tau + Real(0.5));
    return r;  // in [-pi, pi)
}

}  // namespace

std::vector<int> float_geodesic_code(const ProjPoint& u, std::size_t m, double tol) {
    // The ray from the center ends at xi; tiles along it are generated by reflecting
    // vertex angles, so xi itself is never moved and rounding does not get amplified.
    const Real pi = boost::math::constants::pi<Real>();
    const Real xi = endpoint_angle(u);
    std::array<Real, 8> w;
    for (int k = 0; k < 8; ++k) w[k] = pi - k * pi / 4;
    auto ccw = [&](const Real& x) {
        Real r = rem2pi(x);
        return r < 0 ? Real(r + 2 * pi) : r;
    };
    auto on_arc = [&](const Real& x, const Real& a, const Real& b) { return ccw(x - a) < ccw(b - a); };
    std::vector<int> out;
    int entry = -1;
    for (std::size_t l = 0; l < m; ++l) {
        int k = -1;
        for (int j = 0; j < 8 && k < 0; ++j) {
            const Real &a = w[j], &b = w[(j + 1) % 8], &other = w[(j + 2) % 8];
            // the arc of side j is the one between a and b free of other vertices
            const bool hit = on_arc(other, a, b) ? on_arc(xi, b, a) : on_arc(xi, a, b);
            if (hit) k = j;
        }
        if (k < 0 || k == entry) throw TooCloseToVertex("no exit side found");
        const Real a = w[k], b = w[(k + 1) % 8];
        // clearance from the side's endpoints, relative to its arc (invariant under moving the tile back)
        const Real arc = abs(rem2pi(b - a));
        const Real gap = std::min(abs(rem2pi(xi - a)), abs(rem2pi(xi - b)));
        if (gap < tol * arc || gap < Real(1e-90)) throw TooCloseToVertex("geodesic endpoint within tolerance of an ideal vertex");
        out.push_back(k);
        // on the side's circle: t = tan((psi - mu)/2) sends the endpoints to +-s, and the reflection is t -> s^2/t
        const Real mu = a + rem2pi(b - a) / 2;
        const Real sh = tan(rem2pi(b - a) / 4);
        for (int j = 0; j < 8; ++j) {
            if (j == k || j == (k + 1) % 8) continue;
            const Real t = tan(rem2pi(w[j] - mu) / 2);
            w[j] = mu + 2 * atan(sh * sh / t);
        }
        entry = k;
    }
    return out;
}

VeechElement path_word(const std::vector<int>& s) {
    VeechElement e;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int lo = i == 0 ? 0 : 1;
        if (s[i] < lo || s[i] > 7) throw InvalidPath("path label " + std::to_string(s[i]) + " at position " + std::to_string(i));
        e.m = e.m * farey_branch_inv(s[i]);
        e.word += (e.word.empty() ? "" : " ") + std::string("nu") + std::to_string(s[i]) + "^-1 g";
    }
    return e;
}

VeechElement gamma_product(const std::vector<int>& c) {
    VeechElement e;
    for (int k : c) {
        if (k < 0 || k > 7) throw InvalidPath("label " + std::to_string(k));
        e.m = e.m * gamma_i(k);
        e.word += (e.word.empty() ? "" : " ") + std::string("g") + std::to_string(k);
    }
    return e;
}

PlanePoint cross_section_return(const PlanePoint& p) {
    if (!in_fhat_domain(p)) throw OutOfSection("point is not on the section");
    const ProjPoint x = boundary_coord(p.u), y = boundary_coord(p.v);
    int k = arc_of(x);
    if (k == 0) k = 7;  // x = 0 is the closing endpoint of arc 7
    const Mat2& m = farey_branch_inv(k);
    return {direction_of_boundary(m.apply_right(x)), direction_of_boundary(m.apply_right(y))};
}

namespace {

struct DiskTile {
    std::array<cd, 8> v;
    cd center;
    int entry = -1;   // side shared with the parent
    int nlabel = -1;  // normalized label of the tree edge from the parent
    int depth = 0;
    cd parent_center;
};

constexpr double kSize = 800, kR = 380;

std::string pt(cd z) {
    std::ostringstream os;
    os.precision(6);
    os << kSize / 2 + kR * z.real() << ' ' << kSize / 2 - kR * z.imag();
    return os.str();
}

std::string side_path(cd a, cd b) {
    cd c;
    double r2;
    ortho_circle(a, b, c, r2);
    const int sweep = orient(c, a, b) > 0 ? 1 : 0;
    std::ostringstream os;
    os.precision(6);
    os << "M " << pt(a) << " A " << kR * std::sqrt(r2) << ' ' << kR * std::sqrt(r2) << " 0 0 " << sweep << ' ' << pt(b);
    return os.str();
}

cd side_midpoint(cd a, cd b) {
    cd c;
    double r2;
    ortho_circle(a, b, c, r2);
    return c * (1.0 - std::sqrt(r2) / std::abs(c));
}

}  // namespace

std::string tessellation_svg(int depth) {
    if (depth < 0 || depth > 6) throw OutOfRange("tessellation depth must be in 0..6");
    std::deque<DiskTile> queue;
    std::vector<DiskTile> tiles;
    DiskTile root;
    for (int k = 0; k < 8; ++k) root.v[k] = ideal_vertex(k);
    root.center = 0;
    queue.push_back(root);
    while (!queue.empty()) {
        DiskTile t = queue.front();
        queue.pop_front();
        tiles.push_back(t);
        if (t.depth == depth) continue;
        for (int j = 0; j < 8; ++j) {
            if (j == t.entry) continue;
            const cd a = t.v[j], b = t.v[(j + 1) % 8];
            if (std::abs(a - b) < 2e-3) continue;  // below a pixel
            DiskTile ch;
            for (int k = 0; k < 8; ++k) ch.v[k] = reflect_across(t.v[k], a, b);
            ch.v[j] = a;
            ch.v[(j + 1) % 8] = b;
            ch.center = reflect_across(t.center, a, b);
            ch.entry = j;
            ch.nlabel = t.entry < 0 ? j : nu_quotient(j, t.entry);
            ch.depth = t.depth + 1;
            ch.parent_center = t.center;
            queue.push_back(ch);
        }
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\" viewBox=\"0 0 "
       << kSize << ' ' << kSize << "\">\n";
    os << "<circle cx=\"" << kSize / 2 << "\" cy=\"" << kSize / 2 << "\" r=\"" << kR
       << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    // fundamental triangles of the central octagon
    os << "<g stroke=\"#bbb\" stroke-dasharray=\"4 3\" stroke-width=\"0.8\">\n";
    for (int k = 0; k < 8; ++k) os << "<path d=\"M " << pt(0) << " L " << pt(ideal_vertex(k)) << "\"/>\n";
    os << "</g>\n<g fill=\"none\" stroke=\"#2050a0\" stroke-width=\"0.7\">\n";
    for (const DiskTile& t : tiles)
        for (int j = 0; j < 8; ++j) {
            if (j == t.entry) continue;  // drawn with the parent
            const cd a = t.v[j], b = t.v[(j + 1) % 8];
            if (t.depth > 0 && std::abs(a - b) < 2e-3) continue;
            os << "<path d=\"" << side_path(a, b) << "\"" << (t.depth == 0 ? " stroke-width=\"1.6\"" : "") << "/>\n";
        }
    os << "</g>\n<g stroke=\"#c03020\" stroke-width=\"0.8\">\n";
    for (const DiskTile& t : tiles)
        if (t.depth > 0) os << "<path d=\"M " << pt(t.parent_center) << " L " << pt(t.center) << "\"/>\n";
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (int k = 0; k < 8; ++k) {
        const cd m = side_midpoint(ideal_vertex(k), ideal_vertex(k + 1)) * 0.85;
        os << "<text x=\"" << kSize / 2 + kR * m.real() << "\" y=\"" << kSize / 2 - kR * m.imag() + 4 << "\">E" << k
           << "</text>\n";
    }
    for (const DiskTile& t : tiles)
        if (t.depth >= 1 && t.depth <= 2) {
            const cd m = 0.5 * (t.parent_center + t.center);
            os << "<text fill=\"#c03020\" font-size=\"" << (t.depth == 1 ? 11 : 8) << "\" x=\""
               << kSize / 2 + kR * m.real() << "\" y=\"" << kSize / 2 - kR * m.imag() << "\">" << t.nlabel << "</text>\n";
        }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace octa
