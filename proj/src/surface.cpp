#include "octa/surface.hpp"

#include "octa/errors.hpp"
#include "octa/projline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace octa {

Vec2 operator+(const Vec2& p, const Vec2& q) { return {p[0] + q[0], p[1] + q[1]}; }
Vec2 operator-(const Vec2& p, const Vec2& q) { return {p[0] - q[0], p[1] - q[1]}; }
Vec2 operator*(const QSqrt2& s, const Vec2& p) { return {s * p[0], s * p[1]}; }
QSqrt2 dot(const Vec2& p, const Vec2& q) { return p[0] * q[0] + p[1] * q[1]; }
QSqrt2 cross(const Vec2& p, const Vec2& q) { return p[0] * q[1] - p[1] * q[0]; }

std::string to_string(const Vec2& p) { return p[0].str() + "," + p[1].str(); }

Vec2 parse_vec2(const std::string& s) {
    auto c = s.find(',');
    if (c == std::string::npos) throw ParseError("expected 'x,y', got '" + s + "'");
    return {QSqrt2::parse(s.substr(0, c)), QSqrt2::parse(s.substr(c + 1))};
}

namespace {

// a + b sqrt2 with machine integers, for the unfolding offset
struct Z2 {
    long long a = 0, b = 0;
    Z2& operator+=(const Z2& o) { a += o.a; b += o.b; return *this; }
    double f() const { return static_cast<double>(a) + static_cast<double>(b) * M_SQRT2; }
    QSqrt2 q() const { return {mpq_class(static_cast<long>(a)), mpq_class(static_cast<long>(b))}; }
};
using ZVec = std::array<Z2, 2>;

// vertices as integer pairs: p = 1 + sqrt2
const std::array<ZVec, 8> kZV = {{
    {Z2{1, 1}, Z2{-1, 0}}, {Z2{1, 1}, Z2{1, 0}},  {Z2{1, 0}, Z2{1, 1}},  {Z2{-1, 0}, Z2{1, 1}},
    {Z2{-1, -1}, Z2{1, 0}}, {Z2{-1, -1}, Z2{-1, 0}}, {Z2{-1, 0}, Z2{-1, -1}}, {Z2{1, 0}, Z2{-1, -1}},
}};
const std::array<std::array<int, 2>, 8> kNormals = {{{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};

struct Geometry {
    std::array<Vec2, 8> v, n;
    std::array<QSqrt2, 8> h;  // n_k . v_k
    std::array<ZVec, 8> zt;   // translations as integer pairs
    Geometry() {
        for (int k = 0; k < 8; ++k) {
            v[k] = {kZV[k][0].q(), kZV[k][1].q()};
            n[k] = {QSqrt2(kNormals[k][0]), QSqrt2(kNormals[k][1])};
        }
        for (int k = 0; k < 8; ++k) {
            h[k] = dot(n[k], v[k]);
            const ZVec& a = kZV[k];
            const ZVec& b = kZV[(k + 1) % 8];
            zt[k] = {Z2{a[0].a + b[0].a, a[0].b + b[0].b}, Z2{a[1].a + b[1].a, a[1].b + b[1].b}};
        }
    }
};

const Geometry& geo() {
    static const Geometry g;
    return g;
}

int mod8(int k) { return ((k % 8) + 8) % 8; }

}  // namespace

namespace octagon {

const Vec2& vertex(int k) { return geo().v[mod8(k)]; }
const Vec2& normal(int k) { return geo().n[mod8(k)]; }
Vec2 translation(int k) { return vertex(k) + vertex(k + 1); }
char label(int side) { return "CBAD"[mod8(side) % 4]; }
int opposite(int side) { return mod8(side + 4); }

bool contains(const Vec2& p) {
    for (int k = 0; k < 8; ++k)
        if (dot(geo().n[k], p) > geo().h[k]) return false;
    return true;
}

int boundary_side(const Vec2& p) {
    for (int k = 0; k < 8; ++k)
        if (dot(geo().n[k], p) == geo().h[k]) return k;
    return -1;
}

bool is_vertex(const Vec2& p) {
    for (int k = 0; k < 8; ++k)
        if (p == geo().v[k]) return true;
    return false;
}

}  // namespace octagon

SurfacePoint make_surface_point(const Vec2& p) {
    if (!octagon::contains(p)) throw OutOfDomain("point " + to_string(p) + " is outside the octagon");
    SurfacePoint s;
    s.p = p;
    s.singular = octagon::is_vertex(p);
    s.side = octagon::boundary_side(p);
    return s;
}

ProjPoint Trajectory::direction() const { return {dir[0], dir[1]}; }

Trajectory make_trajectory(const Vec2& p, const Vec2& dir) {
    if (dir[0].is_zero() && dir[1].is_zero()) throw ZeroDirection();
    return {make_surface_point(p), dir};
}

Vec2 forward_vector(const ProjPoint& u) {
    if (u.is_inf()) return {QSqrt2(1), QSqrt2(0)};
    return {u.u(), QSqrt2(1)};
}

namespace {

class Walker {
public:
    Walker(const Vec2& p, const Vec2& d) : p_(p), d_(d) {
        pf_ = {p[0].to_double(), p[1].to_double()};
        df_ = {d[0].to_double(), d[1].to_double()};
        c0_ = d[0] * p[1] - d[1] * p[0];
        c0f_ = c0_.to_double();
        for (int k = 0; k < 8; ++k) nd_[k] = dot(geo().n[k], d).sign();
    }

    // sign of cross(d, V - p) for vertex j of the current copy
    int orient(int j) const {
        const ZVec& v = kZV[j];
        const Z2 vx{v[0].a + T_[0].a, v[0].b + T_[0].b};
        const Z2 vy{v[1].a + T_[1].a, v[1].b + T_[1].b};
        const double x = vx.f(), y = vy.f();
        const double t1 = df_[0] * y, t2 = df_[1] * x;
        const double o = t1 - t2 - c0f_;
        const double err = 1e-12 * (std::abs(t1) + std::abs(t2) + std::abs(c0f_)) + 1e-290;
        if (o > err) return 1;
        if (o < -err) return -1;
        ++exact_calls_;
        QSqrt2 e = d_[0] * vy.q() - d_[1] * vx.q() - c0_;
        return e.sign();
    }

    Vec2 copy_vertex(int j) const {
        const ZVec& v = kZV[mod8(j)];
        return {Z2{v[0].a + T_[0].a, v[0].b + T_[0].b}.q(), Z2{v[1].a + T_[1].a, v[1].b + T_[1].b}.q()};
    }
    Vec2 offset() const { return {T_[0].q(), T_[1].q()}; }

    // exact exit time through side k of the current copy
    QSqrt2 exit_time(int k) const {
        const Vec2& n = geo().n[k];
        return dot(n, copy_vertex(k) - p_) / dot(n, d_);
    }
    double exit_time_f(int k) const {
        const ZVec& v = kZV[k];
        const double vx = Z2{v[0].a + T_[0].a, v[0].b + T_[0].b}.f();
        const double vy = Z2{v[1].a + T_[1].a, v[1].b + T_[1].b}.f();
        const auto& n = kNormals[k];
        return (n[0] * (vx - pf_[0]) + n[1] * (vy - pf_[1])) / (n[0] * df_[0] + n[1] * df_[1]);
    }
    QSqrt2 vertex_time(int j) const {
        Vec2 w = copy_vertex(j);
        return dot(w - p_, d_) / dot(d_, d_);
    }

    void shift(int k) { T_[0] += geo().zt[k][0]; T_[1] += geo().zt[k][1]; }
    int normal_sign(int k) const { return nd_[k]; }
    long exact_calls() const { return exact_calls_; }

private:
    Vec2 p_, d_;
    std::array<double, 2> pf_, df_;
    QSqrt2 c0_;
    double c0f_;
    std::array<int, 8> nd_;
    ZVec T_{};
    mutable long exact_calls_ = 0;
};

// -1, 0, +1 for t compared with t_max, float first
int compare_time(double tf, const std::function<QSqrt2()>& exact, const QSqrt2& tmax, double tmaxf) {
    double tol = 1e-9 * (1.0 + std::abs(tmaxf));
    if (tf < tmaxf - tol) return -1;
    if (tf > tmaxf + tol) return 1;
    return (exact() - tmax).sign();
}

}  // namespace

WalkResult walk(const SurfacePoint& start, const Vec2& d, const TraceOptions& opt) {
    if (d[0].is_zero() && d[1].is_zero()) throw ZeroDirection();
    if (opt.max_crossings == 0 && !opt.max_time) throw std::invalid_argument("walk: no stopping rule");
    const Vec2& p = start.p;
    if (start.singular || octagon::is_vertex(p)) throw SingularHit("walk starts at the singular point");
    WalkResult res;
    CuttingSeq& seq = res.seq;
    const double tmaxf = opt.max_time ? opt.max_time->to_double() : 0.0;
    Walker w(p, d);

    const int s = octagon::boundary_side(p);
    if (s >= 0) {
        const int ns = w.normal_sign(s);
        if (ns == 0) {
            // running along side s
            int ahead = dot(octagon::vertex(s + 1) - octagon::vertex(s), d).sign() > 0 ? s + 1 : s;
            QSqrt2 tv = w.vertex_time(mod8(ahead));
            if (!opt.max_time || *opt.max_time > tv) throw SingularHit("trajectory runs along a side into a vertex");
            Vec2 e = p + *opt.max_time * d;
            res.end = make_surface_point(e);
            res.reached_time = true;
            return res;
        }
        if (ns > 0) w.shift(s);
    }

    for (std::size_t count = 0;; ++count) {
        if (opt.max_crossings && count == opt.max_crossings) break;
        std::array<int, 8> o;
        for (int j = 0; j < 8; ++j) o[j] = w.orient(j);
        int k = -1;
        for (int j = 0; j < 8; ++j) {
            if (w.normal_sign(j) <= 0) continue;
            const int a = o[j], b = o[(j + 1) % 8];
            if (a <= 0 && b >= 0 && !(a == 0 && b == 0)) {
                k = j;
                if (a != 0 && b != 0) break;
            }
        }
        if (k < 0) throw std::logic_error("walk: no exit side found");
        const int a = o[k], b = o[(k + 1) % 8];
        const bool singular = a == 0 || b == 0;
        const int vtx = a == 0 ? k : (k + 1) % 8;

        if (opt.max_time) {
            int c;
            if (singular) {
                QSqrt2 tv = w.vertex_time(vtx);
                c = (tv - *opt.max_time).sign();
            } else {
                c = compare_time(w.exit_time_f(k), [&] { return w.exit_time(k); }, *opt.max_time, tmaxf);
            }
            if (c >= 0) {
                Vec2 e = p + *opt.max_time * d - w.offset();
                res.end = make_surface_point(e);
                res.reached_time = true;
                break;
            }
        }
        if (singular) throw SingularHit("trajectory hits a vertex after " + std::to_string(count) + " crossings");

        seq.letters.push_back(octagon::label(k));
        seq.sides.push_back(k);
        seq.times.push_back(w.exit_time_f(k));
        if (opt.exact_points) {
            QSqrt2 t = w.exit_time(k);
            seq.points.push_back(p + t * d - w.offset());
            seq.exact_times.push_back(t);
        }
        w.shift(k);
    }
    return res;
}

CuttingSeq trace(const Trajectory& tau, std::size_t n_crossings, bool exact_points) {
    if (n_crossings == 0) return {};
    TraceOptions opt;
    opt.max_crossings = n_crossings;
    opt.exact_points = exact_points;
    return walk(tau.start, tau.dir, opt).seq;
}

CuttingSeq trace_time(const Trajectory& tau, const QSqrt2& t_max, bool exact_points) {
    TraceOptions opt;
    opt.max_time = t_max;
    opt.exact_points = exact_points;
    return walk(tau.start, tau.dir, opt).seq;
}

Trajectory apply_isometry(int k, const Trajectory& tau) {
    const Mat2& m = nu(k);
    return {make_surface_point(m.apply(tau.start.p)), m.apply(tau.dir)};
}

SurfacePoint reduce_to_octagon(const Vec2& p) {
    if (p[0].is_zero() && p[1].is_zero()) return make_surface_point(p);
    TraceOptions opt;
    opt.max_time = QSqrt2(1);
    try {
        WalkResult r = walk(make_surface_point({QSqrt2(0), QSqrt2(0)}), p, opt);
        return r.end;
    } catch (const SingularHit& e) {
        throw NotReducible(std::string("path from the center passes the singular point: ") + e.what());
    }
}

SurfacePoint apply_affine(const Mat2& m, const SurfacePoint& q) {
    if (q.singular) return q;
    return reduce_to_octagon(m.apply(q.p));
}

Trajectory derived_trajectory(const Trajectory& tau) {
    if (!in_closed_sector(tau.direction(), 0)) throw WrongSector("derived trajectory needs direction in sector 0");
    const Mat2& g = gamma_mat();
    return {apply_affine(g, tau.start), g.apply(tau.dir)};
}

RenormalizedTrajectory renormalize_trajectory(const Trajectory& tau, std::size_t k) {
    RenormalizedTrajectory r{tau, {}};
    for (std::size_t j = 0; j < k; ++j) {
        int s = j == 0 ? sector_of(r.tau.direction()) : sector_in_domain(r.tau.direction());
        r.sectors.push_back(s);
        r.tau = derived_trajectory(apply_isometry(s, r.tau));
    }
    return r;
}

Mat2 nu_word(const std::vector<int>& word) {
    Mat2 m;
    for (int s : word) m = m * farey_branch_inv(s);
    return m;
}

namespace {

// representative of the start in the copy the walk begins in
Vec2 start_rep(const SurfacePoint& s, const Vec2& d) {
    const int side = octagon::boundary_side(s.p);
    if (side >= 0 && dot(octagon::normal(side), d).sign() > 0) return s.p - octagon::translation(side);
    return s.p;
}

// pieces of a time-limited walk that ends exactly at time 1
std::vector<std::pair<Vec2, Vec2>> walk_pieces(const SurfacePoint& start, const Vec2& d) {
    TraceOptions opt;
    opt.max_time = QSqrt2(1);
    opt.exact_points = true;
    WalkResult r = walk(start, d, opt);
    std::vector<std::pair<Vec2, Vec2>> out;
    Vec2 from = start_rep(start, d);
    for (std::size_t i = 0; i < r.seq.points.size(); ++i) {
        out.emplace_back(from, r.seq.points[i]);
        from = r.seq.points[i] - octagon::translation(r.seq.sides[i]);
    }
    out.emplace_back(from, r.end.p);
    return out;
}

}  // namespace

std::vector<LabeledSegment> affine_octagon_sides(const std::vector<int>& word) {
    const Mat2 m = nu_word(word);
    const QSqrt2 half = QSqrt2::frac(1, 2);
    std::vector<LabeledSegment> out;
    for (int j = 0; j < 8; ++j) {
        const Vec2& a = octagon::vertex(j);
        const Vec2& b = octagon::vertex(j + 1);
        Vec2 mid = half * (a + b);
        SurfacePoint s = apply_affine(m, make_surface_point(mid));
        Vec2 hv = m.apply(half * (b - a));
        auto fwd = walk_pieces(s, hv);
        auto back = walk_pieces(s, QSqrt2(-1) * hv);
        std::vector<std::pair<Vec2, Vec2>> all;
        for (auto it = back.rbegin(); it != back.rend(); ++it) all.emplace_back(it->second, it->first);
        std::size_t i0 = 0;
        if (!all.empty() && !fwd.empty() && all.back().second == fwd.front().first) {
            // both halves leave the midpoint inside the same copy
            all.back().second = fwd.front().second;
            i0 = 1;
        }
        for (std::size_t i = i0; i < fwd.size(); ++i) all.push_back(fwd[i]);
        for (auto& [x, y] : all)
            if (!(x == y)) out.push_back({x, y, octagon::label(j), j});
    }
    return out;
}

std::string code_against(const Trajectory& tau, const std::vector<LabeledSegment>& all, const QSqrt2& t_max) {
    // sides j and j+4 are one curve on the surface; boundary pieces get their glued copy
    std::vector<LabeledSegment> segs;
    for (const auto& sg : all) {
        if (sg.source_side >= 4) continue;
        segs.push_back(sg);
        for (int k = 0; k < 8; ++k) {
            const Vec2& v = octagon::vertex(k);
            const Vec2 e = octagon::vertex(k + 1) - v;
            if (cross(e, sg.a - v).is_zero() && cross(e, sg.b - v).is_zero()) {
                const Vec2 t = octagon::translation(k);
                segs.push_back({sg.a - t, sg.b - t, sg.label, sg.source_side});
            }
        }
    }
    TraceOptions opt;
    opt.max_time = t_max;
    opt.exact_points = true;
    WalkResult r = walk(tau.start, tau.dir, opt);
    struct Hit {
        double t;
        char label;
    };
    std::vector<Hit> hits;
    Vec2 from = start_rep(tau.start, tau.dir);
    QSqrt2 t0(0);
    struct FSeg {
        double ax, ay, bx, by;
    };
    std::vector<FSeg> fs;
    for (const auto& sg : segs)
        fs.push_back({sg.a[0].to_double(), sg.a[1].to_double(), sg.b[0].to_double(), sg.b[1].to_double()});
    auto scan = [&](const Vec2& P, const Vec2& Q, const QSqrt2& ta, const QSqrt2& tb) {
        const Vec2 pq = Q - P;
        const double px = P[0].to_double(), py = P[1].to_double();
        const double qx = pq[0].to_double(), qy = pq[1].to_double();
        for (std::size_t i = 0; i < segs.size(); ++i) {
            const auto& sg = segs[i];
            {
                const FSeg& f = fs[i];
                const double ex = f.bx - f.ax, ey = f.by - f.ay;
                const double den = qx * ey - qy * ex;
                const double scale = (std::abs(qx) + std::abs(qy)) * (std::abs(ex) + std::abs(ey));
                if (std::abs(den) > 1e-9 * scale) {
                    const double wx = f.ax - px, wy = f.ay - py;
                    const double sf = (wx * ey - wy * ex) / den, rf = (wx * qy - wy * qx) / den;
                    const double tol = 1e-7;
                    if (sf < -tol || sf > 1 + tol || rf < -tol || rf > 1 + tol) continue;
                }
            }
            const Vec2 ab = sg.b - sg.a;
            QSqrt2 den = cross(pq, ab);
            if (den.is_zero()) continue;
            QSqrt2 s = cross(sg.a - P, ab) / den;
            QSqrt2 rr = cross(sg.a - P, pq) / den;
            // half-open in the trajectory parameter
            if (s.sign() < 0 || s >= QSqrt2(1)) continue;
            if (rr.sign() < 0 || rr > QSqrt2(1)) continue;
            if (rr.is_zero() || rr == QSqrt2(1)) throw SingularHit("trajectory meets an affine side at its endpoint");
            hits.push_back({(ta + s * (tb - ta)).to_double(), sg.label});
        }
    };
    for (std::size_t i = 0; i < r.seq.points.size(); ++i) {
        scan(from, r.seq.points[i], t0, r.seq.exact_times[i]);
        from = r.seq.points[i] - octagon::translation(r.seq.sides[i]);
        t0 = r.seq.exact_times[i];
    }
    scan(from, r.end.p, t0, t_max);
    std::stable_sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.t < y.t; });
    std::string out;
    for (const auto& h : hits) out.push_back(h.label);
    return out;
}

std::vector<std::pair<Vec2, Vec2>> trajectory_pieces(const Trajectory& tau, const CuttingSeq& seq) {
    std::vector<std::pair<Vec2, Vec2>> out;
    if (seq.points.size() != seq.sides.size()) throw std::invalid_argument("trajectory_pieces needs exact points");
    Vec2 from = start_rep(tau.start, tau.dir);
    for (std::size_t i = 0; i < seq.points.size(); ++i) {
        out.emplace_back(from, seq.points[i]);
        from = seq.points[i] - octagon::translation(seq.sides[i]);
    }
    return out;
}

std::string surface_svg(const std::vector<std::pair<Vec2, Vec2>>& pieces, const std::vector<LabeledSegment>& extra) {
    const double s = 100.0, c = 300.0;
    auto X = [&](const QSqrt2& x) { return c + s * x.to_double(); };
    auto Y = [&](const QSqrt2& y) { return c - s * y.to_double(); };
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(3);
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    o << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n<polygon fill=\"#f4f4f4\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (int k = 0; k < 8; ++k) o << X(octagon::vertex(k)[0]) << "," << Y(octagon::vertex(k)[1]) << " ";
    o << "\"/>\n";
    for (int k = 0; k < 8; ++k) {
        Vec2 m = QSqrt2::frac(1, 2) * (octagon::vertex(k) + octagon::vertex(k + 1));
        double nx = octagon::normal(k)[0].to_double(), ny = octagon::normal(k)[1].to_double();
        double nn = std::hypot(nx, ny);
        o << "<text x=\"" << X(m[0]) + 18 * nx / nn - 5 << "\" y=\"" << Y(m[1]) - 18 * ny / nn + 5
          << "\" font-size=\"16\" font-family=\"sans-serif\">" << octagon::label(k) << "</text>\n";
    }
    for (const auto& sg : extra)
        o << "<line x1=\"" << X(sg.a[0]) << "\" y1=\"" << Y(sg.a[1]) << "\" x2=\"" << X(sg.b[0]) << "\" y2=\""
          << Y(sg.b[1]) << "\" stroke=\"#c03030\" stroke-width=\"1\"/>\n";
    for (const auto& [a, b] : pieces)
        o << "<line x1=\"" << X(a[0]) << "\" y1=\"" << Y(a[1]) << "\" x2=\"" << X(b[0]) << "\" y2=\"" << Y(b[1])
          << "\" stroke=\"#2050c0\" stroke-width=\"0.8\"/>\n";
    o << "</svg>\n";
    return o.str();
}

}  // namespace octa
