#pragma once

#include "octa/mat2.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace octa {

using Vec2 = std::array<QSqrt2, 2>;

Vec2 operator+(const Vec2& p, const Vec2& q);
Vec2 operator-(const Vec2& p, const Vec2& q);
Vec2 operator*(const QSqrt2& s, const Vec2& p);
QSqrt2 dot(const Vec2& p, const Vec2& q);
QSqrt2 cross(const Vec2& p, const Vec2& q);
std::string to_string(const Vec2& p);  // "x,y"
Vec2 parse_vec2(const std::string& s);

// Regular octagon, vertices counterclockwise from (1+sqrt2, -1).
// Side k joins vertex k to vertex k+1; side k+4 is glued to side k by the
// translation vertex(k) + vertex(k+1).
namespace octagon {
const Vec2& vertex(int k);            // k mod 8
const Vec2& normal(int k);            // outward, not normalized
Vec2 translation(int k);              // carries side k+4 onto side k
char label(int side);                 // C B A D C B A D
int opposite(int side);
bool contains(const Vec2& p);         // closed octagon
// -1 interior, side index if on the boundary (lowest index at a vertex)
int boundary_side(const Vec2& p);
bool is_vertex(const Vec2& p);
}  // namespace octagon

struct SurfacePoint {
    Vec2 p;
    int side = -1;  // side containing p, -1 for interior points
    bool singular = false;
};
SurfacePoint make_surface_point(const Vec2& p);

struct Trajectory {
    SurfacePoint start;
    Vec2 dir;  // a vector; orientation matters
    // direction as a point of RP^1, u = dx/dy
    ProjPoint direction() const;
};
Trajectory make_trajectory(const Vec2& p, const Vec2& dir);
// direction u in [0, pi) traced forward: (u, 1), or (1, 0) for infinity
Vec2 forward_vector(const ProjPoint& u);

struct CuttingSeq {
    std::string letters;
    std::vector<int> sides;            // exit side index for each letter
    std::vector<double> times;         // crossing times (parameter of start + t dir)
    std::vector<Vec2> points;          // exact exit points in O, when requested
    std::vector<QSqrt2> exact_times;   // when requested
    std::size_t cut_front = 0, cut_back = 0;  // truncation metadata
};

struct TraceOptions {
    std::size_t max_crossings = 0;     // 0 = unlimited (then max_time required)
    std::optional<QSqrt2> max_time;    // stop before crossings later than this time
    bool exact_points = false;
};

struct WalkResult {
    CuttingSeq seq;
    SurfacePoint end;                  // valid when max_time is set and reached
    bool reached_time = false;
};

// Straight-line walk on the surface. Throws SingularHit/ZeroDirection.
WalkResult walk(const SurfacePoint& start, const Vec2& dir, const TraceOptions& opt);
CuttingSeq trace(const Trajectory& tau, std::size_t n_crossings, bool exact_points = false);
CuttingSeq trace_time(const Trajectory& tau, const QSqrt2& t_max, bool exact_points = false);

// apply nu_k linearly
Trajectory apply_isometry(int k, const Trajectory& tau);
// The affine automorphism with derivative m (a Veech element) applied to a point:
// develop the straight path from the center by the vector m p.
SurfacePoint reduce_to_octagon(const Vec2& p);
SurfacePoint apply_affine(const Mat2& m, const SurfacePoint& q);
// pre: direction in the closed sector 0
Trajectory derived_trajectory(const Trajectory& tau);

struct RenormalizedTrajectory {
    Trajectory tau;
    std::vector<int> sectors;
};
RenormalizedTrajectory renormalize_trajectory(const Trajectory& tau, std::size_t k);

struct LabeledSegment {
    Vec2 a, b;
    char label;
    int source_side;
};
// nu(k) = nu_{s0}^-1 gamma ... nu_{s_{k-1}}^-1 gamma
Mat2 nu_word(const std::vector<int>& word);
// images of the 8 sides under the affine automorphism with derivative nu_word(word)
std::vector<LabeledSegment> affine_octagon_sides(const std::vector<int>& word);
// labels of the segments crossed by tau up to time t_max, in order
std::string code_against(const Trajectory& tau, const std::vector<LabeledSegment>& segs,
                         const QSqrt2& t_max);

// SVG: octagon, optional trajectory pieces, optional extra segments
std::string surface_svg(const std::vector<std::pair<Vec2, Vec2>>& trajectory_pieces,
                        const std::vector<LabeledSegment>& extra);
// pieces of the trajectory inside O from a trace with exact points
std::vector<std::pair<Vec2, Vec2>> trajectory_pieces(const Trajectory& tau, const CuttingSeq& seq);

}  // namespace octa
