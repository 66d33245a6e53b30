#pragma once

#include "octa/projline.hpp"

#include <utility>
#include <string>
#include <vector>

namespace octa {

// F(u) = gamma nu_i [u] for u in sector i (continuous, so boundary choice is irrelevant)
ProjPoint farey(const ProjPoint& u);
// (gamma nu_i)^-1 = nu_i^-1 gamma; pre: u in [pi/8, pi]
ProjPoint farey_inverse(int i, const ProjPoint& u);

enum class CFStatus { Generic, SuspectedTerminating, Terminating };
const char* to_string(CFStatus s);

struct CFExpansion {
    std::vector<int> entries;
    CFStatus status = CFStatus::Generic;
    // first k with F^k(u) a parabolic fixed point (1+sqrt2 or infinity), when found
    long parabolic_at = -1;
};

// s_k = sector of F^k(u), k < m. s_0 uses sector_of, later entries live in [pi/8, pi].
CFExpansion cf_expand(const ProjPoint& u, std::size_t m, std::size_t tail_threshold = 50);

// F^k(u) for k = 0..m-1
std::vector<ProjPoint> farey_orbit(const ProjPoint& u, std::size_t m);

// Backward map on [1+sqrt2, inf]. Branch i lives on gamma nu_i [closed sector 0].
// Shared partition endpoints belong to the lower index.
struct BackwardPartition {
    // pieces in increasing v order: (branch, lo, hi)
    struct Piece {
        int branch;
        ProjPoint lo, hi;
    };
    std::vector<Piece> pieces;
};
const BackwardPartition& backward_partition();
int pairing_j(int i);  // j(2)=6, j(6)=2, else i
// branch index for v; boundary set when v is a shared partition endpoint
int backward_branch(const ProjPoint& v, bool* boundary = nullptr);
ProjPoint backward_map(const ProjPoint& v);
struct BackwardExpansion {
    std::vector<int> entries;  // s_{-1}, s_{-2}, ...
    bool boundary = false;
};
BackwardExpansion backward_expand(const ProjPoint& v, std::size_t m);

// Gauss map: returns (G(u), sector data)
std::pair<ProjPoint, GaussSector> gauss(const ProjPoint& u);
// Sigma_{1,n} = (b_{n-1}, b_n] with b_n = (gamma nu_1)^-n [1]
ProjPoint gauss_sub_boundary1(long n);
// Sigma_{7,n} = (c_{n}, c_{n-1}] with c_n = sigma^-n [-(1+sqrt2)]
ProjPoint gauss_sub_boundary7(long n);

// floating-point versions for long orbits
namespace fp {
int sector_of(double u);  // u finite
double farey(double u);
double gauss(double u, long* n_out = nullptr, int* k_out = nullptr);
}  // namespace fp

// graph of F (or G) in angle coordinates, theta in [pi/8, pi]
std::string map_graph_svg(bool gauss_map, int samples = 6000);

}  // namespace octa
