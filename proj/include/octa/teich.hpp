#pragma once

#include "octa/mat2.hpp"
#include "octa/natext.hpp"

#include <complex>
#include <string>
#include <vector>

namespace octa {

struct VeechElement {
    Mat2 m;
    std::string word;  // e.g. "nu3^-1 g nu1^-1 g"
};

// boundary coordinate x = -1/u of the ray in direction u
ProjPoint boundary_coord(const ProjPoint& u);
ProjPoint direction_of_boundary(const ProjPoint& x);
// k with x over the arc E_k (same half-open convention as the sectors)
int arc_of(const ProjPoint& x);
// disk point of x under z -> (z-i)/(z+i)
std::complex<double> disk_point(const ProjPoint& x);
// ideal vertex k of the octagon in the disk
std::complex<double> ideal_vertex(int k);

struct TeichCode {
    std::vector<int> c;      // symbols 0..7, no two equal in a row
    bool cuspidal = false;   // ray ended in an ideal vertex after c.size() symbols
};
TeichCode teich_code(const ProjPoint& u, std::size_t m);
// the two infinite paths of a cuspidal direction: at the first vertex, take the half-open arc
// or the other adjacent arc; after that the path winds around the cusp
std::pair<TeichCode, TeichCode> teich_code_two_paths(const ProjPoint& u, std::size_t m);

// c_0, then k with nu_{c_l} nu_{c_{l-1}}^-1 = +-nu_k
std::vector<int> normalize_code(const std::vector<int>& c);

// independent tracer: walks the ray through tiles generated by reflections in the disk
// (extended precision); tol is the endpoint clearance relative to the exit side
std::vector<int> float_geodesic_code(const ProjPoint& u, std::size_t m, double tol = 1e-9);

// nu_{s_0}^-1 g ... nu_{s_n}^-1 g
VeechElement path_word(const std::vector<int>& s);
// gamma_{c_0} ... gamma_{c_{k-1}}
VeechElement gamma_product(const std::vector<int>& c);

// first return to the section, computed on boundary endpoints (x, y) = (-1/u, -1/v)
PlanePoint cross_section_return(const PlanePoint& p);

std::string tessellation_svg(int depth);

}  // namespace octa
