#include "doctest.h"

#include "octa/cfmaps.hpp"
#include "octa/errors.hpp"
#include "octa/surface.hpp"
#include "octa/symbolic.hpp"
#include "octa/teich.hpp"
#include "testutil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace octa;

TEST_CASE("Veech group relations") {
    for (int i = 0; i < 8; ++i) {
        CHECK(equal_up_to_sign(gamma_i(i) * gamma_i(i), Mat2()));
        CHECK(gamma_i(i) == nu_inv(i) * gamma_mat() * nu(i));
    }
    CHECK(gamma_mat() * gamma_mat() == Mat2());
    // dictionary: one k in 1..7 for each ordered pair i != j
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            if (i == j) continue;
            int hits = 0;
            for (int k = 0; k < 8; ++k) hits += equal_up_to_sign(nu(j) * nu_inv(i), nu(k));
            CHECK(hits == 1);
            const int k = nu_quotient(j, i);
            CHECK((k >= 1 && k <= 7));
            CHECK(equal_up_to_sign(nu(j) * nu_inv(i), nu(k)));
        }
    CHECK(normalize_code({1, 3}) == std::vector<int>{1, 6});
    CHECK(nu(3) * nu_inv(1) == -nu(6));
}

TEST_CASE("boundary coordinates") {
    CHECK(boundary_coord(ProjPoint(QSqrt2(1))) == ProjPoint(QSqrt2(-1)));
    CHECK(boundary_coord(ProjPoint::infinity()) == ProjPoint(QSqrt2(0)));
    const auto& c = sector_boundaries();
    for (int k = 0; k < 8; ++k) {
        std::complex<double> z = disk_point(boundary_coord(c[k]));
        CHECK(std::abs(z - ideal_vertex(k)) < 1e-14);
        // ray at angle 2 theta clockwise from the ray to -1
        const double th = k * std::numbers::pi / 8;
        CHECK(std::abs(z - std::polar(1.0, std::numbers::pi - 2 * th)) < 1e-14);
    }
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        ProjPoint u = testutil::rand_direction(rng);
        CHECK(arc_of(boundary_coord(u)) == sector_of(u));
        CHECK(direction_of_boundary(boundary_coord(u)) == u);
    }
}

TEST_CASE("Teichmueller cutting sequences") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        ProjPoint u = testutil::rand_direction(rng);
        TeichCode t = teich_code(u, 30);
        REQUIRE(t.c.size() == 30);
        CHECK(!t.cuspidal);
        CHECK(t.c[0] == sector_of(u));
        for (std::size_t l = 1; l < t.c.size(); ++l) CHECK(t.c[l] != t.c[l - 1]);
        CHECK(normalize_code(t.c) == cf_expand(u, 30).entries);
    }
    CHECK(teich_code(ProjPoint(QSqrt2(3)), 0).c.empty());
}

TEST_CASE("cuspidal directions give finite codes") {
    // preimages of the parabolic fixed points are cusps
    const QSqrt2 P(1, 1);
    std::vector<ProjPoint> cusps = {ProjPoint::infinity(), ProjPoint(P), farey_inverse(3, ProjPoint(P)),
                                    farey_inverse(5, farey_inverse(2, ProjPoint::infinity())), ProjPoint(QSqrt2(1))};
    for (const auto& u : cusps) {
        TeichCode t = teich_code(u, 50);
        CHECK(t.cuspidal);
        CHECK(t.c.size() < 50);
        CHECK(cf_expand(u, 60).status != CFStatus::Generic);
        auto [a, b] = teich_code_two_paths(u, 40);
        CHECK(a.c.size() == 40);
        CHECK(b.c.size() == 40);
        CHECK(a.c != b.c);
        // both continue the finite code
        CHECK(std::equal(t.c.begin(), t.c.end(), a.c.begin()));
        CHECK(std::equal(t.c.begin(), t.c.end(), b.c.begin()));
        for (std::size_t l = 1; l < 40; ++l) {
            CHECK(a.c[l] != a.c[l - 1]);
            CHECK(b.c[l] != b.c[l - 1]);
        }
        // one of the two paths is the continued fraction
        const auto cf = cf_expand(u, 40).entries;
        CHECK((normalize_code(a.c) == cf || normalize_code(b.c) == cf));
    }
}

TEST_CASE("float geodesic tracer agrees with the exact coder") {
    std::mt19937_64 rng(3);
    int agreed = 0, skipped = 0;
    for (int i = 0; i < 100; ++i) {
        ProjPoint u = testutil::rand_direction(rng);
        try {
            auto f = float_geodesic_code(u, 30);
            CHECK(f == teich_code(u, 30).c);
            ++agreed;
        } catch (const TooCloseToVertex&) {
            ++skipped;
        }
    }
    CHECK(agreed > 90);
    CHECK(float_geodesic_code(ProjPoint(QSqrt2(3)), 0).empty());
    CHECK_THROWS_AS(float_geodesic_code(ProjPoint::infinity(), 3), TooCloseToVertex);
}

TEST_CASE("path words") {
    CHECK(path_word({}).m == Mat2());
    CHECK(path_word({0}).m == gamma_mat());
    CHECK_THROWS_AS(path_word({2, 0}), InvalidPath);
    CHECK_THROWS_AS(gamma_product({9}), InvalidPath);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
        ProjPoint u = testutil::rand_direction(rng);
        TeichCode t = teich_code(u, 8);
        auto s = normalize_code(t.c);
        CHECK(path_word(s).m == nu_word(s));
        // gamma^(k) relates the renormalized endpoint to the Farey orbit
        for (std::size_t k = 1; k <= 8; ++k) {
            std::vector<int> pre(t.c.begin(), t.c.begin() + k);
            std::vector<int> rev(pre.rbegin(), pre.rend());
            ProjPoint w = gamma_product(rev).m.apply_left(u);
            CHECK(w == nu_inv(t.c[k - 1]).apply_left(farey_orbit(u, k + 1).back()));
        }
    }
    // coding against the affine octagon of a path reproduces w_k
    ProjPoint u = testutil::rand_direction(rng);
    Trajectory tau = make_trajectory(testutil::rand_point(rng), forward_vector(u));
    const QSqrt2 T(300);
    RenormTrace tr = renormalize(Word{trace_time(tau, T).letters}, 3);
    auto s = normalize_code(teich_code(u, 2).c);
    REQUIRE(tr.words.size() >= 3);
    CHECK(code_against(tau, affine_octagon_sides(s), T).find(tr.words[2].s) != std::string::npos);
}

TEST_CASE("cross-section return is fhat") {
    std::mt19937_64 rng(5);
    const QSqrt2 P(1, 1);
    for (int i = 0; i < 300; ++i) {
        ProjPoint u = testutil::rand_direction(rng, 1 + static_cast<int>(rng() % 7));
        QSqrt2 t = testutil::rand_generic(rng, 0.001, 0.999);
        PlanePoint p{u, ProjPoint(P + t / (QSqrt2(1) - t))};
        PlanePoint q = cross_section_return(p);
        CHECK(q == fhat(p));
        // backward endpoint over the closed arc 0
        CHECK(in_sector0_closure(q.v));
    }
    CHECK(cross_section_return({ProjPoint::infinity(), ProjPoint(P)}) == fhat({ProjPoint::infinity(), ProjPoint(P)}));
    CHECK_THROWS_AS(cross_section_return({ProjPoint(QSqrt2(5)), ProjPoint(P)}), OutOfSection);
}

TEST_CASE("tessellation svg") {
    std::string s0 = tessellation_svg(0);
    CHECK(s0.rfind("<svg", 0) == 0);
    CHECK(s0.find("</svg>") != std::string::npos);
    for (int k = 0; k < 8; ++k) CHECK(s0.find(">E" + std::to_string(k) + "<") != std::string::npos);
    std::string s3 = tessellation_svg(3);
    CHECK(s3.size() > s0.size());
    CHECK_THROWS_AS(tessellation_svg(7), OutOfRange);
}
