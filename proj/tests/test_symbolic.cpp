#include "doctest.h"

#include "octa/cfmaps.hpp"
#include "octa/errors.hpp"
#include "octa/surface.hpp"
#include "octa/symbolic.hpp"
#include "testutil.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace octa;

TEST_CASE("letter permutations") {
    CHECK(permute("ABCD", 2) == "BCDA");
    CHECK(permute("ABCD", 0) == "ABCD");
    for (int k = 0; k < 8; ++k) {
        // a bijection of the letters
        std::string img = permute("ABCD", k);
        std::string sorted = img;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == "ABCD");
    }
    CHECK_THROWS_AS(permute_letter(8, 'A'), OutOfRange);
    CHECK_THROWS_AS(letter_index('E'), ParseError);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        std::string w;
        for (int j = 0; j < 30; ++j) w.push_back("ABCD"[rng() % 4]);
        const int k = static_cast<int>(rng() % 8);
        CHECK(derive(permute(w, k)) == permute(derive(w), k));
    }
}

TEST_CASE("derivation") {
    CHECK(derive("CACCCDBDCDC") == "ACBCD");
    CHECK(derive("AAAA") == "AA");
    CHECK(derive("ABAB") == "BA");
    CHECK(derive("ABCD") == "");
    CHECK(derive("") == "");
    CHECK(derive("A") == "");
    Word w = derive(Word{"CACCCDBDCDC"});
    CHECK(w.cut_front == 1);
    CHECK(w.cut_back == 1);
    Word w2 = derive(w);
    CHECK(w2.cut_front == 2);
    CHECK(w2.cut_back == 2);
    CHECK(derive(Word{"A"}).cut_back == 0);
}

TEST_CASE("transition diagrams") {
    const auto& ds = diagrams();
    auto fresh = infer_diagrams();
    for (int i = 0; i < 8; ++i) {
        CHECK(ds[i].index == i);
        CHECK(ds[i].edge == fresh[i].edge);
        CHECK(ds[i].edge_count() == 7);
    }
    CHECK(ds[0].has('C', 'C'));
    CHECK(!ds[0].has('A', 'A'));
    // transport identity
    for (int k = 0; k < 8; ++k)
        for (char x : std::string("ABCD"))
            for (char y : std::string("ABCD"))
                CHECK(ds[k].has(x, y) == ds[0].has(permute_letter(k, x), permute_letter(k, y)));
    CHECK(diagrams_to_json(diagrams_from_json(diagrams_to_json(ds))) == diagrams_to_json(ds));
    std::ifstream in(golden_diagrams_path());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == diagrams_to_json(ds));
    CHECK_THROWS_AS(diagrams_from_json("{\"diagrams\": []}"), ParseError);
    CHECK_THROWS_AS(diagrams_from_json("not json"), ParseError);
}

TEST_CASE("admissibility") {
    for (int i = 0; i < 8; ++i) {
        CHECK(is_admissible("", i));
        CHECK(is_admissible("B", i));
    }
    // C would need three distinct neighbours
    CHECK(admissible_diagrams("ACBCD").empty());
    CHECK(admissible_diagrams("CACCCDBDCDC").empty());
    CHECK_THROWS_AS(normal_form("ACBCD"), NotAdmissible);
    CHECK(!is_admissible("AA", 0));
    CHECK_THROWS_AS(is_admissible("AB", 9), OutOfRange);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 8; ++k) {
        for (int i = 0; i < 10; ++i) {
            Trajectory tau = make_trajectory(testutil::rand_point(rng), forward_vector(testutil::rand_direction(rng, k)));
            std::string w = trace(tau, 300).letters;
            CHECK(is_admissible(w, k));
            // near a sector boundary a finite word can fit two diagrams
            if (admissible_diagrams(w).size() > 1) continue;
            auto [nf, j] = normal_form(w);
            CHECK(j == k);
            CHECK(nf == permute(w, k));
            CHECK(is_admissible(nf, 0));
        }
    }
    auto amb = admissible_diagrams("CC");
    CHECK(amb.size() >= 2);
    CHECK_THROWS_AS(normal_form("CC"), AmbiguousDiagram);
}

TEST_CASE("renormalization follows the Farey itinerary") {
    std::mt19937_64 rng(3);
    std::size_t steps = 0;
    for (int i = 0; i < 30; ++i) {
        ProjPoint u = testutil::rand_direction(rng);
        Trajectory tau = make_trajectory(testutil::rand_point(rng), forward_vector(u));
        RenormTrace tr = renormalize(Word{trace(tau, 2000).letters}, 40);
        steps += tr.d.size();
        auto cf = cf_expand(u, tr.d.size()).entries;
        CHECK(tr.d == cf);
        CHECK(tr.stop != RenormStop::NotAdmissible);
        for (std::size_t k = 0; k < tr.words.size(); ++k) CHECK(is_admissible(tr.words[k].s, tr.d[k]));
    }
    CHECK(steps > 90);
    CHECK(renormalize(Word{"A"}, 5).stop == RenormStop::Exhausted);
    CHECK(renormalize(Word{"ACBCD"}, 5).stop == RenormStop::NotAdmissible);
    CHECK(renormalize(Word{"CC"}, 5).stop == RenormStop::Ambiguous);
}

TEST_CASE("staged renormalization") {
    std::mt19937_64 rng(4);
    std::size_t stages = 0;
    for (int i = 0; i < 15; ++i) {
        ProjPoint u = testutil::rand_direction(rng);
        Trajectory tau = make_trajectory(testutil::rand_point(rng), forward_vector(u));
        StagedRenorm r = renormalize_staged(tau, 30);
        CHECK(r.reseed_ok);
        CHECK(r.d == cf_expand(u, 30).entries);
        stages += r.stages;
    }
    CHECK(stages > 15);
}

TEST_CASE("direction recognition") {
    const QSqrt2 s2(0, 1);
    DirectionInterval I = nested_interval({4}, 0);
    CHECK(I.lo == XReal{0, QSqrt2(1) - s2});
    CHECK(I.hi == XReal{0, QSqrt2(0)});
    CHECK(I.width == doctest::Approx(3.14159265358979 / 8));
    CHECK_THROWS_AS(nested_interval({4}, 1), OutOfRange);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        ProjPoint u = testutil::rand_direction(rng);
        Trajectory tau = make_trajectory(testutil::rand_point(rng), forward_vector(u));
        StagedRenorm st = renormalize_staged(tau, 25);
        Recognition r = recognize_direction(st.d, st.stop);
        REQUIRE(r.nested.size() == 25);
        CHECK(!r.terminating);
        for (std::size_t m = 0; m < r.nested.size(); ++m) {
            CHECK(r.nested[m].contains(u));
            if (m > 0) {
                CHECK(r.nested[m - 1].lo <= r.nested[m].lo);
                CHECK(r.nested[m].hi <= r.nested[m - 1].hi);
                CHECK(r.nested[m].width <= r.nested[m - 1].width);
            }
        }
        CHECK(r.nested.back().width < 1e-5);
    }
    // a long run of 1s is flagged as terminating
    std::vector<int> d(25, 1);
    d[0] = 3;
    CHECK(recognize_direction(d, RenormStop::MaxSteps).terminating);
}
