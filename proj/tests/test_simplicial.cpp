#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "space.hpp"

#include <random>

using namespace msh;

template <typename F> static errc code_of(F fn) {
    try {
        fn();
    } catch (const error &e) {
        return e.code;
    }
    return errc::ok;
}

TEST_CASE("minimal circle faces") {
    space s1 = sphere_min(1);
    simplex sigma{1, 0};
    CHECK(s1.degree_of(sigma) == 1);
    CHECK(s1.face(sigma, 0) == s1.bp_simplex(0));
    CHECK(s1.face(sigma, 1) == s1.bp_simplex(0));
    // d_2(s_0 sigma) = s_0(d_1 sigma) = degenerate basepoint
    simplex s0sigma = s1.degenerate(sigma, 0);
    CHECK(s1.face(s0sigma, 2) == s1.bp_simplex(1));
    // d_i s_i = id
    for (int i = 0; i <= 1; ++i) CHECK(s1.face(s1.degenerate(sigma, i), i) == sigma);
}

TEST_CASE("level census") {
    CHECK(delta_plus(0).simplices(0).size() == 2);
    space s1 = sphere_min(1);
    CHECK(s1.simplices(1).size() == 2);
    auto lvl2 = s1.simplices(2);
    REQUIRE(lvl2.size() == 3);
    // canonical order: basepoint generator first, then words lex
    CHECK(lvl2[0] == simplex{0, 3});        // s_1 s_0 *
    CHECK(lvl2[1] == simplex{1, 1});        // s_0 c
    CHECK(lvl2[2] == simplex{1, 2});        // s_1 c
    CHECK(s1.nonbp_simplices(2).size() == 2);

    space bz2 = nerve_space(cyclic_table(2), 5);
    for (int n = 0; n <= 4; ++n)
        CHECK(bz2.simplices(n).size() == (1u << n));

    space c3 = cycle_space(3);
    CHECK(c3.simplices(0).size() == 3);
    CHECK(c3.simplices(1).size() == 6);
    CHECK(c3.nonbp_simplices(3).size() == 11);
}

static void check_identities(const space &sp, int nmax) {
    for (int n = 0; n <= nmax; ++n) {
        for (const simplex &x : sp.simplices(n)) {
            // d_i d_j = d_{j-1} d_i, i < j
            if (n >= 2)
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        CHECK(sp.face(sp.face(x, j), i) == sp.face(sp.face(x, i), j - 1));
            // s_i s_j = s_{j+1} s_i, i <= j
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= j; ++i)
                    CHECK(sp.degenerate(sp.degenerate(x, j), i) ==
                          sp.degenerate(sp.degenerate(x, i), j + 1));
            // d_i s_j relations
            for (int j = 0; j <= n; ++j) {
                simplex sx = sp.degenerate(x, j);
                for (int i = 0; i <= n + 1; ++i) {
                    simplex lhs = sp.face(sx, i);
                    if (i < j)
                        CHECK(lhs == sp.degenerate(sp.face(x, i), j - 1));
                    else if (i == j || i == j + 1)
                        CHECK(lhs == x);
                    else if (n >= 1)
                        CHECK(lhs == sp.degenerate(sp.face(x, i - 1), j));
                }
            }
        }
    }
}

TEST_CASE("simplicial identities on all builders") {
    check_identities(delta_plus(2), 4);
    check_identities(sphere_min(1), 4);
    check_identities(sphere_min(2), 4);
    check_identities(cycle_space(3), 4);
    check_identities(nerve_space(cyclic_table(2), 5), 4);
    check_identities(nerve_space(cyclic_table(3), 4), 4);
}

TEST_CASE("monotone action") {
    space s1 = sphere_min(1);
    simplex sigma{1, 0};
    CHECK(apply_monotone(s1, sigma, {0, 1}) == sigma);
    // collapse to a vertex
    CHECK(apply_monotone(s1, sigma, {0, 0}) == s1.degenerate(s1.face(sigma, 1), 0));
    // u = (0,0,1,1): s_2 s_0 sigma
    simplex got = apply_monotone(s1, sigma, {0, 0, 1, 1});
    CHECK(got == simplex{1, 0b101});

    // functoriality x·(u∘v) = (x·u)·v on a nerve simplex
    space bz2 = nerve_space(cyclic_table(2), 5);
    std::mt19937 rng(42);
    simplex x{0, 0};
    for (const simplex &c : bz2.simplices(3))
        if (!bz2.is_bp(c)) x = c;
    for (int trial = 0; trial < 40; ++trial) {
        auto us = monotone_maps(2, 3);
        auto vs = monotone_maps(3, 2);
        const auto &u = us[rng() % us.size()];
        const auto &v = vs[rng() % vs.size()];
        std::vector<int> uv;
        for (int t : v) uv.push_back(u[static_cast<size_t>(t)]);
        CHECK(apply_monotone(bz2, x, uv) ==
              apply_monotone(bz2, apply_monotone(bz2, x, u), v));
    }
}

TEST_CASE("delta builder structure") {
    space d2 = delta_plus(2);
    CHECK(d2.gens.size() == 8); // basepoint + 7 nonempty subsets
    simplex iota = fundamental_simplex(d2, 2);
    CHECK(d2.degree_of(iota) == 2);
    // faces of the fundamental simplex are the three edges
    for (int i = 0; i <= 2; ++i) {
        simplex f = d2.face(iota, i);
        CHECK(d2.gens[f.gen].dim == 1);
        CHECK(f.word == 0);
    }
    CHECK(d2.face(d2.face(iota, 0), 0) == d2.face(d2.face(iota, 1), 0));
}

TEST_CASE("group table validation") {
    CHECK(code_of([] { nerve_space({{0, 1}, {1, 1}}, 2); }) == errc::invalid_argument);
    std::vector<std::vector<int>> nonassoc = {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
    CHECK(code_of([&] { nerve_space(nonassoc, 2); }) == errc::invalid_argument);
    CHECK(code_of([] { nerve_space({{0, 0}, {0, 0}}, 2); }) == errc::invalid_argument);
}

TEST_CASE("interchange format round trip") {
    for (const space &sp : {sphere_min(1), cycle_space(3), delta_plus(2),
                            nerve_space(cyclic_table(2), 4)}) {
        std::string text = sp.to_file_text();
        space back = space::from_file_text(text);
        CHECK(back.to_file_text() == text);
        CHECK(back.name == sp.name);
        CHECK(back.basepoint == sp.basepoint);
        REQUIRE(back.gens.size() == sp.gens.size());
        for (size_t i = 0; i < sp.gens.size(); ++i) {
            CHECK(back.gens[i].id == sp.gens[i].id);
            CHECK(back.gens[i].dim == sp.gens[i].dim);
            CHECK(back.gens[i].faces == sp.gens[i].faces);
        }
    }
}

TEST_CASE("interchange format rejects malformed input") {
    CHECK(code_of([] { space::from_file_text("bogus"); }) == errc::parse_error);
    CHECK(code_of([] {
              space::from_file_text("msh-space 1\nname x\nbasepoint *\ngen * 0\ngen c 1\n"
                                    "face c 0 * -\n");
          }) == errc::parse_error); // missing face 1
    CHECK(code_of([] {
              space::from_file_text("msh-space 1\nname x\nbasepoint *\ngen * 0\ngen c 1\n"
                                    "face c 0 * -\nface c 1 q -\n");
          }) == errc::parse_error); // dangling target
    CHECK(code_of([] {
              space::from_file_text("msh-space 1\nname x\nbasepoint *\ngen * 0\ngen c 2\n"
                                    "face c 0 * 1,5\nface c 1 * 0\nface c 2 * 0\n");
          }) == errc::parse_error); // face degree mismatch
}

TEST_CASE("degree cap enforced") {
    space s1 = sphere_min(1);
    simplex x{1, 0};
    for (int j = 0; j < max_degree - 1; ++j) x = s1.degenerate(x, 0);
    CHECK(s1.degree_of(x) == max_degree);
    CHECK(code_of([&] { s1.degenerate(x, 0); }) == errc::budget_exceeded);
}

TEST_CASE("apply_word rebuilds normal forms") {
    space bz2 = nerve_space(cyclic_table(2), 4);
    for (int n = 0; n <= 4; ++n)
        for (const simplex &x : bz2.simplices(n))
            CHECK(bz2.apply_word({x.gen, 0}, x.word) == x);
}

#include "pmap.hpp"

TEST_CASE("pointed maps compose and validate") {
    space s1 = sphere_min(1);
    pointed_map id = identity_map(s1);
    id.validate();
    for (int n = 0; n <= 3; ++n)
        for (const simplex &x : s1.simplices(n)) CHECK(id.apply(x) == x);

    // collapse circle onto the basepoint
    pointed_map collapse =
        map_from_assignment(s1, s1, {s1.bp_simplex(0), s1.bp_simplex(1)});
    CHECK(collapse.apply(simplex{1, 1}) == s1.bp_simplex(2));
    CHECK(compose_maps(collapse, id).assign == collapse.assign);

    // degree mismatch and broken faces are rejected
    CHECK(code_of([&] { map_from_assignment(s1, s1, {s1.bp_simplex(0), {1, 1}}); }) ==
          errc::invalid_argument);
}

TEST_CASE("characteristic map of the fundamental simplex") {
    space d2 = delta_plus(2);
    simplex iota = fundamental_simplex(d2, 2);
    pointed_map kappa = characteristic_map(d2, iota, 2);
    for (size_t g = 0; g < d2.gens.size(); ++g)
        CHECK(kappa.assign[g] == simplex{static_cast<uint32_t>(g), 0});

    space s1 = sphere_min(1);
    pointed_map ks = characteristic_map(s1, simplex{1, 0}, 1);
    CHECK(ks.assign[1] == s1.bp_simplex(0)); // vertex 0
    CHECK(ks.assign[2] == s1.bp_simplex(0)); // vertex 1
    CHECK(ks.assign[3] == simplex{1, 0});    // edge
}

TEST_CASE("characteristic maps are natural in the simplex") {
    space bz3 = nerve_space(cyclic_table(3), 5);
    simplex x{0, 0};
    for (const simplex &c : bz3.simplices(3))
        if (!bz3.is_bp(c) && c.word == 0) x = c;
    REQUIRE(x.gen != 0);
    for (int n = 1; n <= 2; ++n) {
        pointed_map kx = characteristic_map(bz3, x, 3);
        for (const auto &u : monotone_maps(n, 3)) {
            pointed_map lhs = characteristic_map(bz3, apply_monotone(bz3, x, u), n);
            pointed_map rhs = compose_maps(kx, delta_map(u, n, 3));
            CHECK(lhs.assign == rhs.assign);
        }
    }
}

TEST_CASE("monotone classification of delta simplices") {
    int p = 2;
    space dp = delta_plus(p);
    auto subsets = delta_subsets(p);
    for (int n = 0; n <= 4; ++n) {
        simplex iota = fundamental_simplex(dp, p);
        for (const auto &u : monotone_maps(n, p)) {
            simplex x = apply_monotone(dp, iota, u);
            CHECK(monotone_of_simplex(dp, subsets, x, n) == u);
        }
        // distinct monotone maps give distinct simplices and cover everything
        CHECK(monotone_maps(n, p).size() == dp.nonbp_simplices(n).size());
    }
}
