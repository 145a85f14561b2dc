#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "product.hpp"

using namespace msh;

TEST_CASE("shuffle terms") {
    auto t11 = shuffle_terms(1, 1);
    REQUIRE(t11.size() == 2);
    CHECK(t11[0].x_word == 1u); // s_0 on x, s_1 on y, negative
    CHECK(t11[0].y_word == 2u);
    CHECK(t11[0].sign == -1);
    CHECK(t11[1].x_word == 2u);
    CHECK(t11[1].y_word == 1u);
    CHECK(t11[1].sign == 1);
    CHECK(shuffle_terms(2, 1).size() == 3);
    CHECK(shuffle_terms(2, 2).size() == 6);
    CHECK(shuffle_terms(0, 3).size() == 1);
    CHECK(shuffle_terms(0, 0).size() == 1);
    CHECK(shuffle_terms(0, 0)[0].sign == 1);
}

TEST_CASE("single factor smash is the space itself") {
    space s1 = sphere_min(1);
    smash_product p = smash_power(s1, 1, 4);
    REQUIRE(p.total.gens.size() == 2);
    for (int n = 0; n <= 4; ++n)
        CHECK(p.total.simplices(n).size() == s1.simplices(n).size());
    for (int n = 0; n <= 4; ++n)
        for (const simplex &x : p.total.simplices(n))
            CHECK(p.classify(p.coords_of(x, n), n) == x);
}

TEST_CASE("circle smash circle") {
    space s1 = sphere_min(1);
    smash_product p = smash_pair(s1, s1, 4);
    // generators: basepoint, one 1-cell (c,c), two 2-cells
    REQUIRE(p.total.gens.size() == 4);
    CHECK(p.total.gens[1].dim == 1);
    CHECK(p.total.gens[2].dim == 2);
    CHECK(p.total.gens[3].dim == 2);
    CHECK(p.total.simplices(2).size() == 5);

    simplex c{1, 0};
    simplex cc = p.classify({c, c}, 1);
    CHECK(p.total.gens[cc.gen].dim == 1);
    CHECK(p.total.face(cc, 0) == p.total.bp_simplex(0));
    // common letters strip to a degeneracy of the class
    simplex diag = p.classify({s1.degenerate(c, 0), s1.degenerate(c, 0)}, 2);
    CHECK(diag == p.total.degenerate(cc, 0));
    // a basepoint coordinate kills the class
    CHECK(p.total.is_bp(p.classify({s1.bp_simplex(2), s1.degenerate(c, 1)}, 2)));
}

TEST_CASE("classify commutes with faces") {
    space bz2 = nerve_space(cyclic_table(2), 4);
    space s1 = sphere_min(1);
    smash_product p = smash_pair(s1, bz2, 4);
    for (int n = 1; n <= 4; ++n) {
        auto xs = s1.simplices(n);
        auto ys = bz2.simplices(n);
        for (const simplex &x : xs)
            for (const simplex &y : ys) {
                simplex cls = p.classify({x, y}, n);
                for (int i = 0; i <= n; ++i)
                    CHECK(p.total.face(cls, i) ==
                          p.classify({s1.face(x, i), bz2.face(y, i)}, n - 1));
                for (int j = 0; j <= n && n < 4; ++j)
                    CHECK(p.total.degenerate(cls, j) ==
                          p.classify({s1.degenerate(x, j), bz2.degenerate(y, j)}, n + 1));
            }
    }
}

TEST_CASE("coordinate swap acts simplicially") {
    space bz2 = nerve_space(cyclic_table(2), 4);
    smash_product p = smash_power(bz2, 2, 3);
    std::vector<int> swap{1, 0};
    for (int n = 0; n <= 3; ++n) {
        for (const simplex &x : p.total.simplices(n)) {
            simplex sx = permute_class(p, x, n, swap);
            CHECK(permute_class(p, sx, n, swap) == x);
            if (n >= 1)
                for (int i = 0; i <= n; ++i)
                    CHECK(p.total.face(sx, i) == permute_class(p, p.total.face(x, i), n - 1, swap));
        }
    }
}

TEST_CASE("round trip through coordinates") {
    space bz2 = nerve_space(cyclic_table(2), 4);
    space s0 = sphere_min(0);
    smash_product p = make_smash({&s0, &bz2, &s0}, 3);
    for (int n = 0; n <= 3; ++n)
        for (const simplex &x : p.total.simplices(n))
            CHECK(p.classify(p.coords_of(x, n), n) == x);
}

TEST_CASE("smash with a point collapses") {
    space pt = delta_plus(0); // basepoint plus one extra vertex
    space s1 = sphere_min(1);
    smash_product p = smash_pair(s1, pt, 3);
    // the extra vertex never pairs with a nondegenerate circle simplex of
    // positive degree without a common letter beyond degree 1
    CHECK(p.total.gens.size() == 2); // basepoint and (c | degenerate vertex)
    CHECK(p.total.gens[1].dim == 1);
    // both faces of that 1-class are the basepoint, so it is a circle
}
