#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "models.hpp"

#include <random>

using namespace msh;

static space bz2(int cap) { return nerve_space(cyclic_table(2), cap); }

TEST_CASE("function-space levels and cosimplicial identities") {
    // census: |Y_q|^arity functions at every level
    cosimplicial_hom vhb = make_cosimplicial_hom(sphere_min(1), bz2(4), 3, 3);
    for (int p = 0; p <= 3; ++p) {
        CHECK(vhb.level[p].arity == static_cast<size_t>(p));
        for (int q = 0; q <= 3; ++q) {
            size_t yq = vhb.y.simplices(q).size();
            size_t want = 1;
            for (int i = 0; i < p; ++i) want *= yq;
            CHECK(vhb.level[p].total.simplices(q).size() == want);
        }
    }

    // classify and values_of are mutually inverse on full enumerations
    const function_space &v2 = vhb.level[2];
    for (int q = 0; q <= 3; ++q)
        for (const simplex &v : v2.total.simplices(q))
            CHECK(v2.classify(v2.values_of(v, q), q) == v);

    auto check_identities = [](const cosimplicial_hom &vh) {
        for (int q = 0; q <= vh.qmax; ++q) {
            // delta^j delta^i = delta^i delta^{j-1} for i < j
            for (int p = 2; p <= vh.pmax; ++p)
                for (int j = 1; j <= p; ++j)
                    for (int i = 0; i < j; ++i)
                        for (const simplex &v : vh.level[p - 2].total.simplices(q))
                            CHECK(coface_apply(vh, p, j,
                                               coface_apply(vh, p - 1, i, v, q), q) ==
                                  coface_apply(vh, p, i,
                                               coface_apply(vh, p - 1, j - 1, v, q),
                                               q));
            // sigma^j sigma^i = sigma^i sigma^{j+1} for i <= j
            for (int p = 0; p + 2 <= vh.pmax; ++p)
                for (int j = 0; j <= p; ++j)
                    for (int i = 0; i <= j; ++i)
                        for (const simplex &v : vh.level[p + 2].total.simplices(q))
                            CHECK(codegeneracy_apply(
                                      vh, p, j, codegeneracy_apply(vh, p + 1, i, v, q),
                                      q) ==
                                  codegeneracy_apply(
                                      vh, p, i,
                                      codegeneracy_apply(vh, p + 1, j + 1, v, q), q));
            // sigma^j delta^i relations
            for (int p = 0; p < vh.pmax; ++p)
                for (int j = 0; j <= p; ++j)
                    for (int i = 0; i <= p + 1; ++i)
                        for (const simplex &v : vh.level[p].total.simplices(q)) {
                            simplex w = codegeneracy_apply(
                                vh, p, j, coface_apply(vh, p + 1, i, v, q), q);
                            if (i == j || i == j + 1) {
                                CHECK(w == v);
                            } else if (i < j) {
                                CHECK(w == coface_apply(
                                          vh, p, i,
                                          codegeneracy_apply(vh, p - 1, j - 1, v, q),
                                          q));
                            } else {
                                CHECK(w == coface_apply(
                                          vh, p, i - 1,
                                          codegeneracy_apply(vh, p - 1, j, v, q), q));
                            }
                        }
        }
    };
    check_identities(make_cosimplicial_hom(cycle_space(3), sphere_min(1), 2, 2));
    check_identities(vhb);
}

TEST_CASE("bicomplex windows validate") {
    prime_field f2(2);
    space s1 = sphere_min(1);
    space y = bz2(4);

    d_model d = build_d_model(s1, y, 3, 3, f2);
    d.win.validate();
    diag_of(d.win, 0, 3).seg.validate();

    g_model g = build_g_model(s1, y, 3, 3, f2);
    g.win.validate();
    diag_of(g.win, 0, 3).seg.validate();

    // odd characteristic exercises the actual signs
    prime_field f3(3);
    space c3 = cycle_space(3);
    d_model d3 = build_d_model(c3, s1, 2, 2, f3);
    d3.win.validate();
    diag_of(d3.win, 0, 2).seg.validate();
    g_model g3 = build_g_model(c3, s1, 2, 2, f3);
    g3.win.validate();
    diag_of(g3.win, 0, 2).seg.validate();

    // corrupting one entry of d' must break the window
    auto pos = d3.win.dprime[1][1].entries.begin()->first;
    d3.win.dprime[1][1].set(pos.first, pos.second,
                            d3.win.dprime[1][1].get(pos.first, pos.second) + 1);
    CHECK_THROWS_AS(d3.win.validate(), error);
}

TEST_CASE("the two models are exactly inverse") {
    prime_field f(2);
    space xs[] = {sphere_min(1), sphere_min(1), sphere_min(0)};
    space ys[] = {sphere_min(1), bz2(4), bz2(4)};
    for (int c = 0; c < 3; ++c) {
        d_model d = build_d_model(xs[c], ys[c], 3, 3, f);
        g_model g = build_g_model(xs[c], ys[c], 3, 3, f);
        for (int p = 0; p <= 3; ++p) {
            size_t m = xs[c].nonbp_simplices(p).size();
            for (int q = 0; q <= 3; ++q) {
                size_t want = 1;
                for (size_t i = 0; i < m; ++i) want *= ys[c].simplices(q).size();
                --want;
                CHECK(d.win.dim[p][q] == want);
                CHECK(g.win.dim[p][q] == want);
                sparse_matrix eps = epsilon_matrix(g, d, p, q, f);
                sparse_matrix xi = xi_matrix(g, d, p, q, f);
                CHECK(equal(matmul(eps, xi), identity_matrix(g.win.dim[p][q], 2)));
                CHECK(equal(matmul(xi, eps), identity_matrix(d.win.dim[p][q], 2)));
            }
        }
    }
    // spot values of the census
    g_model gb = build_g_model(sphere_min(1), bz2(4), 3, 3, f);
    CHECK(gb.win.dim[3][3] == 511);
    CHECK(gb.win.dim[2][3] == 63);
    g_model gs = build_g_model(sphere_min(1), sphere_min(1), 3, 3, f);
    CHECK(gs.win.dim[3][3] == 63);
}

TEST_CASE("epsilon is a map of bicomplexes") {
    auto run = [](const space &x, const space &y, int P, int Q, uint32_t mod) {
        prime_field f(mod);
        d_model d = build_d_model(x, y, P, Q, f);
        g_model g = build_g_model(x, y, P, Q, f);
        std::vector<std::vector<sparse_matrix>> eps(
            static_cast<size_t>(P) + 1,
            std::vector<sparse_matrix>(static_cast<size_t>(Q) + 1));
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q) eps[p][q] = epsilon_matrix(g, d, p, q, f);
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q) {
                if (p >= 1)
                    CHECK(equal(matmul(eps[p][q], d.win.dprime[p][q]),
                                matmul(g.win.dprime[p][q], eps[p - 1][q])));
                if (q >= 1)
                    CHECK(equal(matmul(eps[p][q - 1], d.win.dsecond[p][q]),
                                matmul(g.win.dsecond[p][q], eps[p][q])));
            }
    };
    run(sphere_min(1), bz2(4), 3, 3, 2);
    run(cycle_space(3), sphere_min(1), 2, 2, 3);
}

TEST_CASE("evaluation maps against the enumerated map space") {
    prime_field f(2);
    space x = sphere_min(1);
    space y = bz2(4);
    map_space ms = make_map_space(x, y, 1, 20'000'000);
    // degree-n diagonal blocks reach q = n + p, so checking maps up to n = 1
    // with p <= 3 needs the q-window to extend one row past the p-window
    d_model d = build_d_model(x, y, 3, 4, f);
    g_model g = build_g_model(x, y, 3, 4, f);

    // epsilon o mu = lambda on every simplex at levels 0 and 1
    check_triangle(ms, g, d, 1, f);

    // mu and lambda commute with the diagonal boundaries
    diag_segment dgd = diag_of(d.win, 0, 3);
    diag_segment dgg = diag_of(g.win, 0, 3);
    check_comparison_chain_maps(ms, g, d, dgg, dgd, 1, f);
}

TEST_CASE("inverse does not depend on the point order") {
    prime_field f(2);
    space x = sphere_min(1);
    space y = bz2(4);
    d_model d = build_d_model(x, y, 3, 3, f);
    g_model g = build_g_model(x, y, 3, 3, f);
    g_model gr = build_g_model(x, y, 3, 3, f, true);
    for (auto [p, q] : {std::pair<int, int>{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
        const omega_basis &bc = g.tuples[p];
        const omega_basis &br = gr.tuples[p];
        CHECK(bc.points.size() == br.points.size());
        sparse_matrix xic = xi_matrix(g, d, p, q, f);
        sparse_matrix xir = xi_matrix(gr, d, p, q, f);
        // relabeling of indicator morphisms into the reversed basis
        sparse_matrix r(gr.win.dim[p][q], g.win.dim[p][q], 2);
        for (size_t c = 0; c < g.basis[p][q].elems.size(); ++c) {
            functor_morphism t;
            t.p = p;
            t.q = q;
            t.values.assign(bc.tuples.size(), chain{});
            t.values[g.basis[p][q].elems[c].first][g.basis[p][q].elems[c].second] = 1;
            functor_morphism tr;
            tr.p = p;
            tr.q = q;
            for (const auto &tup : br.tuples) {
                std::vector<simplex> pts;
                for (size_t i : tup) pts.push_back(br.points[i]);
                tr.values.push_back(evaluate_morphism_on(t, bc, x, g.ypow, pts, f));
            }
            std::vector<uint32_t> col = morphism_coords(gr, p, q, tr);
            for (size_t i = 0; i < col.size(); ++i)
                if (col[i]) r.add_at(i, c, col[i]);
        }
        CHECK(equal(matmul(xir, r), xic));
    }
}

TEST_CASE("degree-zero composition") {
    prime_field f(2);
    space s0 = sphere_min(0);
    check_degree_zero_composition(s0, s0, s0, 2, f, 10'000'000);
    space s1 = sphere_min(1);
    check_degree_zero_composition(s1, bz2(4), bz2(4), 2, f, 10'000'000);
    check_degree_zero_composition(cycle_space(3), s1, s1, 2, f, 10'000'000);
}

TEST_CASE("vertex round trip") {
    space x = cycle_space(3);
    space y = sphere_min(1);
    map_space ms = make_map_space(x, y, 1, 10'000'000);
    for (const simplex &f0 : ms.total.simplices(0)) {
        pointed_map pm = vertex_to_map(ms, f0);
        pm.validate();
        CHECK(map_to_vertex(ms, pm) == f0);
    }
}

TEST_CASE("induced map of a weak equivalence") {
    prime_field f(2);
    space c3 = cycle_space(3);
    space s1 = sphere_min(1);
    space s0 = sphere_min(0);

    // collapse two edges of the triangle onto the one-cell circle
    std::vector<simplex> ea(c3.gens.size());
    ea[0] = {0, 0};
    ea[1] = {0, 0};
    ea[2] = {0, 0};
    ea[3] = {1, 0};
    ea[4] = s1.bp_simplex(1);
    ea[5] = s1.bp_simplex(1);
    pointed_map e = map_from_assignment(c3, s1, ea);

    // q runs one row past p: cycles at the top row are killed by the boundary
    // from row q+1, so homology in degrees 0..1 is free of truncation debris
    g_model gs = build_g_model(s1, s0, 3, 4, f);
    g_model gc = build_g_model(c3, s0, 3, 4, f);
    size_t total0 = 0;
    for (int p = 0; p <= 3; ++p) total0 += gc.win.dim[p][p];
    CHECK(total0 == 2336);

    auto mats = induced_g_matrices(gs, gc, e, identity_map(s0), f);
    diag_segment da = diag_of(gs.win, 0, 2);
    diag_segment db = diag_of(gc.win, 0, 2);
    segment_map sm = blockwise_segment_map(da, db, mats, 0, 2, 2);
    quasi_iso_check(sm, da.seg, db.seg, {0, 1});
}
