#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "complexseg.hpp"
#include "fp.hpp"
#include "sparse.hpp"

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

TEST_CASE("prime detection") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(code_of([] { prime_field f(6); }) == errc::invalid_argument);
}

TEST_CASE("field arithmetic over several moduli") {
    for (uint32_t l : {2u, 3u, 5u, 97u}) {
        prime_field f(l);
        for (uint32_t a = 1; a < l; ++a) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.add(a, f.neg(a)) == 0);
        }
        CHECK(f.reduce(-1) == l - 1);
        CHECK(f.reduce(static_cast<int64_t>(l) * 7) == 0);
        CHECK(f.sign(0) == 1);
        CHECK(f.sign(2) == 1);
        CHECK(f.sign(-3) == f.neg(1));
    }
}

TEST_CASE("sparse entry bookkeeping keeps only nonzeros") {
    sparse_matrix m(3, 3, 5);
    m.set(0, 0, 7); // 2 mod 5
    CHECK(m.get(0, 0) == 2);
    m.add_at(0, 0, 3);
    CHECK(m.get(0, 0) == 0);
    CHECK(m.nnz() == 0);
    m.set(1, 2, -1);
    CHECK(m.get(1, 2) == 4);
    m.set(1, 2, 0);
    CHECK(m.is_zero());
}

TEST_CASE("matmul, transpose, hcat against hand values") {
    sparse_matrix a(2, 3, 7);
    // [1 2 0; 0 3 4]
    a.set(0, 0, 1);
    a.set(0, 1, 2);
    a.set(1, 1, 3);
    a.set(1, 2, 4);
    sparse_matrix b(3, 2, 7);
    // [1 1; 2 0; 0 5]
    b.set(0, 0, 1);
    b.set(0, 1, 1);
    b.set(1, 0, 2);
    b.set(2, 1, 5);
    sparse_matrix c = matmul(a, b);
    CHECK(c.get(0, 0) == 5);
    CHECK(c.get(0, 1) == 1);
    CHECK(c.get(1, 0) == 6);
    CHECK(c.get(1, 1) == 6); // 20 mod 7
    CHECK(equal(matmul(a, identity_matrix(3, 7)), a));
    CHECK(equal(transpose(transpose(a)), a));
    sparse_matrix h = hcat(a, a);
    CHECK(h.cols == 6);
    CHECK(h.get(1, 4) == 3);
}

TEST_CASE("rank and kernel on fixed examples") {
    // Rank-2 3x3 over F_5: third row = row0 + row1.
    sparse_matrix m(3, 3, 5);
    int vals[3][3] = {{1, 2, 3}, {0, 1, 4}, {1, 3, 2}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.set(r, c, vals[r][c]);
    CHECK(rank(m) == 2);
    CHECK(kernel_dim(m) == 1);
    auto kb = kernel_basis(m);
    REQUIRE(kb.size() == 1);
    auto img = matvec(m, kb[0]);
    for (uint32_t v : img) CHECK(v == 0);

    CHECK(rank(identity_matrix(6, 3)) == 6);
    CHECK(rank(sparse_matrix(4, 5, 2)) == 0);
}

TEST_CASE("rank properties on seeded random matrices") {
    std::mt19937 rng(12345);
    for (uint32_t l : {2u, 3u, 5u}) {
        prime_field f(l);
        for (int trial = 0; trial < 8; ++trial) {
            size_t r = 1 + rng() % 10, c = 1 + rng() % 10;
            sparse_matrix m(r, c, l);
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < c; ++j)
                    if (rng() % 3 == 0) m.set(i, j, rng() % l);
            size_t rk = rank(m);
            CHECK(rk == rank(transpose(m)));
            CHECK(rk <= std::min(r, c));
            auto kb = kernel_basis(m);
            CHECK(kb.size() == c - rk);
            for (const auto &v : kb) {
                auto img = matvec(m, v);
                for (uint32_t x : img) CHECK(x == 0);
            }
            // Kernel vectors are independent.
            sparse_matrix kmat(c, kb.size(), l);
            for (size_t j = 0; j < kb.size(); ++j)
                for (size_t i = 0; i < c; ++i)
                    if (kb[j][i]) kmat.set(i, j, kb[j][i]);
            CHECK(rank(kmat) == kb.size());
        }
    }
}

TEST_CASE("streaming F2 ranker matches dense elimination") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 6; ++trial) {
        size_t r = 20 + rng() % 100, c = 20 + rng() % 100;
        sparse_matrix m(r, c, 2);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j)
                if (rng() % 4 == 0) m.set(i, j, 1);
        f2_ranker rk(r);
        for (size_t j = 0; j < c; ++j) {
            std::vector<size_t> sup;
            for (size_t i = 0; i < r; ++i)
                if (m.get(i, j)) sup.push_back(i);
            rk.add_column(sup);
        }
        dense_matrix d = to_dense(m);
        // Dense path goes through rank() with small dims.
        CHECK(rk.rank() == rank(m));
    }
    // Tall matrix exercises the streaming branch inside rank() itself.
    sparse_matrix tall(5000, 40, 2);
    std::mt19937 rng2(99);
    for (size_t j = 0; j < 40; ++j)
        for (int k = 0; k < 30; ++k) tall.set(rng2() % 5000, j, 1);
    sparse_matrix twin = tall;
    twin.rows = 4000; // stays on the dense path
    sparse_matrix small(4000, 40, 2);
    for (const auto &[pos, v] : tall.entries)
        if (pos.first < 4000) small.entries[pos] = v;
    size_t dense_rk = rank(small);
    f2_ranker stream(4000);
    for (size_t j = 0; j < 40; ++j) {
        std::vector<size_t> sup;
        for (const auto &[pos, v] : small.entries)
            if (pos.second == j) sup.push_back(pos.first);
        stream.add_column(sup);
    }
    CHECK(stream.rank() == dense_rk);
    CHECK(rank(tall) <= 40);
}

TEST_CASE("triplet text round trip and parse errors") {
    sparse_matrix m(3, 4, 3);
    m.set(0, 1, 2);
    m.set(2, 3, 1);
    sparse_matrix back = sparse_matrix::from_triplet_text(m.to_triplet_text());
    CHECK(equal(m, back));
    CHECK(code_of([] { sparse_matrix::from_triplet_text("nope"); }) == errc::parse_error);
    CHECK(code_of([] {
              sparse_matrix::from_triplet_text("msh-matrix 1\nshape 2 2 mod 4\n");
          }) == errc::parse_error);
    CHECK(code_of([] {
              sparse_matrix::from_triplet_text("msh-matrix 1\nshape 2 2 mod 3\n5 0 1\n");
          }) == errc::parse_error);
}

static complex_segment tiny_segment(uint32_t mod) {
    // dims 2,2,1 with d1 = [-1 -1; 1 1], d2 = (1, -1)^T.
    complex_segment s;
    s.lo = 0;
    s.hi = 2;
    s.mod = mod;
    s.dim = {{0, 2}, {1, 2}, {2, 1}};
    sparse_matrix d1(2, 2, mod), d2(2, 1, mod);
    d1.set(0, 0, -1);
    d1.set(0, 1, -1);
    d1.set(1, 0, 1);
    d1.set(1, 1, 1);
    d2.set(0, 0, 1);
    d2.set(1, 0, -1);
    s.d[1] = d1;
    s.d[2] = d2;
    return s;
}

TEST_CASE("complex segment validation and homology") {
    complex_segment s = tiny_segment(5);
    s.validate();
    CHECK(s.homology_rank(1) == 0);
    CHECK(code_of([&] { s.homology_rank(0); }) == errc::window_violation);
    CHECK(s.computable_degrees() == std::vector<int>{1});

    complex_segment bad = s;
    bad.d[2].set(1, 0, 1); // breaks d·d = 0
    CHECK(code_of([&] { bad.validate(); }) == errc::check_failed);
}

TEST_CASE("quasi-isomorphism check") {
    // A: single F in degree 1.  B: A plus an acyclic cone in degrees 1,2.
    complex_segment a;
    a.lo = 0;
    a.hi = 2;
    a.mod = 3;
    a.dim = {{0, 0}, {1, 1}, {2, 0}};
    a.d[1] = sparse_matrix(0, 1, 3);
    a.d[2] = sparse_matrix(1, 0, 3);

    complex_segment b;
    b.lo = 0;
    b.hi = 2;
    b.mod = 3;
    b.dim = {{0, 0}, {1, 2}, {2, 1}};
    b.d[1] = sparse_matrix(0, 2, 3);
    sparse_matrix d2(2, 1, 3);
    d2.set(1, 0, 1);
    b.d[2] = d2;

    CHECK(a.homology_rank(1) == 1);
    CHECK(b.homology_rank(1) == 1);

    segment_map inc;
    inc.f[0] = sparse_matrix(0, 0, 3);
    sparse_matrix f1(2, 1, 3);
    f1.set(0, 0, 1);
    inc.f[1] = f1;
    inc.f[2] = sparse_matrix(1, 0, 3);
    quasi_iso_check(inc, a, b, {1});

    segment_map zero = inc;
    zero.f[1] = sparse_matrix(2, 1, 3);
    CHECK(code_of([&] { quasi_iso_check(zero, a, b, {1}); }) == errc::check_failed);

    // Broken chain map: d2 downstairs no longer matches.
    segment_map skew;
    skew.f[1] = f1;
    sparse_matrix f2(1, 0, 3);
    skew.f[2] = f2;
    skew.f[0] = sparse_matrix(0, 0, 3);
    complex_segment b2 = b;
    b2.d[2].set(0, 0, 1); // now d2 = (1,1)^T, still d·d = 0 but f is no chain map
    b2.validate();
    // f[1]∘d2^a (=0 map from 0-dim) vs d2^b2∘f[2] (also 0-dim source): trivially fine,
    // so instead perturb f itself on a complex with a real boundary.
    complex_segment c1 = tiny_segment(3);
    segment_map idm;
    idm.f[0] = identity_matrix(2, 3);
    idm.f[1] = identity_matrix(2, 3);
    idm.f[2] = identity_matrix(1, 3);
    quasi_iso_check(idm, c1, c1, {1});
    segment_map notchain = idm;
    notchain.f[0] = matscale(identity_matrix(2, 3), 2);
    CHECK(code_of([&] { quasi_iso_check(notchain, c1, c1, {1}); }) == errc::check_failed);
}
