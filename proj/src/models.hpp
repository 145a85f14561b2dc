#pragma once

#include "funcspace.hpp"
#include "mapenum.hpp"
#include "surj.hpp"

namespace msh {

// ---- cosimplicial function-space levels ------------------------------------

// Level p holds the pointed functions X_p -> Y.  Cofaces delta^i precompose
// with d_i, codegeneracies sigma^i precompose with s_i; both only reindex the
// argument list, so they are stored as integer tables over the nonbasepoint
// arguments X_p^x (canonical order).
struct cosimplicial_hom {
    space x, y;
    int pmax = 0, qmax = 0;
    std::vector<function_space> level;
    std::vector<std::vector<simplex>> args; // [p]: X_p^x in canonical order
    // arg_face[p][i][k]: index in X_{p-1}^x of d_i (point k of X_p^x), or -1
    // when that face is the basepoint; defined for 1 <= p <= pmax, 0 <= i <= p
    std::vector<std::vector<std::vector<int>>> arg_face;
    // arg_deg[p][i][k]: index in X_{p+1}^x of s_i (point k of X_p^x);
    // defined for 0 <= p < pmax, 0 <= i <= p
    std::vector<std::vector<std::vector<int>>> arg_deg;
};

cosimplicial_hom make_cosimplicial_hom(const space &x, const space &y, int pmax,
                                       int qmax);

// delta^i on a degree-q simplex of level p-1, landing in level p (0 <= i <= p).
simplex coface_apply(const cosimplicial_hom &vh, int p, int i, const simplex &v, int q);
// sigma^i on a degree-q simplex of level p+1, landing in level p (0 <= i <= p).
simplex codegeneracy_apply(const cosimplicial_hom &vh, int p, int i, const simplex &v,
                           int q);

// ---- truncated bicomplexes ---------------------------------------------------

// Window p <= P, q <= Q of a first-quadrant bicomplex with commuting
// differentials d': (p-1,q) -> (p,q) and d'': (p,q) -> (p,q-1).
struct bicomplex_window {
    int P = 0, Q = 0;
    uint32_t mod = 2;
    std::vector<std::vector<size_t>> dim;            // [p][q]
    std::vector<std::vector<sparse_matrix>> dprime;  // [p][q] for p >= 1
    std::vector<std::vector<sparse_matrix>> dsecond; // [p][q] for q >= 1
    // d'd' = 0, d''d'' = 0, d''d' = d'd'' wherever both composites exist
    void validate() const;
};

// Diagonal complex of a window: degree n collects the blocks (p, q = n + p),
// boundary (dw)^p_q = d''(w^p_{q+1}) - (-1)^n d'(w^{p-1}_q).
struct diag_segment {
    std::map<int, std::vector<std::pair<int, int>>> blocks; // per degree: (p, q)
    std::map<int, std::vector<size_t>> offsets;             // block starts
    complex_segment seg;
    size_t offset_of(int n, int p) const;
};

diag_segment diag_of(const bicomplex_window &w, int lo, int hi);

// ---- the cosimplicial model --------------------------------------------------

// D^p_q = reduced q-chains of level p; d' = sum_i (-1)^i C(delta^i), d'' = the
// ordinary boundary.
struct d_model {
    cosimplicial_hom vh;
    std::vector<std::vector<chain_basis>> basis; // [p][q]
    bicomplex_window win;
};

d_model build_d_model(const space &x, const space &y, int P, int Q,
                      const prime_field &f);

std::vector<uint32_t> d_coords(const d_model &d, int p, int q, const chain &c);

// ---- the functor-morphism model ------------------------------------------------

struct hom_pair_order {
    bool operator()(const std::pair<size_t, simplex> &a,
                    const std::pair<size_t, simplex> &b) const {
        if (a.first != b.first) return a.first < b.first;
        return simplex_less(a.second, b.second);
    }
};

// Basis of the morphism module at (p, q): one element per increasing tuple
// together with a reduced basis simplex of the matching smash power.
struct hom_basis {
    std::vector<std::pair<size_t, simplex>> elems;
    std::map<std::pair<size_t, simplex>, size_t, hom_pair_order> index;
};

struct g_model {
    space x, y;
    int P = 0, Q = 0;
    std::vector<omega_basis> tuples; // per level p
    power_cache ypow;
    std::vector<std::vector<hom_basis>> basis; // [p][q]
    bicomplex_window win;
};

g_model build_g_model(const space &x, const space &y, int P, int Q,
                      const prime_field &f, bool reversed = false);

std::vector<uint32_t> morphism_coords(const g_model &g, int p, int q,
                                      const functor_morphism &t);
functor_morphism coords_morphism(const g_model &g, int p, int q,
                                 const std::vector<uint32_t> &v);

// ---- comparison maps -----------------------------------------------------------

// epsilon: function simplex v -> the morphism e_tuple -> [v(x_1)...v(x_s)].
functor_morphism epsilon_of_simplex(g_model &g, const d_model &d, int p, int q,
                                    const simplex &v, const prime_field &f);
sparse_matrix epsilon_matrix(g_model &g, const d_model &d, int p, int q,
                             const prime_field &f);

// xi: the inclusion-exclusion inverse, summing signed bp-padded placements of
// the morphism's values on the basis tuples.
chain xi_of_morphism(g_model &g, const d_model &d, int p, int q,
                     const functor_morphism &t, const prime_field &f);
sparse_matrix xi_matrix(g_model &g, const d_model &d, int p, int q,
                        const prime_field &f);

// lambda^p_q of a degree-(q-p) simplex of the map space: for each basis tuple,
// the shuffle expansion of z x e evaluated valuewise.
functor_morphism lambda_of_simplex(const map_space &ms, g_model &g, int p, int q,
                                   const simplex &z, const prime_field &f);
functor_morphism lambda_of_chain(const map_space &ms, g_model &g, int p, int q,
                                 const chain &z, const prime_field &f);

// mu^p_q of a degree-(q-p) simplex: the shuffle expansion of z x [iota_p]
// pushed through evaluation along the characteristic maps of X_p^x.
chain mu_of_simplex(const map_space &ms, const d_model &d, int p, int q,
                    const simplex &z, const prime_field &f);
chain mu_of_chain(const map_space &ms, const d_model &d, int p, int q, const chain &z,
                  const prime_field &f);

// ---- model-level checks ---------------------------------------------------------

// epsilon o mu = lambda on every enumerated map simplex at levels n <= nmax.
// Checks throw on the first mismatch and return how many comparisons ran.
size_t check_triangle(const map_space &ms, g_model &g, const d_model &d, int nmax,
                      const prime_field &f);

// lambda and mu commute with the diagonal boundaries on enumerated generators
// at levels n <= nmax (level nmax uses boundaries into nmax - 1).
size_t check_comparison_chain_maps(const map_space &ms, g_model &g, const d_model &d,
                                   const diag_segment &dgg, const diag_segment &dgd,
                                   int nmax, const prime_field &f);

// Degree-zero composition compatibility: composing vertices of the map spaces
// and applying lambda matches composing the lambda images levelwise.
size_t check_degree_zero_composition(const space &x, const space &y, const space &z,
                                     int P, const prime_field &f, uint64_t budget);

// Level-0 correspondence between map-space vertices and pointed maps.
pointed_map vertex_to_map(const map_space &ms, const simplex &f0);
simplex map_to_vertex(const map_space &ms, const pointed_map &g);

// Morphism-module functoriality: per-bidegree matrices of the induced map
// G(X,Y) -> G(X',Y') for e: X' -> X and fmap: Y -> Y'.
std::vector<std::vector<sparse_matrix>> induced_g_matrices(g_model &src, g_model &dst,
                                                           const pointed_map &e,
                                                           const pointed_map &fmap,
                                                           const prime_field &f);

// Assembles per-bidegree matrices into a map of diagonal segments.
segment_map blockwise_segment_map(const diag_segment &a, const diag_segment &b,
                                  const std::vector<std::vector<sparse_matrix>> &m,
                                  int lo, int hi, uint32_t mod);

} // namespace msh
