#pragma once

#include "models.hpp"

namespace msh {

// ---- universal interchange data ---------------------------------------------

// A k-simplex of the double standard simplex Delta^q x Delta^q, stored as two
// monotone vertex lists of length k+1 with values in [0, q].
struct vertex_pair {
    std::vector<int> u, v;
    bool operator==(const vertex_pair &) const = default;
};

struct vertex_pair_order {
    bool operator()(const vertex_pair &a, const vertex_pair &b) const {
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    }
};

using pair_chain = std::map<vertex_pair, uint32_t, vertex_pair_order>;

// The interchange homotopy on normalized chains of a binary product, stored by
// its values on the diagonal simplices (iota_q, iota_q) and extended
// everywhere by naturality.  Construction contracts the double simplex along
// the cone at its first vertex and then cleans the result so that, as natural
// operators on normalized chains,
//   aw ez = 1,  d phi + phi d = 1 - ez aw,  phi ez = 0,  aw phi = 0,  phi phi = 0.
// The constructor machine-checks all five families on the universal elements
// and refuses to hand out tables that fail them.
class interchange {
  public:
    interchange(int qmax, const prime_field &f);

    int qmax() const { return qmax_; }
    uint32_t mod() const { return mod_; }
    // Value on the degree-q diagonal simplex: a chain of degree q+1 pairs.
    const std::vector<std::pair<vertex_pair, uint32_t>> &phi(int q) const;

  private:
    int qmax_ = 0;
    uint32_t mod_ = 2;
    std::vector<std::vector<std::pair<vertex_pair, uint32_t>>> phi_;
};

// ---- contraction of a product power onto its tensor complex ------------------

// Chains over coordinate tuples of simplices of one space.  A tuple with all
// coordinates of equal degree is a simplex of the product power; mixed degrees
// occur in tensor terms.  All-basepoint tuples are the reduced zero and are
// dropped on sight.
using tuple_key = std::vector<simplex>;
using tuple_chain = std::map<tuple_key, uint32_t, tuple_order>;

// Strong deformation retraction of the reduced normalized chains of the
// pointed m-fold power y^m onto the tensor complex spanned by tuples of
// nondegenerate coordinates (basepoint only in degree 0, never all
// basepoint).  embed/project are inverse up to the homotopy; the homotopy
// kills the embedded summand and squares to zero.
class product_sdr {
  public:
    product_sdr(const space &y, int m, const interchange &ic, const prime_field &f);

    int arity() const { return m_; }

    // Tensor basis tuples of total degree q, canonical order.
    std::vector<tuple_key> tensor_basis(int q) const;

    tuple_chain embed(const tuple_key &e) const;
    tuple_chain embed_chain(const tuple_chain &c) const;
    tuple_chain project(const tuple_chain &c) const;
    tuple_chain homotopy(const tuple_chain &c) const;

    // Differential of the tensor complex on a basis tuple.
    tuple_chain tensor_boundary(const tuple_key &e) const;
    // Normalized reduced boundary of an equal-degree tuple chain.
    tuple_chain product_boundary(const tuple_chain &c) const;

    bool tuple_degenerate(const tuple_key &t, int first, int q) const;

  private:
    tuple_chain embed_from(int j, const tuple_key &t) const;
    tuple_chain project_from(int j, const tuple_key &t) const;
    tuple_chain homotopy_from(int j, const tuple_key &t) const;

    const space *y_ = nullptr;
    int m_ = 0;
    const interchange *ic_ = nullptr;
    prime_field f_;
};

// True when the coordinates first.. of an equal-degree tuple share a
// degeneracy s_j at some j < q.
bool tuple_degenerate_range(const space &y, const tuple_key &t, int first, int q);

// ---- transported quotient model ----------------------------------------------

// The p <= P quotient of the cosimplicial bicomplex of (x, y), carried over to
// the tensor blocks by the contraction: block (p, q) holds the tensor basis of
// the p-th level (arity = nonbasepoint points of x at level p), and the
// boundary is the tensor differential plus the perturbation series of the
// coface map.  Every diagonal degree of the quotient is finite dimensional,
// so no q-cut is applied; for degree-zero homology the quotient agrees with
// any rectangle truncation with Q > P.
struct reduced_model {
    space x, y;
    int P = 0;
    int lo = 0, hi = -1; // diagonal degrees with a boundary matrix
    uint32_t mod = 2;
    std::vector<std::vector<simplex>> args;              // [p]: X_p^x, canonical
    std::vector<std::vector<std::vector<int>>> arg_face; // [p][i][k], 1 <= p <= P
    // tensor block bases for diagonal degrees lo-1 .. hi
    std::map<std::pair<int, int>, std::vector<tuple_key>> basis;
    std::map<std::pair<int, int>, std::map<tuple_key, size_t, tuple_order>> index;

    size_t degree_dim(int n) const;
};

reduced_model make_reduced_model(const space &x, const space &y, int P, int lo, int hi,
                                 const interchange &ic, const prime_field &f);

// Boundary from diagonal degree n to n-1; lo <= n <= hi.
sparse_matrix reduced_boundary(const reduced_model &rm, const interchange &ic, int n,
                               const prime_field &f);

// The whole window as a complex segment (validated: d o d = 0).
complex_segment reduced_segment(const reduced_model &rm, const interchange &ic,
                                const prime_field &f);

// Projection of the series onto the tensor blocks: sum_k (-1)^k r (t h)^k on a
// product-simplex chain at block (p, q), where t is the diagonally signed
// coface sum.  Output chains keyed by level.  This is a chain map from the
// quotient bicomplex diagonal to the transported complex; tests lean on it to
// exercise every term of the series exactly.
std::map<int, tuple_chain> project_series(const reduced_model &rm, const interchange &ic,
                                          int p, int q, const tuple_chain &c,
                                          const prime_field &f);

// Unsigned alternating coface sum on a level-p product chain (equal degree q),
// landing in level p + 1; drops tuples degenerate as product simplices.
tuple_chain coface_chain(const reduced_model &rm, int p, const tuple_chain &c,
                         const prime_field &f);

// ---- codegeneracy-free column model -------------------------------------------

// The part of the cosimplicial direction killed by every codegeneracy:
// functions supported on the nondegenerate arguments of each level.  These
// columns vanish above dim X, so deep windows stay small and their homology
// ranks can genuinely stabilize, unlike the raw quotient rectangles whose top
// corner keeps classes whose killers live outside the window.
struct conormal_model {
    space x, y;
    int P = 0, Q = 0;
    std::vector<std::vector<simplex>> args; // nondegenerate nonbp X_p per level
    std::vector<function_space> level;
    std::vector<std::vector<chain_basis>> basis; // [p][q]
    bicomplex_window win;
};

conormal_model build_conormal_model(const space &x, const space &y, int P, int Q,
                                    const prime_field &f);

} // namespace msh
