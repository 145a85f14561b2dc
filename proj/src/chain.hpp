#pragma once

#include "complexseg.hpp"
#include "fp.hpp"
#include "pmap.hpp"
#include "product.hpp"

#include <map>

namespace msh {

// A reduced chain: sparse coefficients on simplices of one degree, values in
// canonical residues, basepoint class always dropped.
using chain = std::map<simplex, uint32_t, simplex_order>;

// c += coeff * x (skipping the basepoint class, erasing zeros).
void chain_add(chain &c, const simplex &x, int64_t coeff, const space &sp,
               const prime_field &f);
void chain_add(chain &c, const chain &other, int64_t scale, const prime_field &f);

// Degree-n basis of reduced chains with its index lookup.
struct chain_basis {
    std::vector<simplex> elems;
    std::map<simplex, size_t, simplex_order> index;
};
chain_basis reduced_basis(const space &sp, int n);

chain boundary_chain(const space &sp, const chain &c, int n, const prime_field &f);

sparse_matrix boundary_matrix(const space &sp, int n, const prime_field &f);
sparse_matrix induced_matrix(const pointed_map &g, int n, const prime_field &f);

// Chain of the map g applied to a chain of its source.
chain push_chain(const pointed_map &g, const chain &c, const prime_field &f);

// Cross product landing in a binary smash product (factors in order).
chain cross_smash(const smash_product &p, const simplex &a, int m, const simplex &b,
                  int n, const prime_field &f);
chain cross_chains(const smash_product &p, const chain &za, int m, const chain &zb,
                   int n, const prime_field &f);

// Reduced chain complex of sp in degrees [lo, hi]; d[k] present for every
// k in [lo, hi], with d[lo] mapping out of the window.
complex_segment space_segment(const space &sp, int lo, int hi, uint32_t mod);

// Degreewise induced map as a segment map on [lo, hi].
segment_map induced_segment(const pointed_map &g, int lo, int hi, uint32_t mod);

} // namespace msh
