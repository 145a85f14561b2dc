#pragma once

#include "space.hpp"

namespace msh {

// A pointed simplicial map, stored by its values on generators.  Holds copies
// of both spaces so a map stays valid on its own.
struct pointed_map {
    space src;
    space dst;
    std::vector<simplex> assign; // per src generator, degree = generator dim

    simplex apply(const simplex &x) const { return dst.apply_word(assign[x.gen], x.word); }
    // Shapes, degrees, basepoint, and face commutation on every generator.
    void validate() const;
};

pointed_map map_from_assignment(const space &src, const space &dst,
                                std::vector<simplex> assign);
pointed_map identity_map(const space &sp);
// outer after inner; inner.dst must be the same presentation as outer.src.
pointed_map compose_maps(const pointed_map &outer, const pointed_map &inner);

// Classifying map delta_plus(p) -> X of a degree-p simplex: the subset
// generator with vertices u_0 < ... < u_k goes to x acted on by that
// inclusion.
pointed_map characteristic_map(const space &x_space, const simplex &x, int p);

// The map delta_plus(n) -> delta_plus(p) induced by a monotone u: [n] -> [p].
pointed_map delta_map(const std::vector<int> &u, int n, int p);

} // namespace msh
