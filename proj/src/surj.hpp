#pragma once

#include "chain.hpp"

#include <optional>

namespace msh {

// A surjection onto {0..s-1}, stored by its values; h[k] is the image of k.
using surjection = std::vector<int>;

bool is_surjection(const surjection &h, int s);
// All surjections from a t-element set onto an s-element set.
std::vector<surjection> all_surjections(int t, int s);

// Smash powers of one space, materialized on demand and cached per exponent.
class power_cache {
  public:
    power_cache() = default;
    power_cache(const space &y, int qmax) : y_(y), qmax_(qmax) {}
    const smash_product &power(int s);
    const space &base() const { return y_; }
    int qmax() const { return qmax_; }

  private:
    space y_;
    int qmax_ = 0;
    std::map<int, smash_product> pow_;
};

// C_q(h#) on reduced chains of smash powers: coordinates of the target are
// picked by h from the source tuple.
chain apply_surjection_chain(const smash_product &from, const smash_product &to,
                             const surjection &h, const chain &c, int q,
                             const prime_field &f);

// Index structures for the level-p tuple algebra over x: the ordered point
// list X_p^x, and the increasing tuples indexing the free basis.
struct omega_basis {
    int p = 0;
    size_t smax = 0;
    std::vector<simplex> points;
    std::map<simplex, size_t, simplex_order> point_index;
    std::vector<std::vector<size_t>> tuples; // sizes ascending, lex within a size
    std::map<std::vector<size_t>, size_t> tuple_index;
};
omega_basis make_omega_basis(const space &x, int p, size_t smax, bool reversed = false);

// Writes a point tuple as (increasing tuple, surjection): tuple[k] =
// points[result tuple][h[k]].  Empty when some coordinate is the basepoint.
struct tuple_decomposition {
    size_t tuple = 0; // index into omega_basis::tuples
    surjection h;
};
std::optional<tuple_decomposition> support_decompose(const omega_basis &b,
                                                     const std::vector<simplex> &tuple,
                                                     const space &x);

// A morphism out of the level-p free functor, given by its values on the
// increasing-tuple basis: values[k] is a reduced chain over the |tuples[k]|-th
// smash power of the target space at level q.
struct functor_morphism {
    int p = 0;
    int q = 0;
    std::vector<chain> values;
};

// Value on an arbitrary point tuple (the universal property).
chain evaluate_morphism_on(const functor_morphism &t, const omega_basis &b, const space &x,
                           power_cache &ys, const std::vector<simplex> &tuple,
                           const prime_field &f);

// t applied to a chain over the s-th smash power of its source space: every
// simplex is split into coordinates and evaluated.
chain apply_morphism_chain(const functor_morphism &t, const omega_basis &b, const space &x,
                           power_cache &xpow, power_cache &ys, const chain &c, int s,
                           const prime_field &f);

// Hom-bicomplex differentials: precomposition with the source boundary and
// postcomposition with the target boundary (no extra signs).
functor_morphism d_prime_morphism(const functor_morphism &t, const space &x,
                                  const omega_basis &bsrc, const omega_basis &bdst,
                                  power_cache &ys, const prime_field &f);
functor_morphism d_second_morphism(const functor_morphism &t, const omega_basis &b,
                                   power_cache &ys, const prime_field &f);

// e_i -> [kappa_i], the identity of Hom(M_p(X), M_p(X)).
functor_morphism identity_morphism(const space &x, const omega_basis &b, int p,
                                   power_cache &xpow, const prime_field &f);

// outer o inner, evaluated termwise through the middle space.
functor_morphism compose_morphisms(const functor_morphism &outer, const omega_basis &bmid,
                                   const space &y, power_cache &ypow, power_cache &zpow,
                                   const functor_morphism &inner, const omega_basis &bsrc,
                                   const prime_field &f);

} // namespace msh
