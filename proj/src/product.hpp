#pragma once

#include "space.hpp"

#include <map>
#include <vector>

namespace msh {

// One term of the shuffle formula for the cross product of an m-simplex with
// an n-simplex: apply the letters of x_word to the left factor, y_word to the
// right factor, and weight by sign.
struct shuffle_term {
    uint32_t x_word = 0;
    uint32_t y_word = 0;
    int sign = 1;
};

// All (m,n)-shuffles of {0..m+n-1}: x_word gets n letters, y_word the
// complementary m, sign is the shuffle parity.
std::vector<shuffle_term> shuffle_terms(int m, int n);

struct tuple_order {
    bool operator()(const std::vector<simplex> &a, const std::vector<simplex> &b) const {
        for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
            if (!(a[i] == b[i])) return simplex_less(a[i], b[i]);
        }
        return a.size() < b.size();
    }
};

// Smash product of pointed spaces, materialized up to level nmax.  A class is
// the basepoint as soon as one coordinate is basepoint-degenerate; otherwise
// it is a jointly nondegenerate coordinate tuple (the generator) under a
// common degeneracy word.
class smash_product {
  public:
    std::vector<space> factor;
    space total;
    int nmax = 0;

    // Class of a tuple of degree-n coordinates, one per factor.
    simplex classify(const std::vector<simplex> &coords, int n) const;
    // A coordinate tuple representing x (degree n); basepoint classes map to
    // the all-basepoint tuple.
    std::vector<simplex> coords_of(const simplex &x, int n) const;

  private:
    friend smash_product make_smash(const std::vector<const space *> &factors, int nmax);
    std::map<std::vector<simplex>, uint32_t, tuple_order> gen_of_;
    std::vector<std::vector<simplex>> parts_of_; // generator id -> coordinate tuple
};

smash_product make_smash(const std::vector<const space *> &factors, int nmax);
smash_product smash_power(const space &y, int s, int nmax);
smash_product smash_pair(const space &a, const space &b, int nmax);

// Coordinate permutation a la y_i -> y_{perm[i]} on classes of a smash power.
simplex permute_class(const smash_product &p, const simplex &x, int n,
                      const std::vector<int> &perm);

} // namespace msh
