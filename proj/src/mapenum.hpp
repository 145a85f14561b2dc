#pragma once

#include "pmap.hpp"
#include "product.hpp"

namespace msh {

// The pointed mapping space Y^X, level n = pointed maps X ^ delta_plus(n) -> Y.
// Levels 0..nmax are enumerated exhaustively (backtracking over generator
// images with face-compatibility pruning, metered by budget); the result is
// also materialized as a space so chains, smashes and crosses apply to it.
class map_space {
  public:
    space x;
    space y;
    int nmax = 0;

    std::vector<smash_product> dom;                      // dom[n] = x ^ delta_plus(n)
    std::vector<std::vector<std::vector<simplex>>> maps; // maps[n][k]: per-generator images
    space total;                                         // Y^X as a space

    size_t level_count(int n) const { return maps[static_cast<size_t>(n)].size(); }

    // Simplex of `total` holding a given full assignment at level n.
    simplex classify_map(int n, const std::vector<simplex> &assign) const;
    // Assignment of any simplex of `total` at level n (degeneracies unfolded).
    std::vector<simplex> assignment_of(const simplex &f, int n) const;
    // Value of f at the class of (xs ^ iota_n), xs in X_n.
    simplex evaluate(const simplex &f, int n, const simplex &xs) const;
    // Face/degeneracy connectors on assignments.
    std::vector<simplex> face_assignment(int n, const std::vector<simplex> &assign, int i) const;
    std::vector<simplex> degeneracy_assignment(int n, const std::vector<simplex> &assign,
                                               int j) const;

  private:
    friend map_space make_map_space(const space &x, const space &y, int nmax,
                                    uint64_t budget);
    std::vector<std::map<std::vector<simplex>, size_t, tuple_order>> index_; // per level
    std::map<std::vector<simplex>, uint32_t, tuple_order> gen_of_; // nondeg map -> gen
    std::vector<std::vector<simplex>> assign_of_gen_;
    std::vector<int> level_of_gen_;
};

map_space make_map_space(const space &x, const space &y, int nmax, uint64_t budget);

} // namespace msh
