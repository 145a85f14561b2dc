#pragma once

#include "common.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace msh {

// A simplex in degeneracy normal form: a generator plus a set of degeneracy
// letters.  Bit j of word means s_j occurs; the letters are applied to the
// generator in ascending order, innermost first, so the outermost letter is
// the largest.  degree = generator dim + popcount(word).
struct simplex {
    uint32_t gen = 0;
    uint32_t word = 0;
    bool operator==(const simplex &) const = default;
};

// Lexicographic order on the ascending letter sequences of two same-size
// words: the word owning the lowest differing letter comes first.
inline bool word_lex_less(uint32_t a, uint32_t b) {
    if (a == b) return false;
    uint32_t d = a ^ b;
    return (a & (d & ~(d - 1))) != 0;
}

// Canonical total order: generator declaration index, then word size, then
// word lexicographic.  Within one degree the word sizes of equal generators
// agree, so this restricts to (generator, word) lex on each level.
inline bool simplex_less(const simplex &a, const simplex &b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    int pa = std::popcount(a.word), pb = std::popcount(b.word);
    if (pa != pb) return pa < pb;
    return word_lex_less(a.word, b.word);
}

struct simplex_order {
    bool operator()(const simplex &a, const simplex &b) const { return simplex_less(a, b); }
};

struct generator_rec {
    std::string id;
    int dim = 0;
    std::vector<simplex> faces; // dim+1 entries for dim >= 1, empty for dim 0
};

// Degree cap: degeneracy words live in a uint32_t.
inline constexpr int max_degree = 30;

// A finite pointed simplicial set given by generators and their faces.
// Immutable after construction; all operations are const.
class space {
  public:
    std::string name;
    std::vector<generator_rec> gens;
    uint32_t basepoint = 0;

    int degree_of(const simplex &x) const {
        return gens[x.gen].dim + std::popcount(x.word);
    }
    bool is_bp(const simplex &x) const { return x.gen == basepoint; }
    simplex bp_simplex(int n) const {
        return {basepoint, n == 0 ? 0u : (1u << n) - 1u};
    }

    // s_j applied outside x; 0 <= j <= degree(x).
    simplex degenerate(const simplex &x, int j) const;
    // d_i x via normal-form rewriting; 0 <= i <= degree(x), degree(x) >= 1.
    simplex face(const simplex &x, int i) const;
    // Applies the letters of word ascending (innermost first) on top of x.
    simplex apply_word(simplex x, uint32_t word) const;

    // All degree-n simplices (basepoint-degenerate one included), canonical order.
    std::vector<simplex> simplices(int n) const;
    // Same with the basepoint-degenerate simplex dropped.
    std::vector<simplex> nonbp_simplices(int n) const;

    std::string label(const simplex &x) const;

    // Structural checks: shapes, resolvable references, simplicial identities
    // d_i d_j = d_{j-1} d_i on all generators.
    void validate() const;

    std::string to_file_text() const;
    static space from_file_text(const std::string &text);
};

// Right action of a monotone map u: [q] -> [p] on a degree-p simplex,
// yielding a degree-q simplex.  u is given by its q+1 values.
simplex apply_monotone(const space &sp, simplex x, const std::vector<int> &u);

// Builders ------------------------------------------------------------------

// Standard p-simplex with a disjoint basepoint added.  Generators: one per
// nonempty vertex subset, plus the basepoint.  The fundamental simplex is the
// full subset with empty word.
space delta_plus(int p);
simplex fundamental_simplex(const space &dp, int p);

// Delta^n / boundary, pointed: one basepoint vertex plus (for n >= 1) one
// n-generator whose faces are all basepoint-degenerate.  n = 0 gives the
// two-point space.
space sphere_min(int n);

// Pointed circle with k vertices and k edges (k >= 1); vertex 0 is the
// basepoint.
space cycle_space(int k);

// Nerve of a finite group given by its multiplication table, materialized up
// to dimension cap.  Element 0 need not be the identity; the identity is
// located and becomes the (unique) vertex = basepoint.  Homology read off the
// materialization is valid in degrees <= cap-1.
space nerve_space(const std::vector<std::vector<int>> &table, int cap);

// Cyclic group table for nerve(Z/m).
std::vector<std::vector<int>> cyclic_table(int m);

// Vertex-subset masks aligned with the generator indices of delta_plus(p);
// entry 0 (the basepoint) is 0.
std::vector<uint32_t> delta_subsets(int p);

// The monotone map [n] -> [p] classified by a non-basepoint degree-n simplex
// of delta_plus(p), as its n+1 values.
std::vector<int> monotone_of_simplex(const space &dp, const std::vector<uint32_t> &subsets,
                                     const simplex &x, int n);

// All monotone maps [q] -> [p].
std::vector<std::vector<int>> monotone_maps(int q, int p);

// Subsets of {0..n-1} of size k, as word masks, in word_lex order.
std::vector<uint32_t> words_of_size(int n, int k);

} // namespace msh
