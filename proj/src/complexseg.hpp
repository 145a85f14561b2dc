#pragma once

#include "sparse.hpp"

#include <map>

namespace msh {

// A window of a chain complex: dimensions for degrees lo..hi, and boundary
// matrices d[k] : C_k -> C_{k-1} for the degrees where both ends are known.
// d[lo] (mapping out of the window) may be present; its target dimension is
// carried by the matrix shape alone.
struct complex_segment {
    int lo = 0;
    int hi = -1;
    uint32_t mod = 2;
    std::map<int, size_t> dim;
    std::map<int, sparse_matrix> d;

    bool has_degree(int k) const { return k >= lo && k <= hi; }
    bool has_d(int k) const { return d.count(k) != 0; }

    // Shape coherence and d∘d = 0 on every composable pair.
    void validate() const;

    // Requires d[k] and d[k+1].
    size_t homology_rank(int k) const;

    // Degrees where homology is computable from this window.
    std::vector<int> computable_degrees() const;
};

// A degreewise map f[k] : A_k -> B_k between two segments.
struct segment_map {
    std::map<int, sparse_matrix> f;
};

// Checks that f is a chain map on the overlap and induces isomorphisms on
// homology in each requested degree.  Throws check_failed with a description
// on the first violation; returns normally on success.
void quasi_iso_check(const segment_map &f, const complex_segment &a, const complex_segment &b,
                     const std::vector<int> &degrees);

// True iff f commutes with the boundaries wherever both sides are defined.
bool is_chain_map(const segment_map &f, const complex_segment &a, const complex_segment &b,
                  std::string *why = nullptr);

} // namespace msh
