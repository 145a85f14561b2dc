#pragma once

#include "common.hpp"
#include "fp.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace msh {

// Sparse matrix over F_l with explicit shape.  Entries holds the nonzero
// positions only; values are canonical residues in [1, mod).
struct sparse_matrix {
    size_t rows = 0;
    size_t cols = 0;
    uint32_t mod = 2;
    std::map<std::pair<size_t, size_t>, uint32_t> entries;

    sparse_matrix() = default;
    sparse_matrix(size_t r, size_t c, uint32_t m) : rows(r), cols(c), mod(m) {}

    uint32_t get(size_t r, size_t c) const;
    void set(size_t r, size_t c, int64_t v);
    void add_at(size_t r, size_t c, int64_t v);
    bool is_zero() const { return entries.empty(); }
    size_t nnz() const { return entries.size(); }

    std::string to_triplet_text() const;
    static sparse_matrix from_triplet_text(const std::string &text);
};

sparse_matrix identity_matrix(size_t n, uint32_t mod);
sparse_matrix matmul(const sparse_matrix &a, const sparse_matrix &b);
sparse_matrix matadd(const sparse_matrix &a, const sparse_matrix &b);
sparse_matrix matscale(const sparse_matrix &a, int64_t c);
sparse_matrix transpose(const sparse_matrix &a);
// Columns of a followed by columns of b.
sparse_matrix hcat(const sparse_matrix &a, const sparse_matrix &b);
bool equal(const sparse_matrix &a, const sparse_matrix &b);

// Dense elimination working set.  Row-major.
struct dense_matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<uint32_t> a;

    dense_matrix() = default;
    dense_matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
    uint32_t &at(size_t r, size_t c) { return a[r * cols + c]; }
    uint32_t at(size_t r, size_t c) const { return a[r * cols + c]; }
};

dense_matrix to_dense(const sparse_matrix &m);

size_t rank(const sparse_matrix &m);
size_t kernel_dim(const sparse_matrix &m);
// Basis of the right kernel, as dense column vectors of length cols.
std::vector<std::vector<uint32_t>> kernel_basis(const sparse_matrix &m);
// y = m·x for a dense column vector x.
std::vector<uint32_t> matvec(const sparse_matrix &m, const std::vector<uint32_t> &x);

// Streaming rank accumulator over F_2 for matrices too large to materialize.
// Columns are fed one at a time as sorted row-index supports; reduced pivot
// columns are kept as bitsets.
class f2_ranker {
  public:
    explicit f2_ranker(size_t nrows);
    // Returns true when the column was independent of those seen so far.
    bool add_column(const std::vector<size_t> &support);
    size_t rank() const { return rank_; }

  private:
    size_t nrows_;
    size_t words_;
    std::vector<std::vector<uint64_t>> cols_;
    std::vector<size_t> pivot_col_of_row_;
    std::vector<uint64_t> work_;
    size_t rank_ = 0;
};

} // namespace msh
