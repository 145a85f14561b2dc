#include "sparse.hpp"

#include <sstream>

namespace msh {

static void check_pos(const sparse_matrix &m, size_t r, size_t c) {
    require(r < m.rows && c < m.cols, errc::internal_error, "matrix index out of range");
}

uint32_t sparse_matrix::get(size_t r, size_t c) const {
    check_pos(*this, r, c);
    auto it = entries.find({r, c});
    return it == entries.end() ? 0u : it->second;
}

void sparse_matrix::set(size_t r, size_t c, int64_t v) {
    check_pos(*this, r, c);
    prime_field f(mod);
    uint32_t rv = f.reduce(v);
    if (rv == 0)
        entries.erase({r, c});
    else
        entries[{r, c}] = rv;
}

void sparse_matrix::add_at(size_t r, size_t c, int64_t v) {
    check_pos(*this, r, c);
    prime_field f(mod);
    uint32_t rv = f.add(get(r, c), f.reduce(v));
    if (rv == 0)
        entries.erase({r, c});
    else
        entries[{r, c}] = rv;
}

std::string sparse_matrix::to_triplet_text() const {
    std::ostringstream out;
    out << "msh-matrix 1\n";
    out << "shape " << rows << " " << cols << " mod " << mod << "\n";
    for (const auto &[pos, v] : entries)
        out << pos.first << " " << pos.second << " " << v << "\n";
    return out.str();
}

sparse_matrix sparse_matrix::from_triplet_text(const std::string &text) {
    std::istringstream in(text);
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "msh-matrix" || version != 1)
        fail(errc::parse_error, "bad matrix header");
    std::string kw, kw2;
    size_t r = 0, c = 0;
    uint32_t m = 0;
    if (!(in >> kw >> r >> c >> kw2 >> m) || kw != "shape" || kw2 != "mod")
        fail(errc::parse_error, "bad matrix shape line");
    require(is_prime(m), errc::parse_error, "matrix modulus must be prime");
    sparse_matrix out(r, c, m);
    size_t er = 0, ec = 0;
    int64_t ev = 0;
    while (in >> er >> ec >> ev) {
        require(er < r && ec < c, errc::parse_error, "matrix entry out of range");
        out.add_at(er, ec, ev);
    }
    require(in.eof(), errc::parse_error, "trailing junk in matrix text");
    return out;
}

sparse_matrix identity_matrix(size_t n, uint32_t mod) {
    sparse_matrix m(n, n, mod);
    for (size_t i = 0; i < n; ++i) m.entries[{i, i}] = 1;
    return m;
}

sparse_matrix matmul(const sparse_matrix &a, const sparse_matrix &b) {
    require(a.mod == b.mod, errc::internal_error, "matmul: modulus mismatch");
    require(a.cols == b.rows, errc::internal_error, "matmul: shape mismatch");
    prime_field f(a.mod);
    // Column-index b for cache-friendly accumulation.
    sparse_matrix out(a.rows, b.cols, a.mod);
    // rows_of_b[r] lists (col, val) of row r of b.
    std::map<size_t, std::vector<std::pair<size_t, uint32_t>>> rows_of_b;
    for (const auto &[pos, v] : b.entries) rows_of_b[pos.first].push_back({pos.second, v});
    for (const auto &[pos, av] : a.entries) {
        auto it = rows_of_b.find(pos.second);
        if (it == rows_of_b.end()) continue;
        for (const auto &[bc, bv] : it->second) out.add_at(pos.first, bc, f.mul(av, bv));
    }
    return out;
}

sparse_matrix matadd(const sparse_matrix &a, const sparse_matrix &b) {
    require(a.mod == b.mod && a.rows == b.rows && a.cols == b.cols, errc::internal_error,
            "matadd: shape mismatch");
    sparse_matrix out = a;
    for (const auto &[pos, v] : b.entries) out.add_at(pos.first, pos.second, v);
    return out;
}

sparse_matrix matscale(const sparse_matrix &a, int64_t c) {
    prime_field f(a.mod);
    uint32_t cv = f.reduce(c);
    sparse_matrix out(a.rows, a.cols, a.mod);
    if (cv == 0) return out;
    for (const auto &[pos, v] : a.entries) out.entries[pos] = f.mul(v, cv);
    return out;
}

sparse_matrix transpose(const sparse_matrix &a) {
    sparse_matrix out(a.cols, a.rows, a.mod);
    for (const auto &[pos, v] : a.entries) out.entries[{pos.second, pos.first}] = v;
    return out;
}

sparse_matrix hcat(const sparse_matrix &a, const sparse_matrix &b) {
    require(a.mod == b.mod && a.rows == b.rows, errc::internal_error, "hcat: shape mismatch");
    sparse_matrix out(a.rows, a.cols + b.cols, a.mod);
    out.entries = a.entries;
    for (const auto &[pos, v] : b.entries) out.entries[{pos.first, a.cols + pos.second}] = v;
    return out;
}

bool equal(const sparse_matrix &a, const sparse_matrix &b) {
    return a.rows == b.rows && a.cols == b.cols && a.mod == b.mod && a.entries == b.entries;
}

dense_matrix to_dense(const sparse_matrix &m) {
    require(m.rows * m.cols <= 64'000'000ull, errc::budget_exceeded,
            "matrix too large for dense elimination");
    dense_matrix d(m.rows, m.cols);
    for (const auto &[pos, v] : m.entries) d.at(pos.first, pos.second) = v;
    return d;
}

// Row echelon in place; returns rank.
static size_t eliminate(dense_matrix &d, const prime_field &f) {
    size_t rank = 0;
    for (size_t c = 0; c < d.cols && rank < d.rows; ++c) {
        size_t piv = rank;
        while (piv < d.rows && d.at(piv, c) == 0) ++piv;
        if (piv == d.rows) continue;
        if (piv != rank)
            for (size_t j = c; j < d.cols; ++j) std::swap(d.at(piv, j), d.at(rank, j));
        uint32_t s = f.inv(d.at(rank, c));
        for (size_t j = c; j < d.cols; ++j) d.at(rank, j) = f.mul(d.at(rank, j), s);
        for (size_t r = 0; r < d.rows; ++r) {
            if (r == rank) continue;
            uint32_t v = d.at(r, c);
            if (v == 0) continue;
            for (size_t j = c; j < d.cols; ++j)
                d.at(r, j) = f.sub(d.at(r, j), f.mul(v, d.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

size_t rank(const sparse_matrix &m) {
    if (m.entries.empty()) return 0;
    if (m.mod == 2 && m.rows > 256) {
        // Column-streaming path for tall F_2 matrices.
        f2_ranker rk(m.rows);
        std::vector<std::vector<size_t>> cols(m.cols);
        for (const auto &[pos, v] : m.entries)
            if (v) cols[pos.second].push_back(pos.first);
        for (auto &c : cols)
            if (!c.empty()) rk.add_column(c);
        return rk.rank();
    }
    dense_matrix d = to_dense(m);
    prime_field f(m.mod);
    return eliminate(d, f);
}

size_t kernel_dim(const sparse_matrix &m) { return m.cols - rank(m); }

std::vector<std::vector<uint32_t>> kernel_basis(const sparse_matrix &m) {
    prime_field f(m.mod);
    dense_matrix d = to_dense(m);
    size_t rk = eliminate(d, f);
    // Locate pivot column of each echelon row.
    std::vector<size_t> pivot_col(rk);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t r = 0; r < rk; ++r) {
        size_t c = 0;
        while (c < m.cols && d.at(r, c) == 0) ++c;
        pivot_col[r] = c;
        is_pivot[c] = true;
    }
    std::vector<std::vector<uint32_t>> basis;
    for (size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<uint32_t> v(m.cols, 0);
        v[c] = 1;
        for (size_t r = 0; r < rk; ++r)
            if (pivot_col[r] < c) v[pivot_col[r]] = f.neg(d.at(r, c));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<uint32_t> matvec(const sparse_matrix &m, const std::vector<uint32_t> &x) {
    require(x.size() == m.cols, errc::internal_error, "apply: shape mismatch");
    prime_field f(m.mod);
    std::vector<uint32_t> y(m.rows, 0);
    for (const auto &[pos, v] : m.entries)
        y[pos.first] = f.add(y[pos.first], f.mul(v, x[pos.second]));
    return y;
}

f2_ranker::f2_ranker(size_t nrows)
    : nrows_(nrows), words_((nrows + 63) / 64), pivot_col_of_row_(nrows, SIZE_MAX),
      work_(words_, 0) {}

bool f2_ranker::add_column(const std::vector<size_t> &support) {
    std::fill(work_.begin(), work_.end(), 0);
    for (size_t r : support) {
        require(r < nrows_, errc::internal_error, "f2_ranker: row out of range");
        work_[r >> 6] ^= 1ull << (r & 63);
    }
    for (;;) {
        // Lowest set row index.
        size_t w = 0;
        while (w < words_ && work_[w] == 0) ++w;
        if (w == words_) return false; // reduced to zero
        size_t row = (w << 6) + static_cast<size_t>(__builtin_ctzll(work_[w]));
        size_t pc = pivot_col_of_row_[row];
        if (pc == SIZE_MAX) {
            pivot_col_of_row_[row] = cols_.size();
            cols_.push_back(work_);
            ++rank_;
            return true;
        }
        const auto &pcv = cols_[pc];
        for (size_t i = w; i < words_; ++i) work_[i] ^= pcv[i];
    }
}

} // namespace msh
