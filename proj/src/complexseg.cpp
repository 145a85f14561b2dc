#include "complexseg.hpp"

namespace msh {

void complex_segment::validate() const {
    for (int k = lo; k <= hi; ++k)
        require(dim.count(k) != 0, errc::internal_error, "segment missing dimension");
    for (const auto &[k, m] : d) {
        require(m.mod == mod, errc::internal_error, "segment boundary modulus mismatch");
        require(has_degree(k), errc::internal_error, "boundary outside window");
        require(m.cols == dim.at(k), errc::internal_error, "boundary source dim mismatch");
        if (has_degree(k - 1))
            require(m.rows == dim.at(k - 1), errc::internal_error, "boundary target dim mismatch");
        if (has_d(k + 1)) {
            sparse_matrix sq = matmul(m, d.at(k + 1));
            require(sq.is_zero(), errc::check_failed,
                    "d·d != 0 at degree " + std::to_string(k + 1));
        }
    }
}

size_t complex_segment::homology_rank(int k) const {
    require(has_degree(k) && has_d(k) && has_d(k + 1), errc::window_violation,
            "homology at degree " + std::to_string(k) + " needs boundaries on both sides");
    size_t z = dim.at(k) - rank(d.at(k));
    size_t b = rank(d.at(k + 1));
    require(z >= b, errc::internal_error, "cycles fewer than boundaries");
    return z - b;
}

std::vector<int> complex_segment::computable_degrees() const {
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k)
        if (has_d(k) && has_d(k + 1)) out.push_back(k);
    return out;
}

bool is_chain_map(const segment_map &f, const complex_segment &a, const complex_segment &b,
                  std::string *why) {
    for (const auto &[k, fk] : f.f) {
        if (!a.has_d(k) || !b.has_d(k) || f.f.count(k - 1) == 0) continue;
        sparse_matrix lhs = matmul(f.f.at(k - 1), a.d.at(k));
        sparse_matrix rhs = matmul(b.d.at(k), fk);
        if (!equal(lhs, rhs)) {
            if (why) *why = "chain map fails at degree " + std::to_string(k);
            return false;
        }
    }
    return true;
}

void quasi_iso_check(const segment_map &f, const complex_segment &a, const complex_segment &b,
                     const std::vector<int> &degrees) {
    std::string why;
    require(is_chain_map(f, a, b, &why), errc::check_failed, why);
    for (int k : degrees) {
        require(f.f.count(k) != 0, errc::window_violation,
                "no map component in degree " + std::to_string(k));
        size_t ha = a.homology_rank(k);
        size_t hb = b.homology_rank(k);
        require(ha == hb, errc::check_failed,
                "homology ranks differ at degree " + std::to_string(k) + ": " +
                    std::to_string(ha) + " vs " + std::to_string(hb));
        // Surjectivity of H(f): span of f(cycles) together with boundaries
        // must be all cycles downstairs.  With equal finite ranks this gives
        // bijectivity.
        size_t zb = b.dim.at(k) - rank(b.d.at(k));
        auto za_basis = kernel_basis(a.d.at(k));
        sparse_matrix probe(b.dim.at(k), za_basis.size() + b.dim.at(k + 1), a.d.at(k).mod);
        for (size_t j = 0; j < za_basis.size(); ++j) {
            auto img = matvec(f.f.at(k), za_basis[j]);
            for (size_t r = 0; r < img.size(); ++r)
                if (img[r]) probe.entries[{r, j}] = img[r];
        }
        for (const auto &[pos, v] : b.d.at(k + 1).entries)
            probe.entries[{pos.first, za_basis.size() + pos.second}] = v;
        require(rank(probe) == zb, errc::check_failed,
                "induced map not surjective on homology at degree " + std::to_string(k));
    }
}

} // namespace msh
