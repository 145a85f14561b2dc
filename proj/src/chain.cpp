#include "chain.hpp"

namespace msh {

void chain_add(chain &c, const simplex &x, int64_t coeff, const space &sp,
               const prime_field &f) {
    if (sp.is_bp(x)) return;
    uint32_t v = f.add(c.count(x) ? c[x] : 0u, f.reduce(coeff));
    if (v == 0)
        c.erase(x);
    else
        c[x] = v;
}

void chain_add(chain &c, const chain &other, int64_t scale, const prime_field &f) {
    for (const auto &[x, v] : other) {
        uint32_t w = f.add(c.count(x) ? c[x] : 0u, f.mul(f.reduce(scale), v));
        if (w == 0)
            c.erase(x);
        else
            c[x] = w;
    }
}

chain_basis reduced_basis(const space &sp, int n) {
    chain_basis b;
    b.elems = sp.nonbp_simplices(n);
    for (size_t i = 0; i < b.elems.size(); ++i) b.index[b.elems[i]] = i;
    return b;
}

chain boundary_chain(const space &sp, const chain &c, int n, const prime_field &f) {
    chain out;
    if (n == 0) return out; // reduced chains: no (-1)-simplices
    for (const auto &[x, v] : c)
        for (int i = 0; i <= n; ++i)
            chain_add(out, sp.face(x, i), static_cast<int64_t>(v) * f.sign(i), sp, f);
    return out;
}

sparse_matrix boundary_matrix(const space &sp, int n, const prime_field &f) {
    chain_basis src = reduced_basis(sp, n);
    chain_basis dst = reduced_basis(sp, n - 1);
    sparse_matrix m(dst.elems.size(), src.elems.size(), f.modulus());
    for (size_t j = 0; j < src.elems.size(); ++j)
        for (int i = 0; i <= n; ++i) {
            simplex y = sp.face(src.elems[j], i);
            if (!sp.is_bp(y)) m.add_at(dst.index.at(y), j, f.sign(i));
        }
    return m;
}

sparse_matrix induced_matrix(const pointed_map &g, int n, const prime_field &f) {
    chain_basis src = reduced_basis(g.src, n);
    chain_basis dst = reduced_basis(g.dst, n);
    sparse_matrix m(dst.elems.size(), src.elems.size(), f.modulus());
    for (size_t j = 0; j < src.elems.size(); ++j) {
        simplex y = g.apply(src.elems[j]);
        if (!g.dst.is_bp(y)) m.add_at(dst.index.at(y), j, 1);
    }
    return m;
}

chain push_chain(const pointed_map &g, const chain &c, const prime_field &f) {
    chain out;
    for (const auto &[x, v] : c) chain_add(out, g.apply(x), v, g.dst, f);
    return out;
}

chain cross_smash(const smash_product &p, const simplex &a, int m, const simplex &b,
                  int n, const prime_field &f) {
    require(p.factor.size() == 2, errc::invalid_argument, "cross needs two factors");
    chain out;
    if (p.factor[0].is_bp(a) || p.factor[1].is_bp(b)) return out;
    for (const shuffle_term &t : shuffle_terms(m, n)) {
        simplex xa = p.factor[0].apply_word(a, t.x_word);
        simplex xb = p.factor[1].apply_word(b, t.y_word);
        chain_add(out, p.classify({xa, xb}, m + n), t.sign, p.total, f);
    }
    return out;
}

chain cross_chains(const smash_product &p, const chain &za, int m, const chain &zb,
                   int n, const prime_field &f) {
    chain out;
    for (const auto &[a, va] : za)
        for (const auto &[b, vb] : zb) {
            chain term = cross_smash(p, a, m, b, n, f);
            chain_add(out, term, static_cast<int64_t>(f.mul(va, vb)), f);
        }
    return out;
}

complex_segment space_segment(const space &sp, int lo, int hi, uint32_t mod) {
    require(lo >= 0 && lo <= hi, errc::invalid_argument, "bad segment window");
    prime_field f(mod);
    complex_segment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.mod = mod;
    for (int k = lo; k <= hi; ++k) seg.dim[k] = sp.nonbp_simplices(k).size();
    for (int k = lo; k <= hi; ++k) {
        if (k == 0) {
            seg.d[0] = sparse_matrix(0, seg.dim[0], mod);
        } else {
            seg.d[k] = boundary_matrix(sp, k, f);
        }
    }
    seg.validate();
    return seg;
}

segment_map induced_segment(const pointed_map &g, int lo, int hi, uint32_t mod) {
    prime_field f(mod);
    segment_map m;
    for (int k = lo; k <= hi; ++k) m.f[k] = induced_matrix(g, k, f);
    return m;
}

} // namespace msh
