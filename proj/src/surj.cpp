#include "surj.hpp"

#include <algorithm>

namespace msh {

bool is_surjection(const surjection &h, int s) {
    std::vector<bool> hit(static_cast<size_t>(s), false);
    for (int v : h) {
        if (v < 0 || v >= s) return false;
        hit[static_cast<size_t>(v)] = true;
    }
    for (bool b : hit)
        if (!b) return false;
    return true;
}

std::vector<surjection> all_surjections(int t, int s) {
    require(t >= 0 && s >= 0, errc::invalid_argument, "bad arities");
    std::vector<surjection> out;
    if (t < s) return out;
    surjection h(static_cast<size_t>(t), 0);
    for (;;) {
        if (is_surjection(h, s)) out.push_back(h);
        int k = t - 1;
        while (k >= 0 && h[static_cast<size_t>(k)] == s - 1) h[static_cast<size_t>(k--)] = 0;
        if (k < 0) break;
        ++h[static_cast<size_t>(k)];
    }
    return out;
}

const smash_product &power_cache::power(int s) {
    require(s >= 1, errc::invalid_argument, "bad smash exponent");
    auto it = pow_.find(s);
    if (it == pow_.end()) it = pow_.emplace(s, smash_power(y_, s, qmax_)).first;
    return it->second;
}

chain apply_surjection_chain(const smash_product &from, const smash_product &to,
                             const surjection &h, const chain &c, int q,
                             const prime_field &f) {
    require(h.size() == to.factor.size(), errc::invalid_argument, "arity mismatch");
    chain out;
    for (const auto &[w, v] : c) {
        std::vector<simplex> coords = from.coords_of(w, q);
        std::vector<simplex> img(h.size());
        for (size_t k = 0; k < h.size(); ++k) img[k] = coords[static_cast<size_t>(h[k])];
        chain_add(out, to.classify(img, q), v, to.total, f);
    }
    return out;
}

omega_basis make_omega_basis(const space &x, int p, size_t smax, bool reversed) {
    omega_basis b;
    b.p = p;
    b.points = x.nonbp_simplices(p);
    if (reversed) std::reverse(b.points.begin(), b.points.end());
    for (size_t i = 0; i < b.points.size(); ++i) b.point_index[b.points[i]] = i;
    size_t m = b.points.size();
    b.smax = std::min(smax, m);
    for (size_t s = 1; s <= b.smax; ++s) {
        std::vector<size_t> cur(s);
        for (size_t k = 0; k < s; ++k) cur[k] = k;
        for (;;) {
            b.tuple_index[cur] = b.tuples.size();
            b.tuples.push_back(cur);
            size_t k = s;
            while (k > 0 && cur[k - 1] == m - s + (k - 1)) --k;
            if (k == 0) break;
            ++cur[k - 1];
            for (size_t j = k; j < s; ++j) cur[j] = cur[j - 1] + 1;
        }
    }
    return b;
}

std::optional<tuple_decomposition> support_decompose(const omega_basis &b,
                                                     const std::vector<simplex> &tuple,
                                                     const space &x) {
    for (const simplex &t : tuple)
        if (x.is_bp(t)) return std::nullopt;
    std::vector<size_t> idx;
    for (const simplex &t : tuple) idx.push_back(b.point_index.at(t));
    std::vector<size_t> support = idx;
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    require(support.size() <= b.smax, errc::window_violation, "tuple support too large");
    tuple_decomposition d;
    d.tuple = b.tuple_index.at(support);
    for (size_t v : idx) {
        size_t pos =
            static_cast<size_t>(std::lower_bound(support.begin(), support.end(), v) -
                                support.begin());
        d.h.push_back(static_cast<int>(pos));
    }
    return d;
}

chain evaluate_morphism_on(const functor_morphism &t, const omega_basis &b, const space &x,
                           power_cache &ys, const std::vector<simplex> &tuple,
                           const prime_field &f) {
    auto dec = support_decompose(b, tuple, x);
    if (!dec) return {};
    size_t s = b.tuples[dec->tuple].size();
    const smash_product &from = ys.power(static_cast<int>(s));
    const smash_product &to = ys.power(static_cast<int>(tuple.size()));
    return apply_surjection_chain(from, to, dec->h, t.values[dec->tuple], t.q, f);
}

chain apply_morphism_chain(const functor_morphism &t, const omega_basis &b, const space &x,
                           power_cache &xpow, power_cache &ys, const chain &c, int s,
                           const prime_field &f) {
    chain out;
    const smash_product &px = xpow.power(s);
    for (const auto &[w, v] : c) {
        chain part = evaluate_morphism_on(t, b, x, ys, px.coords_of(w, t.p), f);
        chain_add(out, part, v, f);
    }
    return out;
}

functor_morphism d_prime_morphism(const functor_morphism &t, const space &x,
                                  const omega_basis &bsrc, const omega_basis &bdst,
                                  power_cache &ys, const prime_field &f) {
    require(bsrc.p == t.p + 1 && bdst.p == t.p, errc::invalid_argument,
            "level mismatch in d'");
    functor_morphism out;
    out.p = bsrc.p;
    out.q = t.q;
    out.values.resize(bsrc.tuples.size());
    for (size_t k = 0; k < bsrc.tuples.size(); ++k) {
        const std::vector<size_t> &tup = bsrc.tuples[k];
        for (int j = 0; j <= bsrc.p; ++j) {
            std::vector<simplex> faced;
            faced.reserve(tup.size());
            for (size_t i : tup) faced.push_back(x.face(bsrc.points[i], j));
            chain part = evaluate_morphism_on(t, bdst, x, ys, faced, f);
            chain_add(out.values[k], part, (j % 2 == 0) ? 1 : -1, f);
        }
    }
    return out;
}

functor_morphism d_second_morphism(const functor_morphism &t, const omega_basis &b,
                                   power_cache &ys, const prime_field &f) {
    functor_morphism out;
    out.p = t.p;
    out.q = t.q - 1;
    out.values.reserve(t.values.size());
    for (size_t k = 0; k < t.values.size(); ++k) {
        const smash_product &py = ys.power(static_cast<int>(b.tuples[k].size()));
        out.values.push_back(boundary_chain(py.total, t.values[k], t.q, f));
    }
    return out;
}

functor_morphism identity_morphism(const space &x, const omega_basis &b, int p,
                                   power_cache &xpow, const prime_field &f) {
    functor_morphism out;
    out.p = p;
    out.q = p;
    out.values.resize(b.tuples.size());
    for (size_t k = 0; k < b.tuples.size(); ++k) {
        const std::vector<size_t> &tup = b.tuples[k];
        std::vector<simplex> pts;
        pts.reserve(tup.size());
        for (size_t i : tup) pts.push_back(b.points[i]);
        const smash_product &px = xpow.power(static_cast<int>(tup.size()));
        chain_add(out.values[k], px.classify(pts, p), 1, px.total, f);
    }
    return out;
}

functor_morphism compose_morphisms(const functor_morphism &outer, const omega_basis &bmid,
                                   const space &y, power_cache &ypow, power_cache &zpow,
                                   const functor_morphism &inner, const omega_basis &bsrc,
                                   const prime_field &f) {
    require(inner.q == outer.p, errc::invalid_argument, "degree mismatch in composition");
    functor_morphism out;
    out.p = inner.p;
    out.q = outer.q;
    out.values.reserve(inner.values.size());
    for (size_t k = 0; k < inner.values.size(); ++k)
        out.values.push_back(apply_morphism_chain(outer, bmid, y, ypow, zpow,
                                                  inner.values[k],
                                                  static_cast<int>(bsrc.tuples[k].size()),
                                                  f));
    return out;
}

} // namespace msh
