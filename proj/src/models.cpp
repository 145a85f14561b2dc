#include "models.hpp"

#include <algorithm>
#include <bit>

namespace msh {

static chain single_chain(const simplex &x, const space &sp, const prime_field &f) {
    chain c;
    chain_add(c, x, 1, sp, f);
    return c;
}

// ---- cosimplicial function-space levels ------------------------------------

cosimplicial_hom make_cosimplicial_hom(const space &x, const space &y, int pmax,
                                       int qmax) {
    require(pmax >= 0 && qmax >= 0, errc::invalid_argument, "bad window");
    cosimplicial_hom vh;
    vh.x = x;
    vh.y = y;
    vh.pmax = pmax;
    vh.qmax = qmax;
    std::vector<std::map<simplex, int, simplex_order>> idx(static_cast<size_t>(pmax) + 1);
    for (int p = 0; p <= pmax; ++p) {
        vh.args.push_back(x.nonbp_simplices(p));
        for (size_t k = 0; k < vh.args.back().size(); ++k)
            idx[static_cast<size_t>(p)][vh.args.back()[k]] = static_cast<int>(k);
        vh.level.push_back(make_function_space(y, vh.args.back().size(), qmax));
    }
    vh.arg_face.resize(static_cast<size_t>(pmax) + 1);
    vh.arg_deg.resize(static_cast<size_t>(pmax) + 1);
    for (int p = 1; p <= pmax; ++p) {
        auto &per_i = vh.arg_face[static_cast<size_t>(p)];
        per_i.resize(static_cast<size_t>(p) + 1);
        for (int i = 0; i <= p; ++i)
            for (const simplex &pt : vh.args[static_cast<size_t>(p)]) {
                simplex fx = x.face(pt, i);
                per_i[static_cast<size_t>(i)].push_back(
                    x.is_bp(fx) ? -1 : idx[static_cast<size_t>(p) - 1].at(fx));
            }
    }
    for (int p = 0; p < pmax; ++p) {
        auto &per_i = vh.arg_deg[static_cast<size_t>(p)];
        per_i.resize(static_cast<size_t>(p) + 1);
        for (int i = 0; i <= p; ++i)
            for (const simplex &pt : vh.args[static_cast<size_t>(p)])
                per_i[static_cast<size_t>(i)].push_back(
                    idx[static_cast<size_t>(p) + 1].at(x.degenerate(pt, i)));
    }
    return vh;
}

simplex coface_apply(const cosimplicial_hom &vh, int p, int i, const simplex &v, int q) {
    require(p >= 1 && p <= vh.pmax && i >= 0 && i <= p, errc::invalid_argument,
            "coface out of range");
    const function_space &src = vh.level[static_cast<size_t>(p) - 1];
    const function_space &dst = vh.level[static_cast<size_t>(p)];
    std::vector<simplex> vals = src.values_of(v, q);
    const auto &row = vh.arg_face[static_cast<size_t>(p)][static_cast<size_t>(i)];
    std::vector<simplex> out(dst.arity);
    for (size_t k = 0; k < dst.arity; ++k)
        out[k] = row[k] < 0 ? vh.y.bp_simplex(q) : vals[static_cast<size_t>(row[k])];
    return dst.classify(out, q);
}

simplex codegeneracy_apply(const cosimplicial_hom &vh, int p, int i, const simplex &v,
                           int q) {
    require(p >= 0 && p < vh.pmax && i >= 0 && i <= p, errc::invalid_argument,
            "codegeneracy out of range");
    const function_space &src = vh.level[static_cast<size_t>(p) + 1];
    const function_space &dst = vh.level[static_cast<size_t>(p)];
    std::vector<simplex> vals = src.values_of(v, q);
    const auto &row = vh.arg_deg[static_cast<size_t>(p)][static_cast<size_t>(i)];
    std::vector<simplex> out(dst.arity);
    for (size_t k = 0; k < dst.arity; ++k) out[k] = vals[static_cast<size_t>(row[k])];
    return dst.classify(out, q);
}

// ---- truncated bicomplexes ---------------------------------------------------

void bicomplex_window::validate() const {
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            const size_t sp = static_cast<size_t>(p), sq = static_cast<size_t>(q);
            if (p >= 2)
                require(matmul(dprime[sp][sq], dprime[sp - 1][sq]).is_zero(),
                        errc::check_failed, "d'd' is nonzero");
            if (q >= 2)
                require(matmul(dsecond[sp][sq - 1], dsecond[sp][sq]).is_zero(),
                        errc::check_failed, "d''d'' is nonzero");
            if (p >= 1 && q >= 1)
                require(equal(matmul(dsecond[sp][sq], dprime[sp][sq]),
                              matmul(dprime[sp][sq - 1], dsecond[sp - 1][sq])),
                        errc::check_failed, "d' and d'' do not commute");
        }
}

static std::vector<std::pair<int, int>> diag_blocks(const bicomplex_window &w, int n) {
    std::vector<std::pair<int, int>> b;
    for (int p = std::max(0, -n); p <= w.P && n + p <= w.Q; ++p)
        b.push_back({p, n + p});
    return b;
}

static void scatter(sparse_matrix &m, const sparse_matrix &blk, size_t r0, size_t c0,
                    int64_t scale) {
    for (const auto &[pos, v] : blk.entries)
        m.add_at(r0 + pos.first, c0 + pos.second, static_cast<int64_t>(v) * scale);
}

size_t diag_segment::offset_of(int n, int p) const {
    const auto &bl = blocks.at(n);
    for (size_t i = 0; i < bl.size(); ++i)
        if (bl[i].first == p) return offsets.at(n)[i];
    fail(errc::invalid_argument, "no block at that level");
}

diag_segment diag_of(const bicomplex_window &w, int lo, int hi) {
    require(0 <= lo && lo <= hi, errc::invalid_argument, "bad degree range");
    diag_segment dg;
    dg.seg.lo = lo;
    dg.seg.hi = hi;
    dg.seg.mod = w.mod;
    for (int n = lo; n <= hi; ++n) {
        auto bl = diag_blocks(w, n);
        std::vector<size_t> off;
        size_t run = 0;
        for (auto &[p, q] : bl) {
            off.push_back(run);
            run += w.dim[static_cast<size_t>(p)][static_cast<size_t>(q)];
        }
        dg.blocks[n] = bl;
        dg.offsets[n] = off;
        dg.seg.dim[n] = run;
    }
    for (int n = lo; n <= hi; ++n) {
        auto bdst = diag_blocks(w, n - 1);
        std::vector<size_t> offd;
        size_t rows = 0;
        for (auto &[p, q] : bdst) {
            offd.push_back(rows);
            rows += w.dim[static_cast<size_t>(p)][static_cast<size_t>(q)];
        }
        auto dst_off = [&](int p) -> long {
            for (size_t i = 0; i < bdst.size(); ++i)
                if (bdst[i].first == p) return static_cast<long>(offd[i]);
            return -1;
        };
        sparse_matrix m(rows, dg.seg.dim.at(n), w.mod);
        const int sprime = (n % 2 == 0) ? -1 : 1; // the -(-1)^n weight on d'
        const auto &bl = dg.blocks.at(n);
        const auto &off = dg.offsets.at(n);
        for (size_t bi = 0; bi < bl.size(); ++bi) {
            auto [p, q] = bl[bi];
            const size_t sp = static_cast<size_t>(p), sq = static_cast<size_t>(q);
            if (q >= 1) {
                long r0 = dst_off(p);
                if (r0 >= 0)
                    scatter(m, w.dsecond[sp][sq], static_cast<size_t>(r0), off[bi], 1);
            }
            if (p + 1 <= w.P) {
                long r0 = dst_off(p + 1);
                if (r0 >= 0)
                    scatter(m, w.dprime[sp + 1][sq], static_cast<size_t>(r0), off[bi],
                            sprime);
            }
        }
        dg.seg.d[n] = m;
    }
    return dg;
}

// ---- the cosimplicial model --------------------------------------------------

d_model build_d_model(const space &x, const space &y, int P, int Q,
                      const prime_field &f) {
    d_model d;
    d.vh = make_cosimplicial_hom(x, y, P, Q);
    d.win.P = P;
    d.win.Q = Q;
    d.win.mod = f.modulus();
    const size_t sp1 = static_cast<size_t>(P) + 1, sq1 = static_cast<size_t>(Q) + 1;
    d.basis.assign(sp1, std::vector<chain_basis>(sq1));
    d.win.dim.assign(sp1, std::vector<size_t>(sq1, 0));
    d.win.dprime.assign(sp1, std::vector<sparse_matrix>(sq1));
    d.win.dsecond.assign(sp1, std::vector<sparse_matrix>(sq1));
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            d.basis[p][q] = reduced_basis(d.vh.level[p].total, q);
            d.win.dim[p][q] = d.basis[p][q].elems.size();
        }
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            if (q >= 1) d.win.dsecond[p][q] = boundary_matrix(d.vh.level[p].total, q, f);
            if (p >= 1) {
                sparse_matrix m(d.win.dim[p][q], d.win.dim[p - 1][q], f.modulus());
                for (size_t c = 0; c < d.basis[p - 1][q].elems.size(); ++c)
                    for (int i = 0; i <= p; ++i) {
                        simplex img =
                            coface_apply(d.vh, p, i, d.basis[p - 1][q].elems[c], q);
                        if (d.vh.level[p].total.is_bp(img)) continue;
                        m.add_at(d.basis[p][q].index.at(img), c,
                                 (i % 2 == 0) ? 1 : -1);
                    }
                d.win.dprime[p][q] = m;
            }
        }
    return d;
}

std::vector<uint32_t> d_coords(const d_model &d, int p, int q, const chain &c) {
    std::vector<uint32_t> v(d.win.dim[static_cast<size_t>(p)][static_cast<size_t>(q)], 0);
    for (const auto &[s, co] : c)
        v[d.basis[static_cast<size_t>(p)][static_cast<size_t>(q)].index.at(s)] = co;
    return v;
}

// ---- the functor-morphism model ------------------------------------------------

g_model build_g_model(const space &x, const space &y, int P, int Q,
                      const prime_field &f, bool reversed) {
    require(P >= 0 && Q >= 0, errc::invalid_argument, "bad window");
    g_model g;
    g.x = x;
    g.y = y;
    g.P = P;
    g.Q = Q;
    g.ypow = power_cache(y, Q);
    g.win.P = P;
    g.win.Q = Q;
    g.win.mod = f.modulus();
    const size_t sp1 = static_cast<size_t>(P) + 1, sq1 = static_cast<size_t>(Q) + 1;
    g.basis.assign(sp1, std::vector<hom_basis>(sq1));
    g.win.dim.assign(sp1, std::vector<size_t>(sq1, 0));
    g.win.dprime.assign(sp1, std::vector<sparse_matrix>(sq1));
    g.win.dsecond.assign(sp1, std::vector<sparse_matrix>(sq1));
    for (int p = 0; p <= P; ++p)
        g.tuples.push_back(make_omega_basis(x, p, static_cast<size_t>(-1), reversed));
    // per-power reduced bases, shared across levels
    std::map<int, std::vector<chain_basis>> pow_basis; // arity -> per degree
    auto power_basis = [&](int s, int q) -> const chain_basis & {
        auto it = pow_basis.find(s);
        if (it == pow_basis.end()) {
            std::vector<chain_basis> per(sq1);
            for (int qq = 0; qq <= Q; ++qq)
                per[static_cast<size_t>(qq)] =
                    reduced_basis(g.ypow.power(s).total, qq);
            it = pow_basis.emplace(s, std::move(per)).first;
        }
        return it->second[static_cast<size_t>(q)];
    };
    for (int p = 0; p <= P; ++p) {
        const omega_basis &b = g.tuples[static_cast<size_t>(p)];
        for (int q = 0; q <= Q; ++q) {
            hom_basis &hb = g.basis[p][q];
            for (size_t k = 0; k < b.tuples.size(); ++k)
                for (const simplex &w :
                     power_basis(static_cast<int>(b.tuples[k].size()), q).elems) {
                    hb.index[{k, w}] = hb.elems.size();
                    hb.elems.push_back({k, w});
                }
            g.win.dim[p][q] = hb.elems.size();
        }
    }
    // d'': postcomposition with the boundary of each smash power, blockwise
    for (int p = 0; p <= P; ++p) {
        const omega_basis &b = g.tuples[static_cast<size_t>(p)];
        for (int q = 1; q <= Q; ++q) {
            sparse_matrix m(g.win.dim[p][q - 1], g.win.dim[p][q], f.modulus());
            for (size_t k = 0; k < b.tuples.size(); ++k) {
                int s = static_cast<int>(b.tuples[k].size());
                const space &tot = g.ypow.power(s).total;
                for (const simplex &w : power_basis(s, q).elems) {
                    size_t col = g.basis[p][q].index.at({k, w});
                    chain bd = boundary_chain(tot, single_chain(w, tot, f), q, f);
                    for (const auto &[iw, co] : bd)
                        m.add_at(g.basis[p][q - 1].index.at({k, iw}), col, co);
                }
            }
            g.win.dsecond[p][q] = m;
        }
    }
    // d': each faced tuple decomposes through its support, pulling the value
    // of the smaller tuple through the induced coordinate picking
    for (int p = 1; p <= P; ++p) {
        const omega_basis &b = g.tuples[static_cast<size_t>(p)];
        const omega_basis &bprev = g.tuples[static_cast<size_t>(p) - 1];
        for (int q = 0; q <= Q; ++q) {
            sparse_matrix m(g.win.dim[p][q], g.win.dim[p - 1][q], f.modulus());
            for (size_t k = 0; k < b.tuples.size(); ++k) {
                const auto &tup = b.tuples[k];
                int s = static_cast<int>(tup.size());
                const smash_product &to = g.ypow.power(s);
                for (int j = 0; j <= p; ++j) {
                    std::vector<simplex> faced;
                    faced.reserve(tup.size());
                    for (size_t i : tup) faced.push_back(x.face(b.points[i], j));
                    auto dec = support_decompose(bprev, faced, x);
                    if (!dec) continue;
                    int sf = static_cast<int>(bprev.tuples[dec->tuple].size());
                    const smash_product &from = g.ypow.power(sf);
                    int sign = (j % 2 == 0) ? 1 : -1;
                    for (const simplex &w : power_basis(sf, q).elems) {
                        size_t col = g.basis[p - 1][q].index.at({dec->tuple, w});
                        chain img = apply_surjection_chain(
                            from, to, dec->h, single_chain(w, from.total, f), q, f);
                        for (const auto &[iw, co] : img)
                            m.add_at(g.basis[p][q].index.at({k, iw}), col,
                                     static_cast<int64_t>(co) * sign);
                    }
                }
            }
            g.win.dprime[p][q] = m;
        }
    }
    return g;
}

std::vector<uint32_t> morphism_coords(const g_model &g, int p, int q,
                                      const functor_morphism &t) {
    const hom_basis &hb = g.basis[static_cast<size_t>(p)][static_cast<size_t>(q)];
    std::vector<uint32_t> v(hb.elems.size(), 0);
    for (size_t k = 0; k < t.values.size(); ++k)
        for (const auto &[w, co] : t.values[k]) v[hb.index.at({k, w})] = co;
    return v;
}

functor_morphism coords_morphism(const g_model &g, int p, int q,
                                 const std::vector<uint32_t> &v) {
    const hom_basis &hb = g.basis[static_cast<size_t>(p)][static_cast<size_t>(q)];
    require(v.size() == hb.elems.size(), errc::invalid_argument, "coordinate mismatch");
    functor_morphism t;
    t.p = p;
    t.q = q;
    t.values.assign(g.tuples[static_cast<size_t>(p)].tuples.size(), chain{});
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i]) t.values[hb.elems[i].first][hb.elems[i].second] = v[i];
    return t;
}

// ---- comparison maps -----------------------------------------------------------

functor_morphism epsilon_of_simplex(g_model &g, const d_model &d, int p, int q,
                                    const simplex &v, const prime_field &f) {
    const omega_basis &b = g.tuples[static_cast<size_t>(p)];
    const function_space &vp = d.vh.level[static_cast<size_t>(p)];
    std::vector<simplex> vals = vp.values_of(v, q);
    std::map<simplex, size_t, simplex_order> arg;
    for (size_t k = 0; k < d.vh.args[static_cast<size_t>(p)].size(); ++k)
        arg[d.vh.args[static_cast<size_t>(p)][k]] = k;
    functor_morphism t;
    t.p = p;
    t.q = q;
    t.values.resize(b.tuples.size());
    for (size_t k = 0; k < b.tuples.size(); ++k) {
        const auto &tup = b.tuples[k];
        std::vector<simplex> ys(tup.size());
        for (size_t i = 0; i < tup.size(); ++i) ys[i] = vals[arg.at(b.points[tup[i]])];
        const smash_product &py = g.ypow.power(static_cast<int>(tup.size()));
        chain_add(t.values[k], py.classify(ys, q), 1, py.total, f);
    }
    return t;
}

sparse_matrix epsilon_matrix(g_model &g, const d_model &d, int p, int q,
                             const prime_field &f) {
    const chain_basis &db = d.basis[static_cast<size_t>(p)][static_cast<size_t>(q)];
    sparse_matrix m(g.win.dim[static_cast<size_t>(p)][static_cast<size_t>(q)],
                    db.elems.size(), f.modulus());
    for (size_t c = 0; c < db.elems.size(); ++c) {
        functor_morphism t = epsilon_of_simplex(g, d, p, q, db.elems[c], f);
        std::vector<uint32_t> col = morphism_coords(g, p, q, t);
        for (size_t r = 0; r < col.size(); ++r)
            if (col[r]) m.add_at(r, c, col[r]);
    }
    return m;
}

chain xi_of_morphism(g_model &g, const d_model &d, int p, int q,
                     const functor_morphism &t, const prime_field &f) {
    const omega_basis &b = g.tuples[static_cast<size_t>(p)];
    const function_space &vp = d.vh.level[static_cast<size_t>(p)];
    std::map<simplex, size_t, simplex_order> arg;
    for (size_t k = 0; k < d.vh.args[static_cast<size_t>(p)].size(); ++k)
        arg[d.vh.args[static_cast<size_t>(p)][k]] = k;
    chain out;
    for (size_t k = 0; k < b.tuples.size(); ++k) {
        if (t.values[k].empty()) continue;
        const auto &tup = b.tuples[k];
        size_t s = tup.size();
        const smash_product &py = g.ypow.power(static_cast<int>(s));
        for (const auto &[w, co] : t.values[k]) {
            std::vector<simplex> coords = py.coords_of(w, q);
            for (uint32_t fm = 1; fm < (1u << s); ++fm) {
                int sign =
                    ((s - static_cast<size_t>(std::popcount(fm))) % 2 == 0) ? 1 : -1;
                std::vector<simplex> vals(vp.arity, d.vh.y.bp_simplex(q));
                for (size_t i = 0; i < s; ++i)
                    if (fm >> i & 1) vals[arg.at(b.points[tup[i]])] = coords[i];
                chain_add(out, vp.classify(vals, q), static_cast<int64_t>(co) * sign,
                          vp.total, f);
            }
        }
    }
    return out;
}

sparse_matrix xi_matrix(g_model &g, const d_model &d, int p, int q,
                        const prime_field &f) {
    const hom_basis &hb = g.basis[static_cast<size_t>(p)][static_cast<size_t>(q)];
    sparse_matrix m(d.win.dim[static_cast<size_t>(p)][static_cast<size_t>(q)],
                    hb.elems.size(), f.modulus());
    for (size_t c = 0; c < hb.elems.size(); ++c) {
        functor_morphism t;
        t.p = p;
        t.q = q;
        t.values.assign(g.tuples[static_cast<size_t>(p)].tuples.size(), chain{});
        t.values[hb.elems[c].first][hb.elems[c].second] = 1;
        std::vector<uint32_t> col = d_coords(d, p, q, xi_of_morphism(g, d, p, q, t, f));
        for (size_t r = 0; r < col.size(); ++r)
            if (col[r]) m.add_at(r, c, col[r]);
    }
    return m;
}

functor_morphism lambda_of_simplex(const map_space &ms, g_model &g, int p, int q,
                                   const simplex &z, const prime_field &f) {
    const int n = q - p;
    require(n >= 0 && ms.total.degree_of(z) == n, errc::invalid_argument,
            "degree mismatch in lambda");
    const omega_basis &b = g.tuples[static_cast<size_t>(p)];
    functor_morphism t;
    t.p = p;
    t.q = q;
    t.values.assign(b.tuples.size(), chain{});
    for (const shuffle_term &st : shuffle_terms(n, p)) {
        simplex fz = ms.total.apply_word(z, st.x_word);
        for (size_t k = 0; k < b.tuples.size(); ++k) {
            const auto &tup = b.tuples[k];
            std::vector<simplex> ys(tup.size());
            for (size_t i = 0; i < tup.size(); ++i)
                ys[i] = ms.evaluate(fz, q, g.x.apply_word(b.points[tup[i]], st.y_word));
            const smash_product &py = g.ypow.power(static_cast<int>(tup.size()));
            chain_add(t.values[k], py.classify(ys, q), st.sign, py.total, f);
        }
    }
    return t;
}

functor_morphism lambda_of_chain(const map_space &ms, g_model &g, int p, int q,
                                 const chain &z, const prime_field &f) {
    functor_morphism t;
    t.p = p;
    t.q = q;
    t.values.assign(g.tuples[static_cast<size_t>(p)].tuples.size(), chain{});
    for (const auto &[zs, co] : z) {
        functor_morphism part = lambda_of_simplex(ms, g, p, q, zs, f);
        for (size_t k = 0; k < t.values.size(); ++k)
            chain_add(t.values[k], part.values[k], co, f);
    }
    return t;
}

chain mu_of_simplex(const map_space &ms, const d_model &d, int p, int q,
                    const simplex &z, const prime_field &f) {
    const int n = q - p;
    require(n >= 0 && ms.total.degree_of(z) == n, errc::invalid_argument,
            "degree mismatch in mu");
    const function_space &vp = d.vh.level[static_cast<size_t>(p)];
    space dp = delta_plus(p);
    simplex iota = fundamental_simplex(dp, p);
    const std::vector<simplex> &args = d.vh.args[static_cast<size_t>(p)];
    std::vector<pointed_map> chars;
    chars.reserve(args.size());
    for (const simplex &pt : args) chars.push_back(characteristic_map(d.vh.x, pt, p));
    chain out;
    for (const shuffle_term &st : shuffle_terms(n, p)) {
        simplex fz = ms.total.apply_word(z, st.x_word);
        simplex r = dp.apply_word(iota, st.y_word);
        std::vector<simplex> vals(args.size());
        for (size_t k = 0; k < args.size(); ++k)
            vals[k] = ms.evaluate(fz, q, chars[k].apply(r));
        chain_add(out, vp.classify(vals, q), st.sign, vp.total, f);
    }
    return out;
}

chain mu_of_chain(const map_space &ms, const d_model &d, int p, int q, const chain &z,
                  const prime_field &f) {
    chain out;
    for (const auto &[zs, co] : z)
        chain_add(out, mu_of_simplex(ms, d, p, q, zs, f), co, f);
    return out;
}

// ---- model-level checks ---------------------------------------------------------

size_t check_triangle(const map_space &ms, g_model &g, const d_model &d, int nmax,
                      const prime_field &f) {
    size_t count = 0;
    for (int n = 0; n <= nmax; ++n)
        for (const simplex &z : ms.total.nonbp_simplices(n))
            for (int p = 0; p <= g.P; ++p) {
                int q = n + p;
                if (q > g.Q) continue;
                chain m = mu_of_chain(ms, d, p, q, single_chain(z, ms.total, f), f);
                functor_morphism via;
                via.p = p;
                via.q = q;
                via.values.assign(g.tuples[static_cast<size_t>(p)].tuples.size(),
                                  chain{});
                for (const auto &[v, co] : m) {
                    functor_morphism e = epsilon_of_simplex(g, d, p, q, v, f);
                    for (size_t k = 0; k < e.values.size(); ++k)
                        chain_add(via.values[k], e.values[k], co, f);
                }
                functor_morphism lam = lambda_of_simplex(ms, g, p, q, z, f);
                require(via.values == lam.values, errc::check_failed,
                        "triangle identity failed");
                ++count;
            }
    return count;
}

static std::vector<uint32_t> mu_vector(const map_space &ms, const d_model &d,
                                       const diag_segment &dg, int n, const chain &z,
                                       const prime_field &f) {
    std::vector<uint32_t> v(dg.seg.dim.at(n), 0);
    const auto &bl = dg.blocks.at(n);
    const auto &off = dg.offsets.at(n);
    for (size_t b = 0; b < bl.size(); ++b) {
        auto [p, q] = bl[b];
        std::vector<uint32_t> co = d_coords(d, p, q, mu_of_chain(ms, d, p, q, z, f));
        for (size_t i = 0; i < co.size(); ++i) v[off[b] + i] = co[i];
    }
    return v;
}

static std::vector<uint32_t> lambda_vector(const map_space &ms, g_model &g,
                                           const diag_segment &dg, int n, const chain &z,
                                           const prime_field &f) {
    std::vector<uint32_t> v(dg.seg.dim.at(n), 0);
    const auto &bl = dg.blocks.at(n);
    const auto &off = dg.offsets.at(n);
    for (size_t b = 0; b < bl.size(); ++b) {
        auto [p, q] = bl[b];
        std::vector<uint32_t> co =
            morphism_coords(g, p, q, lambda_of_chain(ms, g, p, q, z, f));
        for (size_t i = 0; i < co.size(); ++i) v[off[b] + i] = co[i];
    }
    return v;
}

size_t check_comparison_chain_maps(const map_space &ms, g_model &g, const d_model &d,
                                   const diag_segment &dgg, const diag_segment &dgd,
                                   int nmax, const prime_field &f) {
    size_t count = 0;
    for (int n = 0; n <= nmax; ++n)
        for (const simplex &z : ms.total.nonbp_simplices(n)) {
            chain cz = single_chain(z, ms.total, f);
            chain bz = boundary_chain(ms.total, cz, n, f);
            std::vector<uint32_t> lhs =
                matvec(dgd.seg.d.at(n), mu_vector(ms, d, dgd, n, cz, f));
            std::vector<uint32_t> rhs =
                n == 0 ? std::vector<uint32_t>(lhs.size(), 0)
                       : mu_vector(ms, d, dgd, n - 1, bz, f);
            require(lhs == rhs, errc::check_failed,
                    "mu does not commute with the boundary");
            std::vector<uint32_t> lg =
                matvec(dgg.seg.d.at(n), lambda_vector(ms, g, dgg, n, cz, f));
            std::vector<uint32_t> rg =
                n == 0 ? std::vector<uint32_t>(lg.size(), 0)
                       : lambda_vector(ms, g, dgg, n - 1, bz, f);
            require(lg == rg, errc::check_failed,
                    "lambda does not commute with the boundary");
            count += 2;
        }
    return count;
}

pointed_map vertex_to_map(const map_space &ms, const simplex &f0) {
    require(ms.total.degree_of(f0) == 0, errc::invalid_argument, "not a vertex");
    std::vector<simplex> assign(ms.x.gens.size());
    for (uint32_t gx = 0; gx < ms.x.gens.size(); ++gx) {
        int k = ms.x.gens[gx].dim;
        simplex fk = ms.total.apply_word(f0, k == 0 ? 0u : (1u << k) - 1u);
        assign[gx] = ms.evaluate(fk, k, simplex{gx, 0});
    }
    return map_from_assignment(ms.x, ms.y, std::move(assign));
}

simplex map_to_vertex(const map_space &ms, const pointed_map &g) {
    const smash_product &d0 = ms.dom[0];
    std::vector<simplex> assign(d0.total.gens.size());
    for (uint32_t gg = 0; gg < d0.total.gens.size(); ++gg) {
        int k = d0.total.gens[gg].dim;
        if (gg == d0.total.basepoint) {
            assign[gg] = ms.y.bp_simplex(k);
            continue;
        }
        assign[gg] = g.apply(d0.coords_of(simplex{gg, 0}, k)[0]);
    }
    return ms.classify_map(0, assign);
}

size_t check_degree_zero_composition(const space &x, const space &y, const space &z,
                                     int P, const prime_field &f, uint64_t budget) {
    size_t count = 0;
    map_space mxy = make_map_space(x, y, 0, budget);
    map_space myz = make_map_space(y, z, 0, budget);
    map_space mxz = make_map_space(x, z, 0, budget);
    g_model gxy = build_g_model(x, y, P, P, f);
    g_model gyz = build_g_model(y, z, P, P, f);
    g_model gxz = build_g_model(x, z, P, P, f);
    for (const simplex &g0 : myz.total.nonbp_simplices(0))
        for (const simplex &f0 : mxy.total.nonbp_simplices(0)) {
            pointed_map gm = vertex_to_map(myz, g0);
            pointed_map fm = vertex_to_map(mxy, f0);
            simplex comp = map_to_vertex(mxz, compose_maps(gm, fm));
            for (int p = 0; p <= P; ++p) {
                functor_morphism lhs;
                if (mxz.total.is_bp(comp)) {
                    lhs.p = p;
                    lhs.q = p;
                    lhs.values.assign(gxz.tuples[static_cast<size_t>(p)].tuples.size(),
                                      chain{});
                } else {
                    lhs = lambda_of_simplex(mxz, gxz, p, p, comp, f);
                }
                functor_morphism bq = lambda_of_simplex(myz, gyz, p, p, g0, f);
                functor_morphism aq = lambda_of_simplex(mxy, gxy, p, p, f0, f);
                functor_morphism rhs = compose_morphisms(
                    bq, gyz.tuples[static_cast<size_t>(p)], y, gxy.ypow, gxz.ypow, aq,
                    gxy.tuples[static_cast<size_t>(p)], f);
                require(lhs.values == rhs.values, errc::check_failed,
                        "degree-zero composition mismatch");
                ++count;
            }
        }
    return count;
}

static chain push_power(const pointed_map &fm, const smash_product &from,
                        const smash_product &to, const chain &c, int q,
                        const prime_field &f) {
    chain out;
    for (const auto &[w, v] : c) {
        std::vector<simplex> co = from.coords_of(w, q);
        for (simplex &s : co) s = fm.apply(s);
        chain_add(out, to.classify(co, q), v, to.total, f);
    }
    return out;
}

std::vector<std::vector<sparse_matrix>> induced_g_matrices(g_model &src, g_model &dst,
                                                           const pointed_map &e,
                                                           const pointed_map &fmap,
                                                           const prime_field &f) {
    require(src.P == dst.P && src.Q == dst.Q, errc::invalid_argument,
            "window mismatch");
    std::vector<std::vector<sparse_matrix>> out(
        static_cast<size_t>(src.P) + 1,
        std::vector<sparse_matrix>(static_cast<size_t>(src.Q) + 1));
    for (int p = 0; p <= src.P; ++p) {
        const omega_basis &bs = src.tuples[static_cast<size_t>(p)];
        const omega_basis &bd = dst.tuples[static_cast<size_t>(p)];
        // e-images of the destination tuples, shared across degrees
        std::vector<std::vector<simplex>> imgs(bd.tuples.size());
        for (size_t k = 0; k < bd.tuples.size(); ++k)
            for (size_t i : bd.tuples[k]) imgs[k].push_back(e.apply(bd.points[i]));
        for (int q = 0; q <= src.Q; ++q) {
            const hom_basis &hs = src.basis[p][q];
            sparse_matrix m(dst.win.dim[p][q], src.win.dim[p][q], f.modulus());
            for (size_t c = 0; c < hs.elems.size(); ++c) {
                functor_morphism t;
                t.p = p;
                t.q = q;
                t.values.assign(bs.tuples.size(), chain{});
                t.values[hs.elems[c].first][hs.elems[c].second] = 1;
                for (size_t k = 0; k < bd.tuples.size(); ++k) {
                    chain val =
                        evaluate_morphism_on(t, bs, src.x, src.ypow, imgs[k], f);
                    if (val.empty()) continue;
                    int s = static_cast<int>(bd.tuples[k].size());
                    chain pushed = push_power(fmap, src.ypow.power(s),
                                              dst.ypow.power(s), val, q, f);
                    for (const auto &[w, co] : pushed)
                        m.add_at(dst.basis[p][q].index.at({k, w}), c, co);
                }
            }
            out[p][q] = m;
        }
    }
    return out;
}

segment_map blockwise_segment_map(const diag_segment &a, const diag_segment &b,
                                  const std::vector<std::vector<sparse_matrix>> &m,
                                  int lo, int hi, uint32_t mod) {
    segment_map sm;
    for (int n = lo; n <= hi; ++n) {
        const auto &bl = a.blocks.at(n);
        require(bl == b.blocks.at(n), errc::invalid_argument, "block mismatch");
        sparse_matrix mat(b.seg.dim.at(n), a.seg.dim.at(n), mod);
        for (size_t i = 0; i < bl.size(); ++i) {
            auto [p, q] = bl[i];
            scatter(mat, m[static_cast<size_t>(p)][static_cast<size_t>(q)],
                    b.offsets.at(n)[i], a.offsets.at(n)[i], 1);
        }
        sm.f[n] = mat;
    }
    return sm;
}

} // namespace msh
