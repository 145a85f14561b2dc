#include "reduction.hpp"

#include <algorithm>
#include <bit>

namespace msh {

// ---- vertex-list calculus on the double simplex -------------------------------

namespace {

int vp_degree(const vertex_pair &t) { return static_cast<int>(t.u.size()) - 1; }

bool vp_degenerate(const vertex_pair &t) {
    for (size_t i = 0; i + 1 < t.u.size(); ++i)
        if (t.u[i] == t.u[i + 1] && t.v[i] == t.v[i + 1]) return true;
    return false;
}

vertex_pair vp_face(const vertex_pair &t, int i) {
    vertex_pair r = t;
    r.u.erase(r.u.begin() + i);
    r.v.erase(r.v.begin() + i);
    return r;
}

void pc_add(pair_chain &c, const vertex_pair &t, int64_t v, const prime_field &f) {
    if (vp_degenerate(t)) return;
    uint32_t r = f.reduce(v);
    if (r == 0) return;
    auto it = c.find(t);
    if (it == c.end()) {
        c.emplace(t, r);
        return;
    }
    it->second = f.add(it->second, r);
    if (it->second == 0) c.erase(it);
}

pair_chain pc_boundary(const pair_chain &c, const prime_field &f) {
    pair_chain out;
    for (const auto &[t, v] : c) {
        int k = vp_degree(t);
        if (k == 0) continue;
        for (int i = 0; i <= k; ++i)
            pc_add(out, vp_face(t, i), static_cast<int64_t>(v) * (i % 2 ? -1 : 1), f);
    }
    return out;
}

// s_j on a vertex list duplicates entry j; word letters act ascending.
std::vector<int> vl_word(std::vector<int> s, uint32_t word) {
    while (word) {
        int j = std::countr_zero(word);
        word &= word - 1;
        int dup = s[j];
        s.insert(s.begin() + j, dup);
    }
    return s;
}

// a after u: (a o u)[i] = a[u[i]].
std::vector<int> vl_compose(const std::vector<int> &a, const std::vector<int> &u) {
    std::vector<int> r(u.size());
    for (size_t i = 0; i < u.size(); ++i) r[i] = a[u[i]];
    return r;
}

std::vector<int> vl_iota(int q) {
    std::vector<int> r(q + 1);
    for (int i = 0; i <= q; ++i) r[i] = i;
    return r;
}

vertex_pair vp_diag(int q) { return {vl_iota(q), vl_iota(q)}; }

bool vl_nondeg(const std::vector<int> &a) {
    for (size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] == a[i + 1]) return false;
    return true;
}

// A tensor term front (x) back on the double simplex.
struct vertex_tens {
    std::vector<int> a, b;
    bool operator<(const vertex_tens &o) const {
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
};

using tens_chain = std::map<vertex_tens, uint32_t>;

void ts_add(tens_chain &c, const vertex_tens &t, int64_t v, const prime_field &f) {
    if (!vl_nondeg(t.a) || !vl_nondeg(t.b)) return;
    uint32_t r = f.reduce(v);
    if (r == 0) return;
    auto it = c.find(t);
    if (it == c.end()) {
        c.emplace(t, r);
        return;
    }
    it->second = f.add(it->second, r);
    if (it->second == 0) c.erase(it);
}

// Front/back splitting of one pair.
tens_chain vp_aw(const vertex_pair &t, const prime_field &f, uint32_t coeff) {
    tens_chain out;
    int k = vp_degree(t);
    for (int i = 0; i <= k; ++i) {
        vertex_tens s;
        s.a.assign(t.u.begin(), t.u.begin() + i + 1);
        s.b.assign(t.v.begin() + i, t.v.end());
        ts_add(out, s, coeff, f);
    }
    return out;
}

tens_chain pc_aw(const pair_chain &c, const prime_field &f) {
    tens_chain out;
    for (const auto &[t, v] : c)
        for (const auto &[s, w] : vp_aw(t, f, v)) ts_add(out, s, w, f);
    return out;
}

// Shuffle section of one tensor term.
void ts_ez(pair_chain &out, const vertex_tens &s, uint32_t coeff, const prime_field &f) {
    int da = static_cast<int>(s.a.size()) - 1;
    int db = static_cast<int>(s.b.size()) - 1;
    for (const auto &st : shuffle_terms(da, db)) {
        vertex_pair t{vl_word(s.a, st.x_word), vl_word(s.b, st.y_word)};
        pc_add(out, t, static_cast<int64_t>(coeff) * st.sign, f);
    }
}

pair_chain pc_ezaw(const pair_chain &c, const prime_field &f) {
    pair_chain out;
    for (const auto &[s, w] : pc_aw(c, f)) ts_ez(out, s, w, f);
    return out;
}

// Naturality extension of the stored tables to arbitrary pair chains.
pair_chain apply_phi(const std::vector<std::vector<std::pair<vertex_pair, uint32_t>>> &tab,
                     const pair_chain &c, const prime_field &f) {
    pair_chain out;
    for (const auto &[t, v] : c) {
        int k = vp_degree(t);
        require(k >= 0 && k < static_cast<int>(tab.size()), errc::internal_error,
                "interchange table degree overflow");
        for (const auto &[pt, pc] : tab[k]) {
            vertex_pair nt{vl_compose(t.u, pt.u), vl_compose(t.v, pt.v)};
            pc_add(out, nt, static_cast<int64_t>(v) * pc, f);
        }
    }
    return out;
}

pair_chain pc_sub(pair_chain a, const pair_chain &b, const prime_field &f) {
    for (const auto &[t, v] : b) pc_add(a, t, -static_cast<int64_t>(v), f);
    return a;
}

std::vector<std::pair<vertex_pair, uint32_t>> pc_list(const pair_chain &c) {
    return {c.begin(), c.end()};
}

// Cone at the initial vertex, termwise.
pair_chain pc_cone(const pair_chain &c, const prime_field &f) {
    pair_chain out;
    for (const auto &[t, v] : c) {
        vertex_pair nt = t;
        nt.u.insert(nt.u.begin(), 0);
        nt.v.insert(nt.v.begin(), 0);
        pc_add(out, nt, v, f);
    }
    return out;
}

} // namespace

// ---- interchange construction ---------------------------------------------------

interchange::interchange(int qmax, const prime_field &f) : qmax_(qmax), mod_(f.modulus()) {
    require(qmax >= 0 && qmax <= 12, errc::invalid_argument, "interchange degree bound");
    phi_.assign(qmax + 1, {});

    // section property first: the splitting composed with the shuffle section
    // is the identity of the tensor complex
    for (int a = 0; a + 0 <= qmax; ++a)
        for (int b = 0; a + b <= qmax; ++b) {
            vertex_tens s{vl_iota(a), vl_iota(b)};
            pair_chain e;
            ts_ez(e, s, 1, f);
            tens_chain back = pc_aw(e, f);
            require(back.size() == 1 && back.begin()->first.a == s.a &&
                        back.begin()->first.b == s.b && back.begin()->second == 1,
                    errc::internal_error, "splitting does not retract the shuffle section");
        }

    // contraction of the double simplex: the defect of each diagonal simplex
    // is a cycle, and the cone fills it
    for (int q = 1; q <= qmax; ++q) {
        pair_chain unit;
        pc_add(unit, vp_diag(q), 1, f);
        pair_chain r = pc_sub(unit, pc_ezaw(unit, f), f);
        for (int i = 0; i <= q; ++i) {
            vertex_pair dt = vp_face(vp_diag(q), i);
            pair_chain du;
            pc_add(du, dt, 1, f);
            pair_chain push = apply_phi(phi_, du, f);
            for (const auto &[t, v] : push)
                pc_add(r, t, -static_cast<int64_t>(v) * (i % 2 ? -1 : 1), f);
        }
        require(pc_boundary(r, f).empty(), errc::internal_error,
                "interchange defect is not a cycle");
        phi_[q] = pc_list(pc_cone(r, f));
    }

    // cleanup: squeeze the homotopy between the complement projections, then
    // take the derived homotopy if it still fails to square to zero
    auto squeeze = [&](const std::vector<std::vector<std::pair<vertex_pair, uint32_t>>> &tab) {
        std::vector<std::vector<std::pair<vertex_pair, uint32_t>>> out(qmax + 1);
        for (int q = 0; q <= qmax; ++q) {
            pair_chain unit;
            pc_add(unit, vp_diag(q), 1, f);
            pair_chain x = pc_sub(unit, pc_ezaw(unit, f), f);
            pair_chain y = apply_phi(tab, x, f);
            out[q] = pc_list(pc_sub(y, pc_ezaw(y, f), f));
        }
        return out;
    };
    phi_ = squeeze(phi_);

    auto squares_to_zero = [&]() {
        for (int q = 0; q < qmax; ++q) {
            pair_chain unit;
            pc_add(unit, vp_diag(q), 1, f);
            if (!apply_phi(phi_, apply_phi(phi_, unit, f), f).empty()) return false;
        }
        return true;
    };
    if (!squares_to_zero()) {
        std::vector<std::vector<std::pair<vertex_pair, uint32_t>>> derived(qmax + 1);
        for (int q = 0; q <= qmax; ++q) {
            pair_chain unit;
            pc_add(unit, vp_diag(q), 1, f);
            pair_chain hx = apply_phi(phi_, unit, f);
            derived[q] = pc_list(apply_phi(phi_, pc_boundary(hx, f), f));
        }
        phi_ = derived;
    }

    // full identity audit on the universal elements
    for (int q = 0; q <= qmax; ++q) {
        pair_chain unit;
        pc_add(unit, vp_diag(q), 1, f);
        pair_chain hx = apply_phi(phi_, unit, f);

        // d phi + phi d = 1 - ez aw
        pair_chain lhs = pc_boundary(hx, f);
        for (const auto &[t, v] : apply_phi(phi_, pc_boundary(unit, f), f))
            pc_add(lhs, t, v, f);
        pair_chain rhs = pc_sub(unit, pc_ezaw(unit, f), f);
        require(lhs == rhs, errc::internal_error, "interchange homotopy identity fails");

        // aw phi = 0
        require(pc_aw(hx, f).empty(), errc::internal_error,
                "interchange homotopy survives the splitting");

        // phi phi = 0 (the output degree must still be in the tables)
        if (q < qmax)
            require(apply_phi(phi_, hx, f).empty(), errc::internal_error,
                    "interchange homotopy does not square to zero");
    }
    // phi ez = 0
    for (int a = 0; a <= qmax; ++a)
        for (int b = 0; a + b <= qmax; ++b) {
            pair_chain e;
            ts_ez(e, {vl_iota(a), vl_iota(b)}, 1, f);
            require(apply_phi(phi_, e, f).empty(), errc::internal_error,
                    "interchange homotopy hits the shuffle section");
        }
}

const std::vector<std::pair<vertex_pair, uint32_t>> &interchange::phi(int q) const {
    require(q >= 0 && q <= qmax_, errc::invalid_argument, "interchange degree out of range");
    return phi_[static_cast<size_t>(q)];
}

// ---- product contraction ---------------------------------------------------------

namespace {

void tc_add(tuple_chain &c, const space &y, const tuple_key &t, int64_t v,
            const prime_field &f) {
    uint32_t r = f.reduce(v);
    if (r == 0) return;
    bool allbp = true;
    for (const auto &s : t)
        if (!y.is_bp(s)) {
            allbp = false;
            break;
        }
    if (allbp) return;
    auto it = c.find(t);
    if (it == c.end()) {
        c.emplace(t, r);
        return;
    }
    it->second = f.add(it->second, r);
    if (it->second == 0) c.erase(it);
}

std::vector<int> vl_front(int i) {
    std::vector<int> r(i + 1);
    for (int k = 0; k <= i; ++k) r[k] = k;
    return r;
}

std::vector<int> vl_back(int i, int q) {
    std::vector<int> r(q - i + 1);
    for (int k = 0; k <= q - i; ++k) r[k] = i + k;
    return r;
}

} // namespace

product_sdr::product_sdr(const space &y, int m, const interchange &ic, const prime_field &f)
    : y_(&y), m_(m), ic_(&ic), f_(f) {
    require(m >= 0, errc::invalid_argument, "negative arity");
    require(ic.mod() == f.modulus(), errc::invalid_argument,
            "interchange built over a different field");
}

bool tuple_degenerate_range(const space &y, const tuple_key &t, int first, int q) {
    for (int j = 0; j < q; ++j) {
        bool common = true;
        for (size_t k = first; k < t.size(); ++k) {
            const simplex &s = t[k];
            if (!(y.degenerate(y.face(s, j), j) == s)) {
                common = false;
                break;
            }
        }
        if (common) return true;
    }
    return false;
}

bool product_sdr::tuple_degenerate(const tuple_key &t, int first, int q) const {
    return tuple_degenerate_range(*y_, t, first, q);
}

std::vector<tuple_key> product_sdr::tensor_basis(int q) const {
    std::vector<std::vector<simplex>> by_deg(q + 1);
    for (int d = 0; d <= q; ++d)
        for (const auto &s : y_->nonbp_simplices(d))
            if (s.word == 0) by_deg[d].push_back(s);

    std::vector<tuple_key> out;
    tuple_key cur(m_, y_->bp_simplex(0));
    auto rec = [&](auto &&self, int slot, int left) -> void {
        if (slot == m_) {
            if (left == 0) {
                bool allbp = true;
                for (const auto &s : cur)
                    if (!y_->is_bp(s)) allbp = false;
                if (!allbp) out.push_back(cur);
            }
            return;
        }
        cur[slot] = y_->bp_simplex(0);
        self(self, slot + 1, left);
        for (int d = 0; d <= left; ++d)
            for (const auto &s : by_deg[d]) {
                cur[slot] = s;
                self(self, slot + 1, left - d);
            }
        cur[slot] = y_->bp_simplex(0);
    };
    if (m_ > 0) rec(rec, 0, q);
    std::sort(out.begin(), out.end(), [](const tuple_key &a, const tuple_key &b) {
        return tuple_order{}(a, b);
    });
    return out;
}

tuple_chain product_sdr::embed_from(int j, const tuple_key &t) const {
    tuple_chain out;
    if (j >= m_ - 1) {
        tc_add(out, *y_, t, 1, f_);
        return out;
    }
    for (const auto &[rt, rc] : embed_from(j + 1, t)) {
        int a = y_->degree_of(rt[j]);
        int b = y_->degree_of(rt[j + 1]);
        for (const auto &st : shuffle_terms(a, b)) {
            tuple_key nk = rt;
            nk[j] = y_->apply_word(nk[j], st.x_word);
            for (int k = j + 1; k < m_; ++k) nk[k] = y_->apply_word(nk[k], st.y_word);
            if (tuple_degenerate(nk, j, a + b)) continue;
            tc_add(out, *y_, nk, static_cast<int64_t>(rc) * st.sign, f_);
        }
    }
    return out;
}

tuple_chain product_sdr::embed(const tuple_key &e) const {
    require(static_cast<int>(e.size()) == m_, errc::invalid_argument, "tuple arity");
    return embed_from(0, e);
}

tuple_chain product_sdr::embed_chain(const tuple_chain &c) const {
    tuple_chain out;
    for (const auto &[t, v] : c)
        for (const auto &[rt, rc] : embed(t))
            tc_add(out, *y_, rt, static_cast<int64_t>(v) * rc, f_);
    return out;
}

tuple_chain product_sdr::project_from(int j, const tuple_key &t) const {
    tuple_chain out;
    if (j >= m_ - 1) {
        tc_add(out, *y_, t, 1, f_);
        return out;
    }
    int q = y_->degree_of(t[j]);
    for (int i = 0; i <= q; ++i) {
        tuple_key sk = t;
        sk[j] = apply_monotone(*y_, t[j], vl_front(i));
        if (sk[j].word != 0) continue;
        for (int k = j + 1; k < m_; ++k) sk[k] = apply_monotone(*y_, t[k], vl_back(i, q));
        if (tuple_degenerate(sk, j + 1, q - i)) continue;
        for (const auto &[rt, rc] : project_from(j + 1, sk)) tc_add(out, *y_, rt, rc, f_);
    }
    return out;
}

tuple_chain product_sdr::project(const tuple_chain &c) const {
    tuple_chain out;
    for (const auto &[t, v] : c)
        for (const auto &[rt, rc] : project_from(0, t))
            tc_add(out, *y_, rt, static_cast<int64_t>(v) * rc, f_);
    return out;
}

tuple_chain product_sdr::homotopy_from(int j, const tuple_key &t) const {
    tuple_chain out;
    if (j >= m_ - 1) return out;
    int q = y_->degree_of(t[j]);

    // interchange of the first factor against the rest
    for (const auto &[pt, c] : ic_->phi(q)) {
        tuple_key nk = t;
        nk[j] = apply_monotone(*y_, nk[j], pt.u);
        for (int k = j + 1; k < m_; ++k) nk[k] = apply_monotone(*y_, nk[k], pt.v);
        if (tuple_degenerate(nk, j, q + 1)) continue;
        tc_add(out, *y_, nk, c, f_);
    }

    // split, recurse behind the first factor, recombine
    for (int i = 0; i <= q; ++i) {
        tuple_key sk = t;
        sk[j] = apply_monotone(*y_, t[j], vl_front(i));
        if (sk[j].word != 0) continue;
        for (int k = j + 1; k < m_; ++k) sk[k] = apply_monotone(*y_, t[k], vl_back(i, q));
        if (tuple_degenerate(sk, j + 1, q - i)) continue;
        uint32_t kos = f_.sign(i);
        for (const auto &[ut, uc] : homotopy_from(j + 1, sk)) {
            int b = q - i + 1;
            for (const auto &st : shuffle_terms(i, b)) {
                tuple_key nk = ut;
                nk[j] = y_->apply_word(nk[j], st.x_word);
                for (int k = j + 1; k < m_; ++k) nk[k] = y_->apply_word(nk[k], st.y_word);
                if (tuple_degenerate(nk, j, q + 1)) continue;
                tc_add(out, *y_, nk,
                       static_cast<int64_t>(f_.mul(uc, kos)) * st.sign, f_);
            }
        }
    }
    return out;
}

tuple_chain product_sdr::homotopy(const tuple_chain &c) const {
    tuple_chain out;
    for (const auto &[t, v] : c)
        for (const auto &[rt, rc] : homotopy_from(0, t))
            tc_add(out, *y_, rt, static_cast<int64_t>(v) * rc, f_);
    return out;
}

tuple_chain product_sdr::tensor_boundary(const tuple_key &e) const {
    tuple_chain out;
    int pre = 0;
    for (int k = 0; k < m_; ++k) {
        int d = y_->degree_of(e[k]);
        for (int i = 0; i <= d && d >= 1; ++i) {
            simplex fs = y_->face(e[k], i);
            if (fs.word != 0) continue;
            tuple_key nk = e;
            nk[k] = fs;
            tc_add(out, *y_, nk, (pre + i) % 2 ? -1 : 1, f_);
        }
        pre += d;
    }
    return out;
}

tuple_chain product_sdr::product_boundary(const tuple_chain &c) const {
    tuple_chain out;
    for (const auto &[t, v] : c) {
        int q = y_->degree_of(t[0]);
        for (int i = 0; i <= q && q >= 1; ++i) {
            tuple_key nk = t;
            for (int k = 0; k < m_; ++k) nk[k] = y_->face(t[k], i);
            if (tuple_degenerate(nk, 0, q - 1)) continue;
            tc_add(out, *y_, nk, static_cast<int64_t>(v) * (i % 2 ? -1 : 1), f_);
        }
    }
    return out;
}

// ---- transported quotient model ----------------------------------------------

size_t reduced_model::degree_dim(int n) const {
    size_t total = 0;
    for (int p = 0; p <= P; ++p) {
        auto it = basis.find({p, n + p});
        if (it != basis.end()) total += it->second.size();
    }
    return total;
}

reduced_model make_reduced_model(const space &x, const space &y, int P, int lo, int hi,
                                 const interchange &ic, const prime_field &f) {
    require(P >= 0 && lo <= hi, errc::invalid_argument, "bad quotient window");
    reduced_model rm;
    rm.x = x;
    rm.y = y;
    rm.P = P;
    rm.lo = lo;
    rm.hi = hi;
    rm.mod = f.modulus();

    rm.args.resize(P + 1);
    for (int p = 0; p <= P; ++p) rm.args[p] = x.nonbp_simplices(p);
    rm.arg_face.resize(P + 1);
    for (int p = 1; p <= P; ++p) {
        std::map<simplex, int, simplex_order> where;
        for (size_t k = 0; k < rm.args[p - 1].size(); ++k)
            where.emplace(rm.args[p - 1][k], static_cast<int>(k));
        rm.arg_face[p].assign(p + 1, std::vector<int>(rm.args[p].size(), -1));
        for (int i = 0; i <= p; ++i)
            for (size_t k = 0; k < rm.args[p].size(); ++k) {
                simplex fs = x.face(rm.args[p][k], i);
                if (x.is_bp(fs)) continue;
                rm.arg_face[p][i][k] = where.at(fs);
            }
    }

    for (int n = lo - 1; n <= hi; ++n)
        for (int p = 0; p <= P; ++p) {
            int q = n + p;
            if (q < 0) continue;
            product_sdr col(y, static_cast<int>(rm.args[p].size()), ic, f);
            auto b = col.tensor_basis(q);
            std::map<tuple_key, size_t, tuple_order> idx;
            for (size_t k = 0; k < b.size(); ++k) idx.emplace(b[k], k);
            rm.index[{p, q}] = std::move(idx);
            rm.basis[{p, q}] = std::move(b);
        }
    return rm;
}

namespace {

// coface alternating sum, level p -> p+1, argument reindex with basepoint fill
tuple_chain coface_sum(const reduced_model &rm, int p, const tuple_chain &c,
                       const prime_field &f) {
    tuple_chain out;
    const auto &tab = rm.arg_face[p + 1];
    size_t mt = rm.args[p + 1].size();
    for (const auto &[t, v] : c) {
        int q = t.empty() ? 0 : rm.y.degree_of(t[0]);
        simplex bq = rm.y.bp_simplex(q);
        for (int i = 0; i <= p + 1; ++i) {
            tuple_key nt(mt);
            for (size_t k = 0; k < mt; ++k) {
                int af = tab[i][k];
                nt[k] = af < 0 ? bq : t[af];
            }
            if (tuple_degenerate_range(rm.y, nt, 0, q)) continue;
            tc_add(out, rm.y, nt, static_cast<int64_t>(v) * (i % 2 ? -1 : 1), f);
        }
    }
    return out;
}

} // namespace

tuple_chain coface_chain(const reduced_model &rm, int p, const tuple_chain &c,
                         const prime_field &f) {
    require(p >= 0 && p + 1 <= rm.P, errc::invalid_argument, "level out of window");
    return coface_sum(rm, p, c, f);
}

sparse_matrix reduced_boundary(const reduced_model &rm, const interchange &ic, int n,
                               const prime_field &f) {
    require(n >= rm.lo && n <= rm.hi, errc::invalid_argument, "degree out of window");

    std::vector<product_sdr> col;
    col.reserve(rm.P + 1);
    for (int p = 0; p <= rm.P; ++p)
        col.emplace_back(rm.y, static_cast<int>(rm.args[p].size()), ic, f);

    std::vector<size_t> src_off(rm.P + 2, 0), dst_off(rm.P + 2, 0);
    for (int p = 0; p <= rm.P; ++p) {
        auto s = rm.basis.find({p, n + p});
        auto d = rm.basis.find({p, n - 1 + p});
        src_off[p + 1] = src_off[p] + (s == rm.basis.end() ? 0 : s->second.size());
        dst_off[p + 1] = dst_off[p] + (d == rm.basis.end() ? 0 : d->second.size());
    }

    sparse_matrix out(dst_off[rm.P + 1], src_off[rm.P + 1], f.modulus());
    const int sp = (n % 2 == 0) ? -1 : 1; // diagonal coefficient of the coface part

    for (int p = 0; p <= rm.P; ++p) {
        auto sit = rm.basis.find({p, n + p});
        if (sit == rm.basis.end()) continue;
        const auto &src = sit->second;
        for (size_t ci = 0; ci < src.size(); ++ci) {
            size_t colidx = src_off[p] + ci;

            // tensor differential, block (p, q-1)
            if (n - 1 + p >= 0) {
                const auto &idx = rm.index.at({p, n - 1 + p});
                for (const auto &[t, v] : col[p].tensor_boundary(src[ci])) {
                    auto it = idx.find(t);
                    require(it != idx.end(), errc::internal_error,
                            "tensor face escapes the block basis");
                    out.add_at(dst_off[p] + it->second, colidx, v);
                }
            }

            // perturbation series along the coface direction
            tuple_chain cur = col[p].embed(src[ci]);
            int64_t fac = 1;
            for (int pp = p; pp + 1 <= rm.P;) {
                tuple_chain tc = coface_sum(rm, pp, cur, f);
                fac *= sp;
                if (tc.empty()) break;
                const auto &idx = rm.index.at({pp + 1, n + pp});
                for (const auto &[t, v] : col[pp + 1].project(tc)) {
                    auto it = idx.find(t);
                    require(it != idx.end(), errc::internal_error,
                            "projected term escapes the block basis");
                    out.add_at(dst_off[pp + 1] + it->second, colidx,
                               f.reduce(fac * static_cast<int64_t>(v)));
                }
                if (pp + 2 > rm.P) break;
                cur = col[pp + 1].homotopy(tc);
                if (cur.empty()) break;
                fac = -fac;
                ++pp;
            }
        }
    }
    return out;
}

complex_segment reduced_segment(const reduced_model &rm, const interchange &ic,
                                const prime_field &f) {
    complex_segment seg;
    seg.lo = rm.lo;
    seg.hi = rm.hi;
    seg.mod = rm.mod;
    for (int n = rm.lo; n <= rm.hi; ++n) seg.dim[n] = rm.degree_dim(n);
    for (int n = rm.lo; n <= rm.hi; ++n) seg.d[n] = reduced_boundary(rm, ic, n, f);
    seg.validate();
    return seg;
}

std::map<int, tuple_chain> project_series(const reduced_model &rm, const interchange &ic,
                                          int p, int q, const tuple_chain &c,
                                          const prime_field &f) {
    require(p >= 0 && p <= rm.P && q >= 0, errc::invalid_argument, "block out of range");
    std::vector<product_sdr> col;
    col.reserve(rm.P + 1);
    for (int pp = 0; pp <= rm.P; ++pp)
        col.emplace_back(rm.y, static_cast<int>(rm.args[pp].size()), ic, f);

    const int n = q - p;
    const int sp = (n % 2 == 0) ? -1 : 1;

    std::map<int, tuple_chain> out;
    tuple_chain cur = c;
    int lvl = p;
    int64_t fac = 1;
    while (true) {
        tuple_chain r = col[lvl].project(cur);
        if (!r.empty()) {
            tuple_chain &slot = out[lvl];
            for (const auto &[t, v] : r)
                tc_add(slot, rm.y, t, fac * static_cast<int64_t>(v), f);
            if (slot.empty()) out.erase(lvl);
        }
        if (lvl + 1 > rm.P) break;
        tuple_chain hc = col[lvl].homotopy(cur);
        if (hc.empty()) break;
        cur = coface_sum(rm, lvl, hc, f);
        if (cur.empty()) break;
        // series factor: (-1) per term times the coface coefficient, which is
        // taken at diagonal degree n + 1 (the homotopy raised the degree), so
        // the net transition is -(-sp) = sp.
        fac *= sp;
        ++lvl;
    }
    return out;
}

// ---- codegeneracy-free column model -------------------------------------------

conormal_model build_conormal_model(const space &x, const space &y, int P, int Q,
                                    const prime_field &f) {
    require(P >= 0 && Q >= 0, errc::invalid_argument, "bad window");
    conormal_model cm;
    cm.x = x;
    cm.y = y;
    cm.P = P;
    cm.Q = Q;

    cm.args.resize(P + 1);
    for (int p = 0; p <= P; ++p)
        for (const simplex &s : x.nonbp_simplices(p))
            if (s.word == 0) cm.args[p].push_back(s);

    cm.level.reserve(P + 1);
    for (int p = 0; p <= P; ++p)
        cm.level.push_back(make_function_space(y, cm.args[p].size(), Q));

    const size_t sp1 = static_cast<size_t>(P) + 1, sq1 = static_cast<size_t>(Q) + 1;
    cm.basis.assign(sp1, std::vector<chain_basis>(sq1));
    cm.win.P = P;
    cm.win.Q = Q;
    cm.win.mod = f.modulus();
    cm.win.dim.assign(sp1, std::vector<size_t>(sq1, 0));
    cm.win.dprime.assign(sp1, std::vector<sparse_matrix>(sq1));
    cm.win.dsecond.assign(sp1, std::vector<sparse_matrix>(sq1));
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            cm.basis[p][q] = reduced_basis(cm.level[p].total, q);
            cm.win.dim[p][q] = cm.basis[p][q].elems.size();
        }

    // face table with basepoint fill for arguments whose face degenerates:
    // values on degenerate arguments are zero in this part of the level
    for (int p = 1; p <= P; ++p) {
        std::map<simplex, int, simplex_order> where;
        for (size_t k = 0; k < cm.args[p - 1].size(); ++k)
            where.emplace(cm.args[p - 1][k], static_cast<int>(k));
        std::vector<std::vector<int>> tab(p + 1, std::vector<int>(cm.args[p].size(), -1));
        for (int i = 0; i <= p; ++i)
            for (size_t k = 0; k < cm.args[p].size(); ++k) {
                simplex fs = x.face(cm.args[p][k], i);
                if (x.is_bp(fs) || fs.word != 0) continue;
                tab[i][k] = where.at(fs);
            }

        for (int q = 0; q <= Q; ++q) {
            sparse_matrix m(cm.win.dim[p][q], cm.win.dim[p - 1][q], f.modulus());
            for (size_t c = 0; c < cm.basis[p - 1][q].elems.size(); ++c) {
                std::vector<simplex> vals =
                    cm.level[p - 1].values_of(cm.basis[p - 1][q].elems[c], q);
                for (int i = 0; i <= p; ++i) {
                    std::vector<simplex> img(cm.args[p].size(), y.bp_simplex(q));
                    for (size_t k = 0; k < cm.args[p].size(); ++k)
                        if (tab[i][k] >= 0) img[k] = vals[tab[i][k]];
                    simplex cls = cm.level[p].classify(img, q);
                    if (cm.level[p].total.is_bp(cls)) continue;
                    m.add_at(cm.basis[p][q].index.at(cls), c, (i % 2 == 0) ? 1 : -1);
                }
            }
            cm.win.dprime[p][q] = m;
        }
    }
    for (int p = 0; p <= P; ++p)
        for (int q = 1; q <= Q; ++q)
            cm.win.dsecond[p][q] = boundary_matrix(cm.level[p].total, q, f);

    cm.win.validate();
    return cm;
}

} // namespace msh
