#include "mapenum.hpp"

#include <bit>

namespace msh {

static uint32_t insert_letter(uint32_t w, int j) {
    uint32_t low = w & ((1u << j) - 1u);
    return ((w & ~((1u << j) - 1u)) << 1) | low | (1u << j);
}

// The monotone collapse [n] -> [n0] whose repeat positions are the letters of
// word (n = n0 + popcount(word)).
static std::vector<int> collapse_of_word(uint32_t word, int n) {
    std::vector<int> u(static_cast<size_t>(n) + 1);
    u[0] = 0;
    for (int t = 0; t < n; ++t)
        u[static_cast<size_t>(t) + 1] = u[static_cast<size_t>(t)] + ((word >> t) & 1u ? 0 : 1);
    return u;
}

simplex map_space::classify_map(int n, const std::vector<simplex> &assign) const {
    std::vector<simplex> cur = assign;
    int level = n;
    std::vector<int> stripped;
    for (;;) {
        int hit = -1;
        for (int j = 0; j < level && hit < 0; ++j) {
            std::vector<simplex> down = face_assignment(level, cur, j);
            if (degeneracy_assignment(level - 1, down, j) == cur) {
                hit = j;
                cur = std::move(down);
            }
        }
        if (hit < 0) break;
        stripped.push_back(hit);
        --level;
    }
    auto it = gen_of_.find(cur);
    require(it != gen_of_.end(), errc::internal_error, "map class not enumerated");
    uint32_t w = 0;
    for (auto r = stripped.rbegin(); r != stripped.rend(); ++r) w = insert_letter(w, *r);
    return {it->second, w};
}

std::vector<simplex> map_space::assignment_of(const simplex &f, int n) const {
    require(total.degree_of(f) == n, errc::invalid_argument, "degree mismatch");
    std::vector<simplex> cur = assign_of_gen_[f.gen];
    int level = level_of_gen_[f.gen];
    for (uint32_t w = f.word; w;) {
        int j = std::countr_zero(w);
        w &= w - 1;
        cur = degeneracy_assignment(level, cur, j);
        ++level;
    }
    return cur;
}

simplex map_space::evaluate(const simplex &f, int n, const simplex &xs) const {
    require(x.degree_of(xs) == n, errc::invalid_argument, "argument degree mismatch");
    int n0 = level_of_gen_[f.gen];
    const smash_product &d0 = dom[static_cast<size_t>(n0)];
    const space &dp = d0.factor[1];
    simplex z = apply_monotone(dp, fundamental_simplex(dp, n0), collapse_of_word(f.word, n));
    simplex c = d0.classify({xs, z}, n);
    const std::vector<simplex> &assign = assign_of_gen_[f.gen];
    return y.apply_word(assign[c.gen], c.word);
}

std::vector<simplex> map_space::face_assignment(int n, const std::vector<simplex> &assign,
                                                int i) const {
    const smash_product &lo = dom[static_cast<size_t>(n) - 1];
    const smash_product &hi = dom[static_cast<size_t>(n)];
    const space &dp_lo = lo.factor[1];
    const space &dp_hi = hi.factor[1];
    std::vector<uint32_t> subs = delta_subsets(n - 1);
    simplex iota = fundamental_simplex(dp_hi, n);
    std::vector<simplex> out(lo.total.gens.size());
    for (uint32_t g = 0; g < lo.total.gens.size(); ++g) {
        int m = lo.total.gens[g].dim;
        std::vector<simplex> pair = lo.coords_of({g, 0}, m);
        if (dp_lo.is_bp(pair[1]) || x.is_bp(pair[0])) {
            out[g] = y.bp_simplex(m);
            continue;
        }
        std::vector<int> vals = monotone_of_simplex(dp_lo, subs, pair[1], m);
        for (int &v : vals)
            if (v >= i) ++v;
        simplex z = apply_monotone(dp_hi, iota, vals);
        simplex c = hi.classify({pair[0], z}, m);
        out[g] = y.apply_word(assign[c.gen], c.word);
    }
    return out;
}

std::vector<simplex> map_space::degeneracy_assignment(int n, const std::vector<simplex> &assign,
                                                      int j) const {
    const smash_product &lo = dom[static_cast<size_t>(n)];
    const smash_product &hi = dom[static_cast<size_t>(n) + 1];
    const space &dp_lo = lo.factor[1];
    const space &dp_hi = hi.factor[1];
    std::vector<uint32_t> subs = delta_subsets(n + 1);
    simplex iota = fundamental_simplex(dp_lo, n);
    std::vector<simplex> out(hi.total.gens.size());
    for (uint32_t g = 0; g < hi.total.gens.size(); ++g) {
        int m = hi.total.gens[g].dim;
        std::vector<simplex> pair = hi.coords_of({g, 0}, m);
        if (dp_hi.is_bp(pair[1]) || x.is_bp(pair[0])) {
            out[g] = y.bp_simplex(m);
            continue;
        }
        std::vector<int> vals = monotone_of_simplex(dp_hi, subs, pair[1], m);
        for (int &v : vals)
            if (v > j) --v;
        simplex z = apply_monotone(dp_lo, iota, vals);
        simplex c = lo.classify({pair[0], z}, m);
        out[g] = y.apply_word(assign[c.gen], c.word);
    }
    return out;
}

map_space make_map_space(const space &x, const space &y, int nmax, uint64_t budget) {
    require(nmax >= 0, errc::invalid_argument, "bad level bound");
    int dx = 0;
    for (const generator_rec &g : x.gens) dx = std::max(dx, g.dim);
    require(dx + nmax <= max_degree, errc::invalid_argument, "level bound too large");

    map_space ms;
    ms.x = x;
    ms.y = y;
    ms.nmax = nmax;
    budget_meter meter{budget};

    for (int n = 0; n <= nmax; ++n) {
        space dp = delta_plus(n);
        ms.dom.push_back(make_smash({&x, &dp}, dx + n));
        const space &domt = ms.dom.back().total;

        std::vector<std::vector<simplex>> found;
        std::vector<simplex> cur(domt.gens.size());
        cur[0] = y.bp_simplex(0);
        std::vector<std::vector<simplex>> pools; // candidate images per generator
        for (const generator_rec &g : domt.gens) pools.push_back(y.simplices(g.dim));

        size_t g = 1;
        std::vector<size_t> pick(domt.gens.size(), 0);
        if (domt.gens.size() == 1) {
            found.push_back(cur);
            g = 0; // nothing to search
        }
        while (g >= 1) {
            if (g == domt.gens.size()) {
                found.push_back(cur);
                --g;
                ++pick[g];
                continue;
            }
            if (pick[g] == pools[g].size()) {
                pick[g] = 0;
                --g;
                if (g >= 1) ++pick[g];
                continue;
            }
            const simplex &v = pools[g][pick[g]];
            meter.tick(1);
            bool ok = true;
            int m = domt.gens[g].dim;
            for (int i = 0; i <= m && m >= 1 && ok; ++i) {
                const simplex &fs = domt.gens[g].faces[static_cast<size_t>(i)];
                ok = y.face(v, i) == y.apply_word(cur[fs.gen], fs.word);
            }
            if (ok) {
                cur[g] = v;
                ++g;
            } else {
                ++pick[g];
            }
        }
        ms.maps.push_back(std::move(found));
        ms.index_.emplace_back();
        for (size_t k = 0; k < ms.maps.back().size(); ++k)
            ms.index_.back()[ms.maps.back()[k]] = k;
        require(ms.index_.back().size() == ms.maps.back().size(), errc::internal_error,
                "duplicate enumerated maps");
    }

    // materialize Y^X as a space
    space &t = ms.total;
    t.name = "maps(" + y.name + "^" + x.name + ")";
    for (int n = 0; n <= nmax; ++n) {
        for (const std::vector<simplex> &f : ms.maps[static_cast<size_t>(n)]) {
            bool nondeg = true;
            for (int j = 0; j < n && nondeg; ++j) {
                std::vector<simplex> down = ms.face_assignment(n, f, j);
                nondeg = !(ms.degeneracy_assignment(n - 1, down, j) == f);
            }
            if (!nondeg) continue;
            uint32_t gid = static_cast<uint32_t>(t.gens.size());
            t.gens.push_back({"f" + std::to_string(gid) + "@" + std::to_string(n), n, {}});
            ms.gen_of_[f] = gid;
            ms.assign_of_gen_.push_back(f);
            ms.level_of_gen_.push_back(n);
        }
    }
    std::vector<simplex> bp0(ms.dom[0].total.gens.size());
    for (size_t g = 0; g < bp0.size(); ++g)
        bp0[g] = y.bp_simplex(ms.dom[0].total.gens[static_cast<size_t>(g)].dim);
    t.basepoint = ms.gen_of_.at(bp0);

    for (uint32_t g = 0; g < t.gens.size(); ++g) {
        int n = ms.level_of_gen_[g];
        if (n == 0) continue;
        for (int i = 0; i <= n; ++i)
            t.gens[g].faces.push_back(
                ms.classify_map(n - 1, ms.face_assignment(n, ms.assign_of_gen_[g], i)));
    }
    t.validate();

    for (int n = 0; n <= nmax; ++n)
        require(t.simplices(n).size() == ms.maps[static_cast<size_t>(n)].size(),
                errc::internal_error, "map census mismatch");
    return ms;
}

} // namespace msh
