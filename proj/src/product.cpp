#include "product.hpp"

#include <algorithm>
#include <bit>

namespace msh {

std::vector<shuffle_term> shuffle_terms(int m, int n) {
    require(m >= 0 && n >= 0 && m + n <= max_degree, errc::invalid_argument,
            "shuffle degrees out of range");
    uint32_t full = (m + n == 0) ? 0u : (1u << (m + n)) - 1u;
    std::vector<shuffle_term> out;
    for (uint32_t xw : words_of_size(m + n, n)) {
        uint32_t yw = full & ~xw;
        int inv = 0;
        for (uint32_t b = xw; b;) {
            int j = std::countr_zero(b);
            b &= b - 1;
            inv += std::popcount(yw >> 1 >> j); // letters of yw above j
        }
        out.push_back({xw, yw, inv % 2 == 0 ? 1 : -1});
    }
    return out;
}

static uint32_t insert_letter(uint32_t w, int j) {
    uint32_t low = w & ((1u << j) - 1u);
    return ((w & ~((1u << j) - 1u)) << 1) | low | (1u << j);
}

simplex smash_product::classify(const std::vector<simplex> &coords, int n) const {
    require(coords.size() == factor.size(), errc::invalid_argument,
            "coordinate count mismatch");
    for (size_t i = 0; i < coords.size(); ++i) {
        require(factor[i].degree_of(coords[i]) == n, errc::invalid_argument,
                "coordinate degree mismatch");
        if (factor[i].is_bp(coords[i])) return total.bp_simplex(n);
    }
    std::vector<simplex> parts = coords;
    std::vector<int> stripped;
    for (;;) {
        uint32_t common = ~0u;
        for (const simplex &p : parts) common &= p.word;
        if (!common) break;
        int j = std::countr_zero(common);
        for (size_t i = 0; i < parts.size(); ++i) parts[i] = factor[i].face(parts[i], j);
        stripped.push_back(j);
    }
    uint32_t w = 0;
    for (auto it = stripped.rbegin(); it != stripped.rend(); ++it) w = insert_letter(w, *it);
    auto hit = gen_of_.find(parts);
    require(hit != gen_of_.end(), errc::internal_error, "smash class outside window");
    return {hit->second, w};
}

std::vector<simplex> smash_product::coords_of(const simplex &x, int n) const {
    require(total.degree_of(x) == n, errc::invalid_argument, "degree mismatch");
    std::vector<simplex> out;
    if (total.is_bp(x)) {
        for (const space &f : factor) out.push_back(f.bp_simplex(n));
        return out;
    }
    const std::vector<simplex> &parts = parts_of_[x.gen];
    for (size_t i = 0; i < parts.size(); ++i)
        out.push_back(factor[i].apply_word(parts[i], x.word));
    return out;
}

smash_product make_smash(const std::vector<const space *> &factors, int nmax) {
    require(!factors.empty(), errc::invalid_argument, "smash needs a factor");
    require(nmax >= 0 && nmax <= max_degree, errc::invalid_argument, "bad smash window");
    smash_product p;
    for (const space *f : factors) p.factor.push_back(*f);
    p.nmax = nmax;

    space &t = p.total;
    t.name = "smash(";
    for (size_t i = 0; i < p.factor.size(); ++i)
        t.name += (i ? "|" : "") + p.factor[i].name;
    t.name += ")";
    t.basepoint = 0;
    t.gens.push_back({"*", 0, {}});
    p.parts_of_.emplace_back();

    size_t s = p.factor.size();
    for (int m = 0; m <= nmax; ++m) {
        std::vector<std::vector<simplex>> pool(s);
        for (size_t i = 0; i < s; ++i) pool[i] = p.factor[i].nonbp_simplices(m);
        std::vector<std::vector<simplex>> level;
        std::vector<size_t> idx(s, 0);
        bool any = true;
        for (size_t i = 0; i < s; ++i)
            if (pool[i].empty()) any = false;
        while (any) {
            std::vector<simplex> tuple(s);
            uint32_t common = ~0u;
            for (size_t i = 0; i < s; ++i) {
                tuple[i] = pool[i][idx[i]];
                common &= tuple[i].word;
            }
            if (!common) level.push_back(std::move(tuple));
            size_t k = s;
            while (k > 0) {
                --k;
                if (++idx[k] < pool[k].size()) break;
                idx[k] = 0;
                if (k == 0) any = false;
            }
        }
        std::sort(level.begin(), level.end(), [](const auto &a, const auto &b) {
            return tuple_order{}(a, b);
        });
        for (std::vector<simplex> &tuple : level) {
            std::string id = "(";
            for (size_t i = 0; i < s; ++i)
                id += (i ? "|" : "") + p.factor[i].label(tuple[i]);
            id += ")";
            uint32_t gid = static_cast<uint32_t>(t.gens.size());
            t.gens.push_back({id, m, {}});
            p.gen_of_[tuple] = gid;
            p.parts_of_.push_back(std::move(tuple));
        }
    }

    for (uint32_t g = 1; g < t.gens.size(); ++g) {
        int m = t.gens[g].dim;
        if (m == 0) continue;
        const std::vector<simplex> &tuple = p.parts_of_[g];
        for (int i = 0; i <= m; ++i) {
            std::vector<simplex> fc(s);
            for (size_t k = 0; k < s; ++k) fc[k] = p.factor[k].face(tuple[k], i);
            t.gens[g].faces.push_back(p.classify(fc, m - 1));
        }
    }
    t.validate();
    return p;
}

smash_product smash_power(const space &y, int s, int nmax) {
    require(s >= 1, errc::invalid_argument, "smash power needs s >= 1");
    std::vector<const space *> fs(static_cast<size_t>(s), &y);
    return make_smash(fs, nmax);
}

smash_product smash_pair(const space &a, const space &b, int nmax) {
    return make_smash({&a, &b}, nmax);
}

simplex permute_class(const smash_product &p, const simplex &x, int n,
                      const std::vector<int> &perm) {
    require(perm.size() == p.factor.size(), errc::invalid_argument, "bad permutation");
    std::vector<simplex> coords = p.coords_of(x, n);
    std::vector<simplex> moved(coords.size());
    for (size_t i = 0; i < perm.size(); ++i)
        moved[i] = coords[static_cast<size_t>(perm[i])];
    return p.classify(moved, n);
}

} // namespace msh
