#include "pmap.hpp"

#include <bit>

namespace msh {

void pointed_map::validate() const {
    require(assign.size() == src.gens.size(), errc::invalid_argument,
            "assignment size mismatch");
    require(dst.is_bp(assign[src.basepoint]), errc::invalid_argument,
            "basepoint not preserved");
    for (size_t g = 0; g < assign.size(); ++g)
        require(dst.degree_of(assign[g]) == src.gens[g].dim, errc::invalid_argument,
                "assignment degree mismatch at " + src.gens[g].id);
    for (size_t g = 0; g < assign.size(); ++g) {
        int d = src.gens[g].dim;
        for (int i = 0; i <= d && d >= 1; ++i)
            require(dst.face(assign[g], i) == apply(src.gens[g].faces[static_cast<size_t>(i)]),
                    errc::invalid_argument, "faces do not commute at " + src.gens[g].id);
    }
}

pointed_map map_from_assignment(const space &src, const space &dst,
                                std::vector<simplex> assign) {
    pointed_map f{src, dst, std::move(assign)};
    f.validate();
    return f;
}

pointed_map identity_map(const space &sp) {
    std::vector<simplex> assign;
    for (uint32_t g = 0; g < sp.gens.size(); ++g) assign.push_back({g, 0});
    return {sp, sp, std::move(assign)};
}

pointed_map compose_maps(const pointed_map &outer, const pointed_map &inner) {
    require(inner.dst.name == outer.src.name &&
                inner.dst.gens.size() == outer.src.gens.size(),
            errc::invalid_argument, "composition spaces do not match");
    std::vector<simplex> assign;
    for (const simplex &v : inner.assign) assign.push_back(outer.apply(v));
    return {inner.src, outer.dst, std::move(assign)};
}

pointed_map characteristic_map(const space &x_space, const simplex &x, int p) {
    require(x_space.degree_of(x) == p, errc::invalid_argument, "degree mismatch");
    space dp = delta_plus(p);
    std::vector<uint32_t> subsets = delta_subsets(p);
    std::vector<simplex> assign{x_space.bp_simplex(0)};
    for (size_t g = 1; g < dp.gens.size(); ++g) {
        std::vector<int> u;
        for (int v = 0; v <= p; ++v)
            if (subsets[g] & (1u << v)) u.push_back(v);
        assign.push_back(apply_monotone(x_space, x, u));
    }
    pointed_map f{std::move(dp), x_space, std::move(assign)};
    f.validate();
    return f;
}

pointed_map delta_map(const std::vector<int> &u, int n, int p) {
    require(static_cast<int>(u.size()) == n + 1, errc::invalid_argument, "bad monotone");
    space dn = delta_plus(n);
    space dp = delta_plus(p);
    simplex iota = fundamental_simplex(dp, p);
    std::vector<uint32_t> subsets = delta_subsets(n);
    std::vector<simplex> assign{dp.bp_simplex(0)};
    for (size_t g = 1; g < dn.gens.size(); ++g) {
        std::vector<int> vals;
        for (int v = 0; v <= n; ++v)
            if (subsets[g] & (1u << v)) vals.push_back(u[static_cast<size_t>(v)]);
        assign.push_back(apply_monotone(dp, iota, vals));
    }
    pointed_map f{std::move(dn), std::move(dp), std::move(assign)};
    f.validate();
    return f;
}

} // namespace msh
