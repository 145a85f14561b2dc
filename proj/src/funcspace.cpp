#include "funcspace.hpp"

#include <algorithm>
#include <bit>

namespace msh {

static uint32_t insert_letter(uint32_t w, int j) {
    uint32_t low = w & ((1u << j) - 1u);
    return ((w & ~((1u << j) - 1u)) << 1) | low | (1u << j);
}

simplex function_space::classify(const std::vector<simplex> &values, int q) const {
    require(values.size() == arity, errc::invalid_argument, "value count mismatch");
    for (const simplex &v : values)
        require(y.degree_of(v) == q, errc::invalid_argument, "value degree mismatch");
    if (arity == 0) return total.bp_simplex(q);
    std::vector<simplex> parts = values;
    std::vector<int> stripped;
    for (;;) {
        uint32_t common = ~0u;
        for (const simplex &p : parts) common &= p.word;
        if (!common) break;
        int j = std::countr_zero(common);
        for (simplex &p : parts) p = y.face(p, j);
        stripped.push_back(j);
    }
    uint32_t w = 0;
    for (auto it = stripped.rbegin(); it != stripped.rend(); ++it) w = insert_letter(w, *it);
    auto hit = gen_of_.find(parts);
    require(hit != gen_of_.end(), errc::internal_error, "function class outside window");
    return {hit->second, w};
}

std::vector<simplex> function_space::values_of(const simplex &x, int q) const {
    require(total.degree_of(x) == q, errc::invalid_argument, "degree mismatch");
    std::vector<simplex> out;
    const std::vector<simplex> &parts = vals_of_[x.gen];
    for (const simplex &p : parts) out.push_back(y.apply_word(p, x.word));
    return out;
}

function_space make_function_space(const space &y, size_t arity, int qmax) {
    require(qmax >= 0 && qmax <= max_degree, errc::invalid_argument, "bad window");
    function_space fs;
    fs.y = y;
    fs.arity = arity;
    fs.qmax = qmax;
    space &t = fs.total;
    t.name = "func(" + y.name + "^" + std::to_string(arity) + ")";

    if (arity == 0) {
        t.gens.push_back({"*", 0, {}});
        t.basepoint = 0;
        fs.vals_of_.emplace_back();
        t.validate();
        return fs;
    }

    std::vector<simplex> bp_vec(arity, y.bp_simplex(0));
    for (int q = 0; q <= qmax; ++q) {
        std::vector<simplex> pool = y.simplices(q);
        std::vector<std::vector<simplex>> level;
        std::vector<size_t> idx(arity, 0);
        bool more = !pool.empty();
        while (more) {
            std::vector<simplex> vec(arity);
            uint32_t common = ~0u;
            for (size_t i = 0; i < arity; ++i) {
                vec[i] = pool[idx[i]];
                common &= vec[i].word;
            }
            if (!common) level.push_back(std::move(vec));
            size_t k = arity;
            while (k > 0) {
                --k;
                if (++idx[k] < pool.size()) break;
                idx[k] = 0;
                if (k == 0) more = false;
            }
        }
        std::sort(level.begin(), level.end(),
                  [](const auto &a, const auto &b) { return tuple_order{}(a, b); });
        for (std::vector<simplex> &vec : level) {
            std::string id = "[";
            for (size_t i = 0; i < arity; ++i) id += (i ? "|" : "") + y.label(vec[i]);
            id += "]";
            uint32_t gid = static_cast<uint32_t>(t.gens.size());
            if (q == 0 && vec == bp_vec) t.basepoint = gid;
            t.gens.push_back({id, q, {}});
            fs.gen_of_[vec] = gid;
            fs.vals_of_.push_back(std::move(vec));
        }
    }

    for (uint32_t g = 0; g < t.gens.size(); ++g) {
        int q = t.gens[g].dim;
        if (q == 0) continue;
        const std::vector<simplex> &vec = fs.vals_of_[g];
        for (int i = 0; i <= q; ++i) {
            std::vector<simplex> fc(arity);
            for (size_t k = 0; k < arity; ++k) fc[k] = y.face(vec[k], i);
            t.gens[g].faces.push_back(fs.classify(fc, q - 1));
        }
    }
    t.validate();
    return fs;
}

} // namespace msh
