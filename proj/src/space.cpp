#include "space.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace msh {

simplex space::degenerate(const simplex &x, int j) const {
    int n = degree_of(x);
    require(j >= 0 && j <= n, errc::internal_error, "degeneracy index out of range");
    require(n + 1 <= max_degree, errc::budget_exceeded, "degree cap exceeded");
    uint32_t low = x.word & ((1u << j) - 1u);
    uint32_t high = (x.word & ~((1u << j) - 1u)) << 1;
    return {x.gen, high | low | (1u << j)};
}

simplex space::face(const simplex &x, int i) const {
    int n = degree_of(x);
    require(n >= 1 && i >= 0 && i <= n, errc::internal_error, "face index out of range");
    uint32_t w = x.word;
    uint32_t collected = 0;
    while (w != 0) {
        int j = 31 - std::countl_zero(w); // outermost letter
        if (i == j || i == j + 1) {
            // d_i s_j = id; remaining inner letters stay, collected letters
            // are all > inner ones, so the union is already normal.
            return {x.gen, (w & ~(1u << j)) | collected};
        }
        if (i < j) {
            collected |= 1u << (j - 1);
        } else { // i > j + 1
            collected |= 1u << j;
            --i;
        }
        w &= ~(1u << j);
    }
    const generator_rec &g = gens[x.gen];
    require(g.dim >= 1 && i <= g.dim, errc::internal_error, "face at a vertex");
    simplex f = g.faces[static_cast<size_t>(i)];
    while (collected != 0) {
        uint32_t bit = collected & ~(collected - 1);
        f = degenerate(f, std::countr_zero(bit));
        collected ^= bit;
    }
    return f;
}

simplex space::apply_word(simplex x, uint32_t word) const {
    while (word != 0) {
        uint32_t bit = word & ~(word - 1);
        x = degenerate(x, std::countr_zero(bit));
        word ^= bit;
    }
    return x;
}

std::vector<uint32_t> words_of_size(int n, int k) {
    std::vector<uint32_t> out;
    if (k < 0 || k > n) return out;
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    for (;;) {
        uint32_t w = 0;
        for (int v : c) w |= 1u << v;
        out.push_back(w);
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

std::vector<simplex> space::simplices(int n) const {
    require(n >= 0 && n <= max_degree, errc::invalid_argument, "degree out of range");
    std::vector<simplex> out;
    for (uint32_t g = 0; g < gens.size(); ++g) {
        int d = gens[g].dim;
        if (d > n) continue;
        for (uint32_t w : words_of_size(n, n - d)) out.push_back({g, w});
    }
    std::sort(out.begin(), out.end(), simplex_order{});
    return out;
}

std::vector<simplex> space::nonbp_simplices(int n) const {
    std::vector<simplex> out = simplices(n);
    simplex bp = bp_simplex(n);
    std::erase_if(out, [&](const simplex &x) { return x == bp; });
    return out;
}

std::string space::label(const simplex &x) const {
    std::string s = gens[x.gen].id;
    if (x.word != 0) {
        s += "[";
        bool first = true;
        for (int j = 0; j < 32; ++j)
            if (x.word & (1u << j)) {
                if (!first) s += ",";
                s += std::to_string(j);
                first = false;
            }
        s += "]";
    }
    return s;
}

void space::validate() const {
    require(!gens.empty(), errc::invalid_argument, "space has no generators");
    require(basepoint < gens.size() && gens[basepoint].dim == 0, errc::invalid_argument,
            "basepoint must be a vertex generator");
    for (const generator_rec &g : gens) {
        require(g.dim >= 0 && g.dim <= max_degree, errc::invalid_argument,
                "generator dimension out of range");
        if (g.dim == 0) {
            require(g.faces.empty(), errc::invalid_argument, "vertex with faces: " + g.id);
            continue;
        }
        require(g.faces.size() == static_cast<size_t>(g.dim) + 1, errc::invalid_argument,
                "wrong face count for " + g.id);
        for (const simplex &f : g.faces) {
            require(f.gen < gens.size(), errc::invalid_argument, "dangling face in " + g.id);
            require(degree_of(f) == g.dim - 1, errc::invalid_argument,
                    "face degree mismatch in " + g.id);
            int room = g.dim - 1;
            require(room >= 32 || (f.word >> (room == 0 ? 0 : room)) == 0,
                    errc::invalid_argument, "face word out of range in " + g.id);
        }
    }
    // d_i d_j = d_{j-1} d_i for i < j on every generator.
    for (const generator_rec &g : gens) {
        if (g.dim < 2) continue;
        for (int j = 1; j <= g.dim; ++j)
            for (int i = 0; i < j; ++i) {
                simplex a = face(g.faces[static_cast<size_t>(j)], i);
                simplex b = face(g.faces[static_cast<size_t>(i)], j - 1);
                require(a == b, errc::invalid_argument,
                        "simplicial identity fails on " + g.id + " at (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");
            }
    }
}

simplex apply_monotone(const space &sp, simplex x, const std::vector<int> &u) {
    int p = sp.degree_of(x);
    require(!u.empty(), errc::internal_error, "empty monotone map");
    for (size_t t = 0; t + 1 < u.size(); ++t)
        require(u[t] <= u[t + 1], errc::internal_error, "map not monotone");
    require(u.front() >= 0 && u.back() <= p, errc::internal_error, "monotone map out of range");
    int q = static_cast<int>(u.size()) - 1;
    for (int t = 0; t < q; ++t) {
        if (u[t] == u[t + 1]) {
            std::vector<int> v(u);
            v.erase(v.begin() + t + 1);
            return sp.degenerate(apply_monotone(sp, x, v), t);
        }
    }
    std::vector<char> hit(static_cast<size_t>(p) + 1, 0);
    for (int t : u) hit[static_cast<size_t>(t)] = 1;
    for (int v = p; v >= 0; --v) {
        if (hit[static_cast<size_t>(v)]) continue;
        simplex y = sp.face(x, v);
        std::vector<int> w(u);
        for (int &t : w)
            if (t > v) --t;
        return apply_monotone(sp, y, w);
    }
    return x;
}

// Builders -------------------------------------------------------------------

static std::string subset_id(uint32_t bits) {
    std::string s = "v";
    bool first = true;
    for (int v = 0; v < 32; ++v)
        if (bits & (1u << v)) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
    return s;
}

space delta_plus(int p) {
    require(p >= 0 && p < max_degree, errc::invalid_argument, "delta: bad dimension");
    space sp;
    sp.name = "delta:" + std::to_string(p);
    sp.gens.push_back({"*", 0, {}});
    sp.basepoint = 0;
    // Nonempty subsets of {0..p}, grouped by size, lex within a size.
    std::map<uint32_t, uint32_t> index_of; // subset bits -> generator index
    for (int k = 0; k <= p; ++k)
        for (uint32_t w : words_of_size(p + 1, k + 1)) {
            index_of[w] = static_cast<uint32_t>(sp.gens.size());
            sp.gens.push_back({subset_id(w), k, {}});
        }
    for (auto &[bits, gi] : index_of) {
        int k = std::popcount(bits) - 1;
        if (k == 0) continue;
        std::vector<int> verts;
        for (int v = 0; v < 32; ++v)
            if (bits & (1u << v)) verts.push_back(v);
        for (int i = 0; i <= k; ++i) {
            uint32_t sub = bits & ~(1u << verts[static_cast<size_t>(i)]);
            sp.gens[gi].faces.push_back({index_of.at(sub), 0});
        }
    }
    sp.validate();
    return sp;
}

simplex fundamental_simplex(const space &dp, int p) {
    uint32_t full = (p + 1 >= 32) ? ~0u : ((1u << (p + 1)) - 1u);
    for (uint32_t g = 0; g < dp.gens.size(); ++g)
        if (dp.gens[g].dim == p && dp.gens[g].id == subset_id(full)) return {g, 0};
    fail(errc::internal_error, "fundamental simplex not found");
}

space sphere_min(int n) {
    require(n >= 0 && n < max_degree, errc::invalid_argument, "sphere: bad dimension");
    space sp;
    sp.name = "sphere:" + std::to_string(n);
    sp.gens.push_back({"*", 0, {}});
    sp.basepoint = 0;
    if (n == 0) {
        sp.gens.push_back({"pt", 0, {}});
    } else {
        generator_rec c{"c", n, {}};
        for (int i = 0; i <= n; ++i) c.faces.push_back(sp.bp_simplex(n - 1));
        sp.gens.push_back(c);
    }
    sp.validate();
    return sp;
}

space cycle_space(int k) {
    require(k >= 1 && k <= 64, errc::invalid_argument, "cycle: bad size");
    space sp;
    sp.name = "cycle:" + std::to_string(k);
    for (int v = 0; v < k; ++v)
        sp.gens.push_back({v == 0 ? "*" : "p" + std::to_string(v), 0, {}});
    sp.basepoint = 0;
    for (int eidx = 0; eidx < k; ++eidx) {
        // Edge from vertex eidx to vertex eidx+1 (mod k): d_1 = source, d_0 = target.
        generator_rec e{"e" + std::to_string(eidx), 1, {}};
        e.faces.push_back({static_cast<uint32_t>((eidx + 1) % k), 0});
        e.faces.push_back({static_cast<uint32_t>(eidx), 0});
        sp.gens.push_back(e);
    }
    sp.validate();
    return sp;
}

std::vector<std::vector<int>> cyclic_table(int m) {
    require(m >= 1, errc::invalid_argument, "cyclic group order must be positive");
    std::vector<std::vector<int>> t(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m)));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % m;
    return t;
}

namespace {

struct group_table {
    std::vector<std::vector<int>> mul;
    int order = 0;
    int e = -1;

    int at(int a, int b) const { return mul[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
};

group_table check_group(const std::vector<std::vector<int>> &table) {
    group_table g;
    g.order = static_cast<int>(table.size());
    require(g.order >= 1, errc::invalid_argument, "empty group table");
    for (const auto &row : table) {
        require(static_cast<int>(row.size()) == g.order, errc::invalid_argument,
                "group table not square");
        for (int v : row)
            require(v >= 0 && v < g.order, errc::invalid_argument, "group table entry out of range");
    }
    g.mul = table;
    for (int c = 0; c < g.order; ++c) {
        bool ident = true;
        for (int a = 0; a < g.order; ++a)
            if (g.at(c, a) != a || g.at(a, c) != a) ident = false;
        if (ident) {
            g.e = c;
            break;
        }
    }
    require(g.e >= 0, errc::invalid_argument, "group table has no identity");
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            for (int c = 0; c < g.order; ++c)
                require(g.at(g.at(a, b), c) == g.at(a, g.at(b, c)), errc::invalid_argument,
                        "group table not associative");
    for (int a = 0; a < g.order; ++a) {
        std::vector<char> seen(static_cast<size_t>(g.order), 0);
        for (int b = 0; b < g.order; ++b) seen[static_cast<size_t>(g.at(a, b))] = 1;
        for (char s : seen)
            require(s, errc::invalid_argument, "group table row is not a permutation");
    }
    return g;
}

std::string tuple_id(const std::vector<int> &t) {
    std::string s = "g";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ".";
        s += std::to_string(t[i]);
    }
    return s;
}

} // namespace

space nerve_space(const std::vector<std::vector<int>> &table, int cap) {
    group_table g = check_group(table);
    require(cap >= 1 && cap <= 12, errc::invalid_argument, "nerve cap out of range");
    space sp;
    sp.name = "nerve:" + std::to_string(g.order);
    sp.gens.push_back({"*", 0, {}});
    sp.basepoint = 0;
    std::map<std::vector<int>, uint32_t> index_of; // nondegenerate tuple -> generator
    index_of[{}] = 0;
    std::vector<int> nontrivial;
    for (int a = 0; a < g.order; ++a)
        if (a != g.e) nontrivial.push_back(a);
    std::vector<std::vector<int>> level = {{}};
    for (int q = 1; q <= cap; ++q) {
        std::vector<std::vector<int>> next;
        for (const auto &t : level)
            for (int a : nontrivial) {
                std::vector<int> u(t);
                u.push_back(a);
                index_of[u] = static_cast<uint32_t>(sp.gens.size());
                sp.gens.push_back({tuple_id(u), q, {}});
                next.push_back(u);
            }
        level = next;
    }
    // tuple (possibly with identity entries) -> simplex in normal form
    auto classify = [&](const std::vector<int> &t, auto &&self) -> simplex {
        for (size_t pos = 0; pos < t.size(); ++pos) {
            if (t[pos] == g.e) {
                std::vector<int> u(t);
                u.erase(u.begin() + static_cast<long>(pos));
                return sp.degenerate(self(u, self), static_cast<int>(pos));
            }
        }
        return {index_of.at(t), 0};
    };
    for (auto &[t, gi] : index_of) {
        int q = static_cast<int>(t.size());
        if (q == 0) continue;
        for (int i = 0; i <= q; ++i) {
            std::vector<int> f;
            if (i == 0)
                f.assign(t.begin() + 1, t.end());
            else if (i == q)
                f.assign(t.begin(), t.end() - 1);
            else {
                f.assign(t.begin(), t.end());
                f[static_cast<size_t>(i) - 1] = g.at(t[static_cast<size_t>(i) - 1], t[static_cast<size_t>(i)]);
                f.erase(f.begin() + static_cast<long>(i));
            }
            sp.gens[gi].faces.push_back(classify(f, classify));
        }
    }
    sp.validate();
    return sp;
}

std::vector<std::vector<int>> monotone_maps(int q, int p) {
    require(q >= 0 && p >= 0, errc::invalid_argument, "monotone_maps: bad degrees");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(q) + 1, 0);
    for (;;) {
        out.push_back(cur);
        int i = q;
        while (i >= 0 && cur[static_cast<size_t>(i)] == p) --i;
        if (i < 0) break;
        int v = cur[static_cast<size_t>(i)] + 1;
        for (int j = i; j <= q; ++j) cur[static_cast<size_t>(j)] = v;
    }
    return out;
}

// Interchange format ----------------------------------------------------------

static std::string word_csv(uint32_t w) {
    if (w == 0) return "-";
    std::string s;
    for (int j = 0; j < 32; ++j)
        if (w & (1u << j)) {
            if (!s.empty()) s += ",";
            s += std::to_string(j);
        }
    return s;
}

static uint32_t parse_word_csv(const std::string &s) {
    if (s == "-") return 0;
    uint32_t w = 0;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        require(!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos,
                errc::parse_error, "bad degeneracy letter: " + tok);
        int j = std::stoi(tok);
        require(j >= 0 && j < max_degree, errc::parse_error, "degeneracy letter out of range");
        require((w & (1u << j)) == 0, errc::parse_error, "repeated degeneracy letter");
        w |= 1u << j;
    }
    require(w != 0, errc::parse_error, "empty degeneracy word");
    return w;
}

std::string space::to_file_text() const {
    std::ostringstream out;
    out << "msh-space 1\n";
    out << "name " << (name.empty() ? "unnamed" : name) << "\n";
    out << "basepoint " << gens[basepoint].id << "\n";
    for (const generator_rec &g : gens) out << "gen " << g.id << " " << g.dim << "\n";
    for (const generator_rec &g : gens)
        for (size_t i = 0; i < g.faces.size(); ++i)
            out << "face " << g.id << " " << i << " " << gens[g.faces[i].gen].id << " "
                << word_csv(g.faces[i].word) << "\n";
    return out.str();
}

space space::from_file_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    space sp;
    std::map<std::string, uint32_t> index_of;
    std::string bp_id;
    bool have_header = false, have_bp = false;
    struct face_line {
        std::string gen;
        size_t i;
        std::string target;
        std::string word;
    };
    std::vector<face_line> faces;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (!have_header) {
            int version = 0;
            require(kw == "msh-space" && (ls >> version) && version == 1, errc::parse_error,
                    "bad space header");
            have_header = true;
            continue;
        }
        if (kw == "name") {
            ls >> sp.name;
        } else if (kw == "basepoint") {
            require(static_cast<bool>(ls >> bp_id), errc::parse_error, "bad basepoint line");
            have_bp = true;
        } else if (kw == "gen") {
            std::string id;
            int dim = -1;
            require(static_cast<bool>(ls >> id >> dim), errc::parse_error, "bad gen line");
            require(index_of.count(id) == 0, errc::parse_error, "duplicate generator " + id);
            index_of[id] = static_cast<uint32_t>(sp.gens.size());
            sp.gens.push_back({id, dim, {}});
        } else if (kw == "face") {
            face_line f;
            require(static_cast<bool>(ls >> f.gen >> f.i >> f.target >> f.word), errc::parse_error,
                    "bad face line");
            faces.push_back(f);
        } else {
            fail(errc::parse_error, "unknown keyword: " + kw);
        }
    }
    require(have_header && have_bp && !sp.gens.empty(), errc::parse_error, "incomplete space file");
    require(index_of.count(bp_id) != 0, errc::parse_error, "unknown basepoint " + bp_id);
    sp.basepoint = index_of.at(bp_id);
    for (generator_rec &g : sp.gens)
        if (g.dim >= 1) g.faces.resize(static_cast<size_t>(g.dim) + 1, {UINT32_MAX, 0});
    for (const auto &f : faces) {
        require(index_of.count(f.gen) != 0 && index_of.count(f.target) != 0, errc::parse_error,
                "face references unknown generator");
        generator_rec &g = sp.gens[index_of.at(f.gen)];
        require(f.i < g.faces.size(), errc::parse_error, "face index out of range for " + f.gen);
        require(g.faces[f.i].gen == UINT32_MAX, errc::parse_error, "duplicate face for " + f.gen);
        g.faces[f.i] = {index_of.at(f.target), f.word == "-" ? 0 : parse_word_csv(f.word)};
    }
    for (const generator_rec &g : sp.gens)
        for (const simplex &f : g.faces)
            require(f.gen != UINT32_MAX, errc::parse_error, "missing face for " + g.id);
    try {
        sp.validate();
    } catch (const error &e) {
        fail(errc::parse_error, std::string("invalid space file: ") + e.what());
    }
    return sp;
}


std::vector<uint32_t> delta_subsets(int p) {
    std::vector<uint32_t> out{0};
    for (int k = 0; k <= p; ++k)
        for (uint32_t w : words_of_size(p + 1, k + 1)) out.push_back(w);
    return out;
}

std::vector<int> monotone_of_simplex(const space &dp, const std::vector<uint32_t> &subsets,
                                     const simplex &x, int n) {
    require(!dp.is_bp(x) && dp.degree_of(x) == n, errc::invalid_argument,
            "not a classifying simplex");
    std::vector<int> vals;
    uint32_t bits = subsets[x.gen];
    for (int v = 0; v < 32; ++v)
        if (bits & (1u << v)) vals.push_back(v);
    for (uint32_t w = x.word; w;) {
        int j = std::countr_zero(w);
        w &= w - 1;
        vals.insert(vals.begin() + j + 1, vals[static_cast<size_t>(j)]);
    }
    return vals;
}

} // namespace msh
