#include "mapspace.h"

#include "chain.hpp"
#include "records.hpp"
#include "reduction.hpp"
#include "verify.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

struct msh_space {
    msh::space sp;
};

namespace {

thread_local std::string g_last_error;

int status_of(msh::errc c) {
    switch (c) {
    case msh::errc::ok: return MSH_OK;
    case msh::errc::invalid_argument: return MSH_EINVAL;
    case msh::errc::parse_error: return MSH_EPARSE;
    case msh::errc::budget_exceeded: return MSH_EBUDGET;
    case msh::errc::window_violation: return MSH_EWINDOW;
    case msh::errc::check_failed: return MSH_ECHECK;
    case msh::errc::internal_error: return MSH_EINTERNAL;
    }
    return MSH_EINTERNAL;
}

const char *errc_name(msh::errc c) {
    switch (c) {
    case msh::errc::ok: return "ok";
    case msh::errc::invalid_argument: return "invalid_argument";
    case msh::errc::parse_error: return "parse_error";
    case msh::errc::budget_exceeded: return "budget_exceeded";
    case msh::errc::window_violation: return "window_violation";
    case msh::errc::check_failed: return "check_failed";
    case msh::errc::internal_error: return "internal_error";
    }
    return "internal_error";
}

int set_error(msh::errc c, const std::string &msg) {
    g_last_error = msg;
    return status_of(c);
}

template <class Fn> int guarded_call(Fn &&fn) {
    try {
        return fn();
    } catch (const msh::error &e) {
        return set_error(e.code, e.what());
    } catch (const std::exception &e) {
        return set_error(msh::errc::internal_error, e.what());
    }
}

char *dup_text(const std::string &s) {
    char *buf = static_cast<char *>(std::malloc(s.size() + 1));
    if (buf) std::memcpy(buf, s.c_str(), s.size() + 1);
    return buf;
}

int finish(const std::string &text, char **out) {
    *out = dup_text(text);
    msh::require(*out != nullptr, msh::errc::internal_error, "out of memory");
    return MSH_OK;
}

int parse_int_field(const std::string &s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    msh::require(ec == std::errc() && p == s.data() + s.size(), msh::errc::parse_error,
                 "bad integer '" + s + "' in space descriptor");
    return v;
}

std::vector<std::string> split_fields(const std::string &s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t colon = s.find(':', start);
        out.push_back(s.substr(start, colon - start));
        if (colon == std::string::npos) return out;
        start = colon + 1;
    }
}

msh::space space_of_descriptor(const std::string &desc) {
    using msh::errc;
    using msh::require;
    require(!desc.empty(), errc::parse_error, "empty space descriptor");
    if (desc[0] == '@') {
        std::ifstream in(desc.substr(1), std::ios::binary);
        require(static_cast<bool>(in), errc::parse_error,
                "cannot open space file " + desc.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        return msh::space::from_file_text(ss.str());
    }
    std::vector<std::string> f = split_fields(desc);
    const std::string &head = f[0];
    if (head == "point") {
        require(f.size() == 1, errc::parse_error, "point takes no arguments");
        msh::space sp;
        sp.name = "point";
        sp.gens.push_back({"pt", 0, {}});
        sp.basepoint = 0;
        sp.validate();
        return sp;
    }
    if (head == "sphere") {
        require(f.size() == 2, errc::parse_error, "expected sphere:N");
        int n = parse_int_field(f[1]);
        require(0 <= n && n <= 8, errc::invalid_argument, "sphere dimension out of range");
        return msh::sphere_min(n);
    }
    if (head == "delta") {
        require(f.size() == 2, errc::parse_error, "expected delta:P");
        int p = parse_int_field(f[1]);
        require(0 <= p && p <= 8, errc::invalid_argument, "simplex dimension out of range");
        return msh::delta_plus(p);
    }
    if (head == "circle") {
        require(f.size() == 2, errc::parse_error, "expected circle:K");
        int k = parse_int_field(f[1]);
        require(1 <= k && k <= 64, errc::invalid_argument, "vertex count out of range");
        return msh::cycle_space(k);
    }
    if (head == "nerve_z") {
        require(f.size() == 2 || f.size() == 3, errc::parse_error,
                "expected nerve_z:M or nerve_z:M:CAP");
        int m = parse_int_field(f[1]);
        require(2 <= m && m <= 16, errc::invalid_argument, "group order out of range");
        int cap = f.size() == 3 ? parse_int_field(f[2]) : 6;
        require(1 <= cap && cap <= 12, errc::invalid_argument, "dimension cap out of range");
        return msh::nerve_space(msh::cyclic_table(m), cap);
    }
    msh::fail(errc::parse_error, "unknown space descriptor '" + head + "'");
}

} // namespace

extern "C" {

const char *msh_version(void) { return "mapspace 1.0.0 (records msh/1)"; }

const char *msh_last_error(void) { return g_last_error.c_str(); }

void msh_buf_free(char *buf) { std::free(buf); }

int msh_space_parse(const char *desc, msh_space **out) {
    return guarded_call([&] {
        msh::require(desc != nullptr && out != nullptr, msh::errc::invalid_argument,
                     "null argument");
        *out = new msh_space{space_of_descriptor(desc)};
        return MSH_OK;
    });
}

void msh_space_free(msh_space *sp) { delete sp; }

const char *msh_space_name(const msh_space *sp) { return sp ? sp->sp.name.c_str() : ""; }

int msh_space_text(const msh_space *sp, char **out) {
    return guarded_call([&] {
        msh::require(sp != nullptr && out != nullptr, msh::errc::invalid_argument,
                     "null argument");
        return finish(sp->sp.to_file_text(), out);
    });
}

int msh_homology(const msh_space *sp, uint32_t prime, int lo, int hi, char **jsonl) {
    return guarded_call([&] {
        msh::require(sp != nullptr && jsonl != nullptr, msh::errc::invalid_argument,
                     "null argument");
        msh::require(0 <= lo && lo <= hi && hi + 1 <= msh::max_degree,
                     msh::errc::invalid_argument, "bad degree window");
        msh::prime_field f(prime);
        msh::record_stream rs;
        rs.put("job", {{"op", "homology"},
                       {"space", sp->sp.name},
                       {"prime", prime},
                       {"lo", lo},
                       {"hi", hi}});
        msh::complex_segment seg = msh::space_segment(sp->sp, lo, hi + 1, prime);
        for (int k = lo; k <= hi; ++k)
            rs.put("homology", {{"space", sp->sp.name},
                                {"prime", prime},
                                {"degree", k},
                                {"rank", seg.homology_rank(k)}});
        return finish(rs.text(), jsonl);
    });
}

int msh_models(const msh_space *source, const msh_space *target, uint32_t prime,
               int pmax, int qmax, uint64_t budget, char **jsonl) {
    return guarded_call([&] {
        msh::require(source != nullptr && target != nullptr && jsonl != nullptr,
                     msh::errc::invalid_argument, "null argument");
        msh::require(0 <= pmax && pmax <= 6 && pmax <= qmax && qmax <= 12,
                     msh::errc::invalid_argument, "bad truncation window");
        const msh::space &x = source->sp;
        const msh::space &y = target->sp;
        msh::prime_field f(prime);
        msh::record_stream rs;
        rs.put("job", {{"op", "models"},
                       {"space", x.name},
                       {"target", y.name},
                       {"prime", prime},
                       {"pmax", pmax},
                       {"qmax", qmax},
                       {"budget", budget}});
        int status = MSH_OK;
        auto component = [&](const char *name, auto &&body) {
            try {
                body();
            } catch (const msh::error &e) {
                rs.put("error", {{"component", name},
                                 {"code", errc_name(e.code)},
                                 {"message", e.what()}});
                if (status == MSH_OK) status = status_of(e.code);
            }
        };
        component("models", [&] {
            msh::d_model d = msh::build_d_model(x, y, pmax, qmax, f);
            msh::g_model g = msh::build_g_model(x, y, pmax, qmax, f);
            d.win.validate();
            g.win.validate();
            for (int p = 0; p <= pmax; ++p)
                for (int q = 0; q <= qmax; ++q)
                    rs.put("bidegree",
                           {{"model", "d"}, {"p", p}, {"q", q}, {"rank", d.win.dim[p][q]}});
            for (int p = 0; p <= pmax; ++p)
                for (int q = 0; q <= qmax; ++q)
                    rs.put("bidegree",
                           {{"model", "g"}, {"p", p}, {"q", q}, {"rank", g.win.dim[p][q]}});
            int hi = std::min(pmax, qmax);
            msh::diag_segment dd = msh::diag_of(d.win, 0, hi);
            msh::diag_segment dg = msh::diag_of(g.win, 0, hi);
            for (int k : dd.seg.computable_degrees())
                if (k >= 0)
                    rs.put("diag", {{"model", "d"},
                                    {"degree", k},
                                    {"rank", dd.seg.homology_rank(k)}});
            for (int k : dg.seg.computable_degrees())
                if (k >= 0)
                    rs.put("diag", {{"model", "g"},
                                    {"degree", k},
                                    {"rank", dg.seg.homology_rank(k)}});
        });
        component("mapspace", [&] {
            msh::map_space ms = msh::make_map_space(x, y, 1, budget);
            msh::complex_segment seg = msh::space_segment(ms.total, 0, 1, prime);
            rs.put("mapspace",
                   {{"degree", 0}, {"prime", prime}, {"rank", seg.homology_rank(0)}});
        });
        component("stabilization", [&] {
            int p1 = pmax + 1, p2 = pmax + 2;
            msh::interchange ic(p2, f);
            size_t r1, r2;
            {
                msh::reduced_model rm = msh::make_reduced_model(x, y, p1, 0, 1, ic, f);
                r1 = msh::reduced_segment(rm, ic, f).homology_rank(0);
            }
            {
                msh::reduced_model rm = msh::make_reduced_model(x, y, p2, 0, 1, ic, f);
                r2 = msh::reduced_segment(rm, ic, f).homology_rank(0);
            }
            rs.put("stabilization", {{"model", "quotient"},
                                     {"degree", 0},
                                     {"p1", p1},
                                     {"rank1", r1},
                                     {"p2", p2},
                                     {"rank2", r2},
                                     {"stable", r1 == r2}});
            size_t c1 = msh::diag_of(msh::build_conormal_model(x, y, p1, p1 + 1, f).win,
                                     0, 1)
                            .seg.homology_rank(0);
            size_t c2 = msh::diag_of(msh::build_conormal_model(x, y, p2, p2 + 1, f).win,
                                     0, 1)
                            .seg.homology_rank(0);
            rs.put("stabilization", {{"model", "conormal"},
                                     {"degree", 0},
                                     {"p1", p1},
                                     {"rank1", c1},
                                     {"p2", p2},
                                     {"rank2", c2},
                                     {"stable", c1 == c2}});
        });
        if (status != MSH_OK)
            g_last_error = "one or more components failed; see the error records";
        int rc = finish(rs.text(), jsonl);
        return rc == MSH_OK ? status : rc;
    });
}

int msh_verify(const msh_space *source, const msh_space *target, uint32_t prime,
               int pmax, int qmax, int smax, uint64_t budget, char **jsonl,
               int *all_pass) {
    return guarded_call([&] {
        msh::require(source != nullptr && target != nullptr && jsonl != nullptr &&
                         all_pass != nullptr,
                     msh::errc::invalid_argument, "null argument");
        msh::require(1 <= pmax && pmax <= qmax && qmax <= 12 && 1 <= smax && smax <= 5,
                     msh::errc::invalid_argument, "bad verify window");
        msh::prime_field f(prime);
        msh::verify_config cfg;
        cfg.x = source->sp;
        cfg.y = target->sp;
        cfg.prime = prime;
        cfg.pmax = pmax;
        cfg.qmax = qmax;
        cfg.smax = smax;
        cfg.budget = budget;
        msh::record_stream rs;
        rs.put("job", {{"op", "verify"},
                       {"space", cfg.x.name},
                       {"target", cfg.y.name},
                       {"prime", prime},
                       {"pmax", pmax},
                       {"qmax", qmax},
                       {"smax", smax},
                       {"budget", budget}});
        std::vector<msh::suite_result> res = msh::run_verify(cfg);
        int failed = 0;
        for (const msh::suite_result &r : res) {
            rs.put("suite", {{"suite", r.name},
                             {"pass", r.pass},
                             {"checks", r.checks},
                             {"detail", r.detail}});
            if (!r.pass) ++failed;
        }
        rs.put("verdict",
               {{"pass", failed == 0}, {"failed", failed}, {"suites", res.size()}});
        *all_pass = failed == 0 ? 1 : 0;
        return finish(rs.text(), jsonl);
    });
}

} // extern "C"
