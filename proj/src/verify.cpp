#include "verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

namespace msh {

namespace {

// Runs a suite body and converts any thrown failure into a reported one, so
// the caller always gets a verdict per suite.
suite_result guarded(const char *name,
                     const std::function<void(suite_result &)> &body) {
    suite_result r;
    r.name = name;
    try {
        body(r);
    } catch (const error &e) {
        r.pass = false;
        if (r.detail.empty()) r.detail = e.what();
    } catch (const std::exception &e) {
        r.pass = false;
        if (r.detail.empty()) r.detail = e.what();
    }
    return r;
}

std::string at(int p, int q) {
    std::ostringstream os;
    os << "(p=" << p << ", q=" << q << ")";
    return os.str();
}

} // namespace

suite_result suite_inverse_pair(const verify_config &cfg) {
    return guarded("inverse_pair", [&](suite_result &r) {
        prime_field f(cfg.prime);
        int P = std::min(cfg.pmax, 3), Q = std::min(cfg.qmax, 3);
        d_model d = build_d_model(cfg.x, cfg.y, P, Q, f);
        g_model g = build_g_model(cfg.x, cfg.y, P, Q, f);
        for (int p = 0; p <= P; ++p) {
            size_t m = cfg.x.nonbp_simplices(p).size();
            for (int q = 0; q <= Q; ++q) {
                size_t want = 1;
                for (size_t i = 0; i < m; ++i) want *= cfg.y.simplices(q).size();
                --want;
                require(d.win.dim[p][q] == want && g.win.dim[p][q] == want,
                        errc::check_failed, "rank census mismatch at " + at(p, q));
                ++r.checks;
                sparse_matrix eps = epsilon_matrix(g, d, p, q, f);
                sparse_matrix xi = xi_matrix(g, d, p, q, f);
                require(equal(matmul(eps, xi),
                              identity_matrix(g.win.dim[p][q], cfg.prime)),
                        errc::check_failed,
                        "eps o xi is not the identity at " + at(p, q));
                ++r.checks;
                require(equal(matmul(xi, eps),
                              identity_matrix(d.win.dim[p][q], cfg.prime)),
                        errc::check_failed,
                        "xi o eps is not the identity at " + at(p, q));
                ++r.checks;
            }
        }
    });
}

suite_result check_window_suite(const d_model &d, g_model &g, const prime_field &f) {
    return guarded("bicomplex", [&](suite_result &r) {
        d.win.validate();
        ++r.checks;
        g.win.validate();
        ++r.checks;
        diag_of(d.win, 0, std::min(d.win.P, d.win.Q)).seg.validate();
        ++r.checks;
        diag_of(g.win, 0, std::min(g.win.P, g.win.Q)).seg.validate();
        ++r.checks;
        // epsilon intertwines both differentials: a map of bicomplexes
        int P = d.win.P, Q = d.win.Q;
        std::vector<std::vector<sparse_matrix>> eps(
            static_cast<size_t>(P) + 1,
            std::vector<sparse_matrix>(static_cast<size_t>(Q) + 1));
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q) eps[p][q] = epsilon_matrix(g, d, p, q, f);
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q) {
                if (p >= 1) {
                    require(equal(matmul(eps[p][q], d.win.dprime[p][q]),
                                  matmul(g.win.dprime[p][q], eps[p - 1][q])),
                            errc::check_failed,
                            "epsilon does not intertwine d' at " + at(p, q));
                    ++r.checks;
                }
                if (q >= 1) {
                    require(equal(matmul(eps[p][q - 1], d.win.dsecond[p][q]),
                                  matmul(g.win.dsecond[p][q], eps[p][q])),
                            errc::check_failed,
                            "epsilon does not intertwine d'' at " + at(p, q));
                    ++r.checks;
                }
            }
    });
}

suite_result suite_bicomplex(const verify_config &cfg) {
    return guarded("bicomplex", [&](suite_result &r) {
        prime_field f(cfg.prime);
        int P = std::min(cfg.pmax, 3), Q = std::min(cfg.qmax, 3);
        d_model d = build_d_model(cfg.x, cfg.y, P, Q, f);
        g_model g = build_g_model(cfg.x, cfg.y, P, Q, f);
        r = check_window_suite(d, g, f);
    });
}

suite_result suite_chain_maps(const verify_config &cfg) {
    return guarded("chain_maps", [&](suite_result &r) {
        require(cfg.qmax >= cfg.pmax + cfg.nmax, errc::window_violation,
                "the q-window must extend nmax rows past the p-window");
        prime_field f(cfg.prime);
        map_space ms = make_map_space(cfg.x, cfg.y, cfg.nmax, cfg.budget);
        d_model d = build_d_model(cfg.x, cfg.y, cfg.pmax, cfg.qmax, f);
        g_model g = build_g_model(cfg.x, cfg.y, cfg.pmax, cfg.qmax, f);
        diag_segment dgd = diag_of(d.win, 0, cfg.pmax);
        diag_segment dgg = diag_of(g.win, 0, cfg.pmax);
        r.checks += check_comparison_chain_maps(ms, g, d, dgg, dgd, cfg.nmax, f);
    });
}

suite_result suite_triangle(const verify_config &cfg) {
    return guarded("triangle", [&](suite_result &r) {
        prime_field f(cfg.prime);
        map_space ms = make_map_space(cfg.x, cfg.y, cfg.nmax, cfg.budget);
        d_model d = build_d_model(cfg.x, cfg.y, cfg.pmax, cfg.qmax, f);
        g_model g = build_g_model(cfg.x, cfg.y, cfg.pmax, cfg.qmax, f);
        r.checks += check_triangle(ms, g, d, cfg.nmax, f);
    });
}

suite_result suite_composition(const verify_config &cfg) {
    return guarded("composition", [&](suite_result &r) {
        prime_field f(cfg.prime);
        int P = std::min(cfg.pmax, 2);
        r.checks += check_degree_zero_composition(cfg.x, cfg.y, cfg.y, P, f, cfg.budget);
    });
}

suite_result suite_order_independence(const verify_config &cfg) {
    return guarded("order_independence", [&](suite_result &r) {
        prime_field f(cfg.prime);
        int P = std::min(cfg.pmax, 3), Q = std::min(cfg.qmax, 3);
        d_model d = build_d_model(cfg.x, cfg.y, P, Q, f);
        g_model g = build_g_model(cfg.x, cfg.y, P, Q, f);
        g_model gr = build_g_model(cfg.x, cfg.y, P, Q, f, true);
        for (int p = 2; p <= P; ++p)
            for (int q = 2; q <= Q; ++q) {
                const omega_basis &bc = g.tuples[static_cast<size_t>(p)];
                const omega_basis &br = gr.tuples[static_cast<size_t>(p)];
                require(bc.points.size() == br.points.size(), errc::check_failed,
                        "point census differs between orders at level " +
                            std::to_string(p));
                ++r.checks;
                sparse_matrix xic = xi_matrix(g, d, p, q, f);
                sparse_matrix xir = xi_matrix(gr, d, p, q, f);
                // relabeling of indicator morphisms into the reversed basis
                sparse_matrix rel(gr.win.dim[p][q], g.win.dim[p][q], cfg.prime);
                const hom_basis &hb = g.basis[static_cast<size_t>(p)][static_cast<size_t>(q)];
                for (size_t c = 0; c < hb.elems.size(); ++c) {
                    functor_morphism t;
                    t.p = p;
                    t.q = q;
                    t.values.assign(bc.tuples.size(), chain{});
                    t.values[hb.elems[c].first][hb.elems[c].second] = 1;
                    functor_morphism tr;
                    tr.p = p;
                    tr.q = q;
                    for (const auto &tup : br.tuples) {
                        std::vector<simplex> pts;
                        for (size_t i : tup) pts.push_back(br.points[i]);
                        tr.values.push_back(
                            evaluate_morphism_on(t, bc, cfg.x, g.ypow, pts, f));
                    }
                    std::vector<uint32_t> col = morphism_coords(gr, p, q, tr);
                    for (size_t i = 0; i < col.size(); ++i)
                        if (col[i]) rel.add_at(i, c, col[i]);
                }
                require(equal(matmul(xir, rel), xic), errc::check_failed,
                        "xi depends on the point order at " + at(p, q));
                ++r.checks;
            }
    });
}

suite_result suite_naturality(const verify_config &cfg) {
    return guarded("naturality", [&](suite_result &r) {
        prime_field f(cfg.prime);
        std::mt19937 rng(20260101u);
        int p = std::min(2, cfg.pmax);
        omega_basis b = make_omega_basis(cfg.x, p, cfg.smax);
        if (b.points.empty()) {
            r.detail = "no points at the sampled level";
            return;
        }
        const int qv = 2;
        power_cache ys(cfg.y, qv);
        std::uniform_int_distribution<uint32_t> coef(1, cfg.prime - 1);
        functor_morphism t;
        t.p = p;
        t.q = qv;
        for (const auto &tup : b.tuples) {
            const space &sp = ys.power(static_cast<int>(tup.size())).total;
            chain c;
            for (const simplex &w : sp.nonbp_simplices(qv))
                chain_add(c, w, coef(rng), sp, f);
            t.values.push_back(c);
        }
        // the basis tuples evaluate to their assigned values
        for (size_t k = 0; k < b.tuples.size(); ++k) {
            std::vector<simplex> pt;
            for (size_t i : b.tuples[k]) pt.push_back(b.points[i]);
            require(evaluate_morphism_on(t, b, cfg.x, ys, pt, f) == t.values[k],
                    errc::check_failed,
                    "a basis tuple does not evaluate to its assigned value");
            ++r.checks;
        }
        // a basepoint coordinate kills the value
        if (cfg.smax >= 2) {
            require(evaluate_morphism_on(t, b, cfg.x, ys,
                                         {b.points[0], cfg.x.bp_simplex(p)}, f)
                        .empty(),
                    errc::check_failed, "a basepoint coordinate does not vanish");
            ++r.checks;
        }
        // naturality over every surjection out of sample tuples
        std::vector<std::vector<simplex>> samples;
        samples.push_back({b.points[0]});
        if (cfg.smax >= 2) {
            samples.push_back({b.points.back(), b.points[0]});
            samples.push_back({b.points[0], b.points[0]});
        }
        if (cfg.smax >= 3 && b.points.size() >= 2)
            samples.push_back({b.points[1], b.points[0], b.points[1]});
        for (const auto &u : samples) {
            chain tu = evaluate_morphism_on(t, b, cfg.x, ys, u, f);
            int s = static_cast<int>(u.size());
            for (int tl = s; tl <= cfg.smax; ++tl)
                for (const surjection &gs : all_surjections(tl, s)) {
                    std::vector<simplex> gu(gs.size());
                    for (size_t k = 0; k < gs.size(); ++k)
                        gu[k] = u[static_cast<size_t>(gs[k])];
                    chain via = apply_surjection_chain(ys.power(s), ys.power(tl), gs,
                                                       tu, qv, f);
                    require(evaluate_morphism_on(t, b, cfg.x, ys, gu, f) == via,
                            errc::check_failed,
                            "evaluation is not natural under a surjection");
                    ++r.checks;
                }
        }
        // evaluation does not depend on the point order behind the basis
        omega_basis rev = make_omega_basis(cfg.x, p, cfg.smax, true);
        functor_morphism tr;
        tr.p = p;
        tr.q = qv;
        for (const auto &tup : rev.tuples) {
            std::vector<simplex> pt;
            for (size_t i : tup) pt.push_back(rev.points[i]);
            tr.values.push_back(evaluate_morphism_on(t, b, cfg.x, ys, pt, f));
        }
        for (const auto &u : samples) {
            require(evaluate_morphism_on(tr, rev, cfg.x, ys, u, f) ==
                        evaluate_morphism_on(t, b, cfg.x, ys, u, f),
                    errc::check_failed, "evaluation depends on the point order");
            ++r.checks;
        }
    });
}

std::vector<suite_result> run_verify(const verify_config &cfg) {
    using suite_fn = suite_result (*)(const verify_config &);
    const suite_fn suites[] = {
        suite_inverse_pair, suite_bicomplex,          suite_chain_maps, suite_triangle,
        suite_composition,  suite_order_independence, suite_naturality,
    };
    constexpr size_t n = std::size(suites);
    std::vector<suite_result> out(n);
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (size_t i = 0; i < n; ++i)
        pool.emplace_back([&out, &cfg, &suites, i] { out[i] = suites[i](cfg); });
    for (std::thread &th : pool) th.join();
    return out;
}

} // namespace msh
