#include "mapspace.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace {

int exit_code_of(int status) {
    switch (status) {
    case MSH_OK: return 0;
    case MSH_EINVAL:
    case MSH_EPARSE: return 2;
    case MSH_EBUDGET: return 3;
    default: return 4;
    }
}

bool parse_int_strict(const std::string &s, int &v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
}

// "a..b" or a single degree "a"
bool parse_degrees(const std::string &s, int &lo, int &hi) {
    size_t dots = s.find("..");
    if (dots == std::string::npos) {
        if (!parse_int_strict(s, lo)) return false;
        hi = lo;
        return true;
    }
    return parse_int_strict(s.substr(0, dots), lo) &&
           parse_int_strict(s.substr(dots + 2), hi);
}

std::vector<nlohmann::json> parse_records(const std::string &jsonl) {
    std::vector<nlohmann::json> recs;
    size_t start = 0;
    while (start < jsonl.size()) {
        size_t end = jsonl.find('\n', start);
        if (end == std::string::npos) end = jsonl.size();
        if (end > start)
            recs.push_back(nlohmann::json::parse(jsonl.substr(start, end - start)));
        start = end + 1;
    }
    return recs;
}

void render_grid(const char *title,
                 const std::map<std::pair<int, int>, uint64_t> &cells) {
    int pmax = 0, qmax = 0;
    for (const auto &[pq, rank] : cells) {
        pmax = std::max(pmax, pq.first);
        qmax = std::max(qmax, pq.second);
    }
    std::printf("%s (rows q, columns p)\n", title);
    std::printf("  q\\p");
    for (int p = 0; p <= pmax; ++p) std::printf(" %9d", p);
    std::printf("\n");
    for (int q = qmax; q >= 0; --q) {
        std::printf("  %3d", q);
        for (int p = 0; p <= pmax; ++p) {
            auto it = cells.find({p, q});
            if (it == cells.end())
                std::printf(" %9s", "-");
            else
                std::printf(" %9llu", static_cast<unsigned long long>(it->second));
        }
        std::printf("\n");
    }
}

void render_table(const std::string &jsonl) {
    std::vector<nlohmann::json> recs = parse_records(jsonl);
    std::map<std::pair<int, int>, uint64_t> grid_d, grid_g;
    bool homology_header = false, diag_header = false, suite_header = false;
    for (const nlohmann::json &r : recs) {
        std::string kind = r.value("kind", "");
        if (kind == "job") {
            std::string op = r.value("op", "");
            std::printf("== %s: space %s", op.c_str(), r.value("space", "").c_str());
            if (r.contains("target"))
                std::printf(", target %s", r.value("target", "").c_str());
            std::printf(", mod %llu",
                        static_cast<unsigned long long>(r.value("prime", 0ULL)));
            if (r.contains("pmax"))
                std::printf(", window p<=%d q<=%d", r.value("pmax", 0),
                            r.value("qmax", 0));
            if (r.contains("lo"))
                std::printf(", degrees %d..%d", r.value("lo", 0), r.value("hi", 0));
            std::printf("\n");
        } else if (kind == "homology") {
            if (!homology_header) {
                std::printf("  degree  rank\n");
                homology_header = true;
            }
            std::printf("  %6d  %llu\n", r.value("degree", 0),
                        static_cast<unsigned long long>(r.value("rank", 0ULL)));
        } else if (kind == "bidegree") {
            auto &grid = r.value("model", "") == "d" ? grid_d : grid_g;
            grid[{r.value("p", 0), r.value("q", 0)}] = r.value("rank", 0ULL);
        } else if (kind == "diag") {
            if (!diag_header) {
                std::printf("diagonal homology inside the window\n");
                std::printf("  model  degree  rank\n");
                diag_header = true;
            }
            std::printf("  %5s  %6d  %llu\n", r.value("model", "").c_str(),
                        r.value("degree", 0),
                        static_cast<unsigned long long>(r.value("rank", 0ULL)));
        } else if (kind == "mapspace") {
            std::printf("direct enumeration: reduced H_%d of the mapping space has "
                        "rank %llu\n",
                        r.value("degree", 0),
                        static_cast<unsigned long long>(r.value("rank", 0ULL)));
        } else if (kind == "stabilization") {
            std::printf("stabilization [%s] degree %d: rank %llu at p<=%d, rank %llu "
                        "at p<=%d -> %s\n",
                        r.value("model", "").c_str(), r.value("degree", 0),
                        static_cast<unsigned long long>(r.value("rank1", 0ULL)),
                        r.value("p1", 0),
                        static_cast<unsigned long long>(r.value("rank2", 0ULL)),
                        r.value("p2", 0),
                        r.value("stable", false) ? "stable" : "not stable");
        } else if (kind == "suite") {
            if (!suite_header) {
                std::printf("  suite               verdict  checks  detail\n");
                suite_header = true;
            }
            std::printf("  %-18s  %-7s  %6llu  %s\n", r.value("suite", "").c_str(),
                        r.value("pass", false) ? "pass" : "FAIL",
                        static_cast<unsigned long long>(r.value("checks", 0ULL)),
                        r.value("detail", "").c_str());
        } else if (kind == "verdict") {
            std::printf("verdict: %s (%d of %llu suites failed)\n",
                        r.value("pass", false) ? "all checks passed" : "FAILED",
                        r.value("failed", 0),
                        static_cast<unsigned long long>(r.value("suites", 0ULL)));
        } else if (kind == "error") {
            std::printf("error in %s (%s): %s\n", r.value("component", "").c_str(),
                        r.value("code", "").c_str(), r.value("message", "").c_str());
        }
    }
    if (!grid_d.empty()) render_grid("block ranks of the cosimplicial model", grid_d);
    if (!grid_g.empty()) render_grid("block ranks of the morphism model", grid_g);
}

void emit(const std::string &format, const char *jsonl) {
    if (!jsonl) return;
    if (format == "records")
        std::fputs(jsonl, stdout);
    else
        render_table(jsonl);
}

struct space_handle {
    msh_space *sp = nullptr;
    ~space_handle() { msh_space_free(sp); }
};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"chain models of pointed mapping spaces over a prime field"};
    app.require_subcommand(1);

    std::string space_desc = "sphere:1";
    std::string target_desc = "nerve_z:2";
    uint32_t prime = 2;
    int pmax = 3, qmax = 4, smax = 3;
    std::string degrees = "0..3";
    uint64_t budget = 50'000'000ull;
    std::string format = "table";

    auto add_common = [&](CLI::App *cmd, bool pair) {
        cmd->add_option("--space", space_desc,
                        "source space (sphere:N, delta:P, circle:K, nerve_z:M[:CAP], "
                        "point, @file)")
            ->capture_default_str();
        if (pair)
            cmd->add_option("--target", target_desc, "target space, same grammar")
                ->capture_default_str();
        cmd->add_option("--prime", prime, "field characteristic")
            ->capture_default_str();
        cmd->add_option("--budget", budget, "work budget for enumerations")
            ->envname("MSH_BUDGET")
            ->capture_default_str();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "records"}))
            ->capture_default_str();
    };

    CLI::App *hom = app.add_subcommand("homology", "reduced homology ranks of a space");
    add_common(hom, false);
    hom->add_option("--degrees", degrees, "degree window a..b")->capture_default_str();

    CLI::App *mod = app.add_subcommand(
        "models", "both chain models of the mapping space target^space");
    add_common(mod, true);
    mod->add_option("--pmax", pmax, "level truncation")->capture_default_str();
    mod->add_option("--qmax", qmax, "chain-degree truncation")->capture_default_str();

    CLI::App *ver =
        app.add_subcommand("verify", "identity suites for the pair (space, target)");
    add_common(ver, true);
    ver->add_option("--pmax", pmax, "level truncation")->capture_default_str();
    ver->add_option("--qmax", qmax, "chain-degree truncation")->capture_default_str();
    ver->add_option("--smax", smax, "surjection arity bound")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    space_handle sx;
    int status = msh_space_parse(space_desc.c_str(), &sx.sp);
    if (status != MSH_OK) {
        std::fprintf(stderr, "msh: %s\n", msh_last_error());
        return exit_code_of(status);
    }

    if (hom->parsed()) {
        int lo = 0, hi = 0;
        if (!parse_degrees(degrees, lo, hi)) {
            std::fprintf(stderr, "msh: bad --degrees '%s'\n", degrees.c_str());
            return 2;
        }
        char *out = nullptr;
        status = msh_homology(sx.sp, prime, lo, hi, &out);
        emit(format, out);
        msh_buf_free(out);
        if (status != MSH_OK) std::fprintf(stderr, "msh: %s\n", msh_last_error());
        return exit_code_of(status);
    }

    space_handle sy;
    status = msh_space_parse(target_desc.c_str(), &sy.sp);
    if (status != MSH_OK) {
        std::fprintf(stderr, "msh: %s\n", msh_last_error());
        return exit_code_of(status);
    }

    if (mod->parsed()) {
        char *out = nullptr;
        status = msh_models(sx.sp, sy.sp, prime, pmax, qmax, budget, &out);
        emit(format, out);
        msh_buf_free(out);
        if (status != MSH_OK) std::fprintf(stderr, "msh: %s\n", msh_last_error());
        return exit_code_of(status);
    }

    char *out = nullptr;
    int all_pass = 0;
    status = msh_verify(sx.sp, sy.sp, prime, pmax, qmax, smax, budget, &out, &all_pass);
    emit(format, out);
    msh_buf_free(out);
    if (status != MSH_OK) {
        std::fprintf(stderr, "msh: %s\n", msh_last_error());
        return exit_code_of(status);
    }
    return all_pass ? 0 : 1;
}
