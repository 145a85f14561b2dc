#pragma once

#include "models.hpp"

namespace msh {

// Outcome of one named family of identity checks.
struct suite_result {
    std::string name;
    bool pass = true;
    size_t checks = 0;  // comparison groups that ran before the verdict
    std::string detail; // first counterexample or error message when failing
};

struct verify_config {
    space x, y;
    uint32_t prime = 2;
    int pmax = 3;
    int qmax = 4; // one row past pmax keeps the checked diagonal degrees honest
    int smax = 3;
    int nmax = 1;
    uint64_t budget = 50'000'000ull;
};

// Individual suites.  Each reports instead of throwing, so a failing identity
// comes back as pass = false with the counterexample in detail.
suite_result suite_inverse_pair(const verify_config &cfg);
suite_result suite_bicomplex(const verify_config &cfg);
suite_result suite_chain_maps(const verify_config &cfg);
suite_result suite_triangle(const verify_config &cfg);
suite_result suite_composition(const verify_config &cfg);
suite_result suite_order_independence(const verify_config &cfg);
suite_result suite_naturality(const verify_config &cfg);

// Window-identity checks on prebuilt models, so tests can feed corrupted
// inputs; suite_bicomplex builds its models and then calls this.
suite_result check_window_suite(const d_model &d, g_model &g, const prime_field &f);

// Runs every suite on one pair, each on its own thread; the report order is
// fixed regardless of scheduling.
std::vector<suite_result> run_verify(const verify_config &cfg);

} // namespace msh
