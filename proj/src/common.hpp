#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msh {

// Error taxonomy shared by the core library, the C surface and the CLI.
enum class errc {
    ok = 0,
    invalid_argument,
    parse_error,
    budget_exceeded,
    window_violation,
    check_failed,
    internal_error,
};

class error : public std::runtime_error {
  public:
    errc code;
    error(errc c, const std::string &what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string &what) { throw error(c, what); }

inline void require(bool ok, errc c, const std::string &what) {
    if (!ok) fail(c, what);
}

// Work budget: a coarse operation counter used by the expensive enumerative
// routines so that oversized requests fail fast instead of hanging.
struct budget_meter {
    uint64_t remaining = 50'000'000ull;

    void tick(uint64_t n = 1) {
        if (remaining < n) fail(errc::budget_exceeded, "work budget exhausted");
        remaining -= n;
    }
};

} // namespace msh
