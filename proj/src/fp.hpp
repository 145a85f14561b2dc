#pragma once

#include "common.hpp"

#include <cstdint>
#include <vector>

namespace msh {

// Arithmetic in the prime field F_l.  Elements are canonical residues in
// [0, l).  All model arithmetic is exact: no floating point anywhere.
class prime_field {
  public:
    explicit prime_field(uint32_t l);

    uint32_t modulus() const { return l_; }

    uint32_t reduce(int64_t v) const {
        int64_t r = v % static_cast<int64_t>(l_);
        if (r < 0) r += l_;
        return static_cast<uint32_t>(r);
    }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= l_ ? s - l_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + l_ - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : l_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % l_);
    }
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    // (-1)^k as a field element.
    uint32_t sign(int64_t k) const { return (k % 2 == 0) ? 1u : neg(1u); }

  private:
    uint32_t l_;
};

bool is_prime(uint32_t n);

} // namespace msh
