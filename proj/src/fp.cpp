#include "fp.hpp"

namespace msh {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

prime_field::prime_field(uint32_t l) : l_(l) {
    require(is_prime(l), errc::invalid_argument, "modulus must be prime: " + std::to_string(l));
}

uint32_t prime_field::inv(uint32_t a) const {
    require(a % l_ != 0, errc::internal_error, "division by zero in F_l");
    // Extended Euclid.
    int64_t t = 0, nt = 1, r = l_, nr = a % l_;
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += l_;
    return static_cast<uint32_t>(t);
}

} // namespace msh
