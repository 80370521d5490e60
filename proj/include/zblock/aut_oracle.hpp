#pragma once

#include <vector>

#include "errors.hpp"
#include "group.hpp"

namespace zblock {

/// Brute-force |Aut(C_{p^m} x C_{p^n})|: counts generator-image pairs that
/// define bijective endomorphisms. Serves as the independent cross-check
/// for aut_order_rank2.
inline long long brute_force_aut_order_rank2(int p, int m, int n) {
    long long om = detail::power_of(p, m);
    long long on = detail::power_of(p, n);
    long long q = om * on;
    if (q > 100000) throw CapError("brute-force automorphism count too large");
    auto encode = [&](long long a, long long b) { return a * on + b; };
    auto order_divides = [&](long long a, long long b, long long bound) {
        // order of (a, b) divides bound iff bound*(a,b) = 0
        return (a * bound % om == 0) && (b * bound % on == 0);
    };
    long long count = 0;
    std::vector<char> hit(q);
    for (long long ua = 0; ua < om; ++ua)
        for (long long ub = 0; ub < on; ++ub) {
            if (!order_divides(ua, ub, om)) continue;
            for (long long va = 0; va < om; ++va)
                for (long long vb = 0; vb < on; ++vb) {
                    if (!order_divides(va, vb, on)) continue;
                    // image of (i, j) is i*(ua,ub) + j*(va,vb); bijective?
                    std::fill(hit.begin(), hit.end(), 0);
                    bool bijective = true;
                    for (long long i = 0; i < om && bijective; ++i)
                        for (long long j = 0; j < on; ++j) {
                            long long xa = (i * ua + j * va) % om;
                            long long xb = (i * ub + j * vb) % on;
                            long long idx = encode(xa, xb);
                            if (hit[idx]) {
                                bijective = false;
                                break;
                            }
                            hit[idx] = 1;
                        }
                    if (bijective) ++count;
                }
        }
    return count;
}

} // namespace zblock
