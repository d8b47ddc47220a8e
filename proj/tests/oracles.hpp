#pragma once

#include <cstdlib>
#include <map>

// Independent brute-force oracles, written before the implementations they
// check and kept free of the library code paths they are meant to verify.

namespace oracles {

/// Rank-1 fusion oracle. Decompose chi_a chi_b by the classical
/// Clebsch-Gordan rule (chi_c for c = |a-b|, |a-b|+2, ..., a+b), then
/// truncate at level k by reflecting the shifted label e = c+1 modulo
/// 2(k+2): labels on a wall vanish, labels beyond it come back negated.
inline std::map<long long, long long> a1_truncated_clebsch_gordan(long k, long long a,
                                                                  long long b) {
    std::map<long long, long long> out;
    long long m = 2 * (k + 2);
    for (long long c = std::llabs(a - b); c <= a + b; c += 2) {
        long long e = (c + 1) % m;
        long long sign = 1;
        if (e == 0 || e == k + 2) continue;
        if (e > k + 2) {
            e = m - e;
            sign = -1;
        }
        out[e - 1] += sign;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

}  // namespace oracles
