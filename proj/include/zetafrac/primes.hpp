#pragma once

#include <cstdint>
#include <vector>

namespace zetafrac {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

inline std::vector<int> primes_upto(int n) {
    std::vector<int> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (int i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (long long j = static_cast<long long>(i) * i; j <= n; j += i)
            composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

// Base prime p when n = p^k (k >= 1), else 0.
inline std::uint64_t prime_power_base(std::uint64_t n) {
    if (n < 2) return 0;
    std::uint64_t p = 0;
    if (n % 2 == 0) p = 2;
    else {
        for (std::uint64_t d = 3; d * d <= n; d += 2) {
            if (n % d == 0) { p = d; break; }
        }
        if (p == 0) return n;
    }
    while (n % p == 0) n /= p;
    return n == 1 ? p : 0;
}

}
