#include "ncis/modarith.hpp"

#include <cmath>

#include "ncis/errors.hpp"

namespace ncis::modp {

u64 pow(u64 base, u64 exp, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mul(r, base, p);
        base = mul(base, base, p);
        exp >>= 1;
    }
    return r;
}

u64 inverse(u64 a, u64 p) {
    i128 t = 0, new_t = 1;
    i128 r = p, new_r = a % p;
    while (new_r != 0) {
        const i128 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw InvalidArgument("residue is not invertible");
    if (t < 0) t += p;
    return static_cast<u64>(t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

void require_valid_prime(u64 p) {
    if (p <= kMinPrime || p >= kMaxPrime) {
        throw InvalidArgument("prime must lie in (2^50, 2^62), got " + std::to_string(p));
    }
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

u64 random_prime(std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> dist(kMinPrime + 1, kMaxPrime - 1);
    for (;;) {
        const u64 candidate = dist(rng) | 1;
        if (candidate < kMaxPrime && is_prime(candidate)) return candidate;
    }
}

u64 prime_from_seed(u64 seed) {
    std::mt19937_64 rng(seed);
    return random_prime(rng);
}

std::optional<std::pair<i64, i64>> rational_reconstruct(u64 r, u64 p) {
    const auto bound = static_cast<i128>(std::sqrt(static_cast<long double>(p) / 2.0L));
    i128 r0 = p, r1 = r % p;
    i128 t0 = 0, t1 = 1;
    while (r1 > bound) {
        const i128 q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    if (t1 == 0) return std::nullopt;
    i128 num = r1, den = t1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den > bound) return std::nullopt;
    // gcd(num, den) must be 1 for the representation to be unique.
    i128 a = num < 0 ? -num : num, b = den;
    while (b) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    if (a != 1 && num != 0) return std::nullopt;
    if (num == 0) den = 1;
    return std::pair<i64, i64>{static_cast<i64>(num), static_cast<i64>(den)};
}

}  // namespace ncis::modp
