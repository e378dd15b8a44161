#pragma once

// Word-sized prime field helpers. All residues are kept in [0, p).

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

namespace ncis::modp {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Accepted primes lie strictly between these bounds.
inline constexpr u64 kMinPrime = u64{1} << 50;
inline constexpr u64 kMaxPrime = u64{1} << 62;

inline u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
inline u64 add(u64 a, u64 b, u64 p) {
    const u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 neg(u64 a, u64 p) { return a == 0 ? 0 : p - a; }

inline u64 from_signed(i64 v, u64 p) {
    const i64 r = static_cast<i64>(static_cast<i128>(v) % static_cast<i128>(p));
    return r < 0 ? static_cast<u64>(r + static_cast<i64>(p)) : static_cast<u64>(r);
}

u64 pow(u64 base, u64 exp, u64 p);
/// Throws when a is not invertible.
u64 inverse(u64 a, u64 p);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

/// Throws InvalidArgument unless p is a prime in (kMinPrime, kMaxPrime).
void require_valid_prime(u64 p);

/// Uniform over primes in (kMinPrime, kMaxPrime) by rejection sampling.
u64 random_prime(std::mt19937_64& rng);
u64 prime_from_seed(u64 seed);

/// Finds a/b ≡ r (mod p) with |a| ≤ sqrt(p/2), 0 < b ≤ sqrt(p/2).
std::optional<std::pair<i64, i64>> rational_reconstruct(u64 r, u64 p);

}  // namespace ncis::modp
