#pragma once

#include <cstddef>
#include <cstdint>

// Fixed-size little-endian limb helpers shared by the field setup, parameter
// construction and key validation. Variable-time; used on public data only.
namespace csidh::mp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 add(u64* r, const u64* a, const u64* b, std::size_t n) {
    u64 carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        u128 s = static_cast<u128>(a[i]) + b[i] + carry;
        r[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    return carry;
}

inline u64 sub(u64* r, const u64* a, const u64* b, std::size_t n) {
    u64 borrow = 0;
    for (std::size_t i = 0; i < n; ++i) {
        u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
        r[i] = static_cast<u64>(d);
        borrow = static_cast<u64>((d >> 64) & 1);
    }
    return borrow;
}

inline int cmp(const u64* a, const u64* b, std::size_t n) {
    for (std::size_t i = n; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

inline bool is_zero(const u64* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != 0) return false;
    return true;
}

/// r[0..n] = a[0..n-1] * m  (r has n+1 limbs).
inline void mul_u64(u64* r, const u64* a, std::size_t n, u64 m) {
    u64 carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        u128 t = static_cast<u128>(a[i]) * m + carry;
        r[i] = static_cast<u64>(t);
        carry = static_cast<u64>(t >> 64);
    }
    r[n] = carry;
}

/// r[0..2n-1] = a^2, schoolbook.
inline void square(u64* r, const u64* a, std::size_t n) {
    for (std::size_t i = 0; i < 2 * n; ++i) r[i] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        u64 carry = 0;
        for (std::size_t j = 0; j < n; ++j) {
            u128 t = static_cast<u128>(a[i]) * a[j] + r[i + j] + carry;
            r[i + j] = static_cast<u64>(t);
            carry = static_cast<u64>(t >> 64);
        }
        r[i + n] = carry;
    }
}

inline void shr1(u64* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        u64 hi = (i + 1 < n) ? a[i + 1] : 0;
        a[i] = (a[i] >> 1) | (hi << 63);
    }
}

inline std::size_t bit_length(const u64* a, std::size_t n) {
    for (std::size_t i = n; i-- > 0;) {
        if (a[i] != 0) return 64 * i + (64 - static_cast<std::size_t>(__builtin_clzll(a[i])));
    }
    return 0;
}

}  // namespace csidh::mp
