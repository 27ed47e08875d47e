#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace csidh {

inline constexpr std::size_t kMaxLimbs = 8;

/// Residue mod the system prime. Stored in Montgomery form, always fully
/// reduced; the representation is transparent to callers.
struct FieldElement {
    std::array<std::uint64_t, kMaxLimbs> v{};
};

/// Tallies of semantic field operations (M, S, A) plus per-prime isogeny
/// computation invocations. One counter is owned by one evaluation at a time.
struct OpCounter {
    std::uint64_t mul = 0;
    std::uint64_t sqr = 0;
    std::uint64_t add = 0;  ///< additions and subtractions
    std::vector<std::uint64_t> isog;

    void reset(std::size_t nprimes) {
        mul = sqr = add = 0;
        isog.assign(nprimes, 0);
    }
};

namespace ct {

// Keeps the compiler from tracking the value through the mask arithmetic.
inline std::uint64_t value_barrier(std::uint64_t x) {
#if defined(__GNUC__) || defined(__clang__)
    __asm__("" : "+r"(x));
    return x;
#else
    volatile std::uint64_t v = x;
    return v;
#endif
}

/// 1 if x == y, 0 otherwise, branch-free.
inline std::uint64_t isequal(std::uint64_t x, std::uint64_t y) {
    std::uint64_t z = value_barrier(x ^ y);
    return 1 ^ ((z | (0 - z)) >> 63);
}

inline std::uint64_t isequal_i64(std::int64_t x, std::int64_t y) {
    return isequal(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y));
}

/// All-ones mask for bit 1, zero mask for bit 0.
inline std::uint64_t mask_from_bit(std::uint64_t bit) { return 0 - value_barrier(bit); }

/// 1 if e < 0 (two's complement sign bit).
inline std::uint64_t is_negative(std::int64_t e) {
    return value_barrier(static_cast<std::uint64_t>(e)) >> 63;
}

inline void cswap(std::uint64_t& x, std::uint64_t& y, std::uint64_t bit) {
    std::uint64_t m = mask_from_bit(bit);
    std::uint64_t t = m & (x ^ y);
    x ^= t;
    y ^= t;
}

/// bit ? a : b
inline std::uint64_t select(std::uint64_t bit, std::uint64_t a, std::uint64_t b) {
    std::uint64_t m = mask_from_bit(bit);
    return (a & m) | (b & ~m);
}

}  // namespace ct

inline void cswap(FieldElement& x, FieldElement& y, std::uint64_t bit) {
    std::uint64_t m = ct::mask_from_bit(bit);
    for (std::size_t i = 0; i < kMaxLimbs; ++i) {
        std::uint64_t t = m & (x.v[i] ^ y.v[i]);
        x.v[i] ^= t;
        y.v[i] ^= t;
    }
}

/// bit ? a : b, limb-wise masked.
inline FieldElement cselect(std::uint64_t bit, const FieldElement& a, const FieldElement& b) {
    std::uint64_t m = ct::mask_from_bit(bit);
    FieldElement r;
    for (std::size_t i = 0; i < kMaxLimbs; ++i) r.v[i] = (a.v[i] & m) | (b.v[i] & ~m);
    return r;
}

/// Arithmetic context for one fixed prime p. Operations count semantic field
/// multiplications, squarings and additions into the supplied OpCounter;
/// Montgomery-form conversions at the boundary are not counted.
class Fp {
public:
    static Fp from_modulus(std::span<const std::uint64_t> p_limbs);

    std::size_t nlimbs() const { return nlimbs_; }
    std::size_t nbits() const { return nbits_; }
    std::size_t nbytes() const { return nbytes_; }
    const std::array<std::uint64_t, kMaxLimbs>& modulus() const { return p_; }

    FieldElement zero() const { return FieldElement{}; }
    FieldElement one() const { return one_; }
    FieldElement from_u64(std::uint64_t x) const;

    FieldElement add(const FieldElement& a, const FieldElement& b, OpCounter& c) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b, OpCounter& c) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b, OpCounter& c) const;
    FieldElement sqr(const FieldElement& a, OpCounter& c) const;

    /// a^(p-2) with a schedule fixed by p. Throws std::domain_error on a = 0.
    FieldElement inv(const FieldElement& a, OpCounter& c) const;

    /// +1 for a nonzero square, -1 for a non-square, 0 for a = 0.
    /// Computed as a^((p-1)/2); the operation schedule depends only on p.
    int legendre(const FieldElement& a, OpCounter& c) const;

    /// a^e for a public 64-bit exponent (square-and-multiply on e's bits).
    FieldElement pow_u64(const FieldElement& a, std::uint64_t e, OpCounter& c) const;

    bool is_zero(const FieldElement& a) const;
    bool equal(const FieldElement& a, const FieldElement& b) const;
    /// Branch-free zero test: 1 if a == 0.
    std::uint64_t ct_is_zero(const FieldElement& a) const;

    /// Fixed-length little-endian encoding of the canonical residue.
    void to_bytes(const FieldElement& a, std::span<std::uint8_t> out) const;
    /// Parses nbytes() little-endian bytes; rejects values >= p.
    bool from_bytes(std::span<const std::uint8_t> in, FieldElement& out) const;

    /// Canonical residue (non-Montgomery) limbs, little-endian.
    std::array<std::uint64_t, kMaxLimbs> to_canonical(const FieldElement& a) const;
    /// Inverse of to_canonical; input must be < p.
    FieldElement from_canonical(std::span<const std::uint64_t> limbs) const;

    std::uint64_t to_u64(const FieldElement& a) const;  // canonical value, small fields

private:
    FieldElement pow_public(const FieldElement& a, const std::uint64_t* e, std::size_t ebits,
                            OpCounter& c) const;
    void mont_mul(std::uint64_t* r, const std::uint64_t* a, const std::uint64_t* b) const;

    std::array<std::uint64_t, kMaxLimbs> p_{};
    std::array<std::uint64_t, kMaxLimbs> r2_{};       // R^2 mod p
    std::array<std::uint64_t, kMaxLimbs> exp_inv_{};  // p - 2
    std::array<std::uint64_t, kMaxLimbs> exp_leg_{};  // (p - 1) / 2
    FieldElement one_{};                              // R mod p
    std::uint64_t n0inv_ = 0;                         // -p^-1 mod 2^64
    std::size_t nlimbs_ = 0;
    std::size_t nbits_ = 0;
    std::size_t nbytes_ = 0;
    std::size_t exp_inv_bits_ = 0;
    std::size_t exp_leg_bits_ = 0;
};

}  // namespace csidh
