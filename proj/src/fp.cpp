#include "csidh/fp.hpp"

#include <cstring>
#include <stdexcept>

#include "mp.hpp"

namespace csidh {

namespace {

// -p[0]^-1 mod 2^64 by Newton iteration (p odd).
std::uint64_t neg_inv64(std::uint64_t p0) {
    std::uint64_t x = 1;
    for (int i = 0; i < 6; ++i) x *= 2 - p0 * x;
    return 0 - x;
}

}  // namespace

Fp Fp::from_modulus(std::span<const std::uint64_t> p_limbs) {
    if (p_limbs.empty() || p_limbs.size() > kMaxLimbs) throw std::invalid_argument("modulus size");
    Fp f;
    std::size_t n = p_limbs.size();
    while (n > 1 && p_limbs[n - 1] == 0) --n;
    for (std::size_t i = 0; i < n; ++i) f.p_[i] = p_limbs[i];
    if ((f.p_[0] & 1) == 0 || mp::is_zero(f.p_.data(), n)) throw std::invalid_argument("modulus must be odd");
    // The reduction in mont_mul keeps intermediate sums below 2p in n+1 limbs;
    // requires the top limb to leave one spare bit.
    if (f.p_[n - 1] >> 63) throw std::invalid_argument("modulus too large");
    f.nlimbs_ = n;
    f.nbits_ = mp::bit_length(f.p_.data(), n);
    f.nbytes_ = (f.nbits_ + 7) / 8;
    f.n0inv_ = neg_inv64(f.p_[0]);

    // R^2 mod p by 128n modular doublings of 1.
    std::array<std::uint64_t, kMaxLimbs> r{};
    r[0] = 1;
    for (std::size_t i = 0; i < 128 * n; ++i) {
        std::uint64_t carry = mp::add(r.data(), r.data(), r.data(), n);
        if (carry || mp::cmp(r.data(), f.p_.data(), n) >= 0) mp::sub(r.data(), r.data(), f.p_.data(), n);
    }
    f.r2_ = r;

    // one_ = R mod p = mont(1, R^2)
    std::array<std::uint64_t, kMaxLimbs> onev{};
    onev[0] = 1;
    f.mont_mul(f.one_.v.data(), onev.data(), f.r2_.data());

    f.exp_inv_ = f.p_;
    std::array<std::uint64_t, kMaxLimbs> two{};
    two[0] = 2;
    mp::sub(f.exp_inv_.data(), f.exp_inv_.data(), two.data(), n);
    f.exp_inv_bits_ = mp::bit_length(f.exp_inv_.data(), n);

    f.exp_leg_ = f.p_;
    std::array<std::uint64_t, kMaxLimbs> onel{};
    onel[0] = 1;
    mp::sub(f.exp_leg_.data(), f.exp_leg_.data(), onel.data(), n);
    mp::shr1(f.exp_leg_.data(), n);
    f.exp_leg_bits_ = mp::bit_length(f.exp_leg_.data(), n);
    return f;
}

void Fp::mont_mul(std::uint64_t* r, const std::uint64_t* a, const std::uint64_t* b) const {
    const std::size_t n = nlimbs_;
    std::uint64_t t[kMaxLimbs + 2] = {0};
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < n; ++j) {
            mp::u128 cur = static_cast<mp::u128>(a[i]) * b[j] + t[j] + carry;
            t[j] = static_cast<std::uint64_t>(cur);
            carry = static_cast<std::uint64_t>(cur >> 64);
        }
        mp::u128 cur = static_cast<mp::u128>(t[n]) + carry;
        t[n] = static_cast<std::uint64_t>(cur);
        t[n + 1] = static_cast<std::uint64_t>(cur >> 64);

        std::uint64_t m = t[0] * n0inv_;
        cur = static_cast<mp::u128>(m) * p_[0] + t[0];
        carry = static_cast<std::uint64_t>(cur >> 64);
        for (std::size_t j = 1; j < n; ++j) {
            cur = static_cast<mp::u128>(m) * p_[j] + t[j] + carry;
            t[j - 1] = static_cast<std::uint64_t>(cur);
            carry = static_cast<std::uint64_t>(cur >> 64);
        }
        cur = static_cast<mp::u128>(t[n]) + carry;
        t[n - 1] = static_cast<std::uint64_t>(cur);
        t[n] = t[n + 1] + static_cast<std::uint64_t>(cur >> 64);
        t[n + 1] = 0;
    }
    // t < 2p; subtract p behind a mask.
    std::uint64_t d[kMaxLimbs];
    std::uint64_t borrow = mp::sub(d, t, p_.data(), n);
    borrow -= t[n];  // top limb of t cancels any borrow
    std::uint64_t keep = ct::mask_from_bit(borrow & 1);
    for (std::size_t j = 0; j < n; ++j) r[j] = (t[j] & keep) | (d[j] & ~keep);
    for (std::size_t j = n; j < kMaxLimbs; ++j) r[j] = 0;
}

FieldElement Fp::from_u64(std::uint64_t x) const {
    std::array<std::uint64_t, kMaxLimbs> raw{};
    raw[0] = x;
    if (nlimbs_ == 1) raw[0] %= p_[0];
    FieldElement r;
    mont_mul(r.v.data(), raw.data(), r2_.data());
    return r;
}

FieldElement Fp::add(const FieldElement& a, const FieldElement& b, OpCounter& c) const {
    ++c.add;
    const std::size_t n = nlimbs_;
    FieldElement r;
    std::uint64_t carry = mp::add(r.v.data(), a.v.data(), b.v.data(), n);
    std::uint64_t d[kMaxLimbs];
    std::uint64_t borrow = mp::sub(d, r.v.data(), p_.data(), n);
    borrow -= carry;
    std::uint64_t keep = ct::mask_from_bit(borrow & 1);
    for (std::size_t j = 0; j < n; ++j) r.v[j] = (r.v[j] & keep) | (d[j] & ~keep);
    return r;
}

FieldElement Fp::sub(const FieldElement& a, const FieldElement& b, OpCounter& c) const {
    ++c.add;
    const std::size_t n = nlimbs_;
    FieldElement r;
    std::uint64_t borrow = mp::sub(r.v.data(), a.v.data(), b.v.data(), n);
    std::uint64_t m = ct::mask_from_bit(borrow);
    std::uint64_t masked[kMaxLimbs];
    for (std::size_t j = 0; j < n; ++j) masked[j] = p_[j] & m;
    mp::add(r.v.data(), r.v.data(), masked, n);
    return r;
}

FieldElement Fp::mul(const FieldElement& a, const FieldElement& b, OpCounter& c) const {
    ++c.mul;
    FieldElement r;
    mont_mul(r.v.data(), a.v.data(), b.v.data());
    return r;
}

FieldElement Fp::sqr(const FieldElement& a, OpCounter& c) const {
    ++c.sqr;
    FieldElement r;
    mont_mul(r.v.data(), a.v.data(), a.v.data());
    return r;
}

FieldElement Fp::pow_public(const FieldElement& a, const std::uint64_t* e, std::size_t ebits,
                            OpCounter& c) const {
    // Left-to-right sliding window; the schedule is a function of the public
    // exponent only.
    auto bit = [&](std::size_t i) { return (e[i / 64] >> (i % 64)) & 1; };
    if (ebits <= 16) {
        FieldElement r = a;
        for (std::size_t i = ebits - 1; i-- > 0;) {
            r = sqr(r, c);
            if (bit(i)) r = mul(r, a, c);
        }
        return r;
    }
    constexpr std::size_t w = 4;
    FieldElement table[1 << (w - 1)];  // odd powers a^1, a^3, ..., a^15
    table[0] = a;
    FieldElement a2 = sqr(a, c);
    for (std::size_t i = 1; i < (1u << (w - 1)); ++i) table[i] = mul(table[i - 1], a2, c);

    FieldElement r;
    bool started = false;
    std::size_t i = ebits;
    while (i > 0) {
        if (!bit(i - 1)) {
            if (started) r = sqr(r, c);
            --i;
            continue;
        }
        // window [i-1 .. j], ending on a set bit
        std::size_t width = std::min(w, i);
        std::size_t j = i - width;
        while (!bit(j)) ++j;
        std::size_t value = 0;
        for (std::size_t t = i; t-- > j;) value = (value << 1) | bit(t);
        if (started) {
            for (std::size_t t = 0; t < i - j; ++t) r = sqr(r, c);
            r = mul(r, table[value >> 1], c);
        } else {
            r = table[value >> 1];
            started = true;
        }
        i = j;
    }
    return r;
}

FieldElement Fp::inv(const FieldElement& a, OpCounter& c) const {
    if (is_zero(a)) throw std::domain_error("fp inverse of zero");
    return pow_public(a, exp_inv_.data(), exp_inv_bits_, c);
}

int Fp::legendre(const FieldElement& a, OpCounter& c) const {
    FieldElement s = pow_public(a, exp_leg_.data(), exp_leg_bits_, c);
    std::uint64_t one_bit = 1;
    std::uint64_t zero_bit = 1;
    for (std::size_t i = 0; i < nlimbs_; ++i) {
        one_bit &= ct::isequal(s.v[i], one_.v[i]);
        zero_bit &= ct::isequal(s.v[i], 0);
    }
    // one_bit -> +1, zero_bit -> 0, otherwise -1.
    return static_cast<int>(one_bit) - static_cast<int>(1 - one_bit - zero_bit);
}

FieldElement Fp::pow_u64(const FieldElement& a, std::uint64_t e, OpCounter& c) const {
    if (e == 0) return one_;
    std::uint64_t limb[1] = {e};
    return pow_public(a, limb, mp::bit_length(limb, 1), c);
}

bool Fp::is_zero(const FieldElement& a) const { return mp::is_zero(a.v.data(), nlimbs_); }

std::uint64_t Fp::ct_is_zero(const FieldElement& a) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < nlimbs_; ++i) acc |= a.v[i];
    return ct::isequal(acc, 0);
}

bool Fp::equal(const FieldElement& a, const FieldElement& b) const {
    return mp::cmp(a.v.data(), b.v.data(), nlimbs_) == 0;
}

std::array<std::uint64_t, kMaxLimbs> Fp::to_canonical(const FieldElement& a) const {
    std::array<std::uint64_t, kMaxLimbs> onev{};
    onev[0] = 1;
    std::array<std::uint64_t, kMaxLimbs> out{};
    mont_mul(out.data(), a.v.data(), onev.data());
    return out;
}

FieldElement Fp::from_canonical(std::span<const std::uint64_t> limbs) const {
    std::array<std::uint64_t, kMaxLimbs> raw{};
    for (std::size_t i = 0; i < limbs.size() && i < kMaxLimbs; ++i) raw[i] = limbs[i];
    FieldElement r;
    mont_mul(r.v.data(), raw.data(), r2_.data());
    return r;
}

std::uint64_t Fp::to_u64(const FieldElement& a) const { return to_canonical(a)[0]; }

void Fp::to_bytes(const FieldElement& a, std::span<std::uint8_t> out) const {
    auto canon = to_canonical(a);
    for (std::size_t i = 0; i < nbytes_ && i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(canon[i / 8] >> (8 * (i % 8)));
}

bool Fp::from_bytes(std::span<const std::uint8_t> in, FieldElement& out) const {
    if (in.size() != nbytes_) return false;
    std::array<std::uint64_t, kMaxLimbs> raw{};
    for (std::size_t i = 0; i < in.size(); ++i)
        raw[i / 8] |= static_cast<std::uint64_t>(in[i]) << (8 * (i % 8));
    if (mp::cmp(raw.data(), p_.data(), nlimbs_) >= 0) return false;
    out = from_canonical(raw);
    return true;
}

}  // namespace csidh
