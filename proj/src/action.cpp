#include "csidh/action.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "mp.hpp"

namespace csidh {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

constexpr std::size_t kRoundCap = 1u << 20;  // safety against a degenerate tape

struct ActionCtx {
    const ParameterSet& ps;
    RandomTape& tape;
    OpCounter& ctr;
    IsogenyWorkspace ws;

    const Fp& fp() const { return ps.fp; }
};

std::vector<std::int64_t> widen(const SecretKey& key, std::size_t n) {
    if (key.exponents.size() != n || key.bounds.size() != n)
        throw std::invalid_argument("key size does not match parameter set");
    return std::vector<std::int64_t>(key.exponents.begin(), key.exponents.end());
}

/// [4 * prod(l_j : j not active)] P, composed from per-prime chains.
PointXZ mul_cofactor(ActionCtx& cx, PointXZ p, const CurveCoeffs& e,
                     const std::vector<std::uint8_t>& active) {
    p = xdbl(cx.fp(), p, e, cx.ctr);
    p = xdbl(cx.fp(), p, e, cx.ctr);
    for (std::size_t j = 0; j < cx.ps.nprimes(); ++j)
        if (!active[j]) p = mul_by_chain(cx.fp(), cx.ps.chains[j], p, e, cx.ctr);
    return p;
}

std::vector<std::uint8_t> active_mask(std::size_t n, const std::vector<std::size_t>& s) {
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t i : s) mask[i] = 1;
    return mask;
}

// One batch round of the OAYT-style evaluator. S lists the active prime
// indices ascending; primes are processed in decreasing order.
void oayt_round(ActionCtx& cx, CurveCoeffs& e_curve, std::vector<std::int64_t>& e,
                std::vector<std::uint32_t>& z, const std::vector<std::size_t>& s) {
    const Fp& fp = cx.fp();
    OpCounter& c = cx.ctr;
    FieldElement u = cx.tape.next_elligator_u(fp);
    auto [ap, cp] = curve_to_AC(fp, e_curve, c);
    auto [t_plus, t_minus] = elligator(fp, ap, cp, u, c);
    auto mask = active_mask(cx.ps.nprimes(), s);
    PointXZ p0 = mul_cofactor(cx, t_plus, e_curve, mask);   // pi - 1 side
    PointXZ p1 = mul_cofactor(cx, t_minus, e_curve, mask);  // pi + 1 side

    for (std::size_t pos = s.size(); pos-- > 0;) {
        std::size_t i = s[pos];
        std::uint64_t neg = ct::is_negative(e[i]);
        cswap(p0, p1, neg);  // p0 is now the kernel-side parent
        PointXZ q = p0;
        for (std::size_t j = 0; j < pos; ++j)
            q = mul_by_chain(fp, cx.ps.chains[s[j]], q, e_curve, c);
        p1 = mul_by_chain(fp, cx.ps.chains[i], p1, e_curve, c);
        if (!is_infinity(fp, q)) {
            // One operation sequence for both branches: the secret bit picks
            // the multiples source (kernel candidate for a real round, the
            // point itself for a dummy one) and which results are kept. A
            // dummy round keeps only [l_i]p0 from the trailing differential
            // steps; codomain and evaluations land in discarded scratch.
            std::uint64_t real = 1 - ct::isequal_i64(e[i], 0);
            PointXZ src = cselect(real, q, p0);
            std::array<PointXZ, 2> push{p0, p1};
            PointXZ d0;
            CurveCoeffs e_new =
                quotient_isogeny(fp, e_curve, src, cx.ps.primes[i], push, cx.ws, c, &d0);
            e_curve = cselect(real, e_new, e_curve);
            p0 = cselect(real, push[0], d0);
            p1 = cselect(real, push[1], p1);
            std::int64_t sgn = 1 - 2 * static_cast<std::int64_t>(neg);
            e[i] -= sgn * static_cast<std::int64_t>(real);
            z[i] -= 1;
            c.isog[i] += 1;
        }
        cswap(p0, p1, neg);
    }
}

void mcr_round(ActionCtx& cx, CurveCoeffs& e_curve, std::vector<std::int64_t>& e,
               std::vector<std::uint32_t>& z, const std::vector<std::size_t>& s) {
    const Fp& fp = cx.fp();
    OpCounter& c = cx.ctr;
    FieldElement u = cx.tape.next_elligator_u(fp);
    auto [ap, cp] = curve_to_AC(fp, e_curve, c);
    auto [t_plus, t_minus] = elligator(fp, ap, cp, u, c);
    (void)t_minus;  // one torsion point per round, E[pi - 1] only
    auto mask = active_mask(cx.ps.nprimes(), s);
    PointXZ p = mul_cofactor(cx, t_plus, e_curve, mask);

    for (std::size_t pos = s.size(); pos-- > 0;) {
        std::size_t i = s[pos];
        PointXZ q = p;
        for (std::size_t j = 0; j < pos; ++j)
            q = mul_by_chain(fp, cx.ps.chains[s[j]], q, e_curve, c);
        if (!is_infinity(fp, q)) {
            std::uint64_t real = 1 - ct::isequal_i64(e[i], 0);
            PointXZ src = cselect(real, q, p);
            std::array<PointXZ, 1> push{p};
            PointXZ d;
            CurveCoeffs e_new =
                quotient_isogeny(fp, e_curve, src, cx.ps.primes[i], push, cx.ws, c, &d);
            e_curve = cselect(real, e_new, e_curve);
            p = cselect(real, push[0], d);
            e[i] -= static_cast<std::int64_t>(real);
            z[i] -= 1;
            c.isog[i] += 1;
        }
    }
}

void dummy_free_round(ActionCtx& cx, CurveCoeffs& e_curve, std::vector<std::int64_t>& e,
                      std::vector<std::uint64_t>& t, std::vector<std::uint32_t>& z,
                      const std::vector<std::size_t>& s) {
    const Fp& fp = cx.fp();
    OpCounter& c = cx.ctr;
    FieldElement u = cx.tape.next_elligator_u(fp);
    auto [ap, cp] = curve_to_AC(fp, e_curve, c);
    auto [elig_plus, elig_minus] = elligator(fp, ap, cp, u, c);
    auto mask = active_mask(cx.ps.nprimes(), s);
    PointXZ t1 = mul_cofactor(cx, elig_plus, e_curve, mask);   // pi - 1
    PointXZ t0 = mul_cofactor(cx, elig_minus, e_curve, mask);  // pi + 1

    for (std::size_t pos = s.size(); pos-- > 0;) {
        std::size_t i = s[pos];
        std::uint64_t ti = t[i];
        // After the swap t0 is the kernel-side parent and t1 the point that
        // keeps its l_i torsion; the trailing swap restores the labels with
        // the entry value of t_i.
        cswap(t0, t1, ti);
        PointXZ q = t0;
        for (std::size_t j = 0; j < pos; ++j)
            q = mul_by_chain(fp, cx.ps.chains[s[j]], q, e_curve, c);
        if (!is_infinity(fp, q)) {
            std::array<PointXZ, 2> push{t0, t1};
            e_curve = quotient_isogeny(fp, e_curve, q, cx.ps.primes[i], push, cx.ws, c);
            t0 = push[0];
            t1 = push[1];
            std::uint64_t b = ct::isequal_i64(e[i], 0);
            e[i] += 1 - 2 * static_cast<std::int64_t>(ti);  // e_i += (-1)^(t_i)
            t[i] ^= b;
            z[i] -= 1;
            c.isog[i] += 1;
        }
        t1 = mul_by_chain(fp, cx.ps.chains[i], t1, e_curve, c);
        cswap(t0, t1, ti);
    }
}

template <typename Round>
CurveCoeffs run_batched(ActionCtx& cx, const CurveCoeffs& e0, const SimbaConfig& cfg,
                        std::vector<std::uint32_t>& z, Round round) {
    CurveCoeffs e_curve = e0;
    const std::size_t n = cx.ps.nprimes();
    if (cx.ctr.isog.size() < n) cx.ctr.isog.resize(n, 0);
    auto batches = simba_partition(n, cfg.batches);
    std::size_t rounds = 0;
    auto pending = [&](const std::vector<std::size_t>& from) {
        std::vector<std::size_t> s;
        for (std::size_t i : from)
            if (z[i] > 0) s.push_back(i);
        return s;
    };
    for (std::size_t r = 0; r < cfg.merge_after; ++r) {
        for (const auto& batch : batches) {
            auto s = pending(batch);
            if (s.empty()) continue;
            if (++rounds > kRoundCap) throw std::runtime_error("group action failed to converge");
            round(e_curve, s);
        }
    }
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (;;) {
        auto s = pending(all);
        if (s.empty()) break;
        if (++rounds > kRoundCap) throw std::runtime_error("group action failed to converge");
        round(e_curve, s);
    }
    return e_curve;
}

}  // namespace

RandomTape RandomTape::from_seed(std::uint64_t seed) {
    RandomTape t;
    std::uint64_t st = seed;
    for (auto& w : t.s_) w = splitmix64(st);
    return t;
}

RandomTape RandomTape::from_entropy() {
    RandomTape t;
    std::random_device rd;
    for (auto& w : t.s_)
        w = (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    return t;
}

std::uint64_t RandomTape::next_u64() {
    // xoshiro256**
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t RandomTape::uniform_below(std::uint64_t n) {
    // rejection below the largest multiple of n
    std::uint64_t limit = n * (UINT64_MAX / n);
    for (;;) {
        std::uint64_t x = next_u64();
        if (x < limit) return x % n;
    }
}

FieldElement RandomTape::next_elligator_u(const Fp& fp) {
    const std::size_t n = fp.nlimbs();
    std::array<std::uint64_t, kMaxLimbs> half = fp.modulus();
    mp::shr1(half.data(), n);  // (p - 1) / 2 for odd p
    const std::size_t bits = mp::bit_length(half.data(), n);
    const std::uint64_t top_mask =
        (bits % 64) ? ((std::uint64_t{1} << (bits % 64)) - 1) : ~std::uint64_t{0};
    std::array<std::uint64_t, kMaxLimbs> raw{};
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) raw[i] = next_u64();
        raw[(bits - 1) / 64] &= top_mask;
        for (std::size_t i = (bits + 63) / 64; i < n; ++i) raw[i] = 0;
        if (mp::cmp(raw.data(), half.data(), n) > 0) continue;
        bool small = raw[0] < 2 && mp::is_zero(raw.data() + 1, n - 1);
        if (small) continue;
        return fp.from_canonical(std::span<const std::uint64_t>(raw.data(), n));
    }
}

SecretKey sample_key(const ParameterSet& ps, KeyMode mode, RandomTape& tape) {
    SecretKey key;
    key.mode = mode;
    const std::size_t n = ps.nprimes();
    key.exponents.resize(n);
    key.bounds.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (mode == KeyMode::interval) {
            std::uint8_t m = ps.bounds[i];
            key.bounds[i] = m;
            key.exponents[i] =
                static_cast<std::int8_t>(static_cast<std::int64_t>(tape.uniform_below(2 * m + 1)) - m);
        } else {
            std::uint8_t m = static_cast<std::uint8_t>(2 * ps.bounds[i]);  // Set(2 m_i)
            key.bounds[i] = m;
            key.exponents[i] =
                static_cast<std::int8_t>(2 * static_cast<std::int64_t>(tape.uniform_below(m + 1)) - m);
        }
    }
    return key;
}

std::vector<std::vector<std::size_t>> simba_partition(std::size_t nprimes, std::size_t m) {
    if (m < 1) throw std::invalid_argument("batch count must be >= 1");
    std::vector<std::vector<std::size_t>> batches(std::min(m, std::max<std::size_t>(nprimes, 1)));
    if (batches.empty()) return batches;
    for (std::size_t i = 0; i < nprimes; ++i) batches[i % batches.size()].push_back(i);
    return batches;
}

CurveCoeffs action_unprotected(const ParameterSet& ps, const CurveCoeffs& e0, const SecretKey& key,
                               RandomTape& tape, OpCounter& c) {
    const Fp& fp = ps.fp;
    const std::size_t n = ps.nprimes();
    auto e = widen(key, n);
    if (c.isog.size() < n) c.isog.resize(n, 0);
    ActionCtx cx{ps, tape, c, {}};
    CurveCoeffs e_curve = e0;
    std::size_t guard = 0;
    while (std::any_of(e.begin(), e.end(), [](std::int64_t v) { return v != 0; })) {
        if (++guard > kRoundCap) throw std::runtime_error("group action failed to converge");
        FieldElement x = tape.next_elligator_u(fp);
        auto [ap, cp] = curve_to_AC(fp, e_curve, c);
        // chi of the curve RHS at (x : 1): chi(x (C'x^2 + A'x + C') C')
        FieldElement rhs = fp.mul(cp, fp.sqr(x, c), c);
        rhs = fp.add(rhs, fp.mul(ap, x, c), c);
        rhs = fp.add(rhs, cp, c);
        rhs = fp.mul(rhs, x, c);
        rhs = fp.mul(rhs, cp, c);
        int sgn = fp.legendre(rhs, c);
        if (sgn == 0) continue;
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if ((e[i] > 0 && sgn > 0) || (e[i] < 0 && sgn < 0)) s.push_back(i);
        if (s.empty()) continue;
        PointXZ p{x, fp.one()};
        p = mul_cofactor(cx, p, e_curve, active_mask(n, s));
        std::vector<std::size_t> remaining = s;
        for (std::size_t pos = s.size(); pos-- > 0;) {
            std::size_t i = s[pos];
            PointXZ q = p;
            for (std::size_t j : remaining)
                if (j != i) q = mul_by_chain(fp, ps.chains[j], q, e_curve, c);
            if (!is_infinity(fp, q)) {
                std::array<PointXZ, 1> push{p};
                e_curve = quotient_isogeny(fp, e_curve, q, ps.primes[i], push, cx.ws, c);
                p = push[0];
                e[i] -= sgn;
                remaining.erase(std::find(remaining.begin(), remaining.end(), i));
                c.isog[i] += 1;
            }
        }
    }
    return e_curve;
}

CurveCoeffs action_oayt(const ParameterSet& ps, const CurveCoeffs& e0, const SecretKey& key,
                        RandomTape& tape, OpCounter& c) {
    const std::size_t n = ps.nprimes();
    auto e = widen(key, n);
    for (std::size_t i = 0; i < n; ++i)
        if (e[i] > key.bounds[i] || e[i] < -static_cast<std::int64_t>(key.bounds[i]))
            throw std::invalid_argument("exponent outside interval bound");
    std::vector<std::uint32_t> z(key.bounds.begin(), key.bounds.end());
    ActionCtx cx{ps, tape, c, {}};
    return run_batched(cx, e0, ps.simba_for(Algorithm::oayt), z,
                       [&](CurveCoeffs& cur, const std::vector<std::size_t>& s) {
                           oayt_round(cx, cur, e, z, s);
                       });
}

CurveCoeffs action_mcr(const ParameterSet& ps, const CurveCoeffs& e0, const SecretKey& key,
                       RandomTape& tape, OpCounter& c) {
    const std::size_t n = ps.nprimes();
    auto e = widen(key, n);
    for (std::size_t i = 0; i < n; ++i)
        if (e[i] < 0 || e[i] > 2 * static_cast<std::int64_t>(key.bounds[i]))
            throw std::invalid_argument("exponent outside [0, 2m]");
    std::vector<std::uint32_t> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = 2 * key.bounds[i];
    ActionCtx cx{ps, tape, c, {}};
    return run_batched(cx, e0, ps.simba_for(Algorithm::mcr), z,
                       [&](CurveCoeffs& cur, const std::vector<std::size_t>& s) {
                           mcr_round(cx, cur, e, z, s);
                       });
}

CurveCoeffs action_dummy_free(const ParameterSet& ps, const CurveCoeffs& e0, const SecretKey& key,
                              RandomTape& tape, OpCounter& c) {
    if (key.mode != KeyMode::parity_set)
        throw std::invalid_argument("dummy-free action requires a parity-set key");
    const std::size_t n = ps.nprimes();
    auto e = widen(key, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t m = key.bounds[i];
        if (e[i] > m || e[i] < -m || ((e[i] - m) & 1))
            throw std::invalid_argument("exponent outside Set(m)");
    }
    // t_i = (sign(e_i) + 1) / 2 with sign(0) = +1
    std::vector<std::uint64_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = 1 - ct::is_negative(e[i]);
    std::vector<std::uint32_t> z(key.bounds.begin(), key.bounds.end());
    ActionCtx cx{ps, tape, c, {}};
    return run_batched(cx, e0, ps.simba_for(Algorithm::dummy_free), z,
                       [&](CurveCoeffs& cur, const std::vector<std::size_t>& s) {
                           dummy_free_round(cx, cur, e, t, z, s);
                       });
}

namespace {

// Confirms l_i | ord(P) for the leaves of a product tree; returns false on
// proof that the order does not divide p + 1.
bool order_evidence(ActionCtx& cx, const CurveCoeffs& e_curve, const PointXZ& p, std::size_t lo,
                    std::size_t hi, std::vector<std::uint8_t>& confirmed) {
    const Fp& fp = cx.fp();
    if (hi - lo == 1) {
        if (is_infinity(fp, p)) return true;
        PointXZ r = mul_by_chain(fp, cx.ps.chains[lo], p, e_curve, cx.ctr);
        if (!is_infinity(fp, r)) return false;  // order does not divide p + 1
        confirmed[lo] = 1;
        return true;
    }
    std::size_t mid = (lo + hi) / 2;
    PointXZ left = p;
    for (std::size_t j = mid; j < hi; ++j) left = mul_by_chain(fp, cx.ps.chains[j], left, e_curve, cx.ctr);
    PointXZ right = p;
    for (std::size_t j = lo; j < mid; ++j) right = mul_by_chain(fp, cx.ps.chains[j], right, e_curve, cx.ctr);
    return order_evidence(cx, e_curve, left, lo, mid, confirmed) &&
           order_evidence(cx, e_curve, right, mid, hi, confirmed);
}

}  // namespace

bool validate_public_key(const ParameterSet& ps, const FieldElement& a, RandomTape& tape) {
    const Fp& fp = ps.fp;
    OpCounter scratch;
    scratch.reset(ps.nprimes());
    FieldElement two = fp.from_u64(2);
    FieldElement minus_two = fp.sub(fp.zero(), two, scratch);
    if (fp.equal(a, two) || fp.equal(a, minus_two)) return false;  // singular

    CurveCoeffs e_curve = curve_from_affine_A(fp, a, scratch);
    ActionCtx cx{ps, tape, scratch, {}};
    const std::size_t n = ps.nprimes();
    std::vector<std::uint8_t> confirmed(n, 0);

    // 16 p, for the evidence threshold d > 4 sqrt(p)  <=>  d^2 > 16 p.
    std::array<std::uint64_t, 2 * kMaxLimbs> threshold{};
    {
        std::array<std::uint64_t, kMaxLimbs + 1> t16{};
        mp::mul_u64(t16.data(), fp.modulus().data(), kMaxLimbs, 16);
        for (std::size_t i = 0; i < t16.size(); ++i) threshold[i] = t16[i];
    }

    for (int attempt = 0; attempt < 64; ++attempt) {
        FieldElement x = tape.next_elligator_u(fp);
        PointXZ p{x, fp.one()};
        p = xdbl(fp, p, e_curve, scratch);
        p = xdbl(fp, p, e_curve, scratch);
        if (!order_evidence(cx, e_curve, p, 0, n, confirmed)) return false;

        std::array<std::uint64_t, kMaxLimbs> d{};
        d[0] = 1;
        std::array<std::uint64_t, kMaxLimbs + 1> tmp{};
        for (std::size_t i = 0; i < n; ++i) {
            if (!confirmed[i]) continue;
            mp::mul_u64(tmp.data(), d.data(), kMaxLimbs, ps.primes[i]);
            for (std::size_t j = 0; j < kMaxLimbs; ++j) d[j] = tmp[j];
        }
        std::array<std::uint64_t, 2 * kMaxLimbs> d2{};
        mp::square(d2.data(), d.data(), kMaxLimbs);
        if (mp::cmp(d2.data(), threshold.data(), 2 * kMaxLimbs) > 0) return true;
    }
    return false;
}

}  // namespace csidh
