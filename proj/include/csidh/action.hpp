#pragma once

#include <cstdint>
#include <vector>

#include "csidh/isogeny.hpp"
#include "csidh/montgomery.hpp"
#include "csidh/params.hpp"

namespace csidh {

enum class KeyMode { interval, parity_set };

/// Ideal exponent vector (e_1, ..., e_n) with its per-prime bounds.
/// interval mode: e_i in [-m_i, m_i]. parity-set mode: |e_i| <= m_i and
/// e_i = m_i (mod 2). The MCR-style evaluator reads an interval-bounds key
/// with nonnegative entries in [0, 2 m_i].
struct SecretKey {
    std::vector<std::int8_t> exponents;
    std::vector<std::uint8_t> bounds;
    KeyMode mode = KeyMode::interval;
};

/// Deterministic stream of field elements in {2, ..., (p-1)/2} (plus small
/// uniform integers for key sampling). Same seed, same stream.
class RandomTape {
public:
    static RandomTape from_seed(std::uint64_t seed);
    static RandomTape from_entropy();

    std::uint64_t next_u64();
    std::uint64_t uniform_below(std::uint64_t n);
    FieldElement next_elligator_u(const Fp& fp);

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Uniform key for the mode: interval over [-m_i, m_i] with m_i from the
/// parameter set, parity-set over Set(2 m_i).
SecretKey sample_key(const ParameterSet& ps, KeyMode mode, RandomTape& tape);

/// Round-robin partition of prime indices into m batches (index i goes to
/// batch i mod m); batch sizes differ by at most one.
std::vector<std::vector<std::size_t>> simba_partition(std::size_t nprimes, std::size_t m);

/// Variable-time baseline group action: one random point per pass, sign set
/// chosen by the square test, shared-cofactor multiplications, retry on an
/// identity kernel candidate.
CurveCoeffs action_unprotected(const ParameterSet& ps, const CurveCoeffs& e, const SecretKey& key,
                               RandomTape& tape, OpCounter& c);

/// Two-point constant-time evaluator with dummy isogenies: exactly m_i
/// isogeny computations (real plus dummy) per prime. Secret-dependent
/// selection goes through ct_cswap/ct_isequal only.
CurveCoeffs action_oayt(const ParameterSet& ps, const CurveCoeffs& e, const SecretKey& key,
                        RandomTape& tape, OpCounter& c);

/// One-point constant-time evaluator with nonnegative exponents in
/// [0, 2 m_i] and exactly 2 m_i isogeny computations per prime.
CurveCoeffs action_mcr(const ParameterSet& ps, const CurveCoeffs& e, const SecretKey& key,
                       RandomTape& tape, OpCounter& c);

/// Dummy-free constant-time evaluator over parity-set keys: every isogeny
/// contributes to the result, exactly m_i per prime, with the alternating
/// +1/-1 decomposition once an exponent crosses zero.
CurveCoeffs action_dummy_free(const ParameterSet& ps, const CurveCoeffs& e, const SecretKey& key,
                              RandomTape& tape, OpCounter& c);

/// 1 iff y^2 = x^3 + Ax^2 + x is supersingular, decided by accumulating
/// point-order evidence above 4*sqrt(p) from random points. Variable-time;
/// inputs are public.
bool validate_public_key(const ParameterSet& ps, const FieldElement& a, RandomTape& tape);

}  // namespace csidh
