#include "csidh.h"

#include <chrono>
#include <cstring>
#include <new>
#include <stdexcept>
#include <vector>

#include "csidh/action.hpp"
#include "csidh/montgomery.hpp"
#include "csidh/params.hpp"

namespace {

constexpr std::uint8_t kMagicPrivate = 0xC5;
constexpr std::uint8_t kMagicPublic = 0xC6;

const csidh::ParameterSet* unwrap(const csidh_params* p) {
    return reinterpret_cast<const csidh::ParameterSet*>(p);
}

csidh::RandomTape make_tape(const std::uint64_t* seed) {
    return seed ? csidh::RandomTape::from_seed(*seed) : csidh::RandomTape::from_entropy();
}

csidh_status parse_private(const csidh::ParameterSet& ps, const std::uint8_t* buf, size_t len,
                           std::vector<std::int8_t>& exps) {
    if (buf == nullptr || len != 2 + ps.nprimes()) return CSIDH_ERR_BAD_ARGUMENT;
    if (buf[0] != kMagicPrivate || buf[1] != ps.id) return CSIDH_ERR_BAD_KEY_FORMAT;
    exps.resize(ps.nprimes());
    std::memcpy(exps.data(), buf + 2, ps.nprimes());
    return CSIDH_OK;
}

csidh_status parse_public(const csidh::ParameterSet& ps, const std::uint8_t* buf, size_t len,
                          csidh::FieldElement& a) {
    if (buf == nullptr || len != 2 + ps.fp.nbytes()) return CSIDH_ERR_BAD_ARGUMENT;
    if (buf[0] != kMagicPublic || buf[1] != ps.id) return CSIDH_ERR_BAD_KEY_FORMAT;
    if (!ps.fp.from_bytes(std::span<const std::uint8_t>(buf + 2, ps.fp.nbytes()), a))
        return CSIDH_ERR_BAD_KEY_FORMAT;
    return CSIDH_OK;
}

void write_public(const csidh::ParameterSet& ps, const csidh::FieldElement& a, std::uint8_t* out) {
    out[0] = kMagicPublic;
    out[1] = ps.id;
    ps.fp.to_bytes(a, std::span<std::uint8_t>(out + 2, ps.fp.nbytes()));
}

// Builds the SecretKey an algorithm expects from raw interval/parity-format
// exponents, range-checking against the parameter-set bounds.
csidh_status key_for_alg(const csidh::ParameterSet& ps, csidh_alg alg,
                         const std::vector<std::int8_t>& exps, csidh::SecretKey& key) {
    const std::size_t n = ps.nprimes();
    key.exponents = exps;
    key.bounds.assign(ps.bounds.begin(), ps.bounds.end());
    key.mode = csidh::KeyMode::interval;
    switch (alg) {
        case CSIDH_ALG_UNPROTECTED:
            for (std::size_t i = 0; i < n; ++i) {
                std::uint8_t mag = static_cast<std::uint8_t>(exps[i] < 0 ? -exps[i] : exps[i]);
                if (mag > key.bounds[i]) key.bounds[i] = mag;
            }
            return CSIDH_OK;
        case CSIDH_ALG_OAYT:
            for (std::size_t i = 0; i < n; ++i)
                if (exps[i] > static_cast<std::int8_t>(ps.bounds[i]) ||
                    exps[i] < -static_cast<std::int8_t>(ps.bounds[i]))
                    return CSIDH_ERR_KEY_RANGE;
            return CSIDH_OK;
        case CSIDH_ALG_MCR:
            for (std::size_t i = 0; i < n; ++i) {
                if (exps[i] > static_cast<std::int8_t>(ps.bounds[i]) ||
                    exps[i] < -static_cast<std::int8_t>(ps.bounds[i]))
                    return CSIDH_ERR_KEY_RANGE;
                key.exponents[i] = static_cast<std::int8_t>(exps[i] + ps.bounds[i]);
            }
            return CSIDH_OK;
        case CSIDH_ALG_DUMMY_FREE:
            for (std::size_t i = 0; i < n; ++i) {
                std::int16_t m = static_cast<std::int16_t>(2 * ps.bounds[i]);
                if (exps[i] > m || exps[i] < -m || (exps[i] & 1)) return CSIDH_ERR_KEY_RANGE;
                key.bounds[i] = static_cast<std::uint8_t>(m);
            }
            key.mode = csidh::KeyMode::parity_set;
            return CSIDH_OK;
    }
    return CSIDH_ERR_BAD_ARGUMENT;
}

csidh::CurveCoeffs run_action(const csidh::ParameterSet& ps, csidh_alg alg,
                              const csidh::CurveCoeffs& e, const csidh::SecretKey& key,
                              csidh::RandomTape& tape, csidh::OpCounter& ctr) {
    switch (alg) {
        case CSIDH_ALG_UNPROTECTED: return csidh::action_unprotected(ps, e, key, tape, ctr);
        case CSIDH_ALG_MCR: return csidh::action_mcr(ps, e, key, tape, ctr);
        case CSIDH_ALG_OAYT: return csidh::action_oayt(ps, e, key, tape, ctr);
        case CSIDH_ALG_DUMMY_FREE: return csidh::action_dummy_free(ps, e, key, tape, ctr);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace

extern "C" {

csidh_status csidh_params_new(const char* name, csidh_params** out) {
    if (name == nullptr || out == nullptr) return CSIDH_ERR_BAD_ARGUMENT;
    try {
        const csidh::ParameterSet& ps = csidh::load_parameter_set(name);
        *out = reinterpret_cast<csidh_params*>(const_cast<csidh::ParameterSet*>(&ps));
        return CSIDH_OK;
    } catch (const std::invalid_argument&) {
        return CSIDH_ERR_BAD_NAME;
    } catch (...) {
        return CSIDH_ERR_INTERNAL;
    }
}

void csidh_params_free(csidh_params*) {
    // Parameter sets live in a process-wide registry; the handle is borrowed.
}

const char* csidh_params_name(const csidh_params* params) {
    return params ? unwrap(params)->name.c_str() : nullptr;
}

size_t csidh_num_primes(const csidh_params* params) {
    return params ? unwrap(params)->nprimes() : 0;
}

size_t csidh_private_key_bytes(const csidh_params* params) {
    return params ? 2 + unwrap(params)->nprimes() : 0;
}

size_t csidh_public_key_bytes(const csidh_params* params) {
    return params ? 2 + unwrap(params)->fp.nbytes() : 0;
}

csidh_status csidh_keygen(const csidh_params* params, csidh_key_mode mode, const uint64_t* seed,
                          uint8_t* out, size_t out_len) {
    if (params == nullptr || out == nullptr) return CSIDH_ERR_BAD_ARGUMENT;
    const csidh::ParameterSet& ps = *unwrap(params);
    if (out_len != 2 + ps.nprimes()) return CSIDH_ERR_BAD_ARGUMENT;
    if (mode != CSIDH_KEY_INTERVAL && mode != CSIDH_KEY_PARITY_SET) return CSIDH_ERR_BAD_ARGUMENT;
    try {
        csidh::RandomTape tape = make_tape(seed);
        csidh::SecretKey key = csidh::sample_key(
            ps, mode == CSIDH_KEY_INTERVAL ? csidh::KeyMode::interval : csidh::KeyMode::parity_set,
            tape);
        out[0] = kMagicPrivate;
        out[1] = ps.id;
        std::memcpy(out + 2, key.exponents.data(), ps.nprimes());
        return CSIDH_OK;
    } catch (...) {
        return CSIDH_ERR_INTERNAL;
    }
}

csidh_status csidh_derive(const csidh_params* params, csidh_alg alg, const uint8_t* private_key,
                          size_t private_key_len, const uint8_t* peer, size_t peer_len,
                          const uint64_t* seed, uint8_t* out, size_t out_len) {
    if (params == nullptr || out == nullptr) return CSIDH_ERR_BAD_ARGUMENT;
    const csidh::ParameterSet& ps = *unwrap(params);
    if (out_len != 2 + ps.fp.nbytes()) return CSIDH_ERR_BAD_ARGUMENT;

    std::vector<std::int8_t> exps;
    if (csidh_status st = parse_private(ps, private_key, private_key_len, exps); st != CSIDH_OK)
        return st;
    csidh::SecretKey key;
    if (csidh_status st = key_for_alg(ps, alg, exps, key); st != CSIDH_OK) return st;

    try {
        csidh::RandomTape tape = make_tape(seed);
        csidh::OpCounter ctr;
        ctr.reset(ps.nprimes());
        csidh::FieldElement a_start = ps.fp.zero();
        if (peer != nullptr) {
            if (csidh_status st = parse_public(ps, peer, peer_len, a_start); st != CSIDH_OK)
                return st;
            // Peer keys are untrusted; reject before any secret-dependent work.
            if (!csidh::validate_public_key(ps, a_start, tape))
                return CSIDH_ERR_INVALID_PUBLIC_KEY;
        }
        csidh::CurveCoeffs start = csidh::curve_from_affine_A(ps.fp, a_start, ctr);
        csidh::CurveCoeffs result = run_action(ps, alg, start, key, tape, ctr);
        csidh::FieldElement a_out = csidh::curve_to_affine_A(ps.fp, result, ctr);
        write_public(ps, a_out, out);
        return CSIDH_OK;
    } catch (const std::invalid_argument&) {
        return CSIDH_ERR_KEY_RANGE;
    } catch (...) {
        return CSIDH_ERR_INTERNAL;
    }
}

csidh_status csidh_validate_key(const csidh_params* params, const uint8_t* public_key,
                                size_t public_key_len, const uint64_t* seed) {
    if (params == nullptr) return CSIDH_ERR_BAD_ARGUMENT;
    const csidh::ParameterSet& ps = *unwrap(params);
    csidh::FieldElement a;
    if (csidh_status st = parse_public(ps, public_key, public_key_len, a); st != CSIDH_OK) return st;
    try {
        csidh::RandomTape tape = make_tape(seed);
        return csidh::validate_public_key(ps, a, tape) ? CSIDH_OK : CSIDH_ERR_INVALID_PUBLIC_KEY;
    } catch (...) {
        return CSIDH_ERR_INTERNAL;
    }
}

csidh_status csidh_bench(const csidh_params* params, csidh_alg alg, uint32_t trials, uint64_t seed,
                         csidh_bench_record* out) {
    if (params == nullptr || out == nullptr || trials == 0) return CSIDH_ERR_BAD_ARGUMENT;
    const csidh::ParameterSet& ps = *unwrap(params);
    try {
        for (uint32_t trial = 0; trial < trials; ++trial) {
            csidh::RandomTape tape = csidh::RandomTape::from_seed(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
            csidh::SecretKey sampled = csidh::sample_key(
                ps, alg == CSIDH_ALG_DUMMY_FREE ? csidh::KeyMode::parity_set : csidh::KeyMode::interval,
                tape);
            csidh::SecretKey key;
            if (alg == CSIDH_ALG_MCR) {
                if (csidh_status st = key_for_alg(ps, alg, sampled.exponents, key); st != CSIDH_OK)
                    return st;
            } else {
                key = sampled;
            }
            csidh::OpCounter ctr;
            ctr.reset(ps.nprimes());
            csidh::CurveCoeffs start = csidh::curve_from_affine_A(ps.fp, ps.fp.zero(), ctr);
            ctr.reset(ps.nprimes());
            auto t0 = std::chrono::steady_clock::now();
            csidh::CurveCoeffs result = run_action(ps, alg, start, key, tape, ctr);
            auto t1 = std::chrono::steady_clock::now();
            (void)result;
            out[trial].trial = trial;
            out[trial].mul = ctr.mul;
            out[trial].sqr = ctr.sqr;
            out[trial].add = ctr.add;
            out[trial].wall_ns = static_cast<uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        }
        return CSIDH_OK;
    } catch (...) {
        return CSIDH_ERR_INTERNAL;
    }
}

const char* csidh_strerror(csidh_status status) {
    switch (status) {
        case CSIDH_OK: return "ok";
        case CSIDH_ERR_BAD_NAME: return "unknown parameter set";
        case CSIDH_ERR_BAD_ARGUMENT: return "bad argument";
        case CSIDH_ERR_BAD_KEY_FORMAT: return "bad key format";
        case CSIDH_ERR_KEY_RANGE: return "exponents out of range for algorithm";
        case CSIDH_ERR_INVALID_PUBLIC_KEY: return "invalid public key";
        case CSIDH_ERR_INTERNAL: return "internal error";
    }
    return "unknown error";
}

}  // extern "C"
