#ifndef CSIDH_H
#define CSIDH_H

/*
 * C interface to the constant-time CSIDH group-action library.
 *
 * All functions operate on an opaque parameter-set handle and on the
 * serialized key formats:
 *
 *   private key: magic byte 0xC5, parameter-set id, n signed exponent bytes
 *   public key:  magic byte 0xC6, parameter-set id, little-endian affine
 *                A-coefficient (64 bytes for csidh-512, 2 bytes for toy-419)
 *
 * Exponent semantics by algorithm:
 *   unprotected  any exponents
 *   oayt         interval keys, |e_i| <= m_i
 *   mcr          interval keys; the action is evaluated on the shifted
 *                nonnegative vector e_i + m_i
 *   dummy-free   parity-set keys for Set(2 m_i): even e_i, |e_i| <= 2 m_i
 *
 * Functions return CSIDH_OK or an error code; nothing is written on error.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct csidh_params csidh_params;

typedef enum csidh_status {
    CSIDH_OK = 0,
    CSIDH_ERR_BAD_NAME = 1,        /* unknown parameter-set name */
    CSIDH_ERR_BAD_ARGUMENT = 2,    /* null pointer or wrong buffer size */
    CSIDH_ERR_BAD_KEY_FORMAT = 3,  /* magic/id mismatch or malformed payload */
    CSIDH_ERR_KEY_RANGE = 4,       /* exponents invalid for the algorithm */
    CSIDH_ERR_INVALID_PUBLIC_KEY = 5,
    CSIDH_ERR_INTERNAL = 6
} csidh_status;

typedef enum csidh_alg {
    CSIDH_ALG_UNPROTECTED = 0,
    CSIDH_ALG_MCR = 1,
    CSIDH_ALG_OAYT = 2,
    CSIDH_ALG_DUMMY_FREE = 3
} csidh_alg;

typedef enum csidh_key_mode {
    CSIDH_KEY_INTERVAL = 0,
    CSIDH_KEY_PARITY_SET = 1
} csidh_key_mode;

csidh_status csidh_params_new(const char* name, csidh_params** out);
void csidh_params_free(csidh_params* params);

const char* csidh_params_name(const csidh_params* params);
size_t csidh_num_primes(const csidh_params* params);
/* Full serialized sizes, headers included. */
size_t csidh_private_key_bytes(const csidh_params* params);
size_t csidh_public_key_bytes(const csidh_params* params);

/* Samples a private key. seed may be NULL for OS entropy. */
csidh_status csidh_keygen(const csidh_params* params, csidh_key_mode mode, const uint64_t* seed,
                          uint8_t* out, size_t out_len);

/*
 * Evaluates the group action on the private key. peer may be NULL to start
 * from the base curve A = 0 (public-key derivation); otherwise it must be a
 * serialized public key, which is validated before any secret-dependent
 * work. seed may be NULL for OS entropy.
 */
csidh_status csidh_derive(const csidh_params* params, csidh_alg alg, const uint8_t* private_key,
                          size_t private_key_len, const uint8_t* peer, size_t peer_len,
                          const uint64_t* seed, uint8_t* out, size_t out_len);

/* CSIDH_OK for a valid supersingular key, CSIDH_ERR_INVALID_PUBLIC_KEY else. */
csidh_status csidh_validate_key(const csidh_params* params, const uint8_t* public_key,
                                size_t public_key_len, const uint64_t* seed);

typedef struct csidh_bench_record {
    uint32_t trial;
    uint64_t mul;
    uint64_t sqr;
    uint64_t add;
    uint64_t wall_ns;
} csidh_bench_record;

/*
 * Runs `trials` seeded group-action evaluations with fresh keys and fills
 * one record per trial. Counts are bit-reproducible for a fixed seed.
 */
csidh_status csidh_bench(const csidh_params* params, csidh_alg alg, uint32_t trials, uint64_t seed,
                         csidh_bench_record* out);

const char* csidh_strerror(csidh_status status);

#ifdef __cplusplus
}
#endif

#endif /* CSIDH_H */
