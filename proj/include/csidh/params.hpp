#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "csidh/fp.hpp"

namespace csidh {

/// Differential addition chain reaching one scalar: every diff-add step's
/// difference is an element already present in the chain. Index 0 is the
/// chain input; step t produces element t+1.
struct AdditionChain {
    struct Step {
        enum class Kind : std::uint8_t { Double, DiffAdd };
        Kind kind;
        std::uint16_t a;     // operand index (doubled element, or first summand)
        std::uint16_t b;     // second summand (DiffAdd only)
        std::uint16_t diff;  // index holding a - b (DiffAdd only)
    };
    std::uint64_t target = 1;
    std::vector<Step> steps;

    std::size_t length() const { return steps.size(); }
    /// Integer replay of the steps; true iff the chain realizes the target.
    bool realizes_target() const;
};

/// Minimal-length differential addition chain for ell, deterministic
/// tie-breaking (smallest value sequence, doublings before diff-adds).
AdditionChain find_shortest_chain(std::uint64_t ell);

enum class Algorithm { unprotected, mcr, oayt, dummy_free };

struct SimbaConfig {
    std::size_t batches;      // m
    std::size_t merge_after;  // k rounds per batch before merging leftovers
};

/// Immutable system parameters: the primes, the field for p = 4*prod(l_i)-1,
/// per-prime exponent bounds, SIMBA configuration and precomputed chains.
struct ParameterSet {
    std::string name;
    std::uint8_t id = 0;  // key-file identifier
    std::vector<std::uint64_t> primes;
    Fp fp;
    std::vector<std::uint8_t> bounds;  // interval bounds m_i
    SimbaConfig simba_mcr{};
    SimbaConfig simba_oayt{};
    SimbaConfig simba_dummy_free{};
    std::vector<AdditionChain> chains;  // one per prime, same order

    std::size_t nprimes() const { return primes.size(); }
    const SimbaConfig& simba_for(Algorithm alg) const;
};

/// Loads "csidh-512" or "toy-419"; the set is built once and cached.
/// Throws std::invalid_argument for unknown names.
const ParameterSet& load_parameter_set(std::string_view name);

}  // namespace csidh
