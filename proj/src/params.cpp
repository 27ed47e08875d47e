#include "csidh/params.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mp.hpp"

namespace csidh {

namespace {

// First 73 odd primes followed by 587 (the CSIDH-512 system primes).
constexpr std::uint64_t kCsidh512Primes[] = {
    3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,  59,  61,  67,  71,
    73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
    173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271,
    277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 587};

struct ChainSearch {
    std::uint64_t target = 0;
    std::size_t depth_limit = 0;
    std::vector<std::uint64_t> values;        // increasing, values[0] = 1
    std::vector<AdditionChain::Step> steps;   // steps[t] produced values[t+1]
    std::vector<AdditionChain::Step> result;

    struct Candidate {
        std::uint64_t value;
        AdditionChain::Step step;
        bool operator<(const Candidate& o) const {
            if (value != o.value) return value < o.value;
            if (step.kind != o.step.kind) return step.kind < o.step.kind;
            if (step.a != o.step.a) return step.a < o.step.a;
            if (step.b != o.step.b) return step.b < o.step.b;
            return step.diff < o.step.diff;
        }
    };

    bool dfs() {
        std::uint64_t mx = values.back();
        if (mx == target) {
            result = steps;
            return true;
        }
        std::size_t remaining = depth_limit - steps.size();
        if (remaining == 0) return false;
        if (remaining < 64 && (mx << remaining) < target) return false;

        std::vector<Candidate> cands;
        const std::size_t n = values.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t two = values[i] * 2;
            if (two > mx && two <= target)
                cands.push_back({two, {AdditionChain::Step::Kind::Double, static_cast<std::uint16_t>(i),
                                       0, 0}});
            for (std::size_t j = 0; j < i; ++j) {
                std::uint64_t s = values[i] + values[j];
                if (s <= mx || s > target) continue;
                std::uint64_t d = values[i] - values[j];
                auto it = std::lower_bound(values.begin(), values.end(), d);
                if (it == values.end() || *it != d) continue;
                std::uint16_t diff_idx = static_cast<std::uint16_t>(it - values.begin());
                cands.push_back({s, {AdditionChain::Step::Kind::DiffAdd, static_cast<std::uint16_t>(i),
                                     static_cast<std::uint16_t>(j), diff_idx}});
            }
        }
        std::sort(cands.begin(), cands.end());
        std::uint64_t last = 0;
        for (const Candidate& c : cands) {
            if (c.value == last) continue;  // same reachable set, keep first derivation
            last = c.value;
            values.push_back(c.value);
            steps.push_back(c.step);
            if (dfs()) return true;
            values.pop_back();
            steps.pop_back();
        }
        return false;
    }
};

void build_prime_product(const std::vector<std::uint64_t>& primes, std::uint64_t* out,
                         std::size_t nlimbs) {
    for (std::size_t i = 0; i < nlimbs; ++i) out[i] = 0;
    out[0] = 1;
    std::vector<std::uint64_t> tmp(nlimbs + 1);
    for (std::uint64_t q : primes) {
        mp::mul_u64(tmp.data(), out, nlimbs, q);
        if (tmp[nlimbs] != 0) throw std::logic_error("prime product overflow");
        for (std::size_t i = 0; i < nlimbs; ++i) out[i] = tmp[i];
    }
}

ParameterSet build_set(std::string_view name) {
    ParameterSet ps;
    ps.name = std::string(name);
    if (name == "csidh-512") {
        ps.id = 1;
        ps.primes.assign(std::begin(kCsidh512Primes), std::end(kCsidh512Primes));
        ps.bounds.assign(ps.primes.size(), 5);
        ps.simba_mcr = {5, 11};
        ps.simba_oayt = {3, 8};
        ps.simba_dummy_free = {5, 11};
    } else if (name == "toy-419") {
        ps.id = 2;
        ps.primes = {3, 5, 7};
        ps.bounds = {2, 2, 2};
        ps.simba_mcr = {1, 12};
        ps.simba_oayt = {1, 12};
        ps.simba_dummy_free = {1, 12};
    } else {
        throw std::invalid_argument("unknown parameter set: " + std::string(name));
    }

    // p = 4 * prod(l_i) - 1
    std::uint64_t p[kMaxLimbs] = {0};
    build_prime_product(ps.primes, p, kMaxLimbs);
    std::uint64_t four[kMaxLimbs + 1] = {0};
    mp::mul_u64(four, p, kMaxLimbs, 4);
    if (four[kMaxLimbs] != 0) throw std::logic_error("p overflow");
    std::uint64_t one[kMaxLimbs] = {1};
    mp::sub(p, four, one, kMaxLimbs);
    ps.fp = Fp::from_modulus(std::span<const std::uint64_t>(p, kMaxLimbs));

    ps.chains.reserve(ps.primes.size());
    for (std::uint64_t q : ps.primes) ps.chains.push_back(find_shortest_chain(q));
    return ps;
}

}  // namespace

bool AdditionChain::realizes_target() const {
    std::vector<std::uint64_t> vals{1};
    for (const Step& s : steps) {
        if (s.a >= vals.size()) return false;
        if (s.kind == Step::Kind::Double) {
            vals.push_back(vals[s.a] * 2);
        } else {
            if (s.b >= vals.size() || s.diff >= vals.size()) return false;
            if (vals[s.a] == vals[s.b]) return false;
            std::uint64_t hi = std::max(vals[s.a], vals[s.b]);
            std::uint64_t lo = std::min(vals[s.a], vals[s.b]);
            if (vals[s.diff] != hi - lo) return false;
            vals.push_back(vals[s.a] + vals[s.b]);
        }
    }
    return vals.back() == target;
}

AdditionChain find_shortest_chain(std::uint64_t ell) {
    if (ell < 3) throw std::invalid_argument("chain target must be >= 3");
    static std::mutex m;
    static std::map<std::uint64_t, AdditionChain> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(ell);
    if (it != cache.end()) return it->second;

    ChainSearch search;
    search.target = ell;
    std::size_t depth = mp::bit_length(&ell, 1) - 1;  // a chain cannot beat doubling
    for (;; ++depth) {
        search.depth_limit = depth;
        search.values = {1};
        search.steps.clear();
        if (search.dfs()) break;
    }
    AdditionChain chain;
    chain.target = ell;
    chain.steps = search.result;
    cache.emplace(ell, chain);
    return chain;
}

const SimbaConfig& ParameterSet::simba_for(Algorithm alg) const {
    switch (alg) {
        case Algorithm::mcr: return simba_mcr;
        case Algorithm::oayt: return simba_oayt;
        default: return simba_dummy_free;
    }
}

const ParameterSet& load_parameter_set(std::string_view name) {
    static std::mutex m;
    static std::map<std::string, ParameterSet, std::less<>> registry;
    std::lock_guard<std::mutex> lock(m);
    auto it = registry.find(name);
    if (it == registry.end()) it = registry.emplace(std::string(name), build_set(name)).first;
    return it->second;
}

}  // namespace csidh
