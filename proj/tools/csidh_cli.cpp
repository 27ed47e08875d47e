// Command-line front end: key generation, public-key derivation, shared
// secrets, key validation and the operation-count benchmark. Talks to the
// library through the C API only.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csidh.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

struct ParamsHandle {
    csidh_params* p = nullptr;
    ~ParamsHandle() { csidh_params_free(p); }
};

int open_params(const std::string& name, ParamsHandle& h) {
    csidh_status st = csidh_params_new(name.c_str(), &h.p);
    if (st != CSIDH_OK) {
        std::cerr << "error: " << csidh_strerror(st) << ": " << name << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

bool read_file(const std::string& path, std::vector<uint8_t>& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return true;
}

bool write_file(const std::string& path, const std::vector<uint8_t>& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    return static_cast<bool>(out);
}

std::optional<csidh_alg> parse_alg(const std::string& name) {
    static const std::map<std::string, csidh_alg> algs = {
        {"unprotected", CSIDH_ALG_UNPROTECTED},
        {"mcr", CSIDH_ALG_MCR},
        {"oayt", CSIDH_ALG_OAYT},
        {"dummy-free", CSIDH_ALG_DUMMY_FREE},
    };
    auto it = algs.find(name);
    if (it == algs.end()) return std::nullopt;
    return it->second;
}

const char* alg_name(csidh_alg alg) {
    switch (alg) {
        case CSIDH_ALG_UNPROTECTED: return "unprotected";
        case CSIDH_ALG_MCR: return "mcr";
        case CSIDH_ALG_OAYT: return "oayt";
        case CSIDH_ALG_DUMMY_FREE: return "dummy-free";
    }
    return "?";
}

int cmd_keygen(const std::string& params_name, const std::string& mode, std::optional<uint64_t> seed,
               const std::string& out_path) {
    ParamsHandle h;
    if (int rc = open_params(params_name, h); rc != kExitOk) return rc;
    csidh_key_mode m;
    if (mode == "interval")
        m = CSIDH_KEY_INTERVAL;
    else if (mode == "set")
        m = CSIDH_KEY_PARITY_SET;
    else {
        std::cerr << "error: --mode must be interval or set\n";
        return kExitUsage;
    }
    std::vector<uint8_t> key(csidh_private_key_bytes(h.p));
    uint64_t seed_value = seed.value_or(0);
    csidh_status st = csidh_keygen(h.p, m, seed ? &seed_value : nullptr, key.data(), key.size());
    if (st != CSIDH_OK) {
        std::cerr << "error: " << csidh_strerror(st) << "\n";
        return kExitUsage;
    }
    if (!write_file(out_path, key)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_derive(const std::string& params_name, const std::string& alg_str, const std::string& key_path,
               const std::string& peer_path, std::optional<uint64_t> seed, const std::string& out_path) {
    ParamsHandle h;
    if (int rc = open_params(params_name, h); rc != kExitOk) return rc;
    auto alg = parse_alg(alg_str);
    if (!alg) {
        std::cerr << "error: unknown algorithm " << alg_str << "\n";
        return kExitUsage;
    }
    std::vector<uint8_t> priv;
    if (!read_file(key_path, priv)) {
        std::cerr << "error: cannot read " << key_path << "\n";
        return kExitUsage;
    }
    std::vector<uint8_t> peer;
    if (!peer_path.empty() && !read_file(peer_path, peer)) {
        std::cerr << "error: cannot read " << peer_path << "\n";
        return kExitUsage;
    }
    std::vector<uint8_t> out(csidh_public_key_bytes(h.p));
    uint64_t seed_value = seed.value_or(0);
    csidh_status st = csidh_derive(h.p, *alg, priv.data(), priv.size(),
                                   peer.empty() ? nullptr : peer.data(), peer.size(),
                                   seed ? &seed_value : nullptr, out.data(), out.size());
    if (st == CSIDH_ERR_INVALID_PUBLIC_KEY) {
        std::cerr << "error: peer public key rejected\n";
        return kExitValidation;
    }
    if (st != CSIDH_OK) {
        std::cerr << "error: " << csidh_strerror(st) << "\n";
        return kExitUsage;
    }
    if (!write_file(out_path, out)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_validate(const std::string& params_name, const std::string& key_path,
                 std::optional<uint64_t> seed) {
    ParamsHandle h;
    if (int rc = open_params(params_name, h); rc != kExitOk) return rc;
    std::vector<uint8_t> pub;
    if (!read_file(key_path, pub)) {
        std::cerr << "error: cannot read " << key_path << "\n";
        return kExitUsage;
    }
    uint64_t seed_value = seed.value_or(0);
    csidh_status st = csidh_validate_key(h.p, pub.data(), pub.size(), seed ? &seed_value : nullptr);
    if (st == CSIDH_OK) {
        std::cout << "valid\n";
        return kExitOk;
    }
    if (st == CSIDH_ERR_INVALID_PUBLIC_KEY || st == CSIDH_ERR_BAD_KEY_FORMAT) {
        std::cout << "invalid\n";
        return kExitValidation;
    }
    std::cerr << "error: " << csidh_strerror(st) << "\n";
    return kExitUsage;
}

int cmd_bench(const std::string& params_name, const std::string& alg_str, uint32_t trials,
              uint64_t seed, const std::string& out_path) {
    ParamsHandle h;
    if (int rc = open_params(params_name, h); rc != kExitOk) return rc;
    std::vector<csidh_alg> algs;
    if (alg_str == "all") {
        algs = {CSIDH_ALG_UNPROTECTED, CSIDH_ALG_MCR, CSIDH_ALG_OAYT, CSIDH_ALG_DUMMY_FREE};
    } else {
        auto alg = parse_alg(alg_str);
        if (!alg) {
            std::cerr << "error: unknown algorithm " << alg_str << "\n";
            return kExitUsage;
        }
        algs = {*alg};
    }
    if (trials == 0) {
        std::cerr << "error: --trials must be >= 1\n";
        return kExitUsage;
    }

    struct Row {
        csidh_alg alg;
        double m, s, a, wall_ms;
    };
    std::vector<Row> rows;
    std::ofstream machine;
    if (!out_path.empty()) {
        machine.open(out_path, std::ios::trunc);
        if (!machine) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitUsage;
        }
    }
    for (csidh_alg alg : algs) {
        std::vector<csidh_bench_record> recs(trials);
        csidh_status st = csidh_bench(h.p, alg, trials, seed, recs.data());
        if (st != CSIDH_OK) {
            std::cerr << "error: " << csidh_strerror(st) << "\n";
            return kExitUsage;
        }
        double m = 0, s = 0, a = 0, w = 0;
        for (const auto& r : recs) {
            m += static_cast<double>(r.mul);
            s += static_cast<double>(r.sqr);
            a += static_cast<double>(r.add);
            w += static_cast<double>(r.wall_ns);
            if (machine)
                machine << alg_name(alg) << ' ' << r.trial << ' ' << r.mul << ' ' << r.sqr << ' '
                        << r.add << ' ' << r.wall_ns << '\n';
        }
        double inv_trials = 1.0 / trials;
        rows.push_back({alg, m * inv_trials / 1e6, s * inv_trials / 1e6, a * inv_trials / 1e6,
                        w * inv_trials / 1e6});
    }

    // Ratios use the MCR-style row as baseline (M+S, and wall time), when present.
    double base_ms = 0, base_wall = 0;
    for (const Row& r : rows)
        if (r.alg == CSIDH_ALG_MCR) {
            base_ms = r.m + r.s;
            base_wall = r.wall_ms;
        }
    std::printf("%-14s %10s %10s %10s %10s %10s %10s\n", "algorithm", "M(1e6)", "S(1e6)", "A(1e6)",
                "(M+S)r", "wall(ms)", "wall r");
    for (const Row& r : rows) {
        std::printf("%-14s %10.3f %10.3f %10.3f", alg_name(r.alg), r.m, r.s, r.a);
        if (base_ms > 0)
            std::printf(" %10.2f", (r.m + r.s) / base_ms);
        else
            std::printf(" %10s", "-");
        std::printf(" %10.2f", r.wall_ms);
        if (base_wall > 0)
            std::printf(" %10.2f\n", r.wall_ms / base_wall);
        else
            std::printf(" %10s\n", "-");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CSIDH group-action toolkit"};
    app.require_subcommand(1);

    std::string params = "csidh-512";
    std::string alg = "oayt";
    std::string mode = "interval";
    std::string key_path, peer_path, out_path;
    std::optional<uint64_t> seed;
    uint32_t trials = 16;
    uint64_t bench_seed = 1;

    auto* keygen = app.add_subcommand("keygen", "sample a private key");
    keygen->add_option("--params", params, "parameter set");
    keygen->add_option("--mode", mode, "interval or set");
    keygen->add_option("--seed", seed, "deterministic seed (default: OS entropy)");
    keygen->add_option("--out", out_path, "output file")->required();

    auto* derive = app.add_subcommand("derive", "derive a public key or shared secret");
    derive->add_option("--params", params, "parameter set");
    derive->add_option("--alg", alg, "unprotected, mcr, oayt or dummy-free");
    derive->add_option("--key", key_path, "private key file")->required();
    derive->add_option("--peer", peer_path, "peer public key (omit for public-key derivation)");
    derive->add_option("--seed", seed, "deterministic seed (default: OS entropy)");
    derive->add_option("--out", out_path, "output file")->required();

    auto* validate = app.add_subcommand("validate", "validate a public key");
    validate->add_option("--params", params, "parameter set");
    validate->add_option("--key", key_path, "public key file")->required();
    validate->add_option("--seed", seed, "deterministic seed");

    auto* bench = app.add_subcommand("bench", "field-operation benchmark");
    bench->add_option("--params", params, "parameter set");
    bench->add_option("--alg", alg, "algorithm or 'all'");
    bench->add_option("--trials", trials, "number of seeded trials");
    bench->add_option("--seed", bench_seed, "trial seed");
    bench->add_option("--out", out_path, "machine-readable per-trial records");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (keygen->parsed()) return cmd_keygen(params, mode, seed, out_path);
    if (derive->parsed()) return cmd_derive(params, alg, key_path, peer_path, seed, out_path);
    if (validate->parsed()) return cmd_validate(params, key_path, seed);
    if (bench->parsed()) return cmd_bench(params, alg, trials, bench_seed, out_path);
    return kExitUsage;
}
