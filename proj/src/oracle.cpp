#include "csidh/oracle.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace csidh::oracle {

namespace {

constexpr std::uint64_t P = kToyPrime;

std::uint64_t addm(std::uint64_t a, std::uint64_t b) { return (a + b) % P; }
std::uint64_t subm(std::uint64_t a, std::uint64_t b) { return (a + P - b % P) % P; }
std::uint64_t mulm(std::uint64_t a, std::uint64_t b) { return (a % P) * (b % P) % P; }
std::uint64_t invm(std::uint64_t a) { return mod_pow(a, P - 2); }

std::uint64_t curve_rhs(std::uint64_t a, std::uint64_t x) {
    return addm(mulm(mulm(x, x), addm(x, a)), x);  // x^3 + a x^2 + x
}

AffinePoint find_point_of_order(std::uint64_t a, std::uint64_t ell) {
    for (std::uint64_t x = 0; x < P; ++x) {
        std::uint64_t rhs = curve_rhs(a, x);
        if (legendre(rhs) != 1) continue;
        AffinePoint p{x, mod_sqrt(rhs), false};
        AffinePoint r = mul(a, (P + 1) / ell, p);
        if (!r.inf) return r;
    }
    throw std::logic_error("no point of requested order");
}

struct VeluData {
    std::uint64_t a_image;   // Montgomery A of the codomain
    std::uint64_t r0, s;     // normalization: x -> (x - r0) / s
    std::vector<AffinePoint> kernel;  // representatives [1]R .. [k]R
};

// Classical Velu for the degree-ell isogeny of y^2 = x^3 + a x^2 + x with a
// rational kernel, followed by the translation/scaling back to Montgomery
// form (the image cubic has exactly one rational root; of the two square
// roots of the scaling constant exactly one is itself a square).
VeluData velu(std::uint64_t a, std::uint64_t ell) {
    VeluData out;
    AffinePoint r = find_point_of_order(a, ell);
    std::uint64_t k = (ell - 1) / 2;
    AffinePoint q = r;
    for (std::uint64_t j = 0; j < k; ++j) {
        out.kernel.push_back(q);
        q = add(a, q, r);
    }
    std::uint64_t t = 0, w = 0;
    for (const AffinePoint& kp : out.kernel) {
        std::uint64_t tq = addm(addm(mulm(6, mulm(kp.x, kp.x)), mulm(mulm(4, a), kp.x)), 2);
        std::uint64_t uq = mulm(4, mulm(kp.y, kp.y));
        t = addm(t, tq);
        w = addm(w, addm(uq, mulm(tq, kp.x)));
    }
    std::uint64_t a4 = subm(1, mulm(5, t));
    std::uint64_t a6 = subm(0, addm(mulm(mulm(4, a), t), mulm(7, w)));
    std::uint64_t root = P;
    for (std::uint64_t x = 0; x < P; ++x) {
        if (addm(mulm(mulm(x, x), addm(x, a)), addm(mulm(a4, x), a6)) == 0) {
            if (root != P) throw std::logic_error("image cubic has several roots");
            root = x;
        }
    }
    if (root == P) throw std::logic_error("image cubic has no rational root");
    std::uint64_t alpha = addm(a, mulm(3, root));
    std::uint64_t beta = addm(addm(mulm(3, mulm(root, root)), mulm(mulm(2, a), root)), a4);
    if (legendre(beta) != 1) throw std::logic_error("image scaling constant is not a square");
    std::uint64_t s = mod_sqrt(beta);
    if (legendre(s) != 1) s = subm(0, s);
    out.a_image = mulm(alpha, invm(s));
    out.r0 = root;
    out.s = s;
    return out;
}

const VeluData& velu_cached(std::uint64_t a, std::uint64_t ell) {
    static std::mutex m;
    static std::map<std::pair<std::uint64_t, std::uint64_t>, VeluData> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(a, ell);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, velu(a, ell)).first;
    return it->second;
}

}  // namespace

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return r;
}

int legendre(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = mod_pow(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

std::uint64_t mod_sqrt(std::uint64_t a, std::uint64_t p) { return mod_pow(a, (p + 1) / 4, p); }

std::vector<AffinePoint> enumerate_curve_points(std::uint64_t a) {
    a %= P;
    std::uint64_t disc = subm(mulm(a, a), 4);
    if (disc == 0) throw std::invalid_argument("singular curve");
    std::vector<AffinePoint> pts;
    pts.push_back(AffinePoint{});  // infinity
    for (std::uint64_t x = 0; x < P; ++x) {
        std::uint64_t rhs = curve_rhs(a, x);
        int chi = legendre(rhs);
        if (chi == 0) {
            pts.push_back({x, 0, false});
        } else if (chi == 1) {
            std::uint64_t y = mod_sqrt(rhs);
            pts.push_back({x, y, false});
            pts.push_back({x, P - y, false});
        }
    }
    return pts;
}

AffinePoint add(std::uint64_t a, const AffinePoint& p, const AffinePoint& q) {
    if (p.inf) return q;
    if (q.inf) return p;
    std::uint64_t lam;
    if (p.x == q.x) {
        if (addm(p.y, q.y) == 0) return AffinePoint{};
        lam = mulm(addm(addm(mulm(3, mulm(p.x, p.x)), mulm(mulm(2, a), p.x)), 1), invm(mulm(2, p.y)));
    } else {
        lam = mulm(subm(q.y, p.y), invm(subm(q.x, p.x)));
    }
    std::uint64_t x3 = subm(subm(subm(mulm(lam, lam), a), p.x), q.x);
    std::uint64_t y3 = subm(mulm(lam, subm(p.x, x3)), p.y);
    return {x3, y3, false};
}

AffinePoint mul(std::uint64_t a, std::uint64_t k, const AffinePoint& p) {
    AffinePoint r;
    AffinePoint q = p;
    while (k) {
        if (k & 1) r = add(a, r, q);
        q = add(a, q, q);
        k >>= 1;
    }
    return r;
}

std::uint64_t point_order(std::uint64_t a, const AffinePoint& p) {
    if (p.inf) return 1;
    std::uint64_t order = P + 1;  // 420 = 2^2 * 3 * 5 * 7
    for (std::uint64_t q : {2, 2, 3, 5, 7}) {
        if (mul(a, order / q, p).inf) order /= q;
    }
    return order;
}

std::uint64_t step(std::uint64_t a, std::size_t prime_index, int sign) {
    if (prime_index >= 3) throw std::invalid_argument("prime index");
    std::uint64_t ell = kToyPrimes[prime_index];
    if (sign > 0) return velu_cached(a % P, ell).a_image;
    // The pi+1 eigenspace of E_A is the rational part of the twist E_{-A}.
    return subm(0, velu_cached(subm(0, a), ell).a_image);
}

std::uint64_t push_x(std::uint64_t a, std::size_t prime_index, std::uint64_t x) {
    const VeluData& v = velu_cached(a % P, kToyPrimes[prime_index]);
    std::uint64_t img = x % P;
    for (const AffinePoint& kp : v.kernel) {
        std::uint64_t tq = addm(addm(mulm(6, mulm(kp.x, kp.x)), mulm(mulm(4, a), kp.x)), 2);
        std::uint64_t uq = mulm(4, mulm(kp.y, kp.y));
        std::uint64_t dx = subm(x, kp.x);
        if (dx == 0) throw std::invalid_argument("push_x: point in kernel");
        std::uint64_t dxi = invm(dx);
        img = addm(img, addm(mulm(tq, dxi), mulm(uq, mulm(dxi, dxi))));
    }
    return mulm(subm(img, v.r0), invm(v.s));
}

std::uint64_t brute_force_action(std::uint64_t a, std::span<const std::int8_t> key) {
    if (key.size() != 3) throw std::invalid_argument("toy key must have three exponents");
    std::uint64_t cur = a % P;
    for (std::size_t i = 0; i < 3; ++i) {
        int sign = key[i] >= 0 ? 1 : -1;
        int count = key[i] >= 0 ? key[i] : -key[i];
        for (int j = 0; j < count; ++j) cur = step(cur, i, sign);
    }
    return cur;
}

}  // namespace csidh::oracle
