#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Brute-force reference implementations at toy scale (p = 419), built on
// plain affine arithmetic and classical Velu formulas, fully independent of
// the projective code paths. Test-support only; never on the constant-time
// path.
namespace csidh::oracle {

inline constexpr std::uint64_t kToyPrime = 419;
inline constexpr std::uint64_t kToyPrimes[3] = {3, 5, 7};

struct AffinePoint {
    std::uint64_t x = 0, y = 0;
    bool inf = true;
};

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p = kToyPrime);
int legendre(std::uint64_t a, std::uint64_t p = kToyPrime);
std::uint64_t mod_sqrt(std::uint64_t a, std::uint64_t p = kToyPrime);  // p = 3 mod 4

/// All affine points of y^2 = x^3 + Ax^2 + x over F_419, plus infinity.
/// Throws std::invalid_argument for singular A (A^2 = 4).
std::vector<AffinePoint> enumerate_curve_points(std::uint64_t a);

AffinePoint add(std::uint64_t a, const AffinePoint& p, const AffinePoint& q);
AffinePoint mul(std::uint64_t a, std::uint64_t k, const AffinePoint& p);
std::uint64_t point_order(std::uint64_t a, const AffinePoint& p);

/// A-coefficient of l_i^sign * E_A (sign in {+1, -1}), by exhaustive kernel
/// search and schoolbook affine Velu plus Montgomery renormalization.
std::uint64_t step(std::uint64_t a, std::size_t prime_index, int sign);

/// Pushes the x-coordinate of a pi-minus-1 point through the degree-l
/// isogeny used by step(a, i, +1); returns the normalized image x.
std::uint64_t push_x(std::uint64_t a, std::size_t prime_index, std::uint64_t x);

/// l_1^e1 * l_2^e2 * l_3^e3 * E_A, one prime step at a time.
std::uint64_t brute_force_action(std::uint64_t a, std::span<const std::int8_t> key);

}  // namespace csidh::oracle
