#pragma once

#include <utility>

#include "csidh/fp.hpp"
#include "csidh/params.hpp"

namespace csidh {

/// Projective x-line point (X : Z). The point at infinity is the class Z = 0;
/// (0 : 0) never appears as a valid point.
struct PointXZ {
    FieldElement X, Z;
};

/// Projective Montgomery coefficient held as A24p = A' + 2C', A24m = A' - 2C',
/// C24 = 4C' (equal to the twisted Edwards a, d, a - d of the same curve).
struct CurveCoeffs {
    FieldElement A24p, A24m, C24;
};

inline void cswap(PointXZ& p, PointXZ& q, std::uint64_t bit) {
    cswap(p.X, q.X, bit);
    cswap(p.Z, q.Z, bit);
}

inline PointXZ cselect(std::uint64_t bit, const PointXZ& a, const PointXZ& b) {
    return PointXZ{cselect(bit, a.X, b.X), cselect(bit, a.Z, b.Z)};
}

inline CurveCoeffs cselect(std::uint64_t bit, const CurveCoeffs& a, const CurveCoeffs& b) {
    return CurveCoeffs{cselect(bit, a.A24p, b.A24p), cselect(bit, a.A24m, b.A24m),
                       cselect(bit, a.C24, b.C24)};
}

inline bool is_infinity(const Fp& fp, const PointXZ& p) { return fp.is_zero(p.Z); }

PointXZ infinity_point(const Fp& fp);

/// Coefficients of y^2 = x^3 + Ax^2 + x from the affine A.
CurveCoeffs curve_from_affine_A(const Fp& fp, const FieldElement& A, OpCounter& c);

/// Projective (A' : C') pair of the curve, costs 2A.
std::pair<FieldElement, FieldElement> curve_to_AC(const Fp& fp, const CurveCoeffs& e, OpCounter& c);

/// Normalized affine A (one inversion).
FieldElement curve_to_affine_A(const Fp& fp, const CurveCoeffs& e, OpCounter& c);

/// Projective point equality; any Z = 0 class counts as infinity.
bool point_equal(const Fp& fp, const PointXZ& p, const PointXZ& q, OpCounter& c);

/// x([2]P). Costs exactly 4M + 2S + 4A.
PointXZ xdbl(const Fp& fp, const PointXZ& p, const CurveCoeffs& e, OpCounter& c);

/// x(P+Q) from x(P), x(Q), x(P-Q); requires P != Q. Costs exactly 4M + 2S + 6A.
PointXZ xadd(const Fp& fp, const PointXZ& p, const PointXZ& q, const PointXZ& pmq, OpCounter& c);

/// x([k]P) by the uniform double-and-add ladder over bit_width(k) bits.
/// The two-torsion class x = 0 is outside the domain; the group action only
/// multiplies points of odd order (or the infinity class), where the x-line
/// formulas are exact.
PointXZ ladder(const Fp& fp, std::uint64_t k, const PointXZ& p, const CurveCoeffs& e, OpCounter& c);

/// x([target]P) by executing a differential addition chain. Same domain as
/// the ladder; if an intermediate multiple of a small-order input degenerates
/// the result collapses to the infinity class (Z = 0), which callers already
/// treat as a retry.
PointXZ mul_by_chain(const Fp& fp, const AdditionChain& chain, const PointXZ& p,
                     const CurveCoeffs& e, OpCounter& c);

/// Constant-time projective Elligator 2 on the curve (A' : C').
///
/// Returns (T_plus, T_minus) with T_plus in E[pi - 1] and T_minus in
/// E[pi + 1], for any u in {2, ..., (p-1)/2}. A single code path covers both
/// the A' = 0 and A' != 0 cases; the only data-dependent choice is a cswap
/// driven by a Legendre symbol. Internally the curve is rescaled to
/// (A'C' : C'^2) so that the Legendre test reads the curve equation rather
/// than the projective representative.
std::pair<PointXZ, PointXZ> elligator(const Fp& fp, const FieldElement& Aprime,
                                      const FieldElement& Cprime, const FieldElement& u,
                                      OpCounter& c);

}  // namespace csidh
