#pragma once

#include <span>

#include "csidh/montgomery.hpp"

namespace csidh {

/// Projective y-line twisted Edwards point (Y : T); the identity is the
/// class Y = T.
struct PointYT {
    FieldElement Y, T;
};

/// (X : Z) -> (X - Z : X + Z), the y-line image under the birational map.
PointYT mont_to_edwards(const Fp& fp, const PointXZ& p, OpCounter& c);

/// Inverse map (Y : T) -> (T + Y : T - Y).
PointXZ edwards_to_mont(const Fp& fp, const PointYT& p, OpCounter& c);

/// [2]P in YT coordinates with a = A24p, e = C24. Costs exactly 4M + 2S + 4A.
PointYT ydbl(const Fp& fp, const PointYT& p, const CurveCoeffs& e, OpCounter& c);

/// P+Q from P, Q, P-Q; requires P != Q. Costs exactly 4M + 2S + 6A.
PointYT ydiffadd(const Fp& fp, const PointYT& p, const PointYT& q, const PointYT& pmq, OpCounter& c);

/// Image of Q under the odd-degree isogeny whose kernel multiples
/// [1]P .. [k]P are given in YT coordinates. Costs exactly 4kM + 2S + (2k+4)A.
PointYT edwards_isog_eval(const Fp& fp, std::span<const PointYT> kernel_mults, const PointYT& q,
                          OpCounter& c);

/// Codomain coefficients of the degree-ell isogeny: a' = a^ell (prod T_i)^8,
/// d' = d^ell (prod Y_i)^8 with a = A24p, d = A24m.
CurveCoeffs edwards_isog_codomain(const Fp& fp, std::span<const PointYT> kernel_mults,
                                  const CurveCoeffs& e, std::uint64_t ell, OpCounter& c);

}  // namespace csidh
