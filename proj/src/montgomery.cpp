#include "csidh/montgomery.hpp"

#include <stdexcept>

namespace csidh {

PointXZ infinity_point(const Fp& fp) { return PointXZ{fp.one(), fp.zero()}; }

CurveCoeffs curve_from_affine_A(const Fp& fp, const FieldElement& A, OpCounter& c) {
    FieldElement two = fp.from_u64(2);
    CurveCoeffs e;
    e.A24p = fp.add(A, two, c);
    e.A24m = fp.sub(A, two, c);
    e.C24 = fp.from_u64(4);
    return e;
}

std::pair<FieldElement, FieldElement> curve_to_AC(const Fp& fp, const CurveCoeffs& e, OpCounter& c) {
    // A = A'/C' with A' = (A24p + A24m)/2, C' = C24/4; scale both by 4.
    FieldElement t = fp.add(e.A24p, e.A24m, c);
    t = fp.add(t, t, c);
    return {t, e.C24};
}

FieldElement curve_to_affine_A(const Fp& fp, const CurveCoeffs& e, OpCounter& c) {
    auto [ap, cp] = curve_to_AC(fp, e, c);
    return fp.mul(ap, fp.inv(cp, c), c);
}

bool point_equal(const Fp& fp, const PointXZ& p, const PointXZ& q, OpCounter& c) {
    bool ip = fp.is_zero(p.Z);
    bool iq = fp.is_zero(q.Z);
    if (ip || iq) return ip && iq;
    FieldElement l = fp.mul(p.X, q.Z, c);
    FieldElement r = fp.mul(q.X, p.Z, c);
    return fp.equal(l, r);
}

PointXZ xdbl(const Fp& fp, const PointXZ& p, const CurveCoeffs& e, OpCounter& c) {
    FieldElement t0 = fp.sub(p.X, p.Z, c);
    FieldElement t1 = fp.add(p.X, p.Z, c);
    t0 = fp.sqr(t0, c);
    t1 = fp.sqr(t1, c);
    PointXZ r;
    r.Z = fp.mul(e.C24, t0, c);
    r.X = fp.mul(r.Z, t1, c);
    t1 = fp.sub(t1, t0, c);
    t0 = fp.mul(e.A24p, t1, c);
    r.Z = fp.add(r.Z, t0, c);
    r.Z = fp.mul(r.Z, t1, c);
    return r;
}

PointXZ xadd(const Fp& fp, const PointXZ& p, const PointXZ& q, const PointXZ& pmq, OpCounter& c) {
    FieldElement t0 = fp.add(p.X, p.Z, c);
    FieldElement t1 = fp.sub(p.X, p.Z, c);
    FieldElement t2 = fp.add(q.X, q.Z, c);
    FieldElement t3 = fp.sub(q.X, q.Z, c);
    t0 = fp.mul(t0, t3, c);  // (XP+ZP)(XQ-ZQ)
    t1 = fp.mul(t1, t2, c);  // (XP-ZP)(XQ+ZQ)
    FieldElement s = fp.add(t0, t1, c);
    FieldElement d = fp.sub(t0, t1, c);
    s = fp.sqr(s, c);
    d = fp.sqr(d, c);
    PointXZ r;
    r.X = fp.mul(pmq.Z, s, c);
    r.Z = fp.mul(pmq.X, d, c);
    return r;
}

PointXZ ladder(const Fp& fp, std::uint64_t k, const PointXZ& p, const CurveCoeffs& e, OpCounter& c) {
    if (k == 0) return infinity_point(fp);
    if (k == 1) return p;
    PointXZ r0 = p;
    PointXZ r1 = xdbl(fp, p, e, c);
    unsigned n = 64 - static_cast<unsigned>(__builtin_clzll(k));
    std::uint64_t prev = 0;
    for (unsigned j = n - 1; j-- > 0;) {
        std::uint64_t bit = (k >> j) & 1;
        cswap(r0, r1, prev ^ bit);
        prev = bit;
        r1 = xadd(fp, r0, r1, p, c);
        r0 = xdbl(fp, r0, e, c);
    }
    cswap(r0, r1, prev);
    return r0;
}

PointXZ mul_by_chain(const Fp& fp, const AdditionChain& chain, const PointXZ& p,
                     const CurveCoeffs& e, OpCounter& c) {
    std::array<PointXZ, 24> pts;
    if (chain.steps.size() + 1 > pts.size()) throw std::invalid_argument("chain too long");
    pts[0] = p;
    std::size_t n = 1;
    for (const auto& s : chain.steps) {
        if (s.kind == AdditionChain::Step::Kind::Double)
            pts[n] = xdbl(fp, pts[s.a], e, c);
        else
            pts[n] = xadd(fp, pts[s.a], pts[s.b], pts[s.diff], c);
        ++n;
    }
    return pts[n - 1];
}

std::pair<PointXZ, PointXZ> elligator(const Fp& fp, const FieldElement& Aprime,
                                      const FieldElement& Cprime, const FieldElement& u,
                                      OpCounter& c) {
    // Rescale (A' : C') -> (A'C' : C'^2); the second coordinate is now a
    // square, so the Legendre symbol of t' classifies points on the curve
    // itself for every projective representative.
    FieldElement Ah = fp.mul(Aprime, Cprime, c);
    FieldElement Ch = fp.sqr(Cprime, c);

    FieldElement u2 = fp.sqr(u, c);
    FieldElement u2m1 = fp.sub(u2, fp.one(), c);
    FieldElement Cu = fp.mul(Ch, u2m1, c);  // C(u^2-1)

    // t = A ((u^2-1) u^2 A^2 C + ((u^2-1)C)^3); zero iff A = 0.
    FieldElement t = fp.sqr(Ah, c);
    t = fp.mul(t, u2, c);
    t = fp.mul(t, Ch, c);
    t = fp.mul(t, u2m1, c);
    FieldElement cu3 = fp.sqr(Cu, c);
    cu3 = fp.mul(cu3, Cu, c);
    t = fp.add(t, cu3, c);
    t = fp.mul(Ah, t, c);

    std::uint64_t a_bit = fp.ct_is_zero(t);
    FieldElement alpha = fp.zero();
    FieldElement beta = u;
    cswap(alpha, beta, a_bit);  // alpha = 0 iff A != 0

    FieldElement u2p1 = fp.add(u2, fp.one(), c);
    FieldElement tp = fp.mul(alpha, u2p1, c);
    tp = fp.add(t, tp, c);  // t' != 0

    FieldElement ac = fp.mul(alpha, Cu, c);
    PointXZ t_plus, t_minus;
    t_plus.X = fp.add(Ah, ac, c);
    t_plus.Z = Cu;
    FieldElement au2 = fp.mul(Ah, u2, c);
    au2 = fp.add(au2, ac, c);
    t_minus.X = fp.sub(fp.zero(), au2, c);
    t_minus.Z = Cu;

    int b = fp.legendre(tp, c);
    std::uint64_t swap_bit = ct::isequal_i64(b, -1);
    cswap(t_plus, t_minus, swap_bit);
    return {t_plus, t_minus};
}

}  // namespace csidh
