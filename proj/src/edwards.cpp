#include "csidh/edwards.hpp"

namespace csidh {

PointYT mont_to_edwards(const Fp& fp, const PointXZ& p, OpCounter& c) {
    return PointYT{fp.sub(p.X, p.Z, c), fp.add(p.X, p.Z, c)};
}

PointXZ edwards_to_mont(const Fp& fp, const PointYT& p, OpCounter& c) {
    return PointXZ{fp.add(p.T, p.Y, c), fp.sub(p.T, p.Y, c)};
}

PointYT ydbl(const Fp& fp, const PointYT& p, const CurveCoeffs& e, OpCounter& c) {
    FieldElement y2 = fp.sqr(p.Y, c);
    FieldElement t2 = fp.sqr(p.T, c);
    FieldElement diff = fp.sub(t2, y2, c);        // T^2 - Y^2
    FieldElement ey2 = fp.mul(e.C24, y2, c);      // e Y^2
    FieldElement core = fp.mul(ey2, t2, c);       // e Y^2 T^2
    FieldElement ad = fp.mul(e.A24p, diff, c);    // a (T^2 - Y^2)
    ad = fp.add(ey2, ad, c);                      // e Y^2 + a (T^2 - Y^2)
    ad = fp.mul(diff, ad, c);
    return PointYT{fp.sub(core, ad, c), fp.add(core, ad, c)};
}

PointYT ydiffadd(const Fp& fp, const PointYT& p, const PointYT& q, const PointYT& pmq,
                 OpCounter& c) {
    FieldElement t0 = fp.mul(p.Y, q.T, c);
    FieldElement t1 = fp.mul(q.Y, p.T, c);
    FieldElement s = fp.add(t0, t1, c);
    FieldElement d = fp.sub(t0, t1, c);
    s = fp.sqr(s, c);
    d = fp.sqr(d, c);
    FieldElement f0 = fp.sub(pmq.T, pmq.Y, c);
    FieldElement f1 = fp.add(pmq.T, pmq.Y, c);
    s = fp.mul(f0, s, c);
    d = fp.mul(f1, d, c);
    return PointYT{fp.sub(s, d, c), fp.add(s, d, c)};
}

PointYT edwards_isog_eval(const Fp& fp, std::span<const PointYT> kernel_mults, const PointYT& q,
                          OpCounter& c) {
    FieldElement acc_s, acc_d;
    bool first = true;
    for (const PointYT& ker : kernel_mults) {
        FieldElement t0 = fp.mul(q.T, ker.Y, c);
        FieldElement t1 = fp.mul(q.Y, ker.T, c);
        FieldElement s = fp.add(t0, t1, c);
        FieldElement d = fp.sub(t0, t1, c);
        if (first) {
            acc_s = s;
            acc_d = d;
            first = false;
        } else {
            acc_s = fp.mul(acc_s, s, c);
            acc_d = fp.mul(acc_d, d, c);
        }
    }
    acc_s = fp.sqr(acc_s, c);
    acc_d = fp.sqr(acc_d, c);
    FieldElement f_plus = fp.add(q.T, q.Y, c);
    FieldElement f_minus = fp.sub(q.T, q.Y, c);
    FieldElement u = fp.mul(f_plus, acc_s, c);
    FieldElement v = fp.mul(f_minus, acc_d, c);
    return PointYT{fp.sub(u, v, c), fp.add(u, v, c)};
}

CurveCoeffs edwards_isog_codomain(const Fp& fp, std::span<const PointYT> kernel_mults,
                                  const CurveCoeffs& e, std::uint64_t ell, OpCounter& c) {
    FieldElement prod_y = kernel_mults[0].Y;
    FieldElement prod_t = kernel_mults[0].T;
    for (std::size_t i = 1; i < kernel_mults.size(); ++i) {
        prod_y = fp.mul(prod_y, kernel_mults[i].Y, c);
        prod_t = fp.mul(prod_t, kernel_mults[i].T, c);
    }
    // eighth powers
    for (int i = 0; i < 3; ++i) {
        prod_y = fp.sqr(prod_y, c);
        prod_t = fp.sqr(prod_t, c);
    }
    CurveCoeffs out;
    out.A24p = fp.mul(fp.pow_u64(e.A24p, ell, c), prod_t, c);
    out.A24m = fp.mul(fp.pow_u64(e.A24m, ell, c), prod_y, c);
    out.C24 = fp.sub(out.A24p, out.A24m, c);
    return out;
}

}  // namespace csidh
