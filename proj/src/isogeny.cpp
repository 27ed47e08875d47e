#include "csidh/isogeny.hpp"

#include <stdexcept>

namespace csidh {

CurveCoeffs quotient_isogeny(const Fp& fp, const CurveCoeffs& e, const PointXZ& r,
                             std::uint64_t ell, std::span<PointXZ> push, IsogenyWorkspace& ws,
                             OpCounter& c, PointXZ* times_ell) {
    if (fp.is_zero(r.Z)) throw std::domain_error("quotient_isogeny: identity kernel generator");
    const std::size_t k = static_cast<std::size_t>((ell - 1) / 2);
    ws.kernel.resize(k);
    ws.kernel[0] = mont_to_edwards(fp, r, c);
    if (k >= 2) ws.kernel[1] = ydbl(fp, ws.kernel[0], e, c);
    for (std::size_t i = 2; i < k; ++i)
        ws.kernel[i] = ydiffadd(fp, ws.kernel[i - 1], ws.kernel[0], ws.kernel[i - 2], c);

    std::span<const PointYT> kernel(ws.kernel.data(), k);
    CurveCoeffs codomain = edwards_isog_codomain(fp, kernel, e, ell, c);
    for (PointXZ& q : push) {
        PointYT img = edwards_isog_eval(fp, kernel, mont_to_edwards(fp, q, c), c);
        q = edwards_to_mont(fp, img, c);
    }
    if (times_ell != nullptr) {
        // [2k+1]R = [k+1]R + [k]R with difference [1]R
        PointYT next = (k >= 2)
                           ? ydiffadd(fp, ws.kernel[k - 1], ws.kernel[0], ws.kernel[k - 2], c)
                           : ydbl(fp, ws.kernel[0], e, c);
        PointYT full = ydiffadd(fp, next, ws.kernel[k - 1], ws.kernel[0], c);
        *times_ell = edwards_to_mont(fp, full, c);
    }
    return codomain;
}

PointXZ velu_eval_montgomery(const Fp& fp, std::span<const PointXZ> kernel_mults, const PointXZ& q,
                             OpCounter& c) {
    FieldElement acc_s, acc_d;
    bool first = true;
    for (const PointXZ& ker : kernel_mults) {
        // The formula is evaluated as written, with X_Q +- Z_Q recomputed per
        // factor; the Edwards evaluation path saves exactly these additions.
        FieldElement qm = fp.sub(q.X, q.Z, c);
        FieldElement kp = fp.add(ker.X, ker.Z, c);
        FieldElement t0 = fp.mul(qm, kp, c);
        FieldElement qp = fp.add(q.X, q.Z, c);
        FieldElement km = fp.sub(ker.X, ker.Z, c);
        FieldElement t1 = fp.mul(qp, km, c);
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
    return PointXZ{fp.mul(q.X, acc_s, c), fp.mul(q.Z, acc_d, c)};
}

}  // namespace csidh
