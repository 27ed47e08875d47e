#pragma once

#include <span>

#include "csidh/edwards.hpp"
#include "csidh/montgomery.hpp"

namespace csidh {

/// Scratch buffer for kernel multiples, reusable across calls.
struct IsogenyWorkspace {
    std::vector<PointYT> kernel;
};

/// Quotient isogeny of odd prime degree ell with kernel generated by R.
///
/// Replaces each point in `push` by its image and returns the codomain
/// coefficients. Arithmetic runs in YT coordinates: convert, build kernel
/// multiples [1]R .. [k]R with one doubling and differential additions,
/// then apply the Edwards codomain and evaluation formulas. The number of
/// field operations is a function of ell, push.size() and whether
/// times_ell is requested only.
///
/// When times_ell is non-null it receives [ell]R, continued from the kernel
/// multiples with two more differential steps. The dummy rounds of the
/// protected evaluators feed their own point as R and keep only this output,
/// so real and dummy rounds run the identical operation sequence.
///
/// Throws std::domain_error if R is the identity class (callers treat a
/// cofactor-cleared identity as "retry" before calling).
CurveCoeffs quotient_isogeny(const Fp& fp, const CurveCoeffs& e, const PointXZ& r,
                             std::uint64_t ell, std::span<PointXZ> push, IsogenyWorkspace& ws,
                             OpCounter& c, PointXZ* times_ell = nullptr);

/// Montgomery-form Velu evaluation of the same isogeny, used as a reference
/// path for cross-checks. Kernel multiples are x-line points [i]P, i = 1..k.
/// Costs exactly 4kM + 2S + 6kA.
PointXZ velu_eval_montgomery(const Fp& fp, std::span<const PointXZ> kernel_mults, const PointXZ& q,
                             OpCounter& c);

}  // namespace csidh
