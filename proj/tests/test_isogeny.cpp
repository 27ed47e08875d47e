#include <doctest.h>

#include <stdexcept>

#include "csidh/action.hpp"
#include "csidh/isogeny.hpp"
#include "csidh/oracle.hpp"

using namespace csidh;

namespace {

const ParameterSet& toy() { return load_parameter_set("toy-419"); }

// first point of exact order ell on toy E_A, via the oracle
oracle::AffinePoint order_point(std::uint64_t a, std::uint64_t ell) {
    auto pts = oracle::enumerate_curve_points(a);
    for (const auto& pt : pts) {
        if (pt.inf) continue;
        auto r = oracle::mul(a, 420 / ell, pt);
        if (!r.inf) return r;
    }
    throw std::logic_error("no order point");
}

}  // namespace

TEST_CASE("quotient_isogeny codomain and images match the affine oracle") {
    const ParameterSet& ps = toy();
    const Fp& fp = ps.fp;
    OpCounter c;
    IsogenyWorkspace ws;

    for (std::uint64_t a_affine : {0ULL, 158ULL, 261ULL}) {
        CurveCoeffs e = curve_from_affine_A(fp, fp.from_u64(a_affine), c);
        for (std::size_t pi = 0; pi < 3; ++pi) {
            std::uint64_t ell = ps.primes[pi];
            auto gen = order_point(a_affine, ell);
            PointXZ r{fp.from_u64(gen.x), fp.one()};

            // push a rational point of coprime order
            auto pts = oracle::enumerate_curve_points(a_affine);
            oracle::AffinePoint probe;
            for (const auto& pt : pts) {
                if (pt.inf) continue;
                std::uint64_t o = oracle::point_order(a_affine, pt);
                if (o % ell != 0 && o > 4) {
                    probe = pt;
                    break;
                }
            }
            std::array<PointXZ, 2> push{PointXZ{fp.from_u64(probe.x), fp.one()}, r};
            CurveCoeffs img = quotient_isogeny(fp, e, r, ell, push, ws, c);

            std::uint64_t a_img = fp.to_u64(curve_to_affine_A(fp, img, c));
            CHECK(a_img == oracle::step(a_affine, pi, +1));

            // kernel generator maps to the identity class
            CHECK(is_infinity(fp, push[1]));

            // the probe image matches the oracle's pushed x
            REQUIRE_FALSE(is_infinity(fp, push[0]));
            FieldElement x_img = fp.mul(push[0].X, fp.inv(push[0].Z, c), c);
            CHECK(fp.to_u64(x_img) == oracle::push_x(a_affine, pi, probe.x));

            // a point of order m coprime to ell keeps its order
            auto img_pt_order = oracle::point_order(
                a_img, oracle::AffinePoint{
                           fp.to_u64(x_img),
                           oracle::mod_sqrt(oracle::mod_pow(fp.to_u64(x_img), 3) +
                                            a_img * fp.to_u64(x_img) % 419 * fp.to_u64(x_img) % 419 +
                                            fp.to_u64(x_img)),
                           false});
            CHECK(img_pt_order == oracle::point_order(a_affine, probe));
        }
    }
}

TEST_CASE("quotient_isogeny rejects an identity kernel") {
    const ParameterSet& ps = toy();
    const Fp& fp = ps.fp;
    OpCounter c;
    IsogenyWorkspace ws;
    CurveCoeffs e = curve_from_affine_A(fp, fp.zero(), c);
    std::array<PointXZ, 0> none{};
    CHECK_THROWS_AS(quotient_isogeny(fp, e, infinity_point(fp), 3, none, ws, c), std::domain_error);
}

TEST_CASE("quotient_isogeny field-operation count depends only on ell") {
    const ParameterSet& ps = toy();
    const Fp& fp = ps.fp;
    IsogenyWorkspace ws;
    OpCounter c;
    for (std::size_t pi = 0; pi < 3; ++pi) {
        std::uint64_t ell = ps.primes[pi];
        OpCounter base;
        bool have_base = false;
        for (std::uint64_t a_affine : {0ULL, 158ULL, 75ULL}) {
            CurveCoeffs e = curve_from_affine_A(fp, fp.from_u64(a_affine), c);
            auto gen = order_point(a_affine, ell);
            PointXZ r{fp.from_u64(gen.x), fp.one()};
            std::array<PointXZ, 2> push{r, r};
            OpCounter delta;
            quotient_isogeny(fp, e, r, ell, push, ws, delta);
            if (!have_base) {
                base = delta;
                have_base = true;
            } else {
                CHECK(delta.mul == base.mul);
                CHECK(delta.sqr == base.sqr);
                CHECK(delta.add == base.add);
            }
        }
    }
}

TEST_CASE("montgomery velu evaluation: cost and cross-model agreement") {
    const ParameterSet& ps = toy();
    const Fp& fp = ps.fp;
    OpCounter c;
    RandomTape tape = RandomTape::from_seed(51);

    for (std::size_t pi = 0; pi < 3; ++pi) {
        std::uint64_t ell = ps.primes[pi];
        std::size_t k = (ell - 1) / 2;
        auto gen = order_point(0, ell);
        std::vector<PointXZ> kernel_xz;
        std::vector<PointYT> kernel_yt;
        auto cur = gen;
        for (std::size_t i = 0; i < k; ++i) {
            PointXZ p{fp.from_u64(cur.x), fp.one()};
            kernel_xz.push_back(p);
            kernel_yt.push_back(mont_to_edwards(fp, p, c));
            cur = oracle::add(0, cur, gen);
        }

        // counter delta (4k, 2, 6k)
        OpCounter delta;
        PointXZ probe{tape.next_elligator_u(fp), fp.one()};
        velu_eval_montgomery(fp, kernel_xz, probe, delta);
        CHECK(delta.mul == 4 * k);
        CHECK(delta.sqr == 2);
        CHECK(delta.add == 6 * k);

        // Edwards evaluation saves exactly 4k - 4 additions
        OpCounter ed;
        edwards_isog_eval(fp, kernel_yt, mont_to_edwards(fp, probe, c), ed);
        CHECK(delta.add - ed.add == 4 * k - 4);

        // Q in the kernel maps to the identity class
        CHECK(is_infinity(fp, velu_eval_montgomery(fp, kernel_xz, kernel_xz[0], c)));

        // random cross-model checks through the model map
        for (int i = 0; i < 200; ++i) {
            PointXZ q{tape.next_elligator_u(fp), fp.one()};
            PointXZ via_mont = velu_eval_montgomery(fp, kernel_xz, q, c);
            PointYT via_ed = edwards_isog_eval(fp, kernel_yt, mont_to_edwards(fp, q, c), c);
            PointXZ back = edwards_to_mont(fp, via_ed, c);
            CHECK(point_equal(fp, via_mont, back, c));
        }
    }
}

TEST_CASE("degree and direction duality on toy curves") {
    // l then l^-1 returns the starting curve, through the full module stack
    const ParameterSet& ps = toy();
    const Fp& fp = ps.fp;
    OpCounter c;
    RandomTape tape = RandomTape::from_seed(52);

    for (std::size_t pi = 0; pi < 3; ++pi) {
        SecretKey key;
        key.exponents = {0, 0, 0};
        key.bounds = {2, 2, 2};
        key.mode = KeyMode::interval;
        key.exponents[pi] = 1;
        CurveCoeffs e0 = curve_from_affine_A(fp, fp.zero(), c);
        CurveCoeffs mid = action_unprotected(ps, e0, key, tape, c);
        key.exponents[pi] = -1;
        CurveCoeffs back = action_unprotected(ps, mid, key, tape, c);
        CHECK(fp.is_zero(curve_to_affine_A(fp, back, c)));
    }
}
