#include "dmr/errors.hpp"
#include "dmr/series.hpp"

#include <doctest.h>

using namespace dmr;
using namespace dmr::series;

TEST_SUITE_BEGIN("series");

namespace {

RatFunc rf(const char* s) { return RatFunc::parse(s); }
const RatFunc kZ = RatFunc::h(2); // zeta = h gauge

EpsSeries constant_one(int n) {
    EpsSeries s(n, kZ);
    s.add(0, ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1))));
    return s;
}

ExtVar phi_var(int level, int kappa) { return ExtVar{ExtVar::Field::phi, level, kappa, {}}; }
ExtVar nu_var(int level, int kappa) { return ExtVar{ExtVar::Field::nu, level, kappa, {}}; }

} // namespace

TEST_CASE("truncated arithmetic") {
    // (1 + eps x)(1 - eps x) = 1 - eps^2 x^2 at N = 2
    EpsSeries p = constant_one(2), q = constant_one(2);
    ExtPoly x = ExtPoly::variable(phi_var(1, 1));
    p.add(1, x);
    q.add(1, -x);
    EpsSeries prod = p * q;
    CHECK(prod.at(0) == ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1))));
    CHECK(prod.at(1).is_zero());
    CHECK(prod.at(2) == -(x.mul(x, kZ)));

    // eps^3 * eps^7 vanishes at N = 9
    EpsSeries a(9, kZ), b(9, kZ);
    a.add(3, x);
    b.add(7, x);
    EpsSeries c = a * b;
    for (int k = 0; k <= 9; ++k) CHECK(c.at(k).is_zero());

    // p + 0 = p
    EpsSeries zero(2, kZ);
    EpsSeries sum = p + zero;
    for (int k = 0; k <= 2; ++k) CHECK(sum.at(k) == p.at(k));

    EpsSeries wrong(3, kZ);
    CHECK_THROWS_AS((void)(p + wrong), TruncationMismatch);
}

TEST_CASE("zeta extension arithmetic reduces zeta^2 to the gauge value") {
    ZetaExt z = ZetaExt::zeta(RatFunc::from_int(1));
    ZetaExt sq = z.mul(z, kZ);
    CHECK(sq.even == kZ);
    CHECK(sq.odd.is_zero());
}

TEST_CASE("compose: sin Taylor") {
    EpsSeries arg(3, kZ);
    ExtPoly u = ExtPoly::variable(phi_var(1, 1));
    arg.add(1, u);
    EpsSeries s = compose(AnalyticKernel::sin(), arg);
    CHECK(s.at(0).is_zero());
    CHECK(s.at(1) == u);
    CHECK(s.at(2).is_zero());
    ExtPoly u3 = u.mul(u, kZ).mul(u, kZ);
    CHECK(s.at(3) == u3.scaled(ZetaExt::of(rf("-1/6")), kZ));
}

TEST_CASE("compose: sqrt1p Taylor") {
    EpsSeries arg(4, kZ);
    ExtPoly v = ExtPoly::variable(nu_var(1, 0));
    arg.add(2, v);
    EpsSeries s = compose(AnalyticKernel::sqrt1p(), arg);
    CHECK(s.at(0) == ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1))));
    CHECK(s.at(2) == v.scaled(ZetaExt::of(rf("1/2")), kZ));
    CHECK(s.at(4) == v.mul(v, kZ).scaled(ZetaExt::of(rf("-1/8")), kZ));
}

TEST_CASE("compose: cos of zero is one") {
    EpsSeries zero(4, kZ);
    EpsSeries c = compose(AnalyticKernel::cos(), zero);
    CHECK(c.at(0) == ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1))));
    for (int k = 1; k <= 4; ++k) CHECK(c.at(k).is_zero());
}

TEST_CASE("compose rejects non-small arguments") {
    CHECK_THROWS_AS(compose(AnalyticKernel::sin(), constant_one(3)), NonSmallArgument);
}

TEST_CASE("sin^2 + cos^2 = 1 exactly through the truncation") {
    EpsSeries b = beta(+1, 9, kZ);
    EpsSeries s = compose(AnalyticKernel::sin(), b);
    EpsSeries c = compose(AnalyticKernel::cos(), b);
    EpsSeries lhs = s * s + c * c;
    EpsSeries one = constant_one(9);
    for (int k = 0; k <= 9; ++k) CHECK(lhs.at(k) == one.at(k));
}

TEST_CASE("shift expansion lowest terms") {
    // beta_{+-} starts at eps^2 with coefficient (+-zeta) D1kappa phi^(1)
    for (int dir : {+1, -1}) {
        EpsSeries b = beta(dir, 9, kZ);
        CHECK(b.at(0).is_zero());
        CHECK(b.at(1).is_zero());
        ExtPoly want =
            ExtPoly::variable(phi_var(1, 1)).scaled(ZetaExt::zeta(RatFunc::from_int(dir)), kZ);
        CHECK(b.at(2) == want);
    }
    // nu shift at eps^2 is the bare nu^(1); at eps^0 the background 1
    EpsSeries np = nu_shift(+1, 9, kZ);
    CHECK(np.at(0) == ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1))));
    CHECK(np.at(2) == ExtPoly::variable(nu_var(1, 0)));
    CHECK(np.at(3) == ExtPoly::variable(nu_var(1, 1)).scaled(ZetaExt::zeta(rf("1")), kZ));
}

TEST_CASE("second-difference parity: only even kappa orders survive") {
    EpsSeries two_nu = nu_unshifted(9, kZ).scaled(rf("2"));
    EpsSeries diff_nu = nu_shift(+1, 9, kZ) + nu_shift(-1, 9, kZ) - two_nu;
    for (int k = 0; k <= 9; ++k)
        for (const auto& [m, c] : diff_nu.at(k).terms()) {
            CHECK(c.odd.is_zero());
            for (const auto& [v, e] : m.factors()) CHECK(v.kappa % 2 == 0);
        }
    EpsSeries diff_phi = beta(+1, 9, kZ) + beta(-1, 9, kZ);
    for (int k = 0; k <= 9; ++k)
        for (const auto& [m, c] : diff_phi.at(k).terms()) {
            CHECK(c.odd.is_zero());
            for (const auto& [v, e] : m.factors()) CHECK(v.kappa % 2 == 0);
        }
}

TEST_CASE("time expansion") {
    EpsSeries dp = dt_phi(9, kZ, +1);
    CHECK(dp.at(0) == ExtPoly::constant(ZetaExt::of(RatFunc::from_int(-1))));
    ExtVar t1phi = ExtVar{ExtVar::Field::phi, 1, 0, {}}.with_tder(1, 1);
    CHECK(dp.at(2) == ExtPoly::variable(t1phi));
    EpsSeries dn = dt_nu(9, kZ);
    CHECK(dn.at(0).is_zero());
    CHECK(dn.at(1).is_zero());
    CHECK(dn.at(2).is_zero());
    ExtVar t1nu = ExtVar{ExtVar::Field::nu, 1, 0, {}}.with_tder(1, 1);
    CHECK(dn.at(3) == ExtPoly::variable(t1nu));
}

TEST_CASE("reciprocal inverts unit series") {
    EpsSeries nu = nu_unshifted(9, kZ);
    EpsSeries prod = nu * nu.reciprocal();
    EpsSeries one = constant_one(9);
    for (int k = 0; k <= 9; ++k) CHECK(prod.at(k) == one.at(k));
    EpsSeries bad(3, kZ);
    CHECK_THROWS_AS(bad.reciprocal(), NonSmallArgument);
}

TEST_SUITE_END();
