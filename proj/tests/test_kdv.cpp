#include "dmr/errors.hpp"
#include "dmr/kdv.hpp"

#include <doctest.h>

using namespace dmr;

TEST_SUITE_BEGIN("kdv");

namespace {
RatFunc rf(const char* s) { return RatFunc::parse(s); }
DiffPoly jet(int level, int order) { return DiffPoly::jet(level, order); }
} // namespace

TEST_CASE("k2 forms") {
    RatFunc a = rf("(-h^2+3)/24");
    DiffPoly k = kdv::k2(a);
    CHECK(k == jet(1, 3).scaled(a) + (jet(1, 1) * jet(1, 1)).scaled(rf("-3/4")));
    DiffPoly unit = kdv::k2(RatFunc::from_int(1));
    CHECK(unit == jet(1, 3) + (jet(1, 1) * jet(1, 1)).scaled(rf("-3/4")));
    CHECK_THROWS_AS(kdv::k2(RatFunc()), ZeroDispersion);
}

TEST_CASE("one recursion application") {
    RatFunc a = rf("(-h^2+3)/24");
    CHECK(kdv::recursion_apply(DiffPoly::zero(), a).is_zero());
    DiffPoly got = kdv::recursion_apply(jet(1, 2), a);
    DiffPoly want = jet(1, 4) + (jet(1, 1) * jet(1, 2)).scaled(rf("-3/2") / a);
    CHECK(got == want);
    CHECK_THROWS_AS(kdv::recursion_apply(jet(1, 1) * jet(1, 1), a), NotExact);
}

TEST_CASE("flow(2, a, a) structurally equals k2(a)") {
    for (const char* s : {"(-h^2+3)/24", "1", "h^2+2", "(h^2+1)/3"}) {
        RatFunc a = rf(s);
        CHECK(kdv::flow(2, a, a) == kdv::k2(a));
    }
}

TEST_CASE("third flow against the closed form") {
    // b * (D5 - (5/(2a)) D1 D3 - (5/(4a)) D2^2 + (5/(8a^2)) D1^3)
    RatFunc a = rf("(-h^2+3)/24");
    RatFunc b = rf("-(h^4-30*h^2-15)/1920");
    DiffPoly want = jet(1, 5) + (jet(1, 1) * jet(1, 3)).scaled(rf("-5/2") / a) +
                    (jet(1, 2) * jet(1, 2)).scaled(rf("-5/4") / a) +
                    (jet(1, 1) * jet(1, 1) * jet(1, 1)).scaled(rf("5/8") / (a * a));
    CHECK(kdv::flow(3, RatFunc::from_int(1), a) == want);
    CHECK(kdv::flow(3, b, a) == want.scaled(b));
    CHECK(kdv::flow(3, RatFunc(), a).is_zero());
}

TEST_CASE("flows carry the expected linear term and degree") {
    RatFunc a = rf("(-h^2+3)/24");
    for (int j = 2; j <= 4; ++j) {
        DiffPoly k = kdv::flow(j, RatFunc::from_int(1), a);
        CHECK(k.coeff(DiffMonomial::jet(1, 2 * j - 1)) == RatFunc::from_int(1));
        auto deg = k.homogeneous_degree();
        REQUIRE(deg.has_value());
        CHECK(*deg == 2 * j);
        // continuum sanity: coefficients finite at h = 0
        for (const auto& [m, c] : k.terms()) CHECK_NOTHROW(c.eval_at(rat(0)));
    }
}

TEST_CASE("h_flow is the xi-derivative of the flow") {
    RatFunc a = rf("(-h^2+3)/24");
    CHECK(kdv::h_flow(2, a, a) == derive_xi(kdv::k2(a)));
    CHECK(kdv::h_flow(2, a, a) ==
          jet(1, 4).scaled(a) + (jet(1, 1) * jet(1, 2)).scaled(rf("-3/2")));
}

TEST_CASE("linearize_flow") {
    RatFunc a = rf("(-h^2+3)/24");
    LinDiffOp op = kdv::linearize_flow(2, a, a);
    DiffPoly v = jet(2, 1);
    CHECK(op.apply(v) == jet(2, 4).scaled(a) + (jet(1, 1) * jet(2, 2)).scaled(rf("-3/2")));
    CHECK(kdv::linearize_flow(2, RatFunc(), a).is_zero());
}

TEST_CASE("hierarchy commutativity for j in {2,3,4}") {
    RatFunc a = rf("(-h^2+3)/24");
    DiffPoly u1 = jet(1, 1);
    for (int j1 = 2; j1 <= 4; ++j1) {
        for (int j2 = j1; j2 <= 4; ++j2) {
            std::map<int, DiffPoly> f1{{1, kdv::flow(j1, RatFunc::from_int(1), a)}};
            std::map<int, DiffPoly> f2{{1, kdv::flow(j2, RatFunc::from_int(1), a)}};
            DiffPoly lhs = evolutionary_derive(evolutionary_derive(u1, f1), f2);
            DiffPoly rhs = evolutionary_derive(evolutionary_derive(u1, f2), f1);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("flow table") {
    RatFunc a = rf("(-h^2+3)/24");
    kdv::FlowTable t;
    t.set(2, kdv::k2(a), a);
    CHECK(t.has(2));
    CHECK(!t.has(3));
    CHECK(t.b(2) == a);
    CHECK(t.flow_poly(2) == kdv::k2(a));
}

TEST_SUITE_END();
