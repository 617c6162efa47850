#include "dmr/errors.hpp"
#include "dmr/jets.hpp"
#include "dmr/kdv.hpp"

#include <doctest.h>

using namespace dmr;

TEST_SUITE_BEGIN("diffalg");

namespace {

RatFunc rf(const char* s) { return RatFunc::parse(s); }
DiffPoly jet(int level, int order) { return DiffPoly::jet(level, order); }
DiffPoly dp(const char* s) { return DiffPoly::parse(s); }

} // namespace

TEST_CASE("ring ops") {
    DiffPoly u1 = jet(1, 1);
    CHECK(u1 * u1 == dp("D1[phi,1]^2"));
    DiffPoly p = jet(1, 3).scaled(rf("(-h^2+3)/24")) + (u1 * u1).scaled(rf("-3/4"));
    CHECK(p == dp("((-h^2+3)/24)*D3[phi,1]-(3/4)*D1[phi,1]^2"));
    CHECK((p + (-p)).is_zero());
    CHECK(p - p == DiffPoly::zero());
}

TEST_CASE("derive_xi: Leibniz and constants") {
    CHECK(derive_xi(jet(1, 1)) == jet(1, 2));
    CHECK(derive_xi(jet(1, 1) * jet(1, 1)) == (jet(1, 1) * jet(1, 2)).scaled(rf("2")));
    CHECK(derive_xi(DiffPoly::constant(rf("h/2"))).is_zero());
}

TEST_CASE("derive_xi raises homogeneous degree by one") {
    DiffPoly p = jet(2, 3) * jet(1, 1) + jet(1, 4).scaled(rf("h")) * jet(1, 2);
    DiffPoly d = derive_xi(p);
    for (const auto& [m, c] : d.terms()) CHECK(m.degree() == 9);
}

TEST_CASE("integrate_xi basics") {
    CHECK(integrate_xi(jet(1, 2)) == jet(1, 1));
    CHECK(integrate_xi((jet(1, 1) * jet(1, 2)).scaled(rf("2"))) == jet(1, 1) * jet(1, 1));
    CHECK_THROWS_AS(integrate_xi(jet(1, 1) * jet(1, 1)), NotExact);
    CHECK_THROWS_AS(integrate_xi(DiffPoly::constant(rf("1"))), NotExact);
    CHECK(integrate_xi(DiffPoly::zero()).is_zero());
}

TEST_CASE("integrate then derive round trips on mixed-degree input") {
    DiffPoly p = jet(1, 2) * jet(1, 1) + jet(2, 1).scaled(rf("h^2"));
    DiffPoly d = derive_xi(p);
    CHECK(integrate_xi(d) == p);
}

TEST_CASE("frechet of the potential KdV flow") {
    RatFunc a = rf("(-h^2+3)/24");
    DiffPoly k2 = kdv::k2(a);
    LinDiffOp op = frechet(k2, 1);
    // a d^3 - (3/2) D1[phi,1] d
    REQUIRE(op.coeffs().size() == 2);
    CHECK(op.coeffs().at(3) == DiffPoly::constant(a));
    CHECK(op.coeffs().at(1) == jet(1, 1).scaled(rf("-3/2")));
}

TEST_CASE("frechet: linear and power cases") {
    DiffPoly lin = jet(1, 5).scaled(rf("h^2+1"));
    LinDiffOp op = frechet(lin, 1);
    REQUIRE(op.coeffs().size() == 1);
    CHECK(op.coeffs().at(5) == DiffPoly::constant(rf("h^2+1")));

    DiffPoly cube = jet(1, 1) * jet(1, 1) * jet(1, 1);
    LinDiffOp opc = frechet(cube, 1);
    CHECK(opc.apply(jet(2, 1)) == (jet(1, 1) * jet(1, 1) * jet(2, 2)).scaled(rf("3")));
}

TEST_CASE("frechet_shifted produces the once-integrated picture operator") {
    RatFunc a = rf("(-h^2+3)/24");
    DiffPoly h2 = derive_xi(kdv::k2(a));
    LinDiffOp op = frechet_shifted(h2, 1);
    REQUIRE(op.coeffs().count(0) == 1);
    CHECK(op.coeffs().at(0) == jet(1, 2).scaled(rf("-3/2")));
    CHECK(op.coeffs().at(1) == jet(1, 1).scaled(rf("-3/2")));
    CHECK(op.coeffs().at(3) == DiffPoly::constant(a));
}

TEST_CASE("apply_op") {
    LinDiffOp id;
    id.add(0, DiffPoly::constant(rf("1")));
    DiffPoly p = jet(1, 2) * jet(1, 1);
    CHECK(id.apply(p) == p);
    CHECK(LinDiffOp().apply(p).is_zero());

    RatFunc a = rf("(-h^2+3)/24");
    LinDiffOp op = frechet(kdv::k2(a), 1);
    DiffPoly v = jet(2, 1);
    CHECK(op.apply(v) == jet(2, 4).scaled(a) + (jet(1, 1) * jet(2, 2)).scaled(rf("-3/2")));
}

TEST_CASE("evolutionary derivation: definition and Leibniz") {
    RatFunc a = rf("(-h^2+3)/24");
    DiffPoly k2 = kdv::k2(a);
    std::map<int, DiffPoly> flows{{1, k2}};
    CHECK(evolutionary_derive(jet(1, 1), flows) == derive_xi(k2));
    CHECK(evolutionary_derive(jet(1, 1) * jet(1, 1), flows) ==
          (jet(1, 1) * derive_xi(k2)).scaled(rf("2")));
    CHECK_THROWS_AS(evolutionary_derive(jet(2, 1), flows), MissingFlow);
}

TEST_CASE("evolutionary derivation commutes with derive_xi") {
    RatFunc a = rf("(-h^2+3)/24");
    std::map<int, DiffPoly> flows{{1, kdv::k2(a)}, {2, jet(1, 2) * jet(2, 1)}};
    DiffPoly p = jet(1, 1) * jet(2, 2) + jet(1, 3).scaled(rf("h"));
    CHECK(derive_xi(evolutionary_derive(p, flows)) ==
          evolutionary_derive(derive_xi(p), flows));
}

TEST_CASE("hierarchy flows commute exactly as derivations") {
    RatFunc a = rf("(-h^2+3)/24");
    DiffPoly k2 = kdv::flow(2, a, a);
    DiffPoly k3 = kdv::flow(3, rf("-(h^4-30*h^2-15)/1920"), a);
    std::map<int, DiffPoly> f2{{1, k2}}, f3{{1, k3}};
    DiffPoly u1 = jet(1, 1);
    DiffPoly lhs = evolutionary_derive(evolutionary_derive(u1, f2), f3);
    DiffPoly rhs = evolutionary_derive(evolutionary_derive(u1, f3), f2);
    CHECK(lhs == rhs);
}

TEST_CASE("grammar round trip") {
    for (const char* s :
         {"D1[phi,1]", "D2[phi,1]^2", "((-5*h^2+7)/64)*D2[phi,1]^2",
          "((-h^2+3)/24)*D3[phi,1]-(3/4)*D1[phi,1]^2", "(1/2)*D1[phi,2]*D3[phi,1]^2", "0",
          "(h/2)*D4[phi,3]+D1[phi,1]-(7)*D2[phi,2]"}) {
        DiffPoly p = dp(s);
        CHECK(DiffPoly::parse(p.str()) == p);
    }
    // the rendered form of the example coefficient is canonical
    CHECK(dp("(-(5*h^2-7)/64)*D2[phi,1]^2").str() == "((-5*h^2+7)/64)*D2[phi,1]^2");
}

TEST_CASE("canonical monomial order: graded, then level and order descending") {
    DiffPoly p = jet(1, 1) * jet(1, 3) + jet(1, 4).scaled(rf("2")) + jet(2, 1) * jet(1, 1);
    CHECK(p.str() == DiffPoly::parse(p.str()).str());
    auto it = p.terms().begin();
    CHECK(it->first == DiffMonomial::jet(1, 4));                        // degree 5 first
    ++it;
    CHECK(it->first == DiffMonomial::jet(2, 1).times(JetVar{1, 1}, 1)); // then level 2
    ++it;
    CHECK(it->first == DiffMonomial::jet(1, 3).times(JetVar{1, 1}, 1));
}

TEST_SUITE_END();
