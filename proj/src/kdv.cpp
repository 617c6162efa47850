#include "dmr/kdv.hpp"
#include "dmr/errors.hpp"

namespace dmr::kdv {

RatFunc standard_q() { return RatFunc::parse("-3/4"); }

DiffPoly k2(const RatFunc& a) { return k2(a, standard_q()); }

DiffPoly k2(const RatFunc& a, const RatFunc& q) {
    if (a.is_zero()) throw ZeroDispersion("k2 requires a != 0");
    DiffPoly p = DiffPoly::jet(1, 3).scaled(a);
    p.add_term(DiffMonomial::jet(1, 1, 2), q);
    return p;
}

DiffPoly recursion_apply(const DiffPoly& f, const RatFunc& a) {
    return recursion_apply(f, a, standard_q());
}

DiffPoly recursion_apply(const DiffPoly& f, const RatFunc& a, const RatFunc& q) {
    if (f.is_zero()) return f;
    if (a.is_zero()) throw ZeroDispersion("recursion operator requires a != 0");
    RatFunc four_thirds = RatFunc::parse("4/3");
    RatFunc two_thirds = RatFunc::parse("2/3");
    DiffPoly integral = integrate_xi(f);
    DiffPoly r = derive_xi(f, 2);
    r = r + DiffPoly::jet(1, 1).scaled(four_thirds * q / a) * f;
    r = r + DiffPoly::jet(1, 2).scaled(two_thirds * q / a) * integral;
    return r;
}

DiffPoly flow(int j, const RatFunc& b_j, const RatFunc& a) {
    return flow(j, b_j, a, standard_q());
}

DiffPoly flow(int j, const RatFunc& b_j, const RatFunc& a, const RatFunc& q) {
    if (b_j.is_zero()) return DiffPoly();
    DiffPoly f = DiffPoly::jet(1, 2);
    for (int i = 0; i < j - 1; ++i) f = recursion_apply(f, a, q);
    return integrate_xi(f).scaled(b_j);
}

DiffPoly h_flow(int j, const RatFunc& b_j, const RatFunc& a) {
    return h_flow(j, b_j, a, standard_q());
}

DiffPoly h_flow(int j, const RatFunc& b_j, const RatFunc& a, const RatFunc& q) {
    return derive_xi(flow(j, b_j, a, q));
}

LinDiffOp linearize_flow(int j, const RatFunc& b_j, const RatFunc& a) {
    return linearize_flow(j, b_j, a, standard_q());
}

LinDiffOp linearize_flow(int j, const RatFunc& b_j, const RatFunc& a, const RatFunc& q) {
    return frechet(flow(j, b_j, a, q), 1);
}

} // namespace dmr::kdv
