#pragma once

#include "dmr/jets.hpp"

#include <map>

namespace dmr::kdv {

/// Quadratic coefficient of the standard potential KdV normalization.
RatFunc standard_q();

/// Potential KdV flow: a * D3[phi,1] + q * D1[phi,1]^2 (q defaults to the
/// standard -3/4). Throws ZeroDispersion when a = 0.
DiffPoly k2(const RatFunc& a);
DiffPoly k2(const RatFunc& a, const RatFunc& q);

/// One application of the KdV recursion operator
///   L[f] = d_xi^2 f + (4q/3a) D1[phi,1] f + (2q/3a) D2[phi,1] * Int f,
/// evaluated eagerly with exact integration. At q = -3/4 this is
///   d_xi^2 f - (D1[phi,1]/a) f - (D2[phi,1]/(2a)) * Int f;
/// general q is the conjugation of the standard operator by the field
/// scaling that normalizes the quadratic coefficient.
DiffPoly recursion_apply(const DiffPoly& f, const RatFunc& a);
DiffPoly recursion_apply(const DiffPoly& f, const RatFunc& a, const RatFunc& q);

/// Hierarchy flow K_j = b_j * Int L^{j-1}[D2[phi,1]]; the linear term is
/// b_j * D(2j-1)[phi,1].
DiffPoly flow(int j, const RatFunc& b_j, const RatFunc& a);
DiffPoly flow(int j, const RatFunc& b_j, const RatFunc& a, const RatFunc& q);

/// Flow in the once-differentiated picture, H_j = d_xi K_j.
DiffPoly h_flow(int j, const RatFunc& b_j, const RatFunc& a);
DiffPoly h_flow(int j, const RatFunc& b_j, const RatFunc& a, const RatFunc& q);

/// Frechet derivative of K_j at level 1.
LinDiffOp linearize_flow(int j, const RatFunc& b_j, const RatFunc& a);
LinDiffOp linearize_flow(int j, const RatFunc& b_j, const RatFunc& a, const RatFunc& q);

/// Slow-time flow table: index m >= 2 maps to the flow polynomial and its
/// leading coefficient b_m.
struct FlowTable {
    std::map<int, std::pair<DiffPoly, RatFunc>> flows;

    void set(int m, const DiffPoly& k, const RatFunc& b) { flows[m] = {k, b}; }
    const DiffPoly& flow_poly(int m) const { return flows.at(m).first; }
    const RatFunc& b(int m) const { return flows.at(m).second; }
    bool has(int m) const { return flows.count(m) > 0; }
};

} // namespace dmr::kdv
