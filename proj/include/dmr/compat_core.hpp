#pragma once

#include "dmr/graded.hpp"
#include "dmr/jets.hpp"
#include "dmr/linsolve.hpp"

#include <map>
#include <memory>

namespace dmr::compat {

/// Mixed slow-time compatibility system
///   [d_{t3} - L3] g_known = [d_{t2} - L2] g_unknown
/// over graded bases: the unknown ranges over the full space of degree
/// deg(g_known)+2 with the given level bound, both sides land in degree
/// deg(g_known)+5. Slow-time derivations act through the supplied
/// evolutionary flow assignments; L2, L3 act as linear differential
/// operators.
struct CompatBuild {
    std::shared_ptr<const GradedBasis> unknown_basis;
    std::shared_ptr<const GradedBasis> target_basis;
    std::vector<DiffMonomial> forcing_support; // columns of b
    linsolve::Mat a;                           // target x unknown
    linsolve::Mat b;                           // target x forcing
    linsolve::Vec forcing_values;              // actual coordinates of g_known
};

CompatBuild build_compat(const DiffPoly& g_known,
                         const std::vector<DiffMonomial>& forcing_support, int max_level,
                         const std::map<int, DiffPoly>& flows_t2, const LinDiffOp& l2,
                         const std::map<int, DiffPoly>& flows_t3, const LinDiffOp& l3);

struct CompatResult {
    int n_unknowns = 0;
    int n_equations = 0;
    int rank = 0;
    int n_forcing_coords = 0;
    /// Canonical linear forms over the forcing coordinates whose vanishing
    /// is necessary for solvability (reduced row echelon rows of the
    /// cokernel transport). n_conditions is their count; n_raw_rows counts
    /// the nonzero transported cokernel rows before reduction.
    linsolve::Mat condition_forms;
    int n_conditions = 0;
    int n_raw_rows = 0;
    /// Condition forms evaluated at the actual forcing coordinates.
    linsolve::Vec condition_values;
    bool satisfied = false;
    /// Particular solution for the unknown forcing when satisfied.
    DiffPoly resolved;
    CompatBuild build;
};

CompatResult solve_compat(const DiffPoly& g_known,
                          const std::vector<DiffMonomial>& forcing_support, int max_level,
                          const std::map<int, DiffPoly>& flows_t2, const LinDiffOp& l2,
                          const std::map<int, DiffPoly>& flows_t3, const LinDiffOp& l3);

/// Degree-8 level-1 forcing of the t3-evolution of the second field,
/// determined by the order-eps^7 compatibility condition from the t2
/// forcing. The solution is unique only modulo the kernel of [d_{t2} - K2']
/// (which contains the unit K4 hierarchy flow); the representative is
/// gauged to have no D7[phi,1] component. a, q are the potential KdV
/// coefficients of the reduction.
DiffPoly solve_forcing_t3(const DiffPoly& f_t2, const RatFunc& a, const RatFunc& q,
                          const DiffPoly& k2, const DiffPoly& k3);

} // namespace dmr::compat
