#pragma once

#include "dmr/compat_core.hpp"
#include "dmr/pipeline.hpp"

namespace dmr::compat {

/// Outcome of one compatibility stage: system metadata, the integrability
/// conditions as linear forms over the forcing coordinates, their values at
/// the model's actual forcing, and the resolved higher forcing when the
/// system is consistent.
struct ObstructionReport {
    std::string model;
    std::string stage; // "eps7" or "eps9"
    int n_unknowns = 0;
    int n_equations = 0;
    int rank = 0;
    int n_forcing_coords = 0;
    int n_conditions = 0;
    int n_raw_rows = 0;
    std::vector<std::string> forcing_labels;
    linsolve::Mat condition_forms;
    linsolve::Vec condition_values;
    bool satisfied = false;
    DiffPoly resolved;
};

/// Compatibility of the order-eps^7 pair of evolutions of phi^(2).
ObstructionReport check_eps7(const pipeline::ReducedSystem& rs);

/// Compatibility of the order-eps^9 pair of evolutions of the third field
/// in the once-differentiated picture; requires the eps^7 report to be
/// satisfied (Eps7Unsatisfied otherwise).
ObstructionReport check_eps9(const pipeline::ReducedSystem& rs, const ObstructionReport& eps7);

enum class Verdict { INTEGRABLE_CONSISTENT, OBSTRUCTED };

std::string verdict_name(Verdict v);

struct VerdictReport {
    Verdict verdict = Verdict::INTEGRABLE_CONSISTENT;
    pipeline::ReducedSystem reduced;
    std::vector<ObstructionReport> chain;
};

/// reduce -> check_eps7 -> check_eps9 (per max_order), aggregated. A failed
/// necessary condition yields OBSTRUCTED; consistency at every checked
/// stage yields INTEGRABLE_CONSISTENT.
VerdictReport verdict(const pipeline::Config& cfg);

} // namespace dmr::compat
