#pragma once

#include "dmr/compat.hpp"
#include "dmr/pipeline.hpp"

#include <optional>
#include <string>

namespace dmr::report {

/// Deterministic JSON document: fixed key order, exact coefficients as
/// canonical strings, no timing or environment data.
std::string render_json(const pipeline::ReducedSystem& rs,
                        const std::vector<compat::ObstructionReport>& chain,
                        const std::optional<compat::Verdict>& verdict);

std::string render_text(const pipeline::ReducedSystem& rs,
                        const std::vector<compat::ObstructionReport>& chain,
                        const std::optional<compat::Verdict>& verdict);

} // namespace dmr::report
