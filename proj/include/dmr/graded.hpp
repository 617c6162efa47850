#pragma once

#include "dmr/jets.hpp"
#include "dmr/linsolve.hpp"

#include <memory>

namespace dmr {

/// Ordered monomial basis of the space of differential monomials of total
/// degree `degree` in jets of level <= max_level (order >= 1 throughout).
struct GradedBasis {
    int degree = 0;
    int max_level = 0;
    std::vector<DiffMonomial> monomials;
    std::map<DiffMonomial, int, MonoLess> index;

    int dim() const { return static_cast<int>(monomials.size()); }
};

/// Enumeration by integer partitions of the degree into parts >= 2, each
/// part d realized as any jet with order + 2*level - 1 = d. Results are
/// cached; the cache is safe for concurrent readers.
std::shared_ptr<const GradedBasis> basis(int degree, int max_level);

int dim(int degree, int max_level);

/// Exact coordinates of a homogeneous polynomial; throws NotInSpace when a
/// term falls outside the basis.
linsolve::Vec coords(const DiffPoly& p, const GradedBasis& b);
DiffPoly from_coords(const linsolve::Vec& v, const GradedBasis& b);

} // namespace dmr
