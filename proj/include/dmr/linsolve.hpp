#pragma once

#include "dmr/ratfunc.hpp"

#include <string>
#include <vector>

namespace dmr::linsolve {

using Vec = std::vector<RatFunc>;
using Mat = std::vector<Vec>;

/// Inhomogeneous linear system over Q(h). Labels are carried for reporting
/// and never influence the arithmetic.
struct LinSystem {
    Mat a;
    Vec rhs;
    std::vector<std::string> col_labels;
    std::vector<std::string> row_labels;
};

struct SolveResult {
    int rank = 0;
    bool consistent = true;
    Vec particular;                      // free variables set to zero
    Mat nullspace;                       // canonical right null space basis
    Vec constraints;                     // normalized residues of inconsistent rows
    std::vector<int> inconsistent_rows;  // indices into the cokernel basis
};

/// Reduce to reduced row echelon form in place; returns pivot column indices.
/// The serial and OpenMP kernels produce identical output (exact arithmetic,
/// row updates independent); `parallel` selects the OpenMP one.
std::vector<int> rref(Mat& m, bool parallel = false);

int rank(Mat m, bool parallel = false);
int rank(const LinSystem& sys, bool parallel = false);

/// Exact Gaussian elimination. Pivots are chosen by lowest numerator plus
/// denominator degree to contain expression swell. Inconsistency is data:
/// each row that reduces to 0 = r with r != 0 yields a constraint.
SolveResult solve(const LinSystem& sys, bool parallel = false);

Mat transpose(const Mat& m);
Mat nullspace(Mat m);
/// Canonical left null space basis (null space of the transpose).
Mat cokernel(const Mat& m);

Vec mat_vec(const Mat& m, const Vec& v);

/// Scale so numerator and denominator are monic; canonical representative
/// of a constraint up to nonzero scalar multiples.
RatFunc normalize_constraint(const RatFunc& r);

} // namespace dmr::linsolve
