#include "dmr/linsolve.hpp"
#include "dmr/errors.hpp"

#include <algorithm>
#include <cassert>

namespace dmr::linsolve {

namespace {

void eliminate_column_serial(Mat& m, int pr, int pc) {
    const int rows = static_cast<int>(m.size());
    for (int i = 0; i < rows; ++i) {
        if (i == pr || m[i][pc].is_zero()) continue;
        RatFunc f = m[i][pc];
        const int cols = static_cast<int>(m[i].size());
        for (int j = 0; j < cols; ++j) {
            if (m[pr][j].is_zero()) continue;
            m[i][j] = m[i][j] - f * m[pr][j];
        }
    }
}

void eliminate_column_omp(Mat& m, int pr, int pc) {
    const int rows = static_cast<int>(m.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < rows; ++i) {
        if (i == pr || m[i][pc].is_zero()) continue;
        RatFunc f = m[i][pc];
        const int cols = static_cast<int>(m[i].size());
        for (int j = 0; j < cols; ++j) {
            if (m[pr][j].is_zero()) continue;
            m[i][j] = m[i][j] - f * m[pr][j];
        }
    }
}

} // namespace

std::vector<int> rref(Mat& m, bool parallel) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int pr = 0;
    for (int pc = 0; pc < cols && pr < rows; ++pc) {
        // lowest-degree pivot, ties by row index
        int best = -1;
        int best_deg = 0;
        for (int i = pr; i < rows; ++i) {
            if (m[i][pc].is_zero()) continue;
            int deg = m[i][pc].total_degree();
            if (best < 0 || deg < best_deg) {
                best = i;
                best_deg = deg;
            }
        }
        if (best < 0) continue;
        std::swap(m[pr], m[best]);
        RatFunc inv = m[pr][pc].inverse();
        for (auto& x : m[pr])
            if (!x.is_zero()) x = x * inv;
        if (parallel)
            eliminate_column_omp(m, pr, pc);
        else
            eliminate_column_serial(m, pr, pc);
        pivots.push_back(pc);
        ++pr;
    }
    return pivots;
}

int rank(Mat m, bool parallel) { return static_cast<int>(rref(m, parallel).size()); }

int rank(const LinSystem& sys, bool parallel) { return rank(sys.a, parallel); }

Mat transpose(const Mat& m) {
    if (m.empty()) return {};
    Mat t(m[0].size(), Vec(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

Mat nullspace(Mat m) {
    if (m.empty()) return {};
    const int cols = static_cast<int>(m[0].size());
    std::vector<int> pivots = rref(m);
    std::vector<int> pivot_of_col(cols, -1);
    for (size_t k = 0; k < pivots.size(); ++k) pivot_of_col[pivots[k]] = static_cast<int>(k);
    Mat basis;
    for (int j = 0; j < cols; ++j) {
        if (pivot_of_col[j] >= 0) continue;
        Vec v(cols, RatFunc());
        v[j] = RatFunc::from_int(1);
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

Mat cokernel(const Mat& m) { return nullspace(transpose(m)); }

Vec mat_vec(const Mat& m, const Vec& v) {
    Vec out(m.size(), RatFunc());
    for (size_t i = 0; i < m.size(); ++i) {
        assert(m[i].size() == v.size());
        for (size_t j = 0; j < v.size(); ++j)
            if (!m[i][j].is_zero() && !v[j].is_zero()) out[i] += m[i][j] * v[j];
    }
    return out;
}

RatFunc normalize_constraint(const RatFunc& r) {
    if (r.is_zero()) return r;
    return RatFunc(r.num().monic(), r.den());
}

SolveResult solve(const LinSystem& sys, bool parallel) {
    SolveResult res;
    const int rows = static_cast<int>(sys.a.size());
    const int cols = rows > 0 ? static_cast<int>(sys.a[0].size())
                              : static_cast<int>(sys.col_labels.size());
    // augment with rhs so it transforms alongside
    Mat aug = sys.a;
    for (int i = 0; i < rows; ++i) aug[i].push_back(sys.rhs[i]);
    Mat work = aug;
    std::vector<int> pivots;
    {
        // run rref over the coefficient columns only
        if (!work.empty()) {
            int pr = 0;
            for (int pc = 0; pc < cols && pr < rows; ++pc) {
                int best = -1, best_deg = 0;
                for (int i = pr; i < rows; ++i) {
                    if (work[i][pc].is_zero()) continue;
                    int deg = work[i][pc].total_degree();
                    if (best < 0 || deg < best_deg) {
                        best = i;
                        best_deg = deg;
                    }
                }
                if (best < 0) continue;
                std::swap(work[pr], work[best]);
                RatFunc inv = work[pr][pc].inverse();
                for (auto& x : work[pr])
                    if (!x.is_zero()) x = x * inv;
                if (parallel)
                    eliminate_column_omp(work, pr, pc);
                else
                    eliminate_column_serial(work, pr, pc);
                pivots.push_back(pc);
                ++pr;
            }
        }
    }
    res.rank = static_cast<int>(pivots.size());

    // constraints from the canonical cokernel applied to the rhs
    Mat w = cokernel(sys.a);
    Vec residues = mat_vec(w, sys.rhs);
    for (size_t k = 0; k < residues.size(); ++k) {
        if (residues[k].is_zero()) continue;
        res.constraints.push_back(normalize_constraint(residues[k]));
        res.inconsistent_rows.push_back(static_cast<int>(k));
    }
    std::sort(res.constraints.begin(), res.constraints.end(),
              [](const RatFunc& x, const RatFunc& y) { return RatFunc::cmp(x, y) < 0; });
    res.consistent = res.constraints.empty();

    if (res.consistent) {
        res.particular.assign(cols, RatFunc());
        for (size_t k = 0; k < pivots.size(); ++k) res.particular[pivots[k]] = work[k][cols];
    }
    res.nullspace = nullspace(sys.a);
    return res;
}

} // namespace dmr::linsolve
