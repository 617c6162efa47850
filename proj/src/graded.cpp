#include "dmr/graded.hpp"
#include "dmr/errors.hpp"

#include <mutex>

namespace dmr {

namespace {

// all jets of a given formal degree with level <= r
std::vector<JetVar> jets_of_degree(int d, int r) {
    std::vector<JetVar> out;
    for (int level = 1; level <= r && 2 * level <= d; ++level) {
        int order = d - 2 * level + 1;
        if (order >= 1) out.push_back(JetVar{level, order});
    }
    return out;
}

void enumerate(int remaining, int max_part, int r, std::vector<std::pair<JetVar, int>>& stack,
               std::vector<DiffMonomial>& out) {
    if (remaining == 0) {
        DiffMonomial m;
        for (const auto& [v, e] : stack) m = m.times(v, e);
        out.push_back(m);
        return;
    }
    for (int d = std::min(remaining, max_part); d >= 2; --d) {
        for (const JetVar& v : jets_of_degree(d, r)) {
            // keep parts non-increasing in (degree, canonical factor order)
            if (!stack.empty()) {
                const JetVar& prev = stack.back().first;
                if (prev.degree() == d && JetVar::factor_before(v, prev)) continue;
            }
            if (!stack.empty() && stack.back().first == v) {
                stack.back().second++;
                enumerate(remaining - d, d, r, stack, out);
                stack.back().second--;
            } else {
                stack.push_back({v, 1});
                enumerate(remaining - d, d, r, stack, out);
                stack.pop_back();
            }
        }
    }
}

std::mutex cache_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const GradedBasis>> cache;

} // namespace

std::shared_ptr<const GradedBasis> basis(int degree, int max_level) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({degree, max_level});
        if (it != cache.end()) return it->second;
    }
    auto b = std::make_shared<GradedBasis>();
    b->degree = degree;
    b->max_level = max_level;
    std::vector<std::pair<JetVar, int>> stack;
    enumerate(degree, degree, max_level, stack, b->monomials);
    std::sort(b->monomials.begin(), b->monomials.end(), DiffMonomial::less);
    for (size_t i = 0; i < b->monomials.size(); ++i)
        b->index[b->monomials[i]] = static_cast<int>(i);
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.try_emplace({degree, max_level}, b);
    return it->second;
}

int dim(int degree, int max_level) { return basis(degree, max_level)->dim(); }

linsolve::Vec coords(const DiffPoly& p, const GradedBasis& b) {
    linsolve::Vec v(b.monomials.size(), RatFunc());
    for (const auto& [m, c] : p.terms()) {
        auto it = b.index.find(m);
        if (it == b.index.end())
            throw NotInSpace("monomial " + m.str() + " not in basis of degree " +
                             std::to_string(b.degree) + ", level <= " +
                             std::to_string(b.max_level));
        v[it->second] = c;
    }
    return v;
}

DiffPoly from_coords(const linsolve::Vec& v, const GradedBasis& b) {
    if (v.size() != b.monomials.size())
        throw NotInSpace("coordinate vector length mismatch");
    DiffPoly p;
    for (size_t i = 0; i < v.size(); ++i) p.add_term(b.monomials[i], v[i]);
    return p;
}

} // namespace dmr
