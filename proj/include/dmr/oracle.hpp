#pragma once

#include "dmr/jets.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace dmr::oracle {

/// Exact evaluation point: rational values for jet variables plus a
/// rational value for h.
struct JetSample {
    std::map<std::pair<int, int>, Rational> jets; // (level, order) -> value
    Rational h0 = Rational(1);
};

/// Exact rational evaluation; throws UncoveredVariable when a jet of p has
/// no sample value and PoleAtPoint when a coefficient denominator vanishes.
Rational eval_poly(const DiffPoly& p, const JetSample& s);

/// Deterministic seeded generator of small rationals for oracle trials.
class SampleGen {
  public:
    explicit SampleGen(uint64_t seed) : gen_(seed) {}
    Rational small_rational(bool nonzero = false);
    Rational h_value();
    JetSample sample_for(const DiffPoly& p);

  private:
    std::mt19937_64 gen_;
};

/// Exact first-order check of the Frechet derivative: for random jets and a
/// formal deformation parameter, p(u + theta v) - p(u) - theta * Dp[v](u)
/// must vanish modulo theta^2 (no tolerance). Returns the conjunction over
/// all trials.
bool frechet_check(const DiffPoly& p, int level, int trials, uint64_t seed);

/// Sampled commutation of the evolutionary derivations of the hierarchy
/// flows K_{j1}, K_{j2} applied in both orders to D1[phi,1].
bool commute_check(int j1, int j2, int trials, uint64_t seed);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfCheck {
    bool ok = true;
    std::vector<CheckLine> lines;
};

/// Full oracle suite (Frechet trials on flows and forcings, exact
/// integrate/derive round trips, kernel identities, hierarchy commutation,
/// rank specialization cross-checks).
SelfCheck run_selfcheck(uint64_t seed);

} // namespace dmr::oracle
