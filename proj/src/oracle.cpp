#include "dmr/oracle.hpp"
#include "dmr/compat.hpp"
#include "dmr/errors.hpp"
#include "dmr/graded.hpp"
#include "dmr/kdv.hpp"
#include "dmr/linsolve.hpp"
#include "dmr/pipeline.hpp"
#include "dmr/series.hpp"

#include <algorithm>

namespace dmr::oracle {

Rational eval_poly(const DiffPoly& p, const JetSample& s) {
    Rational acc(0);
    for (const auto& [m, c] : p.terms()) {
        Rational term = c.eval_at(s.h0);
        for (const auto& [v, e] : m.factors()) {
            auto it = s.jets.find({v.level, v.order});
            if (it == s.jets.end())
                throw UncoveredVariable("no sample value for D" + std::to_string(v.order) +
                                        "[phi," + std::to_string(v.level) + "]");
            for (int i = 0; i < e; ++i) term *= it->second;
        }
        acc += term;
    }
    return acc;
}

Rational SampleGen::small_rational(bool nonzero) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    while (true) {
        Rational q(num(gen_), den(gen_));
        q.canonicalize();
        if (!nonzero || q != 0) return q;
    }
}

Rational SampleGen::h_value() {
    // denominators in the engine have roots at small algebraic points;
    // larger random numerators keep the samples clear of them
    std::uniform_int_distribution<int> num(2, 97);
    std::uniform_int_distribution<int> den(1, 7);
    Rational q(num(gen_), den(gen_));
    q.canonicalize();
    return q;
}

JetSample SampleGen::sample_for(const DiffPoly& p) {
    JetSample s;
    s.h0 = h_value();
    for (const auto& [m, c] : p.terms())
        for (const auto& [v, e] : m.factors())
            if (!s.jets.count({v.level, v.order}))
                s.jets[{v.level, v.order}] = small_rational();
    return s;
}

namespace {

// evaluate p with the level-of-interest jets deformed to u + theta*v;
// returns a polynomial in theta
HPoly eval_theta(const DiffPoly& p, int level, const JetSample& u,
                 const std::map<int, Rational>& v, const Rational& h0) {
    HPoly acc;
    for (const auto& [m, c] : p.terms()) {
        HPoly term(c.eval_at(h0));
        for (const auto& [var, e] : m.factors()) {
            Rational base = u.jets.at({var.level, var.order});
            HPoly factor(base);
            if (var.level == level) {
                auto it = v.find(var.order);
                Rational dir = it == v.end() ? Rational(0) : it->second;
                factor = factor + HPoly::h(1).scaled(dir); // h stands in for theta here
            }
            for (int i = 0; i < e; ++i) term = term * factor;
        }
        acc = acc + term;
    }
    return acc;
}

} // namespace

bool frechet_check(const DiffPoly& p, int level, int trials, uint64_t seed) {
    SampleGen gen(seed);
    LinDiffOp dp = frechet(p, level);
    for (int t = 0; t < trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            JetSample u = gen.sample_for(p);
            std::map<int, Rational> v;
            for (const auto& [m, c] : p.terms())
                for (const auto& [var, e] : m.factors())
                    if (var.level == level && !v.count(var.order))
                        v[var.order] = gen.small_rational();
            try {
                HPoly full = eval_theta(p, level, u, v, u.h0);
                Rational at_zero = eval_poly(p, u);
                Rational linear(0);
                for (const auto& [k, coeff] : dp.coeffs()) {
                    auto it = v.find(k);
                    Rational dir = it == v.end() ? Rational(0) : it->second;
                    linear += eval_poly(coeff, u) * dir;
                }
                // remainder must have theta-valuation >= 2
                if (full[0] != at_zero) return false;
                if (full[1] != linear) return false;
                break;
            } catch (const PoleAtPoint&) {
                if (attempt > 32) throw;
            }
        }
    }
    return true;
}

bool commute_check(int j1, int j2, int trials, uint64_t seed) {
    RatFunc a = RatFunc::parse("(-h^2+3)/24");
    DiffPoly k_a = kdv::flow(j1, RatFunc::from_int(1), a);
    DiffPoly k_b = kdv::flow(j2, RatFunc::from_int(1), a);
    std::map<int, DiffPoly> fa{{1, k_a}};
    std::map<int, DiffPoly> fb{{1, k_b}};
    DiffPoly u1 = DiffPoly::jet(1, 1);
    DiffPoly ab = evolutionary_derive(evolutionary_derive(u1, fa), fb);
    DiffPoly ba = evolutionary_derive(evolutionary_derive(u1, fb), fa);
    DiffPoly diff = ab - ba;
    SampleGen gen(seed);
    for (int t = 0; t < trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            JetSample s = gen.sample_for(diff);
            try {
                if (eval_poly(diff, s) != 0) return false;
                break;
            } catch (const PoleAtPoint&) {
                if (attempt > 32) throw;
            }
        }
    }
    return true;
}

namespace {

DiffPoly random_homogeneous(SampleGen& gen, int degree, int max_level,
                            std::mt19937_64& aux) {
    auto b = basis(degree, max_level);
    DiffPoly p;
    std::uniform_int_distribution<int> keep(0, 1);
    for (const auto& m : b->monomials)
        if (keep(aux)) p.add_term(m, RatFunc::from_rational(gen.small_rational()));
    if (p.is_zero() && b->dim() > 0)
        p.add_term(b->monomials[0], RatFunc::from_rational(gen.small_rational(true)));
    return p;
}

bool rank_specialization_check(uint64_t seed, int n_points) {
    std::mt19937_64 aux(seed);
    SampleGen gen(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<int> dim_rows(3, 6), dim_cols(3, 6), deg(0, 2),
        coin(0, 3);
    for (int trial = 0; trial < 4; ++trial) {
        linsolve::Mat m(dim_rows(aux), linsolve::Vec(dim_cols(aux), RatFunc()));
        for (auto& row : m)
            for (auto& x : row) {
                if (coin(aux) == 0) continue;
                std::vector<Rational> cn(deg(aux) + 1), cd(deg(aux) + 1);
                for (auto& c : cn) c = gen.small_rational();
                for (auto& c : cd) c = gen.small_rational();
                cd.back() = gen.small_rational(true);
                x = RatFunc(HPoly(cn), HPoly(cd));
            }
        int symbolic = linsolve::rank(m);
        for (int p = 0; p < n_points; ++p) {
            for (int attempt = 0;; ++attempt) {
                Rational h0 = gen.h_value();
                try {
                    linsolve::Mat spec(m.size(), linsolve::Vec(m[0].size(), RatFunc()));
                    for (size_t i = 0; i < m.size(); ++i)
                        for (size_t j = 0; j < m[0].size(); ++j)
                            spec[i][j] = RatFunc::from_rational(m[i][j].eval_at(h0));
                    if (linsolve::rank(spec) != symbolic) return false;
                    break;
                } catch (const PoleAtPoint&) {
                    if (attempt > 32) throw;
                }
            }
        }
    }
    return true;
}

bool trig_identity_check() {
    using namespace series;
    RatFunc z = RatFunc::h(2);
    EpsSeries b = beta(+1, 9, z);
    EpsSeries s = compose(AnalyticKernel::sin(), b);
    EpsSeries c = compose(AnalyticKernel::cos(), b);
    EpsSeries lhs = s * s + c * c;
    EpsSeries one(9, z);
    one.add(0, ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1))));
    for (int k = 0; k <= 9; ++k)
        if (!(lhs.at(k) == one.at(k))) return false;
    return true;
}

bool integrate_round_trip(uint64_t seed, int trials) {
    std::mt19937_64 aux(seed);
    SampleGen gen(seed ^ 0xa5a5a5a5ull);
    std::uniform_int_distribution<int> degree(2, 10), level(1, 2);
    for (int t = 0; t < trials; ++t) {
        DiffPoly p = random_homogeneous(gen, degree(aux), level(aux), aux);
        if (integrate_xi(derive_xi(p)) != p) return false;
    }
    return true;
}

} // namespace

SelfCheck run_selfcheck(uint64_t seed) {
    SelfCheck out;
    auto add = [&out](const std::string& name, bool pass, const std::string& detail = "") {
        out.lines.push_back({name, pass, detail});
        out.ok = out.ok && pass;
    };

    RatFunc a = RatFunc::parse("(-h^2+3)/24");
    DiffPoly k2 = kdv::k2(a);
    DiffPoly k3 = kdv::flow(3, RatFunc::parse("-(h^4-30*h^2-15)/1920"), a);
    add("frechet_check K2 (100 trials)", frechet_check(k2, 1, 100, seed));
    add("frechet_check K3 (100 trials)", frechet_check(k3, 1, 100, seed + 1));

    pipeline::Config cfg;
    cfg.model = pipeline::Model::DNLS;
    cfg.max_order = 9;
    auto rs = pipeline::reduce(cfg);
    add("frechet_check f_t2 (100 trials)", frechet_check(rs.stage7->f_t2, 1, 100, seed + 2));
    add("frechet_check g_t2 level 1 (100 trials)",
        frechet_check(rs.stage9->g_t2, 1, 100, seed + 3));
    add("frechet_check g_t2 level 2 (100 trials)",
        frechet_check(rs.stage9->g_t2, 2, 100, seed + 4));

    add("integrate_xi . derive_xi identity (100 polynomials)",
        integrate_round_trip(seed + 5, 100));
    add("sin^2 + cos^2 = 1 through eps^9", trig_identity_check());

    add("commute_check (2,3)", commute_check(2, 3, 8, seed + 6));
    add("commute_check (2,4)", commute_check(2, 4, 8, seed + 7));
    add("commute_check (3,4)", commute_check(3, 4, 8, seed + 8));

    add("linsolve rank specialization (5 points)",
        rank_specialization_check(seed + 9, 5));
    return out;
}

} // namespace dmr::oracle
