#include "dmr/compat.hpp"
#include "dmr/errors.hpp"
#include "dmr/kdv.hpp"

#include <cassert>

namespace dmr::compat {

namespace {

linsolve::Vec image_coords(const DiffPoly& p, const GradedBasis& target) {
    return coords(p, target);
}

DiffPoly side_apply(const DiffPoly& p, const std::map<int, DiffPoly>& flows,
                    const LinDiffOp& lin) {
    return evolutionary_derive(p, flows) - lin.apply(p);
}

} // namespace

CompatBuild build_compat(const DiffPoly& g_known,
                         const std::vector<DiffMonomial>& forcing_support, int max_level,
                         const std::map<int, DiffPoly>& flows_t2, const LinDiffOp& l2,
                         const std::map<int, DiffPoly>& flows_t3, const LinDiffOp& l3) {
    auto deg = g_known.homogeneous_degree();
    if (!deg) throw NotInSpace("forcing must be homogeneous");
    CompatBuild out;
    out.unknown_basis = basis(*deg + 2, max_level);
    out.target_basis = basis(*deg + 5, max_level);
    out.forcing_support = forcing_support;

    const int rows = out.target_basis->dim();
    out.a.assign(rows, linsolve::Vec(out.unknown_basis->dim(), RatFunc()));
    for (int j = 0; j < out.unknown_basis->dim(); ++j) {
        DiffPoly y = DiffPoly::monomial(out.unknown_basis->monomials[j], RatFunc::from_int(1));
        linsolve::Vec col = image_coords(side_apply(y, flows_t2, l2), *out.target_basis);
        for (int i = 0; i < rows; ++i) out.a[i][j] = col[i];
    }
    out.b.assign(rows, linsolve::Vec(forcing_support.size(), RatFunc()));
    for (size_t j = 0; j < forcing_support.size(); ++j) {
        DiffPoly z = DiffPoly::monomial(forcing_support[j], RatFunc::from_int(1));
        linsolve::Vec col = image_coords(side_apply(z, flows_t3, l3), *out.target_basis);
        for (int i = 0; i < rows; ++i) out.b[i][j] = col[i];
    }
    out.forcing_values.assign(forcing_support.size(), RatFunc());
    DiffPoly rest = g_known;
    for (size_t j = 0; j < forcing_support.size(); ++j) {
        out.forcing_values[j] = g_known.coeff(forcing_support[j]);
        rest = rest - DiffPoly::monomial(forcing_support[j], out.forcing_values[j]);
    }
    if (!rest.is_zero())
        throw NotInSpace("forcing has terms outside the declared support");
    return out;
}

CompatResult solve_compat(const DiffPoly& g_known,
                          const std::vector<DiffMonomial>& forcing_support, int max_level,
                          const std::map<int, DiffPoly>& flows_t2, const LinDiffOp& l2,
                          const std::map<int, DiffPoly>& flows_t3, const LinDiffOp& l3) {
    CompatResult res;
    res.build = build_compat(g_known, forcing_support, max_level, flows_t2, l2, flows_t3, l3);
    const CompatBuild& bd = res.build;
    res.n_unknowns = bd.unknown_basis->dim();
    res.n_equations = bd.target_basis->dim();
    res.n_forcing_coords = static_cast<int>(forcing_support.size());
    res.rank = linsolve::rank(bd.a);

    // cokernel transport: conditions on the forcing coordinates
    linsolve::Mat w = linsolve::cokernel(bd.a);
    linsolve::Mat c;
    for (const auto& row : w) {
        linsolve::Vec cr(forcing_support.size(), RatFunc());
        bool nonzero = false;
        for (size_t j = 0; j < forcing_support.size(); ++j) {
            for (size_t i = 0; i < row.size(); ++i)
                if (!row[i].is_zero() && !bd.b[i][j].is_zero()) cr[j] += row[i] * bd.b[i][j];
            if (!cr[j].is_zero()) nonzero = true;
        }
        if (nonzero) c.push_back(std::move(cr));
    }
    res.n_raw_rows = static_cast<int>(c.size());
    linsolve::rref(c);
    for (auto& row : c) {
        bool nonzero = false;
        for (auto& x : row)
            if (!x.is_zero()) nonzero = true;
        if (nonzero) res.condition_forms.push_back(row);
    }
    res.n_conditions = static_cast<int>(res.condition_forms.size());
    res.condition_values = linsolve::mat_vec(res.condition_forms, bd.forcing_values);
    res.satisfied = true;
    for (const auto& v : res.condition_values)
        if (!v.is_zero()) res.satisfied = false;

    if (res.satisfied) {
        linsolve::LinSystem sys;
        sys.a = bd.a;
        sys.rhs = linsolve::mat_vec(bd.b, bd.forcing_values);
        auto sol = linsolve::solve(sys);
        assert(sol.consistent);
        res.resolved = from_coords(sol.particular, *bd.unknown_basis);
    }
    return res;
}

DiffPoly solve_forcing_t3(const DiffPoly& f_t2, const RatFunc& a, const RatFunc& q,
                          const DiffPoly& k2, const DiffPoly& k3) {
    std::map<int, DiffPoly> flows_t2{{1, k2}};
    std::map<int, DiffPoly> flows_t3{{1, k3}};
    auto b6 = basis(6, 1);
    CompatResult res = solve_compat(f_t2, b6->monomials, 1, flows_t2, frechet(k2, 1), flows_t3,
                                    frechet(k3, 1));
    if (!res.satisfied)
        throw Eps7Unsatisfied("order-7 compatibility failed unexpectedly");
    DiffPoly f_t3 = res.resolved;
    // gauge: remove the kernel direction along the unit K4 flow so that the
    // forcing has no secular D7[phi,1] component
    RatFunc lead = f_t3.coeff(DiffMonomial::jet(1, 7));
    if (!lead.is_zero()) {
        DiffPoly k4_unit = kdv::flow(4, RatFunc::from_int(1), a, q);
        f_t3 = f_t3 - k4_unit.scaled(lead);
    }
    return f_t3;
}

// ------------------------------------------------------------- check ops

namespace {

std::vector<DiffMonomial> support_of(const DiffPoly& p) {
    std::vector<DiffMonomial> out;
    for (const auto& [m, c] : p.terms()) out.push_back(m);
    return out;
}

ObstructionReport report_from(const CompatResult& res, const pipeline::ReducedSystem& rs,
                              const std::string& stage) {
    ObstructionReport rep;
    rep.model = rs.name;
    rep.stage = stage;
    rep.n_unknowns = res.n_unknowns;
    rep.n_equations = res.n_equations;
    rep.rank = res.rank;
    rep.n_forcing_coords = res.n_forcing_coords;
    rep.n_conditions = res.n_conditions;
    rep.n_raw_rows = res.n_raw_rows;
    for (const auto& m : res.build.forcing_support) rep.forcing_labels.push_back(m.str());
    rep.condition_forms = res.condition_forms;
    rep.condition_values = res.condition_values;
    rep.satisfied = res.satisfied;
    rep.resolved = res.resolved;
    return rep;
}

} // namespace

ObstructionReport check_eps7(const pipeline::ReducedSystem& rs) {
    if (!rs.stage7)
        throw EngineError("check_eps7 requires a reduction through order 7");
    const DiffPoly& k2 = rs.flows.flow_poly(2);
    const DiffPoly& k3 = rs.flows.flow_poly(3);
    std::map<int, DiffPoly> flows_t2{{1, k2}};
    std::map<int, DiffPoly> flows_t3{{1, k3}};
    auto b6 = basis(6, 1);
    CompatResult res = solve_compat(rs.stage7->f_t2, b6->monomials, 1, flows_t2,
                                    frechet(k2, 1), flows_t3, frechet(k3, 1));
    ObstructionReport rep = report_from(res, rs, "eps7");
    if (rep.satisfied)
        rep.resolved = solve_forcing_t3(rs.stage7->f_t2, rs.a, rs.q, k2, k3);
    return rep;
}

ObstructionReport check_eps9(const pipeline::ReducedSystem& rs, const ObstructionReport& eps7) {
    if (!rs.stage9)
        throw EngineError("check_eps9 requires a reduction through order 9");
    if (!eps7.satisfied)
        throw Eps7Unsatisfied("order-9 check requires the order-7 forcing");
    const DiffPoly& k2 = rs.flows.flow_poly(2);
    const DiffPoly& k3 = rs.flows.flow_poly(3);
    const DiffPoly& f_t2 = rs.stage7->f_t2;
    const DiffPoly& f_t3 = rs.stage9->f_t3;

    std::map<int, DiffPoly> flows_t2{{1, k2}, {2, frechet(k2, 1).apply_to_field(2) + f_t2}};
    std::map<int, DiffPoly> flows_t3{{1, k3}, {2, frechet(k3, 1).apply_to_field(2) + f_t3}};
    LinDiffOp h2p = frechet_shifted(derive_xi(k2), 1);
    LinDiffOp h3p = frechet_shifted(derive_xi(k3), 1);

    CompatResult res = solve_compat(rs.stage9->g_t2, support_of(rs.stage9->g_t2), 2, flows_t2,
                                    h2p, flows_t3, h3p);
    return report_from(res, rs, "eps9");
}

std::string verdict_name(Verdict v) {
    return v == Verdict::OBSTRUCTED ? "OBSTRUCTED" : "INTEGRABLE_CONSISTENT";
}

VerdictReport verdict(const pipeline::Config& cfg) {
    VerdictReport out;
    out.reduced = pipeline::reduce(cfg);
    bool ok = true;
    if (cfg.max_order >= 7) {
        out.chain.push_back(check_eps7(out.reduced));
        ok = ok && out.chain.back().satisfied;
        if (cfg.max_order >= 9 && ok) {
            out.chain.push_back(check_eps9(out.reduced, out.chain.front()));
            ok = ok && out.chain.back().satisfied;
        }
    }
    out.verdict = ok ? Verdict::INTEGRABLE_CONSISTENT : Verdict::OBSTRUCTED;
    return out;
}

} // namespace dmr::compat
