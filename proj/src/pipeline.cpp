#include "dmr/pipeline.hpp"
#include "dmr/compat_core.hpp"
#include "dmr/errors.hpp"
#include "dmr/graded.hpp"

#include <cassert>

namespace dmr::pipeline {

using series::AnalyticKernel;
using series::EpsSeries;
using series::ExtMonomial;
using series::ExtPoly;
using series::ExtVar;
using series::ZetaExt;

std::string model_name(Model m) { return m == Model::DNLS ? "dnls" : "al"; }

std::optional<Model> model_from_name(std::string_view name) {
    if (name == "dnls") return Model::DNLS;
    if (name == "al") return Model::AL;
    return std::nullopt;
}

ModelSpec madelung(Model model) {
    ModelSpec spec;
    spec.model = model;
    spec.name = model_name(model);
    const std::string sin_sum =
        "sqrt(nu[n]*nu[n+1])*sin(phi[n+1]-phi[n]) + sqrt(nu[n]*nu[n-1])*sin(phi[n-1]-phi[n])";
    const std::string cos_sum =
        "sqrt(nu[n+1]/nu[n])*cos(phi[n+1]-phi[n]) + sqrt(nu[n-1]/nu[n])*cos(phi[n-1]-phi[n])";
    if (model == Model::DNLS) {
        spec.nu_residual = "dt(nu[n]) + (1/h^2)*(" + sin_sum + ")";
        spec.phi_residual = "dt(phi[n]) + 1/h^2 - (1/(2*h^2))*(" + cos_sum + ") + sigma*nu[n]";
    } else {
        spec.nu_residual = "dt(nu[n]) + (1/h^2 - sigma*nu[n])*(" + sin_sum + ")";
        spec.phi_residual =
            "dt(phi[n]) + 1/h^2 - (1/(2*h^2) - (sigma/2)*nu[n])*(" + cos_sum + ")";
    }
    return spec;
}

// ------------------------------------------------------------- residuals

ResidualSeries build_residuals(Model model, int truncation, const RatFunc& zeta_sq, int sigma) {
    using namespace series;
    const int n = truncation;
    auto constant = [&](const RatFunc& v) {
        EpsSeries s(n, zeta_sq);
        s.add(0, ExtPoly::constant(ZetaExt::of(v)));
        return s;
    };
    const EpsSeries one = constant(RatFunc::from_int(1));
    const RatFunc inv_h2 = RatFunc::h(2).inverse();
    const RatFunc sig = RatFunc::from_int(sigma);

    EpsSeries nu_n = nu_unshifted(n, zeta_sq);
    EpsSeries nu_p = nu_shift(+1, n, zeta_sq);
    EpsSeries nu_m = nu_shift(-1, n, zeta_sq);
    EpsSeries beta_p = beta(+1, n, zeta_sq);
    EpsSeries beta_m = beta(-1, n, zeta_sq);

    EpsSeries sin_p = compose(AnalyticKernel::sin(), beta_p);
    EpsSeries sin_m = compose(AnalyticKernel::sin(), beta_m);
    EpsSeries cos_p = compose(AnalyticKernel::cos(), beta_p);
    EpsSeries cos_m = compose(AnalyticKernel::cos(), beta_m);

    EpsSeries sqrt_alpha_p = compose(AnalyticKernel::sqrt1p(), nu_n * nu_p - one);
    EpsSeries sqrt_alpha_m = compose(AnalyticKernel::sqrt1p(), nu_n * nu_m - one);
    EpsSeries sum_sin = sqrt_alpha_p * sin_p + sqrt_alpha_m * sin_m;

    EpsSeries recip_nu = nu_n.reciprocal();
    EpsSeries sqrt_gamma_p = compose(AnalyticKernel::sqrt1p(), nu_p * recip_nu - one);
    EpsSeries sqrt_gamma_m = compose(AnalyticKernel::sqrt1p(), nu_m * recip_nu - one);
    EpsSeries sum_cos = sqrt_gamma_p * cos_p + sqrt_gamma_m * cos_m;

    EpsSeries dtn = dt_nu(n, zeta_sq);
    EpsSeries dtp = dt_phi(n, zeta_sq, sigma);

    if (model == Model::DNLS) {
        EpsSeries r_nu = dtn + sum_sin.scaled(inv_h2);
        EpsSeries r_phi = dtp + constant(inv_h2) -
                          sum_cos.scaled(inv_h2 * RatFunc::from_rational(Rational(1, 2))) +
                          nu_n.scaled(sig);
        return {r_nu, r_phi};
    }
    EpsSeries r_nu = dtn + (constant(inv_h2) - nu_n.scaled(sig)) * sum_sin;
    EpsSeries r_phi =
        dtp + constant(inv_h2) -
        (constant(inv_h2 * RatFunc::from_rational(Rational(1, 2))) -
         nu_n.scaled(RatFunc::from_rational(Rational(sigma, 2)))) *
            sum_cos;
    return {r_nu, r_phi};
}

// --------------------------------------------------------------- reducer

namespace {

struct ExtVarLess {
    bool operator()(const ExtVar& x, const ExtVar& y) const { return ExtVar::less(x, y); }
};

ExtPoly embed_jets(const DiffPoly& p) {
    ExtPoly out;
    for (const auto& [m, c] : p.terms()) {
        ExtMonomial em;
        for (const auto& [v, e] : m.factors())
            em = em.times(ExtVar{ExtVar::Field::phi, v.level, v.order, {}}, e);
        out.add_term(em, ZetaExt::of(c));
    }
    return out;
}

/// Split of a fully reduced residual coefficient: linear slow-time terms
/// (single extended variable carrying a t-derivative) and the pure jet part.
struct StageSplit {
    std::map<ExtVar, RatFunc, ExtVarLess> tvars;
    DiffPoly jets;
};

class Reducer {
  public:
    explicit Reducer(const Config& cfg) : cfg_(cfg) {}

    ReducedSystem run();

  private:
    Config cfg_;
    RatFunc zeta_sq_;
    RatFunc c_;
    bool frame_ = false;
    std::optional<ResidualSeries> res_;
    std::map<int, ExtPoly> nu_defs_;
    std::map<std::pair<int, int>, DiffPoly> flows_; // (slow time m, level)

    using Memo = std::map<ExtVar, ExtPoly, ExtVarLess>;

    const RatFunc& zring() const { return zeta_sq_; }

    ExtPoly reduce_poly(const ExtPoly& p) const {
        Memo memo;
        return reduce_poly(p, memo);
    }

    ExtPoly reduce_poly(const ExtPoly& p, Memo& memo) const {
        ExtPoly out;
        for (const auto& [m, c] : p.terms()) {
            ExtPoly prod = ExtPoly::constant(c);
            for (const auto& [v, e] : m.factors()) {
                const ExtPoly& rv = reduce_var(v, memo);
                for (int i = 0; i < e; ++i) prod = prod.mul(rv, zring());
            }
            out = out + prod;
        }
        return out;
    }

    const ExtPoly& reduce_var(const ExtVar& v, Memo& memo) const {
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;
        ExtPoly out;
        int d1 = v.tder_at(1);
        if (frame_ && d1 > 0) {
            // travelling frame: d_{t1} -> -c d_xi on every slow field
            ExtVar w = v.with_tder(1, -d1).with_kappa(d1);
            out = reduce_var(w, memo).scaled(ZetaExt::of((-c_).pow(d1)), zring());
        } else if (v.kind == ExtVar::Field::nu && nu_defs_.count(v.level)) {
            ExtPoly e = nu_defs_.at(v.level);
            for (int m = 1; m <= v.top_time(); ++m)
                for (int i = 0; i < v.tder_at(m); ++i) e = e.dt(m);
            for (int i = 0; i < v.kappa; ++i) e = e.dkappa();
            out = reduce_poly(e, memo);
        } else if (v.kind == ExtVar::Field::phi && v.has_tder()) {
            int top = v.top_time();
            auto fit = flows_.find({top, v.level});
            if (fit == flows_.end()) {
                out = ExtPoly::variable(v);
            } else {
                ExtPoly e = embed_jets(fit->second);
                for (int m = 1; m <= top; ++m) {
                    int d = v.tder_at(m) - (m == top ? 1 : 0);
                    for (int i = 0; i < d; ++i) e = e.dt(m);
                }
                for (int i = 0; i < v.kappa; ++i) e = e.dkappa();
                out = reduce_poly(e, memo);
            }
        } else {
            out = ExtPoly::variable(v);
        }
        auto [mit, inserted] = memo.try_emplace(v, std::move(out));
        return mit->second;
    }

    DiffPoly to_jets(const ExtPoly& p) const {
        DiffPoly out;
        for (const auto& [m, c] : p.terms()) {
            if (!c.odd.is_zero())
                throw UnremovableSecularity("odd zeta part survives on " + m.str());
            DiffMonomial dm;
            for (const auto& [v, e] : m.factors()) {
                if (v.kind != ExtVar::Field::phi || v.has_tder() || v.kappa < 1)
                    throw UnremovableSecularity("unreduced variable " + v.str());
                dm = dm.times(JetVar{v.level, v.kappa}, e);
            }
            out.add_term(dm, c.even);
        }
        return out;
    }

    StageSplit split_stage(const ExtPoly& p) const {
        StageSplit s;
        ExtPoly jets_part;
        for (const auto& [m, c] : p.terms()) {
            bool has_t = false;
            for (const auto& [v, e] : m.factors())
                if (v.has_tder()) has_t = true;
            if (!has_t) {
                jets_part.add_term(m, c);
                continue;
            }
            if (m.factors().size() != 1 || m.factors()[0].second != 1 ||
                m.factors()[0].first.kind != ExtVar::Field::phi)
                throw UnremovableSecularity("nonlinear slow-time term " + m.str());
            if (!c.odd.is_zero())
                throw UnremovableSecularity("odd zeta part on slow-time term " + m.str());
            s.tvars[m.factors()[0].first] = c.even;
        }
        s.jets = to_jets(jets_part);
        return s;
    }

    void check_raw_parity() const {
        for (int k = 0; k <= cfg_.max_order; k += 2)
            if (!res_->r_nu.at(k).is_zero())
                throw UnremovableSecularity("amplitude residual has even order " +
                                            std::to_string(k));
        for (int k = 1; k <= cfg_.max_order; k += 2)
            if (!res_->r_phi.at(k).is_zero())
                throw UnremovableSecularity("phase residual has odd order " + std::to_string(k));
        if (!res_->r_phi.at(0).is_zero())
            throw UnremovableSecularity("background does not solve the model");
    }

    // even order 2*level: solve for nu^(level)
    void eliminate_nu(int level) {
        ExtPoly s = reduce_poly(res_->r_phi.at(2 * level));
        ExtVar bare{ExtVar::Field::nu, level, 0, {}};
        ZetaExt lam = s.coeff(ExtMonomial::var(bare));
        if (lam.is_zero() || !lam.odd.is_zero())
            throw UnremovableSecularity("no clean amplitude elimination at order " +
                                        std::to_string(2 * level));
        ExtPoly rest = s - ExtPoly::variable(bare).scaled(lam, zring());
        for (const auto& [m, c] : rest.terms())
            for (const auto& [v, e] : m.factors())
                if (v.kind == ExtVar::Field::nu)
                    throw UnremovableSecularity("stray amplitude variable " + v.str() +
                                                " at order " + std::to_string(2 * level));
        nu_defs_[level] = rest.scaled(ZetaExt::of(-lam.even.inverse()), zring());
    }

    // eps^3: wave operator; returns c^2 in the current gauge
    RatFunc dispersion_c2() const {
        ExtPoly s = reduce_poly(res_->r_nu.at(3));
        ExtVar tt = ExtVar{ExtVar::Field::phi, 1, 0, {}}.with_tder(1, 2);
        ExtVar kk{ExtVar::Field::phi, 1, 2, {}};
        ZetaExt a = s.coeff(ExtMonomial::var(tt));
        ZetaExt b = s.coeff(ExtMonomial::var(kk));
        if (a.is_zero() || b.is_zero() || !a.odd.is_zero() || !b.odd.is_zero() ||
            s.terms().size() != 2)
            throw UnremovableSecularity("unexpected structure at order 3");
        return -(b.even / a.even);
    }

    Eps2Relation eps2_relation() const {
        const ExtPoly& def = nu_defs_.at(1);
        ExtVar expect = ExtVar{ExtVar::Field::phi, 1, 0, {}}.with_tder(1, 1);
        ZetaExt c = def.coeff(ExtMonomial::var(expect));
        if (def.terms().size() != 1 || c.is_zero() || !c.odd.is_zero())
            throw UnremovableSecularity("unexpected eps^2 relation: " + def.str());
        return Eps2Relation{c.even};
    }

    Stage5 stage5() {
        ExtPoly s = reduce_poly(res_->r_nu.at(5));
        StageSplit sp = split_stage(s);
        ExtVar v21 = ExtVar{ExtVar::Field::phi, 1, 1, {}}.with_tder(2, 1);
        if (sp.tvars.size() != 1 || !sp.tvars.count(v21))
            throw UnremovableSecularity("unexpected slow-time content at order 5");
        RatFunc lam = sp.tvars.at(v21);
        DiffPoly k2 = integrate_xi(sp.jets.scaled(-lam.inverse()));
        RatFunc a = k2.coeff(DiffMonomial::jet(1, 3));
        RatFunc q = k2.coeff(DiffMonomial::jet(1, 1, 2));
        if (a.is_zero()) throw ZeroDispersion("vanishing dispersion coefficient at order 5");
        if (!(k2 == kdv::k2(a, q)))
            throw UnremovableSecularity("order-5 flow is not a potential KdV polynomial");
        flows_[{2, 1}] = k2;
        return Stage5{lam, a, q, k2};
    }

    Stage7 stage7(const RatFunc& a, const RatFunc& q, const DiffPoly& k2) {
        ExtPoly s = reduce_poly(res_->r_nu.at(7));
        StageSplit sp = split_stage(s);
        ExtVar v22 = ExtVar{ExtVar::Field::phi, 2, 1, {}}.with_tder(2, 1);
        ExtVar v31 = ExtVar{ExtVar::Field::phi, 1, 1, {}}.with_tder(3, 1);
        if (sp.tvars.size() != 2 || !sp.tvars.count(v22) || !sp.tvars.count(v31))
            throw UnremovableSecularity("unexpected slow-time content at order 7");
        RatFunc lam = sp.tvars.at(v22);
        RatFunc coupling = sp.tvars.at(v31) / lam;
        DiffPoly e = integrate_xi(sp.jets.scaled(lam.inverse()));
        DiffPoly lin2 = e.part_with_level(2);
        DiffPoly expected = frechet(k2, 1).apply_to_field(2);
        if (lin2 != -expected)
            throw UnremovableSecularity("order-7 linear part is not the Frechet flow");
        DiffPoly rhs_known = -(e.part_without_level(2));
        RatFunc b3 = rhs_known.coeff(DiffMonomial::jet(1, 5)) / coupling;
        DiffPoly k3_unit = kdv::flow(3, RatFunc::from_int(1), a, q);
        DiffPoly f_t2 = rhs_known - k3_unit.scaled(coupling * b3);
        if (!f_t2.coeff(DiffMonomial::jet(1, 5)).is_zero())
            throw UnremovableSecularity("secular D5[phi,1] term not absorbed at order 7");
        DiffPoly k3 = k3_unit.scaled(b3);
        flows_[{3, 1}] = k3;
        flows_[{2, 2}] = expected + f_t2;
        return Stage7{lam, coupling, rhs_known, b3, k3, f_t2};
    }

    Stage9 stage9(const RatFunc& a, const RatFunc& q, const DiffPoly& k2, const Stage7& st7) {
        DiffPoly f_t3 = compat::solve_forcing_t3(st7.f_t2, a, q, k2, st7.k3);
        flows_[{3, 2}] = frechet(st7.k3, 1).apply_to_field(2) + f_t3;

        ExtPoly s = reduce_poly(res_->r_nu.at(9));
        StageSplit sp = split_stage(s);
        ExtVar v23 = ExtVar{ExtVar::Field::phi, 3, 1, {}}.with_tder(2, 1);
        ExtVar v41 = ExtVar{ExtVar::Field::phi, 1, 1, {}}.with_tder(4, 1);
        if (sp.tvars.size() != 2 || !sp.tvars.count(v23) || !sp.tvars.count(v41))
            throw UnremovableSecularity("unexpected slow-time content at order 9");
        RatFunc lam = sp.tvars.at(v23);
        RatFunc coupling = sp.tvars.at(v41) / lam;
        DiffPoly p = sp.jets.scaled(lam.inverse());
        DiffPoly p3 = p.part_with_level(3);
        DiffPoly h2 = derive_xi(k2);
        DiffPoly expected = frechet_shifted(h2, 1).apply_to_field(3, 1);
        if (p3 != -expected)
            throw UnremovableSecularity("order-9 linear part is not the Frechet flow");
        DiffPoly g = -(p.part_without_level(3));
        RatFunc b4 = g.coeff(DiffMonomial::jet(1, 8)) / coupling;
        DiffPoly k4_unit = kdv::flow(4, RatFunc::from_int(1), a, q);
        DiffPoly h4_unit = derive_xi(k4_unit);
        DiffPoly g_t2 = g - h4_unit.scaled(coupling * b4);
        if (!g_t2.coeff(DiffMonomial::jet(1, 8)).is_zero())
            throw UnremovableSecularity("secular D8[phi,1] term not absorbed at order 9");
        if (g_t2.max_level() > 2)
            throw UnremovableSecularity("order-9 forcing leaks level-3 jets");
        auto deg = g_t2.homogeneous_degree();
        if (!deg || *deg != 9)
            throw UnremovableSecularity("order-9 forcing is not homogeneous of degree 9");
        DiffPoly k4 = k4_unit.scaled(b4);
        flows_[{4, 1}] = k4;
        return Stage9{lam, coupling, f_t3, b4, k4, g_t2};
    }

    bool positive_near_zero(const RatFunc& f) const {
        auto lowest = [](const HPoly& p) {
            for (int k = 0; k <= p.degree(); ++k)
                if (p[k] != 0) return p[k];
            return Rational(0);
        };
        Rational n = lowest(f.num());
        Rational d = lowest(f.den());
        return n != 0 && (n > 0) == (d > 0);
    }
};

ReducedSystem Reducer::run() {
    if (cfg_.max_order != 5 && cfg_.max_order != 7 && cfg_.max_order != 9)
        throw EngineError("max_order must be 5, 7 or 9");
    const int n = cfg_.max_order;

    // Gauge loop: the slow-space scale zeta is fixed so that the frame speed
    // is exactly +/-1 in Q(h). The first pass runs at zeta = h; the eps^3
    // coefficient then determines the gauge, and a second pass settles it.
    RatFunc z = RatFunc::h(2);
    for (int pass = 0;; ++pass) {
        res_ = build_residuals(cfg_.model, n, z, cfg_.sigma);
        check_raw_parity();
        nu_defs_.clear();
        flows_.clear();
        frame_ = false;
        eliminate_nu(1);
        RatFunc c2 = dispersion_c2();
        if (c2 == RatFunc::from_int(1)) {
            zeta_sq_ = z;
            break;
        }
        if (c2.is_zero()) throw ZeroDispersion("vanishing wave speed");
        RatFunc z_new = z / c2;
        if (!positive_near_zero(z_new))
            throw ImaginarySpeed("zeta^2 = " + z_new.str() +
                                 " is negative near h -> 0; the frame speed is imaginary" +
                                 (cfg_.sigma < 0 ? " (sigma = -1)" : ""));
        if (pass >= 1) throw EngineError("slow-space gauge did not settle");
        z = z_new;
    }

    ReducedSystem rs;
    rs.model = cfg_.model;
    rs.name = model_name(cfg_.model);
    rs.signs.sigma = cfg_.sigma;
    rs.signs.c_sign = cfg_.c_sign;
    rs.signs.zeta_equals_h = (zeta_sq_ == RatFunc::h(2));
    rs.max_order = cfg_.max_order;
    rs.zeta_sq = zeta_sq_;
    rs.eps2 = eps2_relation();

    c_ = RatFunc::from_int(cfg_.c_sign);
    frame_ = true;
    rs.c = c_;

    eliminate_nu(2);
    Stage5 st5 = stage5();
    rs.a = st5.a;
    rs.q = st5.q;
    rs.flows.set(2, st5.k2, st5.a);
    rs.stage5 = st5;
    if (cfg_.max_order >= 7) {
        eliminate_nu(3);
        Stage7 st7 = stage7(st5.a, st5.q, st5.k2);
        rs.flows.set(3, st7.k3, st7.b3);
        rs.stage7 = st7;
        if (cfg_.max_order >= 9) {
            eliminate_nu(4);
            Stage9 st9 = stage9(st5.a, st5.q, st5.k2, st7);
            rs.flows.set(4, st9.k4, st9.b4);
            rs.stage9 = st9;
        }
    }
    return rs;
}

} // namespace

ReducedSystem reduce(const Config& cfg) { return Reducer(cfg).run(); }

} // namespace dmr::pipeline
