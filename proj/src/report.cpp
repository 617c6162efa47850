#include "dmr/report.hpp"
#include "dmr/graded.hpp"

#include <json.hpp>

#include <sstream>

namespace dmr::report {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json forcing_list(const DiffPoly& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& [m, c] : p.terms()) {
        ordered_json e;
        e["monomial"] = m.str();
        e["coeff"] = c.str();
        arr.push_back(e);
    }
    return arr;
}

ordered_json obstruction_json(const compat::ObstructionReport& rep) {
    ordered_json o;
    o["stage"] = rep.stage;
    o["n_unknowns"] = rep.n_unknowns;
    o["n_equations"] = rep.n_equations;
    o["rank"] = rep.rank;
    o["n_forcing_coords"] = rep.n_forcing_coords;
    o["n_conditions"] = rep.n_conditions;
    o["n_raw_rows"] = rep.n_raw_rows;
    ordered_json forms = ordered_json::array();
    for (const auto& row : rep.condition_forms) {
        std::string s;
        for (size_t j = 0; j < row.size(); ++j) {
            if (row[j].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + row[j].str() + ")*c[" + rep.forcing_labels[j] + "]";
        }
        forms.push_back(s.empty() ? "0" : s);
    }
    o["conditions"] = forms;
    ordered_json values = ordered_json::array();
    for (const auto& v : rep.condition_values) values.push_back(v.str());
    o["constraints"] = values;
    o["satisfied"] = rep.satisfied;
    return o;
}

} // namespace

std::string render_json(const pipeline::ReducedSystem& rs,
                        const std::vector<compat::ObstructionReport>& chain,
                        const std::optional<compat::Verdict>& verdict) {
    ordered_json j;
    j["model"] = rs.name;
    j["order"] = rs.max_order;
    j["c_sign"] = rs.signs.c_sign;
    j["sigma"] = rs.signs.sigma;
    j["zeta_sq"] = rs.zeta_sq.str();
    j["zeta_equals_h"] = rs.signs.zeta_equals_h;
    j["c"] = rs.c.str();
    j["a"] = rs.a.str();
    ordered_json b;
    ordered_json flows;
    for (const auto& [m, entry] : rs.flows.flows) {
        b[std::to_string(m)] = entry.second.str();
        flows[std::to_string(m)] = entry.first.str();
    }
    j["b"] = b;
    j["flows"] = flows;
    j["nu1_relation"] = {{"dt1_phi1_coeff", rs.eps2.dt1_phi1_coeff.str()}};
    ordered_json forcing;
    if (rs.stage7) {
        forcing["f_t2"] = forcing_list(rs.stage7->f_t2);
        j["stage7"] = {{"normalization", rs.stage7->normalization.str()},
                       {"t3_coupling", rs.stage7->t3_coupling.str()},
                       {"pre_absorption_rhs", rs.stage7->pre_absorption_rhs.str()},
                       {"b3", rs.stage7->b3.str()}};
    }
    if (rs.stage9) {
        forcing["f_t3"] = forcing_list(rs.stage9->f_t3);
        forcing["g_t2"] = forcing_list(rs.stage9->g_t2);
        j["stage9"] = {{"normalization", rs.stage9->normalization.str()},
                       {"t4_coupling", rs.stage9->t4_coupling.str()},
                       {"b4", rs.stage9->b4.str()}};
    }
    j["forcing"] = forcing;
    ordered_json obs = ordered_json::array();
    for (const auto& rep : chain) obs.push_back(obstruction_json(rep));
    j["obstruction"] = obs;
    j["dims"] = {{"P6_1", dim(6, 1)},
                 {"P9_2", dim(9, 2)},
                 {"P11_2_computed", dim(11, 2)},
                 {"P11_2_cited", 31},
                 {"note", "raw enumeration with jet order >= 1; the cited 31 matches the "
                          "count without the two linear monomials"}};
    j["verdict"] = verdict ? compat::verdict_name(*verdict) : "NOT_CHECKED";
    return j.dump(2) + "\n";
}

std::string render_text(const pipeline::ReducedSystem& rs,
                        const std::vector<compat::ObstructionReport>& chain,
                        const std::optional<compat::Verdict>& verdict) {
    std::ostringstream os;
    os << "model: " << rs.name << "   order: " << rs.max_order
       << "   sigma: " << rs.signs.sigma << "   c_sign: " << rs.signs.c_sign << "\n";
    os << "zeta^2 = " << rs.zeta_sq.str() << "   c = " << rs.c.str() << "\n";
    os << "eps^2:  nu^(1) = (" << rs.eps2.dt1_phi1_coeff.str() << ")*dt1 phi^(1)\n";
    os << "a = " << rs.a.str() << "\n";
    if (rs.stage5)
        os << "eps^5:  dt2 phi^(1) = " << rs.stage5->k2.str() << "\n";
    if (rs.stage7) {
        os << "eps^7:  dt2 phi^(2) - K2'(phi^(1)) phi^(2) = -dt3 phi^(1) + rhs\n";
        os << "        rhs = " << rs.stage7->pre_absorption_rhs.str() << "\n";
        os << "        b3 = " << rs.stage7->b3.str() << "\n";
        os << "        f_t2 = " << rs.stage7->f_t2.str() << " ("
           << rs.stage7->f_t2.support_size() << " monomials)\n";
    }
    if (rs.stage9) {
        os << "eps^9:  dt2 D1[phi,3] - H2'(D1[phi,1]) D1[phi,3] = g_t2\n";
        os << "        b4 = " << rs.stage9->b4.str() << "\n";
        os << "        f_t3 = " << rs.stage9->f_t3.str() << "\n";
        os << "        g_t2 = " << rs.stage9->g_t2.str() << " ("
           << rs.stage9->g_t2.support_size() << " monomials)\n";
    }
    for (const auto& rep : chain) {
        os << rep.stage << ": unknowns " << rep.n_unknowns << ", equations " << rep.n_equations
           << ", rank " << rep.rank << ", conditions " << rep.n_conditions << " (raw "
           << rep.n_raw_rows << ")"
           << ", satisfied " << (rep.satisfied ? "yes" : "no") << "\n";
        for (size_t i = 0; i < rep.condition_values.size(); ++i)
            os << "  condition " << i + 1 << " value: " << rep.condition_values[i].str() << "\n";
    }
    os << "dim P_6^(1) = " << dim(6, 1) << ", dim P_9^(2) = " << dim(9, 2)
       << ", dim P_11^(2) = " << dim(11, 2) << " (cited value 31; see README)\n";
    if (verdict) os << "verdict: " << compat::verdict_name(*verdict) << "\n";
    return os.str();
}

} // namespace dmr::report
