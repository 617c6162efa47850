// Acceptance suite: one line per criterion, nonzero exit on any failure.
// argv[1] (optional) is the path to the command-line tool for the
// subprocess checks; those are skipped with a note when it is absent.

#include "dmr/compat.hpp"
#include "dmr/errors.hpp"
#include "dmr/graded.hpp"
#include "dmr/kdv.hpp"
#include "dmr/oracle.hpp"
#include "dmr/pipeline.hpp"
#include "dmr/report.hpp"
#include "dmr/series.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace dmr;
using pipeline::Config;
using pipeline::Model;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
        ok = body();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
    if (!ok && !detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

RatFunc rf(const char* s) { return RatFunc::parse(s); }

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& tool, const std::string& args) {
    std::string tmp = "acceptance_cli_out.tmp";
    std::string cmd = tool + " " + args + " > " + tmp + " 2> /dev/null";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::remove(tmp.c_str());
    return r;
}

} // namespace

int main(int argc, char** argv) {
    std::string tool = argc > 1 ? argv[1] : "";

    Config dnls9;
    dnls9.model = Model::DNLS;
    dnls9.max_order = 9;
    const pipeline::ReducedSystem rs = pipeline::reduce(dnls9);
    const compat::ObstructionReport eps7 = compat::check_eps7(rs);
    const compat::ObstructionReport eps9 = compat::check_eps9(rs, eps7);

    criterion(1, "eps^2 relation nu^(1) = -dt1 phi^(1) at sigma = 1", [&] {
        return rs.eps2.dt1_phi1_coeff == rf("-1");
    });

    criterion(2, "dispersion: sigma = -1 raises ImaginarySpeed; sigma = +1, zeta = h gives c = +-1", [&] {
        Config bad = dnls9;
        bad.sigma = -1;
        bad.max_order = 5;
        bool threw = false;
        try {
            pipeline::reduce(bad);
        } catch (const ImaginarySpeed&) {
            threw = true;
        }
        if (!threw) return false;
        if (!(rs.zeta_sq == RatFunc::h(2)) || !rs.signs.zeta_equals_h) return false;
        for (int c_sign : {+1, -1}) {
            Config cfg = dnls9;
            cfg.c_sign = c_sign;
            cfg.max_order = 5;
            if (!(pipeline::reduce(cfg).c == RatFunc::from_int(c_sign))) return false;
        }
        return true;
    });

    criterion(3, "order eps^5 emits the potential KdV flow with a = c(3-h^2)/24", [&] {
        if (!(rs.a == rf("(-h^2+3)/24"))) return false;
        if (!(rs.stage5->k2 == kdv::k2(rs.a))) return false;
        Config neg = dnls9;
        neg.c_sign = -1;
        neg.max_order = 5;
        auto rsn = pipeline::reduce(neg);
        return rsn.a == -rf("(-h^2+3)/24") && rsn.stage5->k2 == kdv::k2(rsn.a);
    });

    criterion(4, "order eps^7 carries the four cited coefficients, b3, and a 3-monomial forcing", [&] {
        const auto& st = *rs.stage7;
        const DiffPoly& rhs = st.pre_absorption_rhs;
        if (rhs.support_size() != 4) return false;
        if (!(rhs.coeff(DiffMonomial::jet(1, 2, 2)) == rf("(-5*h^2+7)/64"))) return false;
        if (!(rhs.coeff(DiffMonomial::jet(1, 1, 3)) == rf("h^2/12"))) return false;
        if (!(rhs.coeff(DiffMonomial::jet(1, 1).times(JetVar{1, 3}, 1)) == rf("(-3*h^2-1)/16")))
            return false;
        if (!(rhs.coeff(DiffMonomial::jet(1, 5)) == rf("(-h^4+30*h^2+15)/1920"))) return false;
        if (!(st.b3 == rf("(-h^4+30*h^2+15)/1920"))) return false;
        return st.f_t2.support_size() == 3;
    });

    criterion(5, "hierarchy consistency: flow(2,a,a) = k2(a); flows commute; all integrals exact", [&] {
        RatFunc a = rs.a;
        if (!(kdv::flow(2, a, a) == kdv::k2(a))) return false;
        for (auto [j1, j2] : {std::pair{2, 3}, {2, 4}, {3, 4}}) {
            if (!oracle::commute_check(j1, j2, 6, 40 + j1 * 10 + j2)) return false;
            std::map<int, DiffPoly> f1{{1, kdv::flow(j1, RatFunc::from_int(1), a)}};
            std::map<int, DiffPoly> f2{{1, kdv::flow(j2, RatFunc::from_int(1), a)}};
            DiffPoly u1 = DiffPoly::jet(1, 1);
            if (!(evolutionary_derive(evolutionary_derive(u1, f1), f2) ==
                  evolutionary_derive(evolutionary_derive(u1, f2), f1)))
                return false;
        }
        // no NotExact for j <= 4: constructing them is the check
        for (int j = 2; j <= 4; ++j) kdv::flow(j, RatFunc::from_int(1), a);
        return true;
    });

    criterion(6, "eps^7 compatibility: satisfied, zero conditions, also with symbolic forcing", [&] {
        return eps7.satisfied && eps7.n_conditions == 0 && eps7.n_raw_rows == 0 &&
               eps7.n_unknowns == 7 && eps7.n_equations == 14;
    });

    criterion(7, "eps^9 structure: 14 forcing monomials, 5 conditions, 9 of 14 free", [&] {
        if (rs.stage9->g_t2.support_size() != 14) return false;
        bool in_space = true;
        try {
            coords(rs.stage9->g_t2, *basis(9, 2));
        } catch (const NotInSpace&) {
            in_space = false;
        }
        return in_space && eps9.n_forcing_coords == 14 && eps9.n_conditions == 5 &&
               (eps9.n_forcing_coords - eps9.n_conditions) == 9;
    });

    criterion(8, "verdicts: dnls exits 1 (OBSTRUCTED), al exits 0 after the full eps^9 run", [&] {
        Config al = dnls9;
        al.model = Model::AL;
        auto va = compat::verdict(al);
        if (va.verdict != compat::Verdict::INTEGRABLE_CONSISTENT) return false;
        if (va.chain.size() != 2 || !va.chain[1].satisfied) return false;
        if (va.reduced.stage9->g_t2.is_zero()) return false; // genuine eps^9 pipeline
        auto vd = compat::verdict(dnls9);
        if (vd.verdict != compat::Verdict::OBSTRUCTED) return false;
        if (tool.empty()) {
            std::cout << "  (note: no CLI path given; exit-code subprocess check skipped)\n";
            return true;
        }
        RunResult d = run_cli(tool, "verdict --model dnls --format json");
        RunResult a = run_cli(tool, "verdict --model al --format json");
        RunResult bad = run_cli(tool, "verdict --model xyz");
        return d.exit_code == 1 && a.exit_code == 0 && bad.exit_code == 64;
    });

    criterion(9, "graded-space oracle: dim(6,1) = 4, dim(3,1) = 1; dim(11,2) reported beside 31", [&] {
        auto brute_count = [](int n, int r) {
            // independent enumeration: multisets of jets (level <= r,
            // order >= 1) with total formal degree n
            std::vector<std::pair<int, int>> jets; // (level, order)
            for (int level = 1; level <= r; ++level)
                for (int order = 1; order + 2 * level - 1 <= n; ++order)
                    jets.push_back({level, order});
            std::function<int(size_t, int)> go = [&](size_t idx, int remaining) -> int {
                if (remaining == 0) return 1;
                if (idx == jets.size()) return 0;
                int deg = jets[idx].second + 2 * jets[idx].first - 1;
                int total = 0;
                for (int count = 0; count * deg <= remaining; ++count)
                    total += go(idx + 1, remaining - count * deg);
                return total;
            };
            return go(0, n);
        };
        if (dim(6, 1) != 4 || brute_count(6, 1) != 4) return false;
        if (dim(3, 1) != 1 || brute_count(3, 1) != 1) return false;
        int computed = dim(11, 2);
        if (computed != brute_count(11, 2)) return false;
        std::cout << "  (dim P_11^(2) computed = " << computed
                  << ", cited value = 31; raw enumeration keeps the two linear "
                     "monomials the cited convention drops)\n";
        return true;
    });

    criterion(10, "algebra property suite (frechet 100x, integrate/derive 100x, trig, ranks)", [&] {
        auto sc = oracle::run_selfcheck(20240101);
        for (const auto& line : sc.lines)
            if (!line.pass) std::cout << "  failing: " << line.name << "\n";
        return sc.ok;
    });

    criterion(11, "determinism: identical reduce runs are byte-identical", [&] {
        Config cfg = dnls9;
        auto r1 = pipeline::reduce(cfg);
        auto r2 = pipeline::reduce(cfg);
        std::string j1 = report::render_json(r1, {}, std::nullopt);
        std::string j2 = report::render_json(r2, {}, std::nullopt);
        if (j1 != j2) return false;
        if (tool.empty()) {
            std::cout << "  (note: no CLI path given; byte-level subprocess check skipped)\n";
            return true;
        }
        RunResult a = run_cli(tool, "reduce --model dnls --order 9 --format json");
        RunResult b = run_cli(tool, "reduce --model dnls --order 9 --format json");
        return a.exit_code == 0 && a.out == b.out && !a.out.empty();
    });

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) failed" << std::endl;
    return 1;
}
