#include "dmr/compat.hpp"
#include "dmr/errors.hpp"
#include "dmr/graded.hpp"
#include "dmr/oracle.hpp"
#include "dmr/pipeline.hpp"
#include "dmr/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitObstructed = 1;
constexpr int kExitEngine = 2;
constexpr int kExitUsage = 64;

struct CommonOpts {
    std::string model = "dnls";
    int order = 9;
    int c_sign = +1;
    std::string format = "text";
};

dmr::pipeline::Config to_config(const CommonOpts& o) {
    dmr::pipeline::Config cfg;
    auto m = dmr::pipeline::model_from_name(o.model);
    cfg.model = *m;
    cfg.c_sign = o.c_sign;
    cfg.max_order = o.order;
    return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multiscale reduction and integrability obstruction tests for "
                 "nonlinear Schroedinger lattices"};
    app.require_subcommand(1);

    CommonOpts reduce_opts, verdict_opts, flows_opts;
    int dim_n = 6, dim_r = 1;
    int flow_j = 2;
    uint64_t seed = 20240101;

    auto add_model_flags = [](CLI::App* cmd, CommonOpts& o, bool with_order) {
        cmd->add_option("--model", o.model, "lattice model")
            ->check(CLI::IsMember({"dnls", "al"}));
        if (with_order)
            cmd->add_option("--order", o.order, "highest expansion order")
                ->check(CLI::IsMember({5, 7, 9}));
        cmd->add_option("--c-sign", o.c_sign, "sign of the frame speed")
            ->check(CLI::IsMember({+1, -1}));
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* cmd_reduce = app.add_subcommand("reduce", "run the multiscale reduction");
    add_model_flags(cmd_reduce, reduce_opts, true);

    CLI::App* cmd_verdict =
        app.add_subcommand("verdict", "reduction plus compatibility checks; exit code "
                                      "0 = consistent, 1 = obstructed");
    add_model_flags(cmd_verdict, verdict_opts, true);

    CLI::App* cmd_dim = app.add_subcommand("dim", "dimension of the graded space P_n^(r)");
    cmd_dim->add_option("--n", dim_n, "total degree")->required()->check(CLI::PositiveNumber);
    cmd_dim->add_option("--r", dim_r, "maximum level")->required()->check(CLI::PositiveNumber);

    CLI::App* cmd_basis = app.add_subcommand("basis", "monomial basis of P_n^(r)");
    cmd_basis->add_option("--n", dim_n, "total degree")->required()->check(CLI::PositiveNumber);
    cmd_basis->add_option("--r", dim_r, "maximum level")->required()->check(CLI::PositiveNumber);

    CLI::App* cmd_flows = app.add_subcommand("flows", "render a hierarchy flow K_j");
    cmd_flows->add_option("--j", flow_j, "flow index")->check(CLI::IsMember({2, 3, 4}));
    add_model_flags(cmd_flows, flows_opts, false);

    CLI::App* cmd_selfcheck = app.add_subcommand("selfcheck", "run the oracle suite");
    cmd_selfcheck->add_option("--seed", seed, "trial seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (cmd_reduce->parsed()) {
            auto rs = dmr::pipeline::reduce(to_config(reduce_opts));
            if (reduce_opts.format == "json")
                std::cout << dmr::report::render_json(rs, {}, std::nullopt);
            else
                std::cout << dmr::report::render_text(rs, {}, std::nullopt);
            std::cerr << "reduce completed in " << seconds_since(t0) << "s\n";
            return kExitOk;
        }
        if (cmd_verdict->parsed()) {
            auto vr = dmr::compat::verdict(to_config(verdict_opts));
            if (verdict_opts.format == "json")
                std::cout << dmr::report::render_json(vr.reduced, vr.chain, vr.verdict);
            else
                std::cout << dmr::report::render_text(vr.reduced, vr.chain, vr.verdict);
            std::cerr << "verdict completed in " << seconds_since(t0) << "s\n";
            return vr.verdict == dmr::compat::Verdict::OBSTRUCTED ? kExitObstructed : kExitOk;
        }
        if (cmd_dim->parsed()) {
            std::cout << dmr::dim(dim_n, dim_r) << "\n";
            return kExitOk;
        }
        if (cmd_basis->parsed()) {
            auto b = dmr::basis(dim_n, dim_r);
            for (const auto& m : b->monomials) std::cout << m.str() << "\n";
            return kExitOk;
        }
        if (cmd_flows->parsed()) {
            dmr::pipeline::Config cfg = to_config(flows_opts);
            cfg.max_order = flow_j <= 2 ? 5 : (flow_j == 3 ? 7 : 9);
            auto rs = dmr::pipeline::reduce(cfg);
            std::cout << rs.flows.flow_poly(flow_j).str() << "\n";
            std::cerr << "flows completed in " << seconds_since(t0) << "s\n";
            return kExitOk;
        }
        if (cmd_selfcheck->parsed()) {
            auto sc = dmr::oracle::run_selfcheck(seed);
            for (const auto& line : sc.lines)
                std::cout << (line.pass ? "PASS " : "FAIL ") << line.name << "\n";
            std::cerr << "selfcheck completed in " << seconds_since(t0) << "s (seed " << seed
                      << ")\n";
            return sc.ok ? kExitOk : kExitEngine;
        }
    } catch (const dmr::EngineError& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return kExitEngine;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEngine;
    }
    return kExitUsage;
}
