#include "dmr/report.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace dmr;

TEST_SUITE_BEGIN("report");

namespace {

const compat::VerdictReport& dnls_verdict() {
    static compat::VerdictReport vr = [] {
        pipeline::Config cfg;
        cfg.model = pipeline::Model::DNLS;
        cfg.max_order = 9;
        return compat::verdict(cfg);
    }();
    return vr;
}

} // namespace

TEST_CASE("json report is byte-identical across runs") {
    pipeline::Config cfg;
    cfg.model = pipeline::Model::DNLS;
    cfg.max_order = 9;
    auto a = pipeline::reduce(cfg);
    auto b = pipeline::reduce(cfg);
    CHECK(report::render_json(a, {}, std::nullopt) == report::render_json(b, {}, std::nullopt));
}

TEST_CASE("json schema carries the stable keys and exact values") {
    const auto& vr = dnls_verdict();
    std::string text = report::render_json(vr.reduced, vr.chain, vr.verdict);
    auto j = nlohmann::json::parse(text);
    CHECK(j["model"] == "dnls");
    CHECK(j["order"] == 9);
    CHECK(j["c_sign"] == 1);
    CHECK(j["a"] == "(-h^2+3)/24");
    CHECK(j["b"]["3"] == "(-h^4+30*h^2+15)/1920");
    CHECK(j.contains("forcing"));
    CHECK(j["forcing"]["f_t2"].size() == 3);
    CHECK(j["forcing"]["g_t2"].size() == 14);
    REQUIRE(j["obstruction"].size() == 2);
    CHECK(j["obstruction"][0]["stage"] == "eps7");
    CHECK(j["obstruction"][0]["satisfied"] == true);
    CHECK(j["obstruction"][1]["stage"] == "eps9");
    CHECK(j["obstruction"][1]["satisfied"] == false);
    CHECK(j["obstruction"][1]["n_conditions"] == 5);
    CHECK(j["verdict"] == "OBSTRUCTED");
    CHECK(j["dims"]["P11_2_computed"] == 33);
    CHECK(j["dims"]["P11_2_cited"] == 31);
    // no timing or environment data in the deterministic document
    CHECK(text.find("timing") == std::string::npos);
}

TEST_CASE("text report renders the reduced equations") {
    const auto& vr = dnls_verdict();
    std::string text = report::render_text(vr.reduced, vr.chain, vr.verdict);
    CHECK(text.find("a = (-h^2+3)/24") != std::string::npos);
    CHECK(text.find("verdict: OBSTRUCTED") != std::string::npos);
    CHECK(text.find("D3[phi,1]") != std::string::npos);
}

TEST_SUITE_END();
