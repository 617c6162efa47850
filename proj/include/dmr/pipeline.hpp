#pragma once

#include "dmr/jets.hpp"
#include "dmr/kdv.hpp"
#include "dmr/series.hpp"

#include <optional>
#include <string>

namespace dmr::pipeline {

enum class Model { DNLS, AL };

std::string model_name(Model m);
std::optional<Model> model_from_name(std::string_view name);

/// Real Madelung form of a lattice model: the residual pair whose
/// simultaneous vanishing is equivalent to the model on nonvanishing
/// amplitude. Residuals are assembled symbolically by the expansion engine;
/// the strings document the closed form.
struct ModelSpec {
    Model model;
    std::string name;
    std::string nu_residual;
    std::string phi_residual;
};

ModelSpec madelung(Model model);

struct Config {
    Model model = Model::DNLS;
    int sigma = +1;
    int c_sign = +1;
    int max_order = 9; // 5, 7 or 9
};

/// Raw multiscale residual series of a model at the given gauge.
struct ResidualSeries {
    series::EpsSeries r_nu;
    series::EpsSeries r_phi;
};

ResidualSeries build_residuals(Model model, int truncation, const RatFunc& zeta_sq, int sigma);

/// Record of the eps^2 elimination: nu^(1) = coeff * d_{t1} phi^(1).
struct Eps2Relation {
    RatFunc dt1_phi1_coeff;
};

struct Stage5 {
    RatFunc normalization; // coefficient of Dxi d_{t2} phi^(1) in the residual
    RatFunc a;
    RatFunc q; // quadratic coefficient; -3/4 for the focusing DNLS reduction
    DiffPoly k2;
};

struct Stage7 {
    RatFunc normalization;
    RatFunc t3_coupling;         // relative coefficient of d_{t3} phi^(1); 1 for DNLS
    DiffPoly pre_absorption_rhs; // known right-hand side before the b3 absorption
    RatFunc b3;
    DiffPoly k3;
    DiffPoly f_t2;               // forcing, three monomials of degree 6, level 1
};

struct Stage9 {
    RatFunc normalization;
    RatFunc t4_coupling;
    DiffPoly f_t3; // degree-8 level-1 forcing for the t3-evolution of phi^(2)
    RatFunc b4;
    DiffPoly k4;
    DiffPoly g_t2; // degree-9 forcing over levels <= 2
};

struct ReducedSystem {
    Model model = Model::DNLS;
    std::string name;
    SignParams signs;
    int max_order = 9;
    RatFunc zeta_sq;
    RatFunc c;
    RatFunc a;
    RatFunc q;
    kdv::FlowTable flows;
    Eps2Relation eps2;
    std::optional<Stage5> stage5;
    std::optional<Stage7> stage7;
    std::optional<Stage9> stage9;
};

/// Run the multiscale reduction through the requested order. Deterministic;
/// throws ImaginarySpeed for sigma = -1 and UnremovableSecularity when a
/// residual term fits no stage rule.
ReducedSystem reduce(const Config& cfg);

} // namespace dmr::pipeline
