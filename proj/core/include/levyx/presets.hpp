#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "levyx/model.hpp"

namespace levyx {

/// CEV-like local volatility with Gaussian jumps:
/// a = delta^2/2 * e^{2(beta-1)x}, multiplier = e^{2(beta-1)x}, gamma = 0.
struct CevGaussParams {
    double delta = 0.20;
    double beta = 0.25;
    double lambda = 0.3;
    double m = -0.1;
    double eta = 0.4;
};

/// Same profile with variance-gamma jumps.
struct CevVgParams {
    double delta = 0.0;
    double beta = 0.25;
    double theta = -0.3;
    double rho = 0.3;
    double kappa = 0.15;
};

struct Preset {
    ModelSpec model;
    double x0 = 0.0;                       // log spot
    std::map<std::string, double> params;  // echoed in outputs
};

ModelSpec cev_gauss_model(const CevGaussParams& p = {});
ModelSpec cev_vg_model(const CevVgParams& p = {});

/// Uniform draw over delta in [0,0.6], beta in [0,1], lambda in [0,1],
/// m in [-1,0], eta in (0,1].
CevGaussParams randomize_cev_gauss(std::uint64_t seed);

/// Named presets: cev-gauss, cev-vg, bs (sigma = 0.2), merton (constant
/// coefficients with the cev-gauss jump law and a = 0.02).
Preset make_preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace levyx
