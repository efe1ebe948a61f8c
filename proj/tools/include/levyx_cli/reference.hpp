#pragma once

#include <string>
#include <vector>

#include "levyx/presets.hpp"

namespace levyx::cli {

/// One tabulated price with its simulated 95% intervals for price and IV.
struct ReferenceRow {
    double t, k;
    double u, u_lo, u_hi;
    double iv, iv_lo, iv_hi;
};

struct ReferenceTable {
    std::string name;
    std::string preset;
    std::string basis;  // taylor or two-point
    int order;
    std::string payoff;
    std::vector<ReferenceRow> rows;
};

/// Put prices on the cev-gauss preset, Taylor basis, order 3.
const ReferenceTable& cev_gauss_put_table();
/// Put prices on the cev-vg preset, two-point basis, order 2.
const ReferenceTable& cev_vg_put_table();

/// Call prices under randomly drawn cev-gauss parameters, Taylor order 3.
struct RandomCallBlock {
    CevGaussParams params;
    double time_ratio;  // tabulated tau(3)/tau(0)
    std::vector<ReferenceRow> rows;
};
const std::vector<RandomCallBlock>& cev_gauss_call_blocks();

const ReferenceTable& reference_table(const std::string& name);
std::vector<std::string> reference_table_names();

}  // namespace levyx::cli
