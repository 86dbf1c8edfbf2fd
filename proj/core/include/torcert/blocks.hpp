#pragma once

// The block catalog: reusable verified sub-certificates (columns, prism
// blocks, simplex configurations, cut blocks) and the certificate builders
// that assemble them for every degree d >= 5.

#include "torcert/certificate.hpp"

namespace torcert {

// Registered block by name. Names: "delta1", "cube", "column7", "gamma7",
// "delta5", "delta6", "T5", "T6", "delta_odd_<m>", "layer_odd_<k>",
// "layer8", "layer10", "stack3_12", "P7", "P9", "P11", "P13", "C7", "H9",
// "Tstar7", "Tstar9", "Tstar11", "B8", "B10", "B12", "A<k>_10", "A<k>_12".
// Built lazily (searches run once) and cached for the process lifetime.
CertNodePtr block(const std::string& name);

// Catalog contribution values (A_k via the alpha formulas); for every name
// this equals block(name)->contribution, which tests assert.
Int block_contribution(const std::string& name);

// names with a finite catalog entry (excludes the parametric families)
std::vector<std::string> block_catalog_names();

// ---- certificate builders -----------------------------------------------------

Certificate odd_layer_config(Int k);          // k odd >= 3
Certificate odd_config(Int d);                // d odd >= 5
Certificate even_base_config(Int d);          // d in {6,8,10,12}
Certificate recursive_config(Int d);          // d even >= 14
Certificate config_for(Int d);                // dispatch on d >= 5

// Deterministic search budget used when blocks are first built.
inline constexpr Int kBuildNodeBudget = 100'000'000;

}  // namespace torcert
