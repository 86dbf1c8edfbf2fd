#pragma once

// Machine-readable serialization. All emitters are byte-deterministic: keys
// in fixed order, vertices sorted, no floating point anywhere.

#include <json.hpp>

#include "torcert/blocks.hpp"
#include "torcert/oracle.hpp"
#include "torcert/packing.hpp"

namespace torcert {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    Int d = 0, d_max = 0, n = 0, k = 0;
    std::uint64_t prime = kDefaultPrime;
    std::uint64_t seed = kDefaultSeed;
    int trials = kDefaultTrials;
    Int budget = kDefaultNodeBudget;
    std::string format = "text";
};
Json to_json(const RunConfig& rc);

Json to_json(const Vec3& v);
Json to_json(const Polytope& p);
Json to_json(const Subdivision& s);
Json to_json(const Certificate& c);
Json to_json(const VerificationReport& r);
Json to_json(const ClaimSet& cs);
Json to_json(const IdentityReport& ir);
Json to_json(const RankProblem& p, const RankResult& r);

std::string dump(const Json& j);  // canonical text form, trailing newline

}  // namespace torcert
