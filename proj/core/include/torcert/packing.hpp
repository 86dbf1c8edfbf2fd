#pragma once

// Deterministic exact backtracking search for unit packings: find pairwise
// disjoint units inside a subdivided region reaching a target contribution
// with a bounded number of uncovered lattice points.

#include <map>
#include <optional>
#include <vector>

#include "torcert/units.hpp"

namespace torcert {

struct PackingProblem {
    const Subdivision* region = nullptr;
    std::vector<UnitKind> allowed_kinds;
    Int target_contribution = 0;
    Int max_uncovered = 0;
    // builder-side constraints: per-kind ceilings and pre-placed units
    std::map<UnitKind, int> kind_caps;
    std::vector<Unit> seeds;
};

struct PackingSolution {
    std::vector<Unit> units;      // includes seeds
    std::vector<Vec3> uncovered;  // lattice points of the region left out
    Int nodes_explored = 0;
};

enum class PackingStatus { Sat, Unsat, BudgetExhausted };

struct PackingOutcome {
    PackingStatus status = PackingStatus::Unsat;
    std::optional<PackingSolution> solution;
    Int nodes_explored = 0;
};

// All legal units per cell, deduplicated, ordered by (cell anchor, kind rank,
// vertex tuple); tangent candidates precede limit candidates of the same cell.
std::vector<Unit> enumerate_candidate_units(const Subdivision& region,
                                            const std::vector<UnitKind>& kinds);

inline constexpr Int kDefaultNodeBudget = 100'000'000;

PackingOutcome solve(const PackingProblem& p, Int node_budget = kDefaultNodeBudget);

// Tries each seed set (applied on top of p.seeds) in order; the first
// satisfiable one wins. The candidate/conflict tables are built once.
PackingOutcome solve_seed_sets(const PackingProblem& p,
                               const std::vector<std::vector<Unit>>& seed_sets,
                               Int node_budget_per_try);

struct MaxContributionResult {
    Int best = 0;       // exact optimum if `exact`, else a lower bound
    bool exact = false;
    Int nodes_explored = 0;
};
MaxContributionResult max_contribution(const Subdivision& region,
                                       const std::vector<UnitKind>& kinds,
                                       Int node_budget = kDefaultNodeBudget);

}  // namespace torcert
