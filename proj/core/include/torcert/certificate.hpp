#pragma once

// Non-defectivity certificates: trees of placed blocks whose leaves carry
// verified unit packings inside regular subdivisions. A certificate for
// degree d claims that the toric witnesses span the expected dimension, so
// the d-th Veronese threefold is not n_d-defective.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "torcert/units.hpp"

namespace torcert {

// ---- expected-dimension arithmetic ------------------------------------------

struct ExpectedDimension {
    Int d = 0;
    Int N = 0;           // ambient projective dimension, C(d+3,3)-1
    Int n = 0;           // critical secant index, n+1 = floor((d+1)(d+2)(d+3)/24)
    Int codim_class = 0; // (N+1) - 4(n+1): 0,1,2,3 by d mod 8
};
ExpectedDimension expected_dimension(Int d);
Int binomial(Int n, Int k);

// ---- certificate tree ---------------------------------------------------------

struct CertNode;
using CertNodePtr = std::shared_ptr<const CertNode>;

struct PlacedNode {
    AffineMap map;
    CertNodePtr node;
};

struct CertNode {
    std::string name;
    // leaf payload
    std::shared_ptr<const Subdivision> host;
    std::vector<Unit> units;
    // composite payload
    std::vector<PlacedNode> children;
    Int contribution = 0;  // cached sum over the subtree

    bool leaf() const { return host != nullptr; }
};

CertNodePtr make_leaf(std::string name, Subdivision host, std::vector<Unit> units);
CertNodePtr make_composite(std::string name, std::vector<PlacedNode> children);

struct Certificate {
    Int d = 0;
    Int claimed_secant_index = 0;  // the k for which non-k-defectivity is claimed
    CertNodePtr root;
};

// Flattened view of a leaf in global coordinates.
struct LeafInstance {
    std::string path;
    AffineMap map;
    const CertNode* node = nullptr;
};
std::vector<LeafInstance> flatten(const Certificate& c);

// ---- verification -------------------------------------------------------------

// Limit units are admissible only when the projection-genericity precondition
// has a recorded pass for (cell kind, vertex quadruple up to cell symmetry).
struct PreconditionLedger {
    std::set<std::string> passed;  // canonical signatures
    bool trust_all = false;        // for callers that skip the oracle
    bool contains(const std::string& sig) const { return trust_all || passed.count(sig) > 0; }
};
// canonical key: lexicographically smallest image of the quadruple under the
// cube symmetries that put the host cell into its standard pose
std::string canonical_limit_signature(CellKind kind, const std::vector<Vec3>& cell_rel_corners,
                                      const std::vector<Vec3>& quad_rel);
std::string limit_signature(const Cell& cell, const Unit& u);

struct LeafTally {
    std::string path;
    Int points = 0;
    Int covered = 0;
    Int units = 0;
    Int contribution = 0;
};

struct VerificationReport {
    bool pass = false;
    std::string failure;  // first violation, human-readable
    Int claimed = 0;
    Int total_contribution = 0;
    Int unit_count = 0;
    Int used_region_points = 0;
    Int used_region_uncovered = 0;
    Int ambient_points = 0;     // lattice points of Delta_d
    Int ambient_uncovered = 0;  // points hit by no unit at all
    std::map<std::string, Int> kind_counts;
    std::vector<LeafTally> tallies;
};

// Checks, in order: per-leaf host regularity, unit legality and limit
// preconditions, pairwise unit disjointness inside each leaf, pairwise
// closed-disjointness of leaf regions across the tree, and the contribution
// and coverage accounting.
VerificationReport verify_certificate(const Certificate& c, const PreconditionLedger& ledger);

// ---- classification of secant indices ----------------------------------------

struct Claim {
    Int d = 0;
    Int k_from = 0, k_to = 0;  // inclusive range, k_to = -1 means "all larger k"
    std::string justification;
    bool oracle_required = false;
};
struct ClaimSet {
    Int d = 0;
    std::vector<Claim> claims;
};
ClaimSet classify_all_k(Int d, const VerificationReport& base_certificate);

// ---- family recursions ---------------------------------------------------------

struct IdentityRow {
    Int d = 0;
    std::string family;      // "odd", "6+8k", "8+8k", "10+8k", "12+8k"
    Int lhs = 0;             // (n_d+1) - (n_{d-step}+1)
    Int rhs = 0;             // the displayed block sum
    bool holds = false;
    bool flagged = false;    // displayed formula known inconsistent; a
                             // replacement layout value is used in `rhs`
    Int displayed = 0;       // the literal displayed sum when flagged
};
struct IdentityReport {
    std::vector<IdentityRow> rows;
    bool all_consistent = false;            // every row holds (flags excluded)
    std::vector<Int> flagged_degrees;       // rows where the display disagrees
};
IdentityReport check_identities(Int d_max);

// alpha_k + 1 for the two A_k families (10+8k / 12+8k)
Int alpha_count(Int k, int family);

}  // namespace torcert
