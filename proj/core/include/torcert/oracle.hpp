#pragma once

// Independent linear-algebra ground truth over large prime fields: ranks of
// double-point interpolation matrices, toric tangent-space spans, and the
// genericity preconditions consumed by the certificate verifier.

#include <cstdint>
#include <vector>

#include "torcert/certificate.hpp"

namespace torcert {

inline constexpr std::uint64_t kDefaultPrime = 1'000'003;
inline constexpr std::uint64_t kAltPrime = 2'147'483'647;  // 2^31 - 1
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr int kDefaultTrials = 4;
inline constexpr Int kMatrixColumnCeiling = 3000;

// deterministic splitmix64 stream; identical (prime, seed) reproduce runs
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    std::uint64_t below(std::uint64_t m);  // uniform in [0, m)
};

Int mod_rank(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p);

struct RankProblem {
    int n = 3;        // ambient projective dimension
    Int d = 0;        // degree
    Int k = 0;        // secant index
    std::uint64_t prime = kDefaultPrime;
    std::uint64_t seed = kDefaultSeed;
    int trials = kDefaultTrials;
};

struct RankResult {
    Int rows = 0, cols = 0;
    Int rank = 0;      // max over trials (lower bound for the generic rank)
    Int expected = 0;  // min(rows, cols)
    Int defect = 0;
    int trials = 0;
    int resampled = 0;  // degenerate point sets that were redrawn
};

// Rank of the double-point interpolation matrix: (n+1)(k+1) rows of monomial
// first partials at k+1 random points, C(n+d, n) columns in degrevlex order,
// points dehomogenized with first coordinate 1.
RankResult interpolation_rank(const RankProblem& p);

struct SweepEntry {
    Int d = 0;
    Int k = 0;
    Int defect = 0;
};
// Defects for all d <= d_max, k <= ceil(C(n+d,n)/(n+1)); nonzero-defect rows
// only. Throws if a matrix would exceed the column ceiling.
std::vector<SweepEntry> ah_sweep(int n, Int d_max, std::uint64_t prime = kDefaultPrime,
                                 std::uint64_t seed = kDefaultSeed, int trials = kDefaultTrials);

// Rank of the stacked tangent rows (value + 3 partials per point) of the
// monomial map given by `model` at `count` random torus points.
Int toric_tangent_span(const std::vector<Vec3>& model, Int count, std::uint64_t prime,
                       std::uint64_t seed, int trials = kDefaultTrials);

// Tangent space to the Segre cube at a torus-fixed corner equals the span of
// the corner and its three neighbors; exact exponent-level computation.
bool segre_corner_tangent_check();

// Genericity of the limit projections: the tangent space at a random torus
// point of the cell's toric variety meets the span of the complementary cell
// vertices trivially (full rank 4 + |complement|).
bool limit_projection_check(CellKind kind, const std::vector<Vec3>& tetra_rel,
                            std::uint64_t prime, std::uint64_t seed, int trials = 8);

// Runs limit_projection_check over every legal limit quadruple of the three
// standard cells and records the passes.
PreconditionLedger build_precondition_ledger(std::uint64_t prime = kDefaultPrime,
                                             std::uint64_t seed = kDefaultSeed, int trials = 8);

struct BlockOracleResult {
    std::string name;
    Int claimed = 0;    // catalog contribution
    Int points = 0;     // lattice points of the block region
    Int rank = 0;
    bool agree = false;
    bool skipped = false;  // column ceiling exceeded
};
BlockOracleResult certify_block_defectivity(const std::string& name,
                                            std::uint64_t prime = kDefaultPrime,
                                            std::uint64_t seed = kDefaultSeed);

}  // namespace torcert
