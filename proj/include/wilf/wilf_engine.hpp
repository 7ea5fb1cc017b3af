#pragma once

#include <set>
#include <string>
#include <vector>

#include "wilf/class_model.hpp"

namespace wilf {

/// Avoider counts of one pattern inside the class, from the pattern's own
/// weight up to a horizon. The avoider generating function is rational, so
/// agreement through the exact horizon decides Wilf equivalence outright;
/// the exact flag records whether this signature reaches it.
struct WilfSignature {
    Word pattern;
    int pattern_weight = 0;
    int horizon = 0;
    int exact_horizon = 0;
    bool exact = false;
    std::vector<BigInt> avoiders;  // indices 0.. map to weights pattern_weight..horizon

    const BigInt& at(int n) const;  // avoider count at absolute weight n
};

/// Counts the class words avoiding the pattern at every weight up to max_n,
/// by DP over (class prefix state, greedy progress into the pattern).
WilfSignature avoider_series(const ClassModel& m, const Word& pattern, int max_n);

/// Horizon past which signature agreement implies agreement forever:
/// 2 * (product-DP state count) * (max letter weight) + pattern weight.
int signature_horizon(const ClassModel& m, const Word& pattern);

/// Largest signature horizon over the whole level C_k.
int exact_horizon_for_level(const ClassModel& m, int k);

struct WilfPartition {
    int k = 0;
    BigInt level_count = 0;  // c_k
    bool exact = false;      // every signature reached its exact horizon
    std::vector<std::vector<Word>> blocks;
    std::vector<WilfSignature> block_signatures;  // one representative per block
    std::vector<bool> block_exact;

    int block_count() const { return static_cast<int>(blocks.size()); }
    int block_of(const Word& pattern) const;  // -1 when absent
};

WilfPartition wilf_partition(const ClassModel& m, int k, int max_n);

/// Images of the pattern under the dihedral symmetries that fix the basis
/// setwise. Models without a known permutation basis yield the singleton.
std::set<Word> symmetry_orbit(const ClassModel& m, const Word& pattern);

/// Rearrangements of the maximal incompatible factorisation of the pattern
/// word; sum-closed classes only.
std::set<Word> shuffle_equivalents(const ClassModel& m, const Word& pattern);

struct MovePolyOptions {
    int typicality_threshold = -1;  // forwarded to is_typical
    bool verify_signatures = true;  // compare signatures at the exact horizon
    int verify_horizon = 0;         // 0 = the exact horizon
};

/// Moves k weight-1 letters between the central pieces of two dominant loop
/// blocks of a typical word in an unbounded polynomial class, validating
/// every hypothesis and (by default) the resulting signature equality.
Word move_poly(const ClassModel& m, const Word& w, int k, const MovePolyOptions& = {});

struct OrbitCheck {
    std::string kind;  // "symmetry" | "shuffle" | "poly-move"
    Word pattern;
    std::vector<Word> orbit;
    bool within_one_block = false;
    bool exact = false;
};

struct PredictionReport {
    WilfPartition partition;
    std::vector<OrbitCheck> checks;
    int hard_violations = 0;  // orbit split across blocks at an exact horizon
    int warnings = 0;         // the same at an inexact horizon
};

/// Checks every predicted equivalence orbit at level k against the observed
/// partition.
PredictionReport verify_predictions(const ClassModel& m, int k, int max_n);

struct CollapseRow {
    int k = 0;
    BigInt level_count = 0;  // c_k
    int wilf_classes = 0;    // w_k
    double ratio = 0;        // w_k / c_k
    double mean_block = 0;   // c_k / w_k
    bool exact = false;
};

std::vector<CollapseRow> collapse_report(const ClassModel& m, int k_from, int k_to, int max_n);

}  // namespace wilf
