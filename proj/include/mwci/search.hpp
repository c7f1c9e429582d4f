#pragma once

#include "mwci/pipeline.hpp"

#include <map>
#include <string>
#include <vector>

namespace mwci {

/// Bounds for the enumeration of candidate families (fiber dimension 3).
struct SearchConfig {
    Int alpha_min = 1, alpha_max = 10;
    Int degree_min = 5, degree_max = 100;
    int codim_min = 1, codim_max = 3;
    Int weight_cap = 0;  // 0: bounded only by the degree sums
    int depth_cap = 3;
    std::string filter;  // "", "general-type", "kodaira2"
    std::optional<Rat> noether_band;  // keep only delta <= bound
    bool log_rejections = true;
};

enum class ExecMode { Serial, Parallel };

struct Rejection {
    std::string family_id;
    std::string step;
};

struct SearchStats {
    long long tuples = 0;       // weight tuples enumerated
    long long candidates = 0;   // (weights, degrees) pairs in range
    long long screened = 0;     // candidates past the necessary-condition screen
    long long accepted = 0;
};

struct SearchResult {
    std::vector<PipelineResult> reports;      // deterministic order
    std::vector<Rejection> rejections;        // candidates past step 0 that failed later
    SearchStats stats;
};

/// Enumerate candidates within the bounds, canonicalized up to sorting, and
/// run the verification pipeline on each. The parallel driver splits the
/// space into (codimension, largest-weight) blocks and merges block results
/// in order, so both modes produce identical streams.
SearchResult run_search(const SearchConfig& cfg, ExecMode mode = ExecMode::Parallel);

/// One parametric vanishing-volume family and the residue classes of its
/// surviving orders.
struct Kod2Conditions {
    Int rmin = 0;                          // survivors satisfy r > rmin
    std::vector<Int> survivors;            // within (rmin, r_max]
    std::map<Int, std::vector<Int>> allowed;  // modulus -> sorted allowed residues
    bool characterized = false;  // the residue classes cut out exactly the survivors
};

/// Sweep r <= r_max over X(2r+2, 2r+4) in P(a, b, third_weight, r, r+1, r+2),
/// keeping the members whose only non-canonical point is 1/r(a,b,1) with all
/// other singularities terminal, and derive the residue conditions on r.
Kod2Conditions generate_kodaira2_family(Int a, Int b, Int third_weight, Int r_max);

}  // namespace mwci
