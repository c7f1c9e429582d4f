#pragma once

#include "mwci/strata.hpp"
#include "mwci/wps.hpp"

#include <optional>
#include <vector>

namespace mwci {

/// One weighted blow-up: the center is a point locus of the stratification
/// (level 1) or a chart point of an earlier step (level > 1). The weight is
/// a positive-residue representative of the center's quotient type.
struct BlowupStep {
    int locus_index = -1;   // level 1: index into StratificationReport.loci
    int parent_step = -1;   // level > 1: index of the parent step
    int level = 1;
    CyclicQuotient weight;  // 1/r(e_1..e_n), e_i >= 1, gcd(e_i) = 1
};

struct WellFormednessError : std::domain_error {
    explicit WellFormednessError(const std::string& what) : std::domain_error(what) {}
};
struct NonIsolatedNonCanonical : std::domain_error {
    explicit NonIsolatedNonCanonical(const std::string& what) : std::domain_error(what) {}
};
struct DepthExceeded : std::domain_error {
    explicit DepthExceeded(const std::string& what) : std::domain_error(what) {}
};

/// Singularities of a step's exceptional locus: for each weight entry > 1 the
/// normalized chart type 1/e_i(-e_1,...,r,...,-e_n). Smooth charts omitted.
std::vector<CyclicQuotient> exceptional_charts(const BlowupStep& step);

/// Chart residues of slot i in coordinate order (r replaces the i-th entry),
/// reduced mod e_i but not normalized. Needed when chart coordinates must be
/// matched to the ambient arrangement.
CyclicQuotient raw_chart(const CyclicQuotient& weight, int slot);

/// (r - sum e_i) / r.
Rat discrepancy(const BlowupStep& step);

/// Valid positive-residue blow-up weights for a quotient type: unit multiples
/// with every entry >= 1, entry sum < r and entry gcd 1, sorted by entry sum
/// then lexicographically.
std::vector<std::vector<Int>> admissible_weights(const CyclicQuotient& type);

struct BlowupPlan {
    std::vector<BlowupStep> steps;
    std::vector<CyclicQuotient> final_points;  // surviving + chart point types, multiplicity expanded
    std::vector<CyclicQuotient> final_curves;  // surviving one-dimensional loci (transverse types)
};

/// K^3 after subtracting every step's correction (r - sum e)^3 / (r prod e).
/// Requires each exceptional weight space to be well-formed.
Rat volume_after(const Rat& k_cube_before, const BlowupPlan& plan);

/// One step per non-canonical point (counted with multiplicity), iterating on
/// non-canonical chart points up to depth_cap levels.
BlowupPlan plan_blowups(const StratificationReport& report, int depth_cap = 3);

}  // namespace mwci
