#pragma once

#include "mwci/wci.hpp"
#include "mwci/wps.hpp"

#include <array>
#include <optional>
#include <vector>

namespace mwci {

/// One stratum of the singular set of the general member.
/// For point loci, `count` is the number of points in the open stratum and
/// `local_charts` lists every admissible choice of the three ambient
/// coordinates that serve as local coordinates at such a point. For
/// one-dimensional loci the quotient carries a zero residue along the curve.
struct SingularLocus {
    std::vector<int> stratum;   // ambient coordinate index set J, ascending
    Int e = 1;                  // gcd of the weights indexed by J
    int locus_dim = 0;          // 0 or 1
    Int count = 0;              // locus_dim == 0 only
    CyclicQuotient quotient;    // normalized type
    SingClass sing_class = SingClass::Smooth;
    std::vector<std::array<int, 3>> local_charts;  // locus_dim == 0 only
};

struct StratificationReport {
    std::vector<SingularLocus> loci;
    SingClass worst = SingClass::Smooth;
    std::vector<int> non_canonical;  // indices into loci, point loci classified NonCanonical
    bool has_non_isolated_canonical = false;
};

struct HypothesisViolation : std::domain_error {
    explicit HypothesisViolation(const std::string& what) : std::domain_error(what) {}
};
struct NonIntegralCount : std::domain_error {
    explicit NonIntegralCount(const std::string& what) : std::domain_error(what) {}
};
struct UnsupportedStratum : std::domain_error {
    explicit UnsupportedStratum(const std::string& what) : std::domain_error(what) {}
};

/// Hypersurface case (c = 1, n = 3). Requires every triple of weights coprime.
/// Vertex and edge counts follow the divisibility case analysis and are
/// cross-checked against the substratum-subtraction count.
StratificationReport stratify_hypersurface(const WciFamily& f);

/// Codimension-2 case (c = 2, n = 3). Requires every four weights coprime.
StratificationReport stratify_codim2(const WciFamily& f);

/// Codimension-3 case (c = 3, n = 3): the inclusion-exclusion generalization,
/// valid only when every stratum meets the member in dimension <= 1.
StratificationReport stratify_codim3(const WciFamily& f);

/// Dispatch on the codimension of the family.
StratificationReport stratify(const WciFamily& f);

/// Dimension of the intersection of the general member with the closed
/// coordinate subspace spanned by `indices`: the maximum over subsets J of
/// |J| - 1 minus the number of degrees representable on J. Negative values
/// mean the intersection is empty.
Int stratum_intersection_dim(const WciFamily& f, const RepresentabilityTable& reps,
                             std::span<const int> indices);

}  // namespace mwci
