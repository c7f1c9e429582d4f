#pragma once

#include "mwci/blowup.hpp"
#include "mwci/strata.hpp"
#include "mwci/wci.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mwci {

enum class CriterionKind { IBranchA, IBranchB, IICase1, IICase2, III };
const char* criterion_name(CriterionKind kind);  // "I-branchA" etc.

/// One recorded inequality or predicate of a certificate. Numeric conditions
/// carry exact sides and slack = lhs - rhs; predicates carry only verdicts.
struct ConditionRecord {
    std::string id;
    bool numeric = false;
    Rat lhs, rhs, slack;
    bool pass = false;
};

struct NefCertificate {
    CriterionKind kind = CriterionKind::IBranchA;
    bool valid = false;
    int k_coordinate = -1;  // ambient coordinate index playing the role of k
    std::string irreducibility_tag;
    std::vector<ConditionRecord> conditions;

    // chosen arrangement, one entry per blown-up point in center order
    std::vector<std::array<int, 3>> charts;       // ambient local-coordinate triples
    std::vector<std::vector<Int>> point_weights;  // e-vectors aligned with the chart order
    std::vector<Int> second_weight;               // criterion III second step (ordered: H1,H2,E)
    Int second_order = 0;                         // r' of the second step
};

struct PositionMismatch : std::domain_error {
    explicit PositionMismatch(const std::string& what) : std::domain_error(what) {}
};
struct NoPassingBranch : std::domain_error {
    explicit NoPassingBranch(const std::string& what) : std::domain_error(what) {}
};
struct FirstStepNotCertified : std::domain_error {
    explicit FirstStepNotCertified(const std::string& what) : std::domain_error(what) {}
};

struct IrreducibilityResult {
    bool irreducible = false;
    std::string tag = "unknown";  // quasi-smooth-curve | pencil-test | codim2-restriction | unknown
};

/// Sufficient irreducibility certificates for a general complete-intersection
/// curve of the given multi-degrees in the space with the given weights
/// (c + 2 of them). Never asserts reducibility: a false result means no
/// sufficient condition fired.
IrreducibilityResult curve_irreducible(const std::vector<Int>& weights,
                                       const std::vector<Int>& degrees);

/// A center to blow up: a point locus with how many of its points are taken
/// and an optional required weight multiset per point (from a table row).
struct CenterSpec {
    const SingularLocus* locus = nullptr;
    Int count = 1;
    std::optional<std::vector<Int>> required_weights;  // sorted
};

/// Single-point criterion: second branch first, then the first branch with k
/// ascending over the local coordinates. Throws PositionMismatch when no
/// admissible arrangement exists, NoPassingBranch when none certifies.
NefCertificate check_criterion_I(const WciFamily& f, const SingularLocus& locus,
                                 const std::optional<std::vector<Int>>& bweight = {},
                                 std::optional<int> k_coordinate = {});

/// Several points: case 2 when all points share one local-coordinate triple,
/// case 1 when they share exactly two coordinates. case_id 0 tries 2 then 1.
NefCertificate check_criterion_II(const WciFamily& f, std::span<const CenterSpec> centers,
                                  int case_id = 0, std::optional<int> k_coordinate = {});

/// Two-step criterion: the first blow-up certified by the first branch with k
/// at the chart carrying the remaining non-canonical point and with exact
/// equality in its other two inequalities; then the second blow-up conditions.
NefCertificate check_criterion_III(const WciFamily& f, const SingularLocus& locus,
                                   const std::optional<std::vector<Int>>& first_bweight = {},
                                   const std::optional<std::vector<Int>>& second_bweight = {});

}  // namespace mwci
