#pragma once

#include "mwci/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace mwci {

/// Ambient weights (a0,...,aN) of a weighted projective space, N+1 >= 2.
struct WeightedSpace {
    std::vector<Int> weights;

    Int dim() const { return static_cast<Int>(weights.size()) - 1; }
};

/// True iff every leave-one-out gcd of the weights equals 1.
bool is_well_formed_space(const WeightedSpace& space);

/// One singular stratum of the ambient space: the coordinate index set and
/// the common factor of its weights.
struct AmbientStratum {
    std::vector<int> indices;  // ascending
    Int e = 1;                 // gcd of the weights indexed, > 1
};

/// All index sets J with |J|-1 <= max_dim whose weights share a factor,
/// sorted by |J| then lexicographically.
std::vector<AmbientStratum> singular_strata(const WeightedSpace& space, Int max_dim);

/// Cyclic quotient type 1/r(a_1,...,a_n): the order r and one residue per
/// local coordinate. Residue 0 is allowed (transverse type along a curve).
struct CyclicQuotient {
    Int r = 1;
    std::vector<Int> residues;  // each in [0, r-1]

    bool operator==(const CyclicQuotient&) const = default;
    auto operator<=>(const CyclicQuotient&) const = default;
};

std::string quotient_to_string(const CyclicQuotient& q);

/// Small action: no leave-one-out gcd with r exceeds 1 (no reflections).
bool is_small_action(const CyclicQuotient& q);

/// Isolated singularity: every residue coprime to r.
bool is_isolated_quotient(const CyclicQuotient& q);

/// Orbit normal form under unit multiplication and permutation of residues:
/// the lexicographically smallest ascending residue tuple over all unit
/// multipliers. Two types are geometrically equal iff normal forms are equal.
/// Throws RejectNonSmallAction on non-small input.
CyclicQuotient normalize_quotient(const CyclicQuotient& q);

struct RejectNonSmallAction : std::domain_error {
    explicit RejectNonSmallAction(const std::string& what) : std::domain_error(what) {}
};

/// Sum of fractional parts frac(k*a_i/r), exact, for 1 <= k <= r-1.
Rat reid_tai_sum(const CyclicQuotient& q, Int k);

enum class SingClass : std::uint8_t { Smooth, Terminal, CanonicalNonTerminal, NonCanonical };

const char* sing_class_name(SingClass c);

/// Reid-Tai classification: terminal iff every sum exceeds 1, canonical iff
/// every sum is at least 1 with equality somewhere, smooth iff r = 1.
SingClass classify_quotient(const CyclicQuotient& q);

/// For a terminal 3-residue type, the pair (b, r) with 0 < b <= r/2 and
/// gcd(b, r) = 1 whose type 1/r(1, r-1, b) has the same normal form.
/// Absent when the type is not terminal (or is smooth).
std::optional<std::pair<Int, Int>> is_three_fold_terminal_form(const CyclicQuotient& q);

}  // namespace mwci
