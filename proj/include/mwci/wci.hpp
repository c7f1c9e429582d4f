#pragma once

#include "mwci/rational.hpp"
#include "mwci/wps.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mwci {

/// A family of weighted complete intersections: ambient weights plus the
/// multi-degrees of the defining forms. Fiber dimension n = N - c.
struct WciFamily {
    WeightedSpace space;         // N+1 = n + c + 1 weights
    std::vector<Int> degrees;    // d_1..d_c, c >= 1

    Int codim() const { return static_cast<Int>(degrees.size()); }
    Int dim() const { return space.dim() - codim(); }
    Int weight_sum() const;
    Int degree_sum() const;
    bool is_linear_cone() const;  // some d_i equals some a_j

    std::string id() const;  // canonical "d1,..,dc|a0,..,aN"
    bool operator==(const WciFamily&) const = default;
};

struct LinearConeError : std::domain_error {
    explicit LinearConeError(const std::string& what) : std::domain_error(what) {}
};

/// Amplitude: sum of degrees minus sum of weights (the canonical sheaf is
/// O(alpha) by adjunction). May be <= 0 for rejected candidates.
Int amplitude(const WciFamily& f);

/// Anticipated K^n of the family itself: alpha^n * prod(d) / prod(a).
Rat ambient_canonical_power(const WciFamily& f);

/// Number of non-negative integer solutions of sum m_i a_i = degree.
BigInt count_monomials(std::span<const Int> weights, Int degree);

/// Coefficient of t^k in prod(1 - t^{d_l}) / prod(1 - t^{a_i}), the dimension
/// of the k-graded part of the coordinate ring of a general member (the
/// defining forms are a regular sequence for quasi-smooth families).
BigInt hilbert_coefficient(const WciFamily& f, Int k);

/// Per-subset representability cache: which degrees are non-negative integer
/// combinations of the weights in a coordinate subset. Bounded DP per query,
/// memoized for the lifetime of one verification call.
class RepresentabilityTable {
public:
    explicit RepresentabilityTable(std::vector<Int> weights);

    /// True iff degree is a non-negative combination of {weights[i] : i in mask}.
    bool representable(std::uint32_t mask, Int degree) const;

    const std::vector<Int>& weights() const { return weights_; }

private:
    std::vector<Int> weights_;
    mutable std::vector<std::vector<std::uint64_t>> reach_;  // per mask, bitset over degree
    mutable std::vector<Int> reach_limit_;                   // degrees covered so far
    void extend(std::uint32_t mask, Int degree) const;
};

/// Trace of the quasi-smoothness decision, one entry per coordinate subset.
struct QsTrace {
    struct Entry {
        std::uint32_t subset = 0;          // bitmask of coordinate indices
        char condition = '?';              // '1' = first condition, '2' = second, 'F' = failed
        std::vector<int> q1_degrees;       // degree indices certifying the first condition
        int q2_l = -1;                     // fully representable prefix length
        std::vector<int> q2_prefix;        // degree indices representable on the subset
        std::vector<std::vector<int>> q2_pointers;  // per remaining degree: outside coordinates used
        std::string note;
    };
    std::vector<Entry> entries;
    bool passed = false;
};

/// Well-formedness of the family: the ambient space is well-formed and the
/// general member contains no codimension c+1 singular stratum.
bool is_well_formed(const WciFamily& f);

/// Quasi-smoothness of the general member, decided subset by subset.
/// Throws LinearConeError when some degree equals some weight.
bool is_quasi_smooth_general(const WciFamily& f, QsTrace* trace = nullptr);

}  // namespace mwci
