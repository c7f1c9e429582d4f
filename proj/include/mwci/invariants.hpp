#pragma once

#include "mwci/blowup.hpp"
#include "mwci/wci.hpp"

#include <optional>
#include <vector>

namespace mwci {

/// A terminal cyclic point 1/r(1,-1,b) recorded as (b, r) with multiplicity.
struct BasketEntry {
    Int b = 1;
    Int r = 2;
    Int multiplicity = 1;
    bool operator==(const BasketEntry&) const = default;
};
using Basket = std::vector<BasketEntry>;  // sorted by (r, b)

std::string basket_to_string(const Basket& basket);
Basket parse_basket(const std::string& text);  // "(1,3) 3x(1,4)" grammar; "x" or unicode times

struct NonTerminalInput : std::domain_error {
    explicit NonTerminalInput(const std::string& what) : std::domain_error(what) {}
};
struct NonCanonicalInput : std::domain_error {
    explicit NonCanonicalInput(const std::string& what) : std::domain_error(what) {}
};
struct NonIsolatedInput : std::domain_error {
    explicit NonIsolatedInput(const std::string& what) : std::domain_error(what) {}
};
struct IntegralityError : std::domain_error {
    explicit IntegralityError(const std::string& what) : std::domain_error(what) {}
};

/// Convert terminal isolated types to basket entries, merging multiplicities.
Basket assemble_basket(std::span<const CyclicQuotient> final_sings);

struct Terminalization {
    Basket basket;       // terminal content of the inputs
    Int rho_increment;   // crepant divisors extracted, summed over inputs
};

/// Crepant terminalization of isolated canonical points: subdivide each toric
/// cone at every lattice point of discrepancy zero and read the terminal
/// types off the resulting subcones. Terminal inputs pass through.
Terminalization terminalize(std::span<const CyclicQuotient> sings);

/// Crepant divisors over one isolated canonical point: the number of group
/// elements whose fractional-part sum is exactly one.
Int crepant_divisor_count(const CyclicQuotient& q);

/// 1 + number of blow-up steps + terminalization increment; absent when the
/// family or its blow-up carries non-isolated canonical loci.
std::optional<Int> picard_number(const BlowupPlan& plan, const Terminalization& term,
                                 bool has_non_isolated_canonical);

/// Sum over the basket of sum_{k=1}^{n-1} bk(r - bk)/2r with bk reduced mod r;
/// extended to negative arguments by l(-n) = -l(n+1).
Rat l_value(const Basket& basket, Int n);

/// Reid plurigenus P_n = (2n-1)n(n-1)/12 vol - (2n-1) chi + l(n), n >= 2.
/// Throws IntegralityError when the result is not a non-negative integer.
BigInt reid_plurigenus(const Rat& vol, const BigInt& chi, const Basket& basket, Int n);

struct GeneraResult {
    BigInt p_g;
    BigInt chi;                        // 1 - p_g
    std::optional<BigInt> p2_sections; // absent when some step has 2*sum(e) <= r
    BigInt p2_raw = 0;                 // section count at 2*alpha regardless
    bool discrepancy_ok = true;
};

/// Section-counting genera of the family; the degree-2alpha count descends to
/// the blown-up model only when every step satisfies 2(e_1+e_2+e_3) > r.
GeneraResult chi_and_genera(const WciFamily& f, const BlowupPlan* plan = nullptr);

enum class NoetherTag { OnFirst, OnSecond, OnThird, Between, Above, NotApplicable };
const char* noether_tag_name(NoetherTag tag);

struct NoetherPosition {
    Rat delta;  // vol - 4 p_g/3 + 10/3
    NoetherTag tag = NoetherTag::NotApplicable;
};

NoetherPosition noether_position(const Rat& vol, const BigInt& p_g);

/// The zero expression certifying vanishing volume of the parametric family:
/// (2r+4)(2r+2)alpha^3 / (4 a b r (r+1)(r+2)) - alpha^3/(r a b).
Rat kodaira2_identity(Int a, Int b, Int r);

}  // namespace mwci
