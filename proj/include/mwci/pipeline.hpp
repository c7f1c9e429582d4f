#pragma once

#include "mwci/invariants.hpp"
#include "mwci/nefcert.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mwci {

/// One blow-up center taken from a table row or candidate file: the first
/// (and, for two-step rows, second) weight as sorted multisets.
struct CenterPlan {
    Int r = 0;
    std::vector<Int> weights;             // sorted
    std::optional<Int> second_r;
    std::optional<std::vector<Int>> second_weights;  // sorted
};

struct Annotation {
    std::optional<Basket> basket;
    std::optional<Int> rho;
};

struct CandidateInput {
    WciFamily family;
    std::optional<std::vector<CenterPlan>> plan;  // absent: search for one
    std::optional<Annotation> annotation;
};

struct VerifyOptions {
    int depth_cap = 3;
    bool want_qs_trace = false;
};

/// Everything the report, tables and JSON need about one candidate.
struct PipelineResult {
    bool accepted = false;
    std::string failure_step;  // empty when accepted

    WciFamily family;
    Int alpha = 0;
    StratificationReport strat;
    NefCertificate certificate;
    BlowupPlan plan;
    QsTrace qs_trace;

    Rat vol;
    BigInt p_g = 0, chi = 0;
    BigInt p2 = 0;                       // reported value
    std::optional<BigInt> p2_sections;   // section count when the step condition holds
    std::optional<BigInt> p2_reid;       // Reid formula value when the basket is known
    Basket basket;
    std::string basket_source = "absent";  // computed | annotated | absent
    std::optional<Int> rho;
    std::string rho_source = "absent";     // computed | annotated | absent
    bool has_non_isolated_canonical = false;
    std::optional<Rat> delta;
    NoetherTag noether = NoetherTag::NotApplicable;
    std::string kodaira_tag = "general-type";
};

/// Steps 0-4 of the construction for one candidate. Rejections come back as
/// a result with `accepted == false` and the failing step named; exceptions
/// escape only for malformed inputs.
PipelineResult verify_candidate(const CandidateInput& input, const VerifyOptions& opts = {});

}  // namespace mwci
