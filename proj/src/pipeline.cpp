#include "mwci/pipeline.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mwci {

namespace {

PipelineResult reject(PipelineResult res, std::string step) {
    res.accepted = false;
    res.failure_step = std::move(step);
    return res;
}

bool quotient_matches(const CyclicQuotient& normalized, Int r, const std::vector<Int>& weights) {
    if (normalized.r != r) return false;
    return normalize_quotient(CyclicQuotient{r, weights}) == normalized;
}

struct CenterState {
    int locus_index;
    const SingularLocus* locus;
    Int count;
    std::optional<std::vector<Int>> pinned_weights;         // sorted multiset
    std::optional<std::vector<Int>> pinned_second_weights;  // sorted multiset
    std::optional<Int> pinned_second_r;
};

/// Assemble the final singularity lists for a plan: the surviving loci plus
/// the chart types of every step, with criterion-III second steps replacing
/// the first step's distinguished chart.
void finalize_plan(const StratificationReport& strat, BlowupPlan& plan) {
    plan.final_points.clear();
    plan.final_curves.clear();
    std::map<int, Int> blown;  // locus index -> points blown up there
    for (const auto& step : plan.steps)
        if (step.level == 1) blown[step.locus_index] += 1;
    for (int li = 0; li < static_cast<int>(strat.loci.size()); ++li) {
        const auto& locus = strat.loci[li];
        if (locus.locus_dim == 1) {
            plan.final_curves.push_back(locus.quotient);
            continue;
        }
        Int remaining = locus.count - (blown.count(li) ? blown[li] : 0);
        for (Int k = 0; k < remaining; ++k) plan.final_points.push_back(locus.quotient);
    }
    for (size_t si = 0; si < plan.steps.size(); ++si) {
        const auto& step = plan.steps[si];
        // a later step centered on one of this step's charts consumes it
        std::vector<CyclicQuotient> consumed;
        for (const auto& other : plan.steps)
            if (other.parent_step == static_cast<int>(si))
                consumed.push_back(normalize_quotient(other.weight));
        for (const auto& chart : exceptional_charts(step)) {
            auto it = std::find(consumed.begin(), consumed.end(), chart);
            if (it != consumed.end()) {
                consumed.erase(it);
                continue;
            }
            plan.final_points.push_back(chart);
        }
    }
    std::sort(plan.final_points.begin(), plan.final_points.end());
    std::sort(plan.final_curves.begin(), plan.final_curves.end());
}

bool charts_all_canonical(const BlowupPlan& plan) {
    for (const auto& q : plan.final_points)
        if (classify_quotient(q) == SingClass::NonCanonical) return false;
    return true;
}

int noncanonical_chart_count(Int r, const std::vector<Int>& weights) {
    BlowupStep step;
    step.weight = {r, weights};
    int bad = 0;
    for (const auto& chart : exceptional_charts(step))
        if (classify_quotient(chart) == SingClass::NonCanonical) ++bad;
    return bad;
}

}  // namespace

PipelineResult verify_candidate(const CandidateInput& input, const VerifyOptions& opts) {
    PipelineResult res;
    res.family = input.family;
    std::sort(res.family.space.weights.begin(), res.family.space.weights.end());
    std::sort(res.family.degrees.begin(), res.family.degrees.end());
    const WciFamily& f = res.family;
    res.alpha = amplitude(f);

    if (f.dim() != 3) return reject(std::move(res), "dimension");
    if (res.alpha <= 0) return reject(std::move(res), "amplitude");
    if (f.is_linear_cone()) return reject(std::move(res), "linear-cone");
    if (!is_well_formed(f)) return reject(std::move(res), "well-formed");
    if (!is_quasi_smooth_general(f, opts.want_qs_trace ? &res.qs_trace : nullptr))
        return reject(std::move(res), "quasi-smooth");

    try {
        res.strat = stratify(f);
    } catch (const std::domain_error&) {
        return reject(std::move(res), "stratify");
    }
    res.has_non_isolated_canonical = res.strat.has_non_isolated_canonical;

    for (int li : res.strat.non_canonical)
        if (res.strat.loci[li].locus_dim != 0)
            return reject(std::move(res), "non-isolated-non-canonical");
    for (const auto& locus : res.strat.loci)
        if (locus.locus_dim == 1 && locus.sing_class == SingClass::NonCanonical)
            return reject(std::move(res), "non-isolated-non-canonical");
    if (res.strat.non_canonical.empty()) return reject(std::move(res), "no-non-canonical-point");

    // Pair the non-canonical loci with the requested plan, if one was given.
    std::vector<CenterState> centers;
    for (int li : res.strat.non_canonical)
        centers.push_back({li, &res.strat.loci[li], res.strat.loci[li].count, {}, {}, {}});
    Int total_points = 0;
    for (const auto& c : centers) total_points += c.count;

    if (input.plan) {
        std::map<int, Int> assigned;
        for (const auto& cp : *input.plan) {
            bool matched = false;
            for (auto& c : centers) {
                if (assigned[c.locus_index] >= c.count) continue;
                if (!quotient_matches(c.locus->quotient, cp.r, cp.weights)) continue;
                if (c.pinned_weights && *c.pinned_weights != cp.weights) continue;
                if (cp.second_weights &&
                    (c.pinned_second_weights && *c.pinned_second_weights != *cp.second_weights))
                    continue;
                assigned[c.locus_index] += 1;
                c.pinned_weights = cp.weights;
                if (cp.second_weights) {
                    c.pinned_second_weights = cp.second_weights;
                    c.pinned_second_r = cp.second_r;
                }
                matched = true;
                break;
            }
            if (!matched) return reject(std::move(res), "plan-mismatch");
        }
        for (const auto& c : centers)
            if (assigned[c.locus_index] != c.count) return reject(std::move(res), "plan-mismatch");
    }

    bool any_position = true;
    bool post_blowup_bad = false;
    bool certified = false;

    auto build_level1_steps = [&](const NefCertificate& cert) {
        res.plan.steps.clear();
        size_t w = 0;
        for (const auto& c : centers)
            for (Int i = 0; i < c.count; ++i, ++w) {
                BlowupStep step;
                step.locus_index = c.locus_index;
                step.level = 1;
                step.weight = {c.locus->e, cert.point_weights[w]};
                res.plan.steps.push_back(step);
            }
    };

    try {
        if (total_points == 1) {
            auto& center = centers.front();
            std::vector<std::vector<Int>> options;
            if (center.pinned_weights) {
                options = {*center.pinned_weights};
            } else {
                for (auto w : admissible_weights(center.locus->quotient)) {
                    std::sort(w.begin(), w.end());
                    if (std::find(options.begin(), options.end(), w) == options.end())
                        options.push_back(std::move(w));
                }
            }
            const bool want_second = center.pinned_second_weights.has_value();
            for (const auto& w : options) {
                int bad = noncanonical_chart_count(center.locus->e, w);
                try {
                    if (bad == 0 && !want_second) {
                        res.certificate = check_criterion_I(f, *center.locus, w);
                        build_level1_steps(res.certificate);
                        certified = true;
                        break;
                    }
                    if (bad == 1) {
                        res.certificate = check_criterion_III(f, *center.locus, w,
                                                              center.pinned_second_weights);
                        build_level1_steps(res.certificate);
                        BlowupStep second;
                        second.parent_step = 0;
                        second.level = 2;
                        second.weight = {res.certificate.second_order, res.certificate.second_weight};
                        res.plan.steps.push_back(second);
                        certified = true;
                        break;
                    }
                    post_blowup_bad = post_blowup_bad || bad > 0;
                } catch (const NoPassingBranch&) {
                } catch (const FirstStepNotCertified&) {
                }
            }
        } else {
            // bounded product over per-center weight multisets with canonical charts
            std::vector<std::vector<std::vector<Int>>> options(centers.size());
            for (size_t ci = 0; ci < centers.size(); ++ci) {
                if (centers[ci].pinned_weights) {
                    options[ci] = {*centers[ci].pinned_weights};
                    continue;
                }
                for (auto w : admissible_weights(centers[ci].locus->quotient)) {
                    std::sort(w.begin(), w.end());
                    if (std::find(options[ci].begin(), options[ci].end(), w) == options[ci].end())
                        options[ci].push_back(std::move(w));
                }
            }
            std::vector<size_t> pick(centers.size(), 0);
            auto rec = [&](auto&& self, size_t ci) -> bool {
                if (ci == centers.size()) {
                    std::vector<CenterSpec> specs;
                    for (size_t t = 0; t < centers.size(); ++t)
                        specs.push_back({centers[t].locus, centers[t].count,
                                         options[t][pick[t]]});
                    try {
                        res.certificate = check_criterion_II(f, specs, 0);
                        build_level1_steps(res.certificate);
                        return true;
                    } catch (const NoPassingBranch&) {
                        return false;
                    }
                }
                for (pick[ci] = 0; pick[ci] < options[ci].size(); ++pick[ci]) {
                    if (noncanonical_chart_count(centers[ci].locus->e, options[ci][pick[ci]]) > 0) {
                        post_blowup_bad = true;
                        continue;
                    }
                    if (self(self, ci + 1)) return true;
                }
                return false;
            };
            certified = rec(rec, 0);
        }
    } catch (const PositionMismatch&) {
        any_position = false;
    }

    if (!any_position) return reject(std::move(res), "position-mismatch");
    if (!certified)
        return reject(std::move(res), post_blowup_bad ? "post-blow-up" : "nef-certificate");

    finalize_plan(res.strat, res.plan);
    if (!charts_all_canonical(res.plan)) return reject(std::move(res), "post-blow-up");

    // invariants
    res.vol = volume_after(ambient_canonical_power(f), res.plan);
    if (res.vol < 0) return reject(std::move(res), "negative-volume");

    auto genera = chi_and_genera(f, &res.plan);
    res.p_g = genera.p_g;
    res.chi = genera.chi;
    res.p2_sections = genera.p2_sections;

    bool non_isolated_anywhere = res.strat.has_non_isolated_canonical;
    for (const auto& q : res.plan.final_points)
        if (!is_isolated_quotient(q)) non_isolated_anywhere = true;
    res.has_non_isolated_canonical = non_isolated_anywhere;

    if (!non_isolated_anywhere) {
        Terminalization term;
        try {
            term = terminalize(res.plan.final_points);
        } catch (const std::domain_error&) {
            return reject(std::move(res), "terminalize");
        }
        res.basket = term.basket;
        res.basket_source = "computed";
        res.rho = picard_number(res.plan, term, false);
        res.rho_source = "computed";
    } else if (input.annotation) {
        if (input.annotation->basket) {
            res.basket = *input.annotation->basket;
            res.basket_source = "annotated";
        }
        if (input.annotation->rho) {
            res.rho = input.annotation->rho;
            res.rho_source = "annotated";
        }
    }

    if (res.basket_source != "absent") {
        try {
            res.p2_reid = reid_plurigenus(res.vol, res.chi, res.basket, 2);
        } catch (const IntegralityError&) {
            return reject(std::move(res), "plurigenus-integrality");
        }
    }
    res.p2 = res.p2_sections ? *res.p2_sections : (res.p2_reid ? *res.p2_reid : genera.p2_raw);

    if (res.p_g >= 3) {
        auto pos = noether_position(res.vol, res.p_g);
        res.delta = pos.delta;
        res.noether = pos.tag;
    }
    res.kodaira_tag = res.vol == 0 ? "kodaira-2" : "general-type";
    res.accepted = true;
    return res;
}

}  // namespace mwci
