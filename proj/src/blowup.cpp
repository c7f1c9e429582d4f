#include "mwci/blowup.hpp"

#include <algorithm>
#include <numeric>

namespace mwci {

CyclicQuotient raw_chart(const CyclicQuotient& weight, int slot) {
    const Int e = weight.residues[slot];
    CyclicQuotient chart{e, std::vector<Int>(weight.residues.size())};
    for (size_t j = 0; j < weight.residues.size(); ++j)
        chart.residues[j] = ((static_cast<int>(j) == slot ? weight.r : -weight.residues[j]) % e + e) % e;
    return chart;
}

std::vector<CyclicQuotient> exceptional_charts(const BlowupStep& step) {
    std::vector<CyclicQuotient> out;
    for (size_t i = 0; i < step.weight.residues.size(); ++i)
        if (step.weight.residues[i] > 1)
            out.push_back(normalize_quotient(raw_chart(step.weight, static_cast<int>(i))));
    return out;
}

Rat discrepancy(const BlowupStep& step) {
    Int sum = 0;
    for (Int e : step.weight.residues) sum += e;
    return Rat(step.weight.r - sum, step.weight.r);
}

std::vector<std::vector<Int>> admissible_weights(const CyclicQuotient& type) {
    std::vector<std::vector<Int>> out;
    const Int r = type.r;
    for (Int m = 1; m < r; ++m) {
        if (std::gcd(m, r) != 1) continue;
        std::vector<Int> e(type.residues.size());
        Int sum = 0;
        bool ok = true;
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] = (m * type.residues[i]) % r;
            if (e[i] == 0) ok = false;
            sum += e[i];
        }
        if (!ok || sum >= r) continue;
        if (gcd_all(e) != 1) continue;
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        Int sx = 0, sy = 0;
        for (Int v : x) sx += v;
        for (Int v : y) sy += v;
        if (sx != sy) return sx < sy;
        return x < y;
    });
    return out;
}

Rat volume_after(const Rat& k_cube_before, const BlowupPlan& plan) {
    Rat vol = k_cube_before;
    for (const auto& step : plan.steps) {
        const auto& e = step.weight.residues;
        WeightedSpace exceptional{e};
        if (!is_well_formed_space(exceptional))
            throw WellFormednessError("exceptional weight space not well-formed for " +
                                      quotient_to_string(step.weight));
        Int sum = 0;
        BigInt prod = 1;
        for (Int v : e) {
            sum += v;
            prod *= v;
        }
        BigInt diff = step.weight.r - sum;
        vol -= Rat(diff * diff * diff, BigInt(step.weight.r) * prod);
    }
    return vol;
}

BlowupPlan plan_blowups(const StratificationReport& report, int depth_cap) {
    BlowupPlan plan;
    for (const auto& locus : report.loci) {
        if (locus.sing_class != SingClass::NonCanonical) continue;
        if (locus.locus_dim != 0)
            throw NonIsolatedNonCanonical("non-canonical locus of dimension 1: " +
                                          quotient_to_string(locus.quotient));
    }
    // level-1 steps, one per point counted with multiplicity
    for (int li = 0; li < static_cast<int>(report.loci.size()); ++li) {
        const auto& locus = report.loci[li];
        if (locus.locus_dim == 1) {
            plan.final_curves.push_back(locus.quotient);
            continue;
        }
        if (locus.sing_class != SingClass::NonCanonical) {
            for (Int k = 0; k < locus.count; ++k) plan.final_points.push_back(locus.quotient);
            continue;
        }
        auto weights = admissible_weights(locus.quotient);
        if (weights.empty())
            throw NonIsolatedNonCanonical("no admissible blow-up weight for " +
                                          quotient_to_string(locus.quotient));
        for (Int k = 0; k < locus.count; ++k) {
            BlowupStep step;
            step.locus_index = li;
            step.level = 1;
            step.weight = {locus.quotient.r, weights.front()};
            plan.steps.push_back(step);
        }
    }
    // iterate on non-canonical chart points
    for (size_t si = 0; si < plan.steps.size(); ++si) {
        const BlowupStep step = plan.steps[si];
        if (step.level > depth_cap) throw DepthExceeded("blow-up depth cap exceeded");
        for (const auto& chart : exceptional_charts(step)) {
            if (classify_quotient(chart) != SingClass::NonCanonical) {
                plan.final_points.push_back(chart);
                continue;
            }
            if (step.level + 1 > depth_cap) throw DepthExceeded("blow-up depth cap exceeded");
            auto weights = admissible_weights(chart);
            if (weights.empty())
                throw NonIsolatedNonCanonical("no admissible blow-up weight for chart " +
                                              quotient_to_string(chart));
            BlowupStep next;
            next.parent_step = static_cast<int>(si);
            next.level = step.level + 1;
            next.weight = {chart.r, weights.front()};
            plan.steps.push_back(next);
        }
    }
    std::sort(plan.final_points.begin(), plan.final_points.end());
    std::sort(plan.final_curves.begin(), plan.final_curves.end());
    return plan;
}

}  // namespace mwci
