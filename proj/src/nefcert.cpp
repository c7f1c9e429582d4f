#include "mwci/nefcert.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mwci {

const char* criterion_name(CriterionKind kind) {
    switch (kind) {
        case CriterionKind::IBranchA: return "I-branchA";
        case CriterionKind::IBranchB: return "I-branchB";
        case CriterionKind::IICase1: return "II-case1";
        case CriterionKind::IICase2: return "II-case2";
        case CriterionKind::III: return "III";
    }
    return "?";
}

namespace {

std::vector<std::vector<Int>> monomials_of_degree(const std::vector<Int>& weights, Int degree) {
    std::vector<std::vector<Int>> out;
    std::vector<Int> expo(weights.size(), 0);
    auto rec = [&](auto&& self, size_t i, Int remaining) -> void {
        if (i + 1 == weights.size()) {
            if (remaining % weights[i] == 0) {
                expo[i] = remaining / weights[i];
                out.push_back(expo);
            }
            return;
        }
        for (Int m = 0; m * weights[i] <= remaining; ++m) {
            expo[i] = m;
            self(self, i + 1, remaining - m * weights[i]);
        }
        expo[i] = 0;
    };
    if (degree >= 0) rec(rec, 0, degree);
    std::sort(out.begin(), out.end());
    return out;
}

/// Whether the full degree-D monomial set is {g1^i g2^(k-i)} for some k > 1.
bool is_pencil_power_set(const std::vector<std::vector<Int>>& sorted_monomials, Int degree) {
    const Int k = static_cast<Int>(sorted_monomials.size()) - 1;
    if (k < 2 || degree % k != 0) return false;
    const size_t nv = sorted_monomials.front().size();
    std::vector<Int> g_lo(nv), g_hi(nv);
    for (size_t i = 0; i < nv; ++i) {
        if (sorted_monomials.front()[i] % k || sorted_monomials.back()[i] % k) return false;
        g_lo[i] = sorted_monomials.front()[i] / k;
        g_hi[i] = sorted_monomials.back()[i] / k;
    }
    std::vector<std::vector<Int>> pencil;
    for (Int i = 0; i <= k; ++i) {
        std::vector<Int> v(nv);
        for (size_t t = 0; t < nv; ++t) v[t] = i * g_hi[t] + (k - i) * g_lo[t];
        pencil.push_back(std::move(v));
    }
    std::sort(pencil.begin(), pencil.end());
    return pencil == sorted_monomials;
}

/// Hypersurface-curve conditions in three variables: at least two monomials,
/// no common divisor, and the monomial set is not composed with a pencil
/// (with the two quick monomial patterns tried first).
bool three_variable_curve_irreducible(const std::vector<Int>& weights, Int degree) {
    auto mons = monomials_of_degree(weights, degree);
    if (mons.size() < 2) return false;
    for (size_t v = 0; v < weights.size(); ++v) {
        Int mn = mons.front()[v];
        for (const auto& m : mons) mn = std::min(mn, m[v]);
        if (mn > 0) return false;  // common divisor
    }
    auto support = [](const std::vector<Int>& m) {
        unsigned s = 0;
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) s |= 1u << i;
        return s;
    };
    // pattern: three two-variable monomials covering all three pairs
    {
        unsigned seen = 0;
        for (const auto& m : mons) {
            unsigned s = support(m);
            if (s == 0b011u) seen |= 1;
            if (s == 0b110u) seen |= 2;
            if (s == 0b101u) seen |= 4;
        }
        if (seen == 7) return true;
    }
    // pattern: a pure power and a coprime complementary monomial
    for (int x = 0; x < 3; ++x) {
        std::optional<Int> pure;
        for (const auto& m : mons)
            if (support(m) == (1u << x)) pure = m[x];
        if (!pure) continue;
        for (const auto& m : mons) {
            if (m[x] != 0) continue;
            Int g = std::gcd(*pure, std::gcd(m[(x + 1) % 3], m[(x + 2) % 3]));
            if (g == 1) return true;
        }
    }
    return !is_pencil_power_set(mons, degree);
}

bool quasi_smooth_not_cone(const std::vector<Int>& weights, const std::vector<Int>& degrees) {
    WciFamily g{WeightedSpace{weights}, degrees};
    if (g.is_linear_cone()) return false;
    return is_quasi_smooth_general(g);
}

/// Restriction-to-surface test for a codimension-2 curve in four variables.
bool four_variable_ci_curve_irreducible(const std::vector<Int>& weights,
                                        const std::vector<Int>& degrees) {
    for (Int d : degrees)
        if (!quasi_smooth_not_cone(weights, {d})) return false;  // surfaces must be irreducible
    // common base locus of the two systems must be zero-dimensional
    RepresentabilityTable reps(weights);
    for (std::uint32_t mask = 1; mask < (1u << weights.size()); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        if (!reps.representable(mask, degrees[0]) && !reps.representable(mask, degrees[1]))
            return false;
    }
    for (int j = 0; j < 2; ++j) {
        auto mons = monomials_of_degree(weights, degrees[j]);
        if (mons.size() >= 2 && !is_pencil_power_set(mons, degrees[j])) return true;
    }
    return false;
}

Int sum_of(const std::vector<Int>& v) {
    Int s = 0;
    for (Int x : v) s += x;
    return s;
}

BigInt product_of_degrees(const WciFamily& f) {
    BigInt p = 1;
    for (Int d : f.degrees) p *= d;
    return p;
}

/// e-vectors for a point of the locus in the order of the given chart: unit
/// multiples of the chart residues with positive entries, entry sum < r and
/// entry gcd 1, optionally pinned to a required multiset.
std::vector<std::vector<Int>> chart_weight_options(const WciFamily& f, const SingularLocus& locus,
                                                   const std::array<int, 3>& chart,
                                                   const std::optional<std::vector<Int>>& required) {
    const Int r = locus.e;
    std::vector<std::vector<Int>> out;
    for (Int m = 1; m < r; ++m) {
        if (std::gcd(m, r) != 1) continue;
        std::vector<Int> e(3);
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            e[i] = (m * (f.space.weights[chart[i]] % r)) % r;
            if (e[i] == 0) ok = false;
        }
        if (!ok || sum_of(e) >= r || gcd_all(e) != 1) continue;
        if (required) {
            std::vector<Int> sorted = e;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != *required) continue;
        }
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        Int sx = sum_of(x), sy = sum_of(y);
        if (sx != sy) return sx < sy;
        return x < y;
    });
    return out;
}

std::vector<int> complement_of(const WciFamily& f, std::span<const int> used) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(f.space.weights.size()); ++i)
        if (std::find(used.begin(), used.end(), i) == used.end()) out.push_back(i);
    return out;
}

ConditionRecord numeric_condition(std::string id, Rat lhs, Rat rhs) {
    ConditionRecord c;
    c.id = std::move(id);
    c.numeric = true;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    c.slack = c.lhs - c.rhs;
    c.pass = c.slack >= 0;
    return c;
}

ConditionRecord predicate_condition(std::string id, bool pass) {
    ConditionRecord c;
    c.id = std::move(id);
    c.pass = pass;
    return c;
}

bool exceptional_space_well_formed(const std::vector<Int>& evec) {
    return is_well_formed_space(WeightedSpace{evec});
}

}  // namespace

IrreducibilityResult curve_irreducible(const std::vector<Int>& weights,
                                       const std::vector<Int>& degrees) {
    if (weights.size() != degrees.size() + 2)
        throw std::domain_error("curve space must have codimension-plus-two weights");
    WciFamily curve{WeightedSpace{weights}, degrees};
    if (!curve.is_linear_cone() && is_quasi_smooth_general(curve)) {
        RepresentabilityTable reps(weights);
        bool contains_line = false;
        for (size_t i = 0; i < weights.size() && !contains_line; ++i)
            for (size_t j = i + 1; j < weights.size() && !contains_line; ++j) {
                std::uint32_t mask = (1u << i) | (1u << j);
                bool some = false;
                for (Int d : degrees) some = some || reps.representable(mask, d);
                contains_line = !some;
            }
        if (!contains_line) return {true, "quasi-smooth-curve"};
    }
    if (degrees.size() == 1 && three_variable_curve_irreducible(weights, degrees[0]))
        return {true, "pencil-test"};
    if (degrees.size() == 2 && four_variable_ci_curve_irreducible(weights, degrees))
        return {true, "codim2-restriction"};
    return {false, "unknown"};
}

NefCertificate check_criterion_I(const WciFamily& f, const SingularLocus& locus,
                                 const std::optional<std::vector<Int>>& bweight,
                                 std::optional<int> k_coordinate) {
    if (locus.locus_dim != 0 || locus.local_charts.empty())
        throw PositionMismatch("criterion I needs a point locus with local coordinates");
    const Int alpha = amplitude(f);
    const Int r = locus.e;
    RepresentabilityTable reps(f.space.weights);
    bool any_arrangement = false;

    for (const auto& chart : locus.local_charts) {
        auto rest = complement_of(f, chart);
        if (stratum_intersection_dim(f, reps, rest) > 0) continue;
        for (const auto& evec : chart_weight_options(f, locus, chart, bweight)) {
            any_arrangement = true;
            const Int rme = r - sum_of(evec);
            BigInt rest_prod = 1;
            for (int u : rest) rest_prod *= f.space.weights[u];

            // second branch: all inequalities plus finiteness
            if (!k_coordinate) {
                NefCertificate cert;
                cert.kind = CriterionKind::IBranchB;
                bool ok = true;
                for (int j = 0; j < 3; ++j) {
                    auto c = numeric_condition("I.B.1(x" + std::to_string(j + 1) + ")",
                                               Rat(alpha * evec[j]),
                                               Rat(f.space.weights[chart[j]] * rme));
                    ok = ok && c.pass;
                    cert.conditions.push_back(std::move(c));
                }
                cert.conditions.push_back(predicate_condition("I.B.2(finite)", true));
                bool wf = exceptional_space_well_formed(evec);
                cert.conditions.push_back(predicate_condition("I.B.3(well-formed)", wf));
                ok = ok && wf;
                if (ok) {
                    cert.valid = true;
                    cert.irreducibility_tag = "finite-set";
                    cert.charts = {chart};
                    cert.point_weights = {evec};
                    return cert;
                }
            }
            // first branch, k ascending over the local coordinates
            for (int kpos = 0; kpos < 3; ++kpos) {
                if (k_coordinate && chart[kpos] != *k_coordinate) continue;
                NefCertificate cert;
                cert.kind = CriterionKind::IBranchA;
                cert.k_coordinate = chart[kpos];
                bool ok = true;
                for (int j = 0; j < 3; ++j) {
                    if (j == kpos) continue;
                    auto c = numeric_condition("I.A.1(x" + std::to_string(j + 1) + ")",
                                               Rat(alpha * evec[j]),
                                               Rat(f.space.weights[chart[j]] * rme));
                    ok = ok && c.pass;
                    cert.conditions.push_back(std::move(c));
                }
                if (!ok) continue;
                {
                    auto c = numeric_condition(
                        "I.A.2", Rat(BigInt(alpha) * product_of_degrees(f) * r * evec[kpos]),
                        Rat(BigInt(f.space.weights[chart[kpos]]) * rest_prod * rme));
                    ok = ok && c.pass;
                    cert.conditions.push_back(std::move(c));
                }
                if (!ok) continue;
                std::vector<Int> curve_weights{f.space.weights[chart[kpos]]};
                for (int u : rest) curve_weights.push_back(f.space.weights[u]);
                auto irr = curve_irreducible(curve_weights, f.degrees);
                cert.conditions.push_back(predicate_condition("I.A.3(irreducible)", irr.irreducible));
                if (!irr.irreducible) continue;
                bool wf = exceptional_space_well_formed(evec);
                cert.conditions.push_back(predicate_condition("I.A.4(well-formed)", wf));
                if (!wf) continue;
                cert.valid = true;
                cert.irreducibility_tag = irr.tag;
                cert.charts = {chart};
                cert.point_weights = {evec};
                return cert;
            }
        }
    }
    if (!any_arrangement)
        throw PositionMismatch("no admissible arrangement for the center " +
                               quotient_to_string(locus.quotient));
    throw NoPassingBranch("criterion I fails for " + quotient_to_string(locus.quotient));
}

namespace {

struct ExpandedPoint {
    const SingularLocus* locus;
    const std::optional<std::vector<Int>>* required;
};

std::vector<ExpandedPoint> expand_points(std::span<const CenterSpec> centers) {
    std::vector<ExpandedPoint> pts;
    for (const auto& c : centers)
        for (Int i = 0; i < c.count; ++i) pts.push_back({c.locus, &c.required_weights});
    return pts;
}

NefCertificate try_case2(const WciFamily& f, std::span<const CenterSpec> centers,
                         const RepresentabilityTable& reps, std::optional<int> k_coordinate) {
    auto pts = expand_points(centers);
    const Int alpha = amplitude(f);
    // shared chart: present in every point's chart list
    for (const auto& chart : pts.front().locus->local_charts) {
        bool shared = true;
        for (const auto& p : pts)
            shared = shared && std::find(p.locus->local_charts.begin(), p.locus->local_charts.end(),
                                         chart) != p.locus->local_charts.end();
        if (!shared) continue;
        auto rest = complement_of(f, chart);
        if (stratum_intersection_dim(f, reps, rest) > 0) continue;
        BigInt rest_prod = 1;
        for (int u : rest) rest_prod *= f.space.weights[u];

        for (int kpos = 0; kpos < 3; ++kpos) {
            if (k_coordinate && chart[kpos] != *k_coordinate) continue;
            NefCertificate cert;
            cert.kind = CriterionKind::IICase2;
            cert.k_coordinate = chart[kpos];
            bool feasible = true;
            Rat rhs_sum;
            std::vector<std::vector<Int>> chosen;
            for (const auto& p : pts) {
                // per-point: the inequalities away from k plus well-formedness
                // restrict the options; the sum condition is separable, so the
                // minimizing option is picked independently.
                std::optional<std::vector<Int>> best;
                Rat best_term;
                for (const auto& evec : chart_weight_options(f, *p.locus, chart, *p.required)) {
                    const Int rme = p.locus->e - sum_of(evec);
                    bool ok = true;
                    for (int j = 0; j < 3 && ok; ++j) {
                        if (j == kpos) continue;
                        ok = alpha * evec[j] >= f.space.weights[chart[j]] * rme;
                    }
                    if (!ok || !exceptional_space_well_formed(evec)) continue;
                    Rat term(rme, p.locus->e * evec[kpos]);
                    if (!best || term < best_term) {
                        best = evec;
                        best_term = term;
                    }
                }
                if (!best) {
                    feasible = false;
                    break;
                }
                chosen.push_back(*best);
                rhs_sum += best_term;
            }
            if (!feasible) continue;
            for (size_t t = 0; t < pts.size(); ++t) {
                const Int rme = pts[t].locus->e - sum_of(chosen[t]);
                for (int j = 0; j < 3; ++j) {
                    if (j == kpos) continue;
                    cert.conditions.push_back(numeric_condition(
                        "II.2.1(Q" + std::to_string(t + 1) + ",x" + std::to_string(j + 1) + ")",
                        Rat(alpha * chosen[t][j]), Rat(f.space.weights[chart[j]] * rme)));
                }
            }
            auto c2 = numeric_condition(
                "II.2.2",
                Rat(BigInt(alpha) * product_of_degrees(f),
                    BigInt(f.space.weights[chart[kpos]]) * rest_prod),
                rhs_sum);
            bool pass = c2.pass;
            cert.conditions.push_back(std::move(c2));
            if (!pass) continue;
            std::vector<Int> curve_weights{f.space.weights[chart[kpos]]};
            for (int u : rest) curve_weights.push_back(f.space.weights[u]);
            auto irr = curve_irreducible(curve_weights, f.degrees);
            cert.conditions.push_back(predicate_condition("II.2.3(irreducible)", irr.irreducible));
            if (!irr.irreducible) continue;
            for (size_t t = 0; t < pts.size(); ++t)
                cert.conditions.push_back(predicate_condition(
                    "II.2.4(Q" + std::to_string(t + 1) + " well-formed)", true));
            cert.valid = true;
            cert.irreducibility_tag = irr.tag;
            cert.charts.assign(pts.size(), chart);
            cert.point_weights = chosen;
            return cert;
        }
    }
    NefCertificate invalid;
    invalid.kind = CriterionKind::IICase2;
    return invalid;
}

NefCertificate try_case1(const WciFamily& f, std::span<const CenterSpec> centers,
                         const RepresentabilityTable& reps) {
    auto pts = expand_points(centers);
    const Int alpha = amplitude(f);
    const int nvars = static_cast<int>(f.space.weights.size());
    const Int c = f.codim();
    if (static_cast<Int>(pts.size()) > c + 2) {
        NefCertificate invalid;
        invalid.kind = CriterionKind::IICase1;
        return invalid;
    }
    for (int u = 0; u < nvars; ++u) {
        for (int v = u + 1; v < nvars; ++v) {
            // per point: admissible own coordinates with their best weights
            struct OwnOption {
                int own;
                std::array<int, 3> chart;
                std::vector<Int> evec;
                Rat term;
            };
            std::vector<std::vector<OwnOption>> options(pts.size());
            bool viable = true;
            for (size_t t = 0; t < pts.size() && viable; ++t) {
                for (const auto& chart : pts[t].locus->local_charts) {
                    int pos_u = -1, pos_v = -1, pos_o = -1;
                    for (int i = 0; i < 3; ++i) {
                        if (chart[i] == u) pos_u = i;
                        else if (chart[i] == v) pos_v = i;
                        else pos_o = i;
                    }
                    if (pos_u < 0 || pos_v < 0) continue;
                    int own = chart[pos_o];
                    std::vector<int> pi{u, v, own};
                    auto rest_t = complement_of(f, pi);
                    if (stratum_intersection_dim(f, reps, rest_t) > 0) continue;
                    for (const auto& evec : chart_weight_options(f, *pts[t].locus, chart,
                                                                 *pts[t].required)) {
                        const Int rme = pts[t].locus->e - sum_of(evec);
                        if (alpha * evec[pos_u] < f.space.weights[u] * rme) continue;
                        if (alpha * evec[pos_v] < f.space.weights[v] * rme) continue;
                        if (!exceptional_space_well_formed(evec)) continue;
                        // store in (u, v, own) order
                        OwnOption opt;
                        opt.own = own;
                        opt.chart = {u, v, own};
                        opt.evec = {evec[pos_u], evec[pos_v], evec[pos_o]};
                        opt.term = Rat(rme, pts[t].locus->e * evec[pos_o]);
                        auto it = std::find_if(options[t].begin(), options[t].end(),
                                               [&](const OwnOption& o) { return o.own == own; });
                        if (it == options[t].end()) options[t].push_back(std::move(opt));
                        else if (opt.term < it->term) *it = std::move(opt);
                    }
                }
                if (options[t].empty()) viable = false;
            }
            if (!viable) continue;
            // choose distinct own coordinates minimizing the term sum
            std::vector<int> pick(pts.size(), -1);
            std::vector<const OwnOption*> best_assign;
            Rat best_sum;
            std::vector<const OwnOption*> cur(pts.size(), nullptr);
            auto rec = [&](auto&& self, size_t t, Rat acc) -> void {
                if (t == pts.size()) {
                    if (best_assign.empty() || acc < best_sum) {
                        best_assign = cur;
                        best_sum = acc;
                    }
                    return;
                }
                for (const auto& opt : options[t]) {
                    bool used = false;
                    for (size_t q = 0; q < t; ++q) used = used || cur[q]->own == opt.own;
                    if (used) continue;
                    cur[t] = &opt;
                    self(self, t + 1, acc + opt.term);
                }
            };
            rec(rec, 0, Rat(0));
            if (best_assign.empty()) continue;

            NefCertificate cert;
            cert.kind = CriterionKind::IICase1;
            Rat rhs_sum = best_sum;
            for (size_t t = 0; t < pts.size(); ++t) {
                const auto& opt = *best_assign[t];
                const Int rme = pts[t].locus->e - sum_of(opt.evec);
                cert.conditions.push_back(numeric_condition(
                    "II.1.1(Q" + std::to_string(t + 1) + ",x1)", Rat(alpha * opt.evec[0]),
                    Rat(f.space.weights[u] * rme)));
                cert.conditions.push_back(numeric_condition(
                    "II.1.1(Q" + std::to_string(t + 1) + ",x2)", Rat(alpha * opt.evec[1]),
                    Rat(f.space.weights[v] * rme)));
            }
            BigInt denom = 1;
            for (int i = 0; i < nvars; ++i)
                if (i != u && i != v) denom *= f.space.weights[i];
            auto c2 = numeric_condition("II.1.2",
                                        Rat(BigInt(alpha) * product_of_degrees(f), denom), rhs_sum);
            bool pass = c2.pass;
            cert.conditions.push_back(std::move(c2));
            if (!pass) continue;
            std::vector<Int> curve_weights;
            for (int i = 0; i < nvars; ++i)
                if (i != u && i != v) curve_weights.push_back(f.space.weights[i]);
            auto irr = curve_irreducible(curve_weights, f.degrees);
            cert.conditions.push_back(predicate_condition("II.1.3(irreducible)", irr.irreducible));
            if (!irr.irreducible) continue;
            for (size_t t = 0; t < pts.size(); ++t)
                cert.conditions.push_back(predicate_condition(
                    "II.1.4(Q" + std::to_string(t + 1) + " well-formed)", true));
            cert.valid = true;
            cert.irreducibility_tag = irr.tag;
            for (size_t t = 0; t < pts.size(); ++t) {
                cert.charts.push_back(best_assign[t]->chart);
                cert.point_weights.push_back(best_assign[t]->evec);
            }
            return cert;
        }
    }
    NefCertificate invalid;
    invalid.kind = CriterionKind::IICase1;
    return invalid;
}

}  // namespace

NefCertificate check_criterion_II(const WciFamily& f, std::span<const CenterSpec> centers,
                                  int case_id, std::optional<int> k_coordinate) {
    Int total = 0;
    for (const auto& c : centers) total += c.count;
    if (total == 1) {
        // one point degenerates to the single-point criterion
        return check_criterion_I(f, *centers.front().locus, centers.front().required_weights,
                                 k_coordinate);
    }
    for (const auto& c : centers) {
        if (c.locus->locus_dim != 0 || c.locus->local_charts.empty())
            throw PositionMismatch("criterion II centers must be point loci");
    }
    RepresentabilityTable reps(f.space.weights);
    if (case_id == 0 || case_id == 2) {
        auto cert = try_case2(f, centers, reps, k_coordinate);
        if (cert.valid) return cert;
        if (case_id == 2) throw NoPassingBranch("criterion II case 2 fails");
    }
    if (case_id == 0 || case_id == 1) {
        auto cert = try_case1(f, centers, reps);
        if (cert.valid) return cert;
        if (case_id == 1) throw NoPassingBranch("criterion II case 1 fails");
    }
    throw NoPassingBranch("criterion II fails in both cases");
}

NefCertificate check_criterion_III(const WciFamily& f, const SingularLocus& locus,
                                   const std::optional<std::vector<Int>>& first_bweight,
                                   const std::optional<std::vector<Int>>& second_bweight) {
    if (locus.locus_dim != 0 || locus.local_charts.empty())
        throw PositionMismatch("criterion III needs a point locus with local coordinates");
    const Int alpha = amplitude(f);
    const Int r = locus.e;
    RepresentabilityTable reps(f.space.weights);
    bool first_step_found = false;

    for (const auto& chart : locus.local_charts) {
        auto rest = complement_of(f, chart);
        if (stratum_intersection_dim(f, reps, rest) > 0) continue;
        BigInt rest_prod = 1;
        for (int u : rest) rest_prod *= f.space.weights[u];
        for (const auto& evec : chart_weight_options(f, locus, chart, first_bweight)) {
            const Int rme = r - sum_of(evec);
            for (int kpos = 0; kpos < 3; ++kpos) {
                const int j1 = (kpos + 1) % 3, j2 = (kpos + 2) % 3;
                // the two transverse inequalities must be exact equalities
                if (alpha * evec[j1] != f.space.weights[chart[j1]] * rme) continue;
                if (alpha * evec[j2] != f.space.weights[chart[j2]] * rme) continue;
                // remaining first-step conditions
                if (Rat(BigInt(alpha) * product_of_degrees(f) * r * evec[kpos]) <
                    Rat(BigInt(f.space.weights[chart[kpos]]) * rest_prod * rme))
                    continue;
                std::vector<Int> curve_weights{f.space.weights[chart[kpos]]};
                for (int u : rest) curve_weights.push_back(f.space.weights[u]);
                auto irr = curve_irreducible(curve_weights, f.degrees);
                if (!irr.irreducible) continue;
                if (!exceptional_space_well_formed(evec)) continue;
                first_step_found = true;

                const Int r2 = evec[kpos];
                if (r2 == 1) continue;  // smooth chart, nothing to resolve
                // chart residues in (H1, H2, E) order
                std::vector<Int> chart_res{((-evec[j1]) % r2 + r2) % r2,
                                           ((-evec[j2]) % r2 + r2) % r2, r % r2};
                CyclicQuotient chart_type{r2, chart_res};
                if (classify_quotient(normalize_quotient(chart_type)) != SingClass::NonCanonical)
                    continue;
                for (Int m = 1; m < r2; ++m) {
                    if (std::gcd(m, r2) != 1) continue;
                    std::vector<Int> fv(3);
                    bool pos = true;
                    for (int i = 0; i < 3; ++i) {
                        fv[i] = (m * chart_res[i]) % r2;
                        if (fv[i] == 0) pos = false;
                    }
                    if (!pos || sum_of(fv) >= r2 || gcd_all(fv) != 1) continue;
                    if (second_bweight) {
                        auto sorted = fv;
                        std::sort(sorted.begin(), sorted.end());
                        if (sorted != *second_bweight) continue;
                    }
                    const Int rmf = r2 - sum_of(fv);
                    NefCertificate cert;
                    cert.kind = CriterionKind::III;
                    cert.k_coordinate = chart[kpos];
                    cert.conditions.push_back(numeric_condition(
                        "III.1(x1)", Rat(alpha * evec[j1]), Rat(f.space.weights[chart[j1]] * rme)));
                    cert.conditions.push_back(numeric_condition(
                        "III.1(x2)", Rat(alpha * evec[j2]), Rat(f.space.weights[chart[j2]] * rme)));
                    bool ok = true;
                    for (int i = 0; i < 2; ++i) {
                        int jj = i == 0 ? j1 : j2;
                        auto c = numeric_condition("III.2(x" + std::to_string(i + 1) + ")",
                                                   Rat(alpha * fv[i]),
                                                   Rat(f.space.weights[chart[jj]] * rmf));
                        ok = ok && c.pass;
                        cert.conditions.push_back(std::move(c));
                    }
                    if (!ok) continue;
                    Rat lhs(BigInt(alpha) * product_of_degrees(f),
                            BigInt(f.space.weights[chart[kpos]]) * rest_prod);
                    Rat rhs = Rat(rme, r * evec[kpos]) + Rat(rmf, r2 * fv[2]);
                    auto c3 = numeric_condition("III.3", lhs, rhs);
                    ok = c3.pass;
                    cert.conditions.push_back(std::move(c3));
                    if (!ok) continue;
                    bool wf2 = exceptional_space_well_formed(fv);
                    cert.conditions.push_back(predicate_condition("III.4(well-formed)", wf2));
                    if (!wf2) continue;
                    cert.conditions.push_back(
                        predicate_condition("III.first-step(irreducible)", true));
                    cert.valid = true;
                    cert.irreducibility_tag = irr.tag;
                    cert.charts = {{chart[j1], chart[j2], chart[kpos]}};
                    cert.point_weights = {{evec[j1], evec[j2], evec[kpos]}};
                    cert.second_weight = fv;
                    cert.second_order = r2;
                    return cert;
                }
            }
        }
    }
    if (!first_step_found)
        throw FirstStepNotCertified("no equality-pinned first-step certificate for " +
                                    quotient_to_string(locus.quotient));
    throw NoPassingBranch("criterion III second-step conditions fail");
}

}  // namespace mwci
