#include "mwci/search.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

namespace mwci {

namespace {

/// Necessary screen, exact at single coordinates: every weight above one
/// needs a defining degree it divides or a distinct helper weight per degree.
bool vertex_conditions_hold(const std::vector<Int>& a, const std::vector<Int>& d) {
    const size_t n = a.size(), c = d.size();
    for (size_t i = 0; i < n; ++i) {
        if (a[i] == 1) continue;
        bool divides = false;
        for (Int dl : d) divides = divides || dl % a[i] == 0;
        if (divides) continue;
        // pointer sets per degree; a system of distinct representatives must exist
        std::uint32_t sets[3] = {0, 0, 0};
        for (size_t l = 0; l < c; ++l)
            for (size_t e = 0; e < n; ++e) {
                if (e == i || d[l] < a[e]) continue;
                if ((d[l] - a[e]) % a[i] == 0) sets[l] |= 1u << e;
            }
        bool ok = true;
        for (std::uint32_t grp = 1; grp < (1u << c) && ok; ++grp) {
            std::uint32_t u = 0;
            int sz = 0;
            for (size_t l = 0; l < c; ++l)
                if (grp >> l & 1) {
                    u |= sets[l];
                    ++sz;
                }
            ok = __builtin_popcount(u) >= sz;
        }
        if (!ok) return false;
    }
    return true;
}

bool keep_report(const SearchConfig& cfg, const PipelineResult& res) {
    if (cfg.filter == "general-type" && res.kodaira_tag != "general-type") return false;
    if (cfg.filter == "kodaira2" && res.kodaira_tag != "kodaira-2") return false;
    if (cfg.noether_band) {
        if (!res.delta) return false;
        if (*res.delta > *cfg.noether_band) return false;
    }
    return true;
}

struct Block {
    int codim;
    Int max_weight;
};

struct BlockOutput {
    std::vector<PipelineResult> reports;
    std::vector<Rejection> rejections;
    SearchStats stats;
};

BlockOutput process_block(const SearchConfig& cfg, const Block& block) {
    BlockOutput out;
    const int nvars = block.codim + 4;
    const int c = block.codim;
    const Int degree_sum_cap = c * cfg.degree_max;
    std::vector<Int> weights(nvars);
    weights[nvars - 1] = block.max_weight;

    auto try_degrees = [&](std::vector<Int>& degrees) {
        out.stats.candidates += 1;
        if (!vertex_conditions_hold(weights, degrees)) return;
        out.stats.screened += 1;
        CandidateInput in;
        in.family = {WeightedSpace{weights}, degrees};
        VerifyOptions opts;
        opts.depth_cap = cfg.depth_cap;
        auto res = verify_candidate(in, opts);
        if (res.accepted) {
            out.stats.accepted += 1;
            if (keep_report(cfg, res)) out.reports.push_back(std::move(res));
            return;
        }
        static const char* step0[] = {"dimension", "amplitude", "linear-cone",
                                      "well-formed", "quasi-smooth"};
        bool early = false;
        for (const char* s : step0) early = early || res.failure_step == s;
        if (!early && cfg.log_rejections)
            out.rejections.push_back({res.family.id(), res.failure_step});
    };

    auto sweep_degrees = [&](Int weight_sum) {
        for (Int alpha = cfg.alpha_min; alpha <= cfg.alpha_max; ++alpha) {
            const Int total = weight_sum + alpha;
            std::vector<Int> degrees(c);
            if (c == 1) {
                if (total < cfg.degree_min || total > cfg.degree_max) continue;
                degrees[0] = total;
                try_degrees(degrees);
            } else if (c == 2) {
                for (Int d1 = std::max(cfg.degree_min, total - cfg.degree_max);
                     2 * d1 <= total; ++d1) {
                    if (d1 > cfg.degree_max || total - d1 < cfg.degree_min) continue;
                    degrees[0] = d1;
                    degrees[1] = total - d1;
                    try_degrees(degrees);
                }
            } else {
                for (Int d1 = cfg.degree_min; 3 * d1 <= total && d1 <= cfg.degree_max; ++d1)
                    for (Int d2 = std::max(d1, total - d1 - cfg.degree_max);
                         2 * d2 <= total - d1; ++d2) {
                        const Int d3 = total - d1 - d2;
                        if (d2 > cfg.degree_max || d3 < cfg.degree_min || d3 > cfg.degree_max)
                            continue;
                        degrees[0] = d1;
                        degrees[1] = d2;
                        degrees[2] = d3;
                        try_degrees(degrees);
                    }
            }
        }
    };

    // ascending weight tuples with the fixed largest entry
    auto rec = [&](auto&& self, int pos, Int lower, Int sum_so_far) -> void {
        if (pos == nvars - 1) {
            out.stats.tuples += 1;
            if (!is_well_formed_space(WeightedSpace{weights})) return;
            sweep_degrees(sum_so_far + block.max_weight);
            return;
        }
        const Int remaining_slots = nvars - 1 - pos;
        for (Int w = lower; w <= block.max_weight; ++w) {
            const Int sum = sum_so_far + w;
            // every later slot is at least w; the total must leave room for
            // degrees of positive amplitude within the caps
            if (sum + (remaining_slots - 1) * w + block.max_weight + cfg.alpha_min >
                degree_sum_cap)
                break;
            weights[pos] = w;
            self(self, pos + 1, w, sum);
        }
    };
    if (block.max_weight + cfg.alpha_min <= degree_sum_cap) rec(rec, 0, 1, 0);
    return out;
}

}  // namespace

SearchResult run_search(const SearchConfig& cfg, ExecMode mode) {
    std::vector<Block> blocks;
    for (int c = cfg.codim_min; c <= cfg.codim_max; ++c) {
        Int max_cap = cfg.degree_max - 1;  // a weight equal to a degree is a cone
        if (cfg.weight_cap > 0) max_cap = std::min(max_cap, cfg.weight_cap);
        for (Int mw = max_cap; mw >= 1; --mw) blocks.push_back({c, mw});
    }
    std::vector<BlockOutput> outputs(blocks.size());

    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (size_t bi = 0; bi < blocks.size(); ++bi)
            outputs[bi] = process_block(cfg, blocks[bi]);
    } else {
        for (size_t bi = 0; bi < blocks.size(); ++bi)
            outputs[bi] = process_block(cfg, blocks[bi]);
    }

    SearchResult result;
    for (auto& o : outputs) {
        for (auto& r : o.reports) result.reports.push_back(std::move(r));
        for (auto& r : o.rejections) result.rejections.push_back(std::move(r));
        result.stats.tuples += o.stats.tuples;
        result.stats.candidates += o.stats.candidates;
        result.stats.screened += o.stats.screened;
        result.stats.accepted += o.stats.accepted;
    }
    auto key = [](const PipelineResult& r) {
        return std::make_tuple(r.family.codim(), r.family.space.weights, r.family.degrees);
    };
    std::sort(result.reports.begin(), result.reports.end(),
              [&](const PipelineResult& x, const PipelineResult& y) { return key(x) < key(y); });
    std::sort(result.rejections.begin(), result.rejections.end(),
              [](const Rejection& x, const Rejection& y) {
                  return std::tie(x.family_id, x.step) < std::tie(y.family_id, y.step);
              });
    return result;
}

Kod2Conditions generate_kodaira2_family(Int a, Int b, Int third_weight, Int r_max) {
    if (std::gcd(a, b) != 1) throw std::domain_error("the two blow-up weights must be coprime");
    Kod2Conditions out;
    out.rmin = a + b + 1;
    for (Int r = out.rmin + 1; r <= r_max; ++r) {
        std::vector<Int> weights{a, b, third_weight, r, r + 1, r + 2};
        std::sort(weights.begin(), weights.end());
        WciFamily f{WeightedSpace{weights}, {2 * r + 2, 2 * r + 4}};
        if (f.is_linear_cone()) continue;
        if (!is_well_formed(f)) continue;
        if (!is_quasi_smooth_general(f)) continue;
        StratificationReport rep;
        try {
            rep = stratify_codim2(f);
        } catch (const std::domain_error&) {
            continue;
        }
        const auto expected = normalize_quotient({r, {a % r, b % r, 1}});
        bool good = true, found_center = false;
        for (const auto& locus : rep.loci) {
            if (locus.locus_dim != 0) {
                good = false;
                break;
            }
            if (locus.sing_class == SingClass::NonCanonical) {
                if (found_center || locus.count != 1 || locus.quotient != expected) {
                    good = false;
                    break;
                }
                found_center = true;
            } else if (locus.sing_class != SingClass::Terminal) {
                good = false;
                break;
            }
        }
        if (good && found_center) out.survivors.push_back(r);
    }

    std::vector<Int> moduli{4};
    if (a >= 3) moduli.push_back(a);
    if (b >= 3) moduli.push_back(b);
    std::sort(moduli.begin(), moduli.end());
    for (Int m : moduli) {
        std::vector<char> seen(m, 0);
        for (Int r : out.survivors) seen[r % m] = 1;
        std::vector<Int> allowed;
        for (Int v = 0; v < m; ++v)
            if (seen[v]) allowed.push_back(v);
        if (static_cast<Int>(allowed.size()) < m) out.allowed[m] = allowed;
    }
    out.characterized = true;
    for (Int r = out.rmin + 1; r <= r_max && out.characterized; ++r) {
        bool predicted = true;
        for (const auto& [m, allowed] : out.allowed)
            predicted = predicted &&
                        std::find(allowed.begin(), allowed.end(), r % m) != allowed.end();
        bool actual = std::find(out.survivors.begin(), out.survivors.end(), r) !=
                      out.survivors.end();
        if (predicted != actual) out.characterized = false;
    }
    return out;
}

}  // namespace mwci
