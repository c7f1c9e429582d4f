#include "mwci/wci.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mwci {

Int WciFamily::weight_sum() const {
    Int s = 0;
    for (Int a : space.weights) s += a;
    return s;
}

Int WciFamily::degree_sum() const {
    Int s = 0;
    for (Int d : degrees) s += d;
    return s;
}

bool WciFamily::is_linear_cone() const {
    for (Int d : degrees)
        for (Int a : space.weights)
            if (d == a) return true;
    return false;
}

std::string WciFamily::id() const {
    std::ostringstream os;
    for (size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
    os << "|";
    for (size_t i = 0; i < space.weights.size(); ++i) os << (i ? "," : "") << space.weights[i];
    return os.str();
}

Int amplitude(const WciFamily& f) { return f.degree_sum() - f.weight_sum(); }

Rat ambient_canonical_power(const WciFamily& f) {
    BigInt num = 1, den = 1;
    const Int a = amplitude(f);
    for (Int i = 0; i < f.dim(); ++i) num *= a;
    for (Int d : f.degrees) num *= d;
    for (Int w : f.space.weights) den *= w;
    return Rat(num, den);
}

BigInt count_monomials(std::span<const Int> weights, Int degree) {
    if (degree < 0) return 0;
    std::vector<BigInt> h(static_cast<size_t>(degree) + 1);
    h[0] = 1;
    for (Int w : weights)
        for (Int j = w; j <= degree; ++j) h[j] += h[j - w];
    return h[degree];
}

BigInt hilbert_coefficient(const WciFamily& f, Int k) {
    if (k < 0) throw std::domain_error("hilbert_coefficient: negative degree");
    // Numerator prod(1 - t^{d_l}) as a dense polynomial truncated at k, then
    // series division by each (1 - t^{a_i}) via stride prefix sums.
    std::vector<BigInt> h(static_cast<size_t>(k) + 1);
    h[0] = 1;
    for (Int d : f.degrees) {
        if (d > k) continue;
        for (Int j = k; j >= d; --j) h[j] -= h[j - d];
    }
    for (Int a : f.space.weights)
        for (Int j = a; j <= k; ++j) h[j] += h[j - a];
    return h[k];
}

RepresentabilityTable::RepresentabilityTable(std::vector<Int> weights)
    : weights_(std::move(weights)),
      reach_(size_t{1} << weights_.size()),
      reach_limit_(size_t{1} << weights_.size(), -1) {
    if (weights_.size() > 20) throw std::domain_error("too many coordinates");
}

void RepresentabilityTable::extend(std::uint32_t mask, Int degree) const {
    auto& bits = reach_[mask];
    const Int old_limit = reach_limit_[mask];
    const size_t words = static_cast<size_t>(degree / 64) + 1;
    if (bits.size() < words) bits.resize(words, 0);
    if (old_limit < 0) bits[0] |= 1;  // degree 0 reachable
    // Unbounded knapsack: forward sweep per weight over the new range.
    for (size_t i = 0; i < weights_.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        const Int w = weights_[i];
        for (Int j = std::max<Int>(w, 0); j <= degree; ++j) {
            if (bits[static_cast<size_t>((j - w) / 64)] >> ((j - w) % 64) & 1)
                bits[static_cast<size_t>(j / 64)] |= std::uint64_t{1} << (j % 64);
        }
    }
    reach_limit_[mask] = degree;
}

bool RepresentabilityTable::representable(std::uint32_t mask, Int degree) const {
    if (degree < 0) return false;
    if (degree == 0) return true;
    if (mask == 0) return false;
    if (reach_limit_[mask] < degree) extend(mask, degree);
    return reach_[mask][static_cast<size_t>(degree / 64)] >> (degree % 64) & 1;
}

bool is_well_formed(const WciFamily& f) {
    if (!is_well_formed_space(f.space)) return false;
    const int nvars = static_cast<int>(f.space.weights.size());
    const int strata_size = static_cast<int>(f.dim());  // |J| for codim c+1 strata
    if (strata_size < 1) return false;
    RepresentabilityTable reps(f.space.weights);
    // Enumerate index sets of size n with a common weight factor; the general
    // member contains such a stratum iff no defining degree has a monomial in
    // the stratum variables.
    std::vector<int> J(strata_size);
    auto rec = [&](auto&& self, int start, int depth, Int g, std::uint32_t mask) -> bool {
        if (depth == strata_size) {
            if (g == 1) return true;
            for (Int d : f.degrees)
                if (reps.representable(mask, d)) return true;
            return false;  // stratum contained in the general member
        }
        for (int i = start; i <= nvars - (strata_size - depth); ++i) {
            if (!self(self, i + 1, depth + 1, std::gcd(g, f.space.weights[i]), mask | (1u << i)))
                return false;
        }
        return true;
    };
    return rec(rec, 0, 0, 0, 0);
}

namespace {

// Check the pointer-covering condition: choose, for every remaining degree,
// q distinct outside coordinates from its candidate set so that every group
// of degrees jointly uses at least q + |group| - 1 distinct coordinates.
bool covering_choice_exists(const std::vector<std::uint32_t>& candidate_sets, int q,
                            std::vector<std::vector<int>>* chosen) {
    const int m = static_cast<int>(candidate_sets.size());
    auto popcount = [](std::uint32_t x) { return __builtin_popcount(x); };
    // Necessary union bound on the raw candidate sets.
    for (std::uint32_t sub = 1; sub < (1u << m); ++sub) {
        std::uint32_t u = 0;
        for (int r = 0; r < m; ++r)
            if (sub >> r & 1) u |= candidate_sets[r];
        if (popcount(u) < q + popcount(sub) - 1) return false;
    }
    // Exhaustive choice of q-subsets (sets are tiny).
    std::vector<std::uint32_t> pick(m);
    auto rec = [&](auto&& self, int r) -> bool {
        if (r == m) {
            for (std::uint32_t sub = 1; sub < (1u << m); ++sub) {
                std::uint32_t u = 0;
                for (int t = 0; t < m; ++t)
                    if (sub >> t & 1) u |= pick[t];
                if (popcount(u) < q + popcount(sub) - 1) return false;
            }
            return true;
        }
        // iterate q-subsets of candidate_sets[r]
        std::vector<int> elems;
        for (int b = 0; b < 32; ++b)
            if (candidate_sets[r] >> b & 1) elems.push_back(b);
        if (static_cast<int>(elems.size()) < q) return false;
        std::vector<int> idx(q);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::uint32_t s = 0;
            for (int t : idx) s |= 1u << elems[t];
            pick[r] = s;
            if (self(self, r + 1)) return true;
            int t = q - 1;
            while (t >= 0 && idx[t] == static_cast<int>(elems.size()) - q + t) --t;
            if (t < 0) break;
            ++idx[t];
            for (int u2 = t + 1; u2 < q; ++u2) idx[u2] = idx[u2 - 1] + 1;
        }
        return false;
    };
    if (!rec(rec, 0)) return false;
    if (chosen) {
        chosen->assign(m, {});
        for (int r = 0; r < m; ++r)
            for (int b = 0; b < 32; ++b)
                if (pick[r] >> b & 1) (*chosen)[r].push_back(b);
    }
    return true;
}

}  // namespace

bool is_quasi_smooth_general(const WciFamily& f, QsTrace* trace) {
    if (f.is_linear_cone()) throw LinearConeError("linear cone: " + f.id());
    const int nvars = static_cast<int>(f.space.weights.size());
    const int c = static_cast<int>(f.degrees.size());
    RepresentabilityTable reps(f.space.weights);
    if (trace) {
        trace->entries.clear();
        trace->passed = false;
    }

    for (std::uint32_t I = 1; I < (1u << nvars); ++I) {
        const int k = __builtin_popcount(I);
        const int rho = std::min(c, k);
        std::vector<int> repr_degrees;
        for (int l = 0; l < c; ++l)
            if (reps.representable(I, f.degrees[l])) repr_degrees.push_back(l);

        QsTrace::Entry entry;
        entry.subset = I;

        if (static_cast<int>(repr_degrees.size()) >= rho) {
            if (trace) {
                entry.condition = '1';
                entry.q1_degrees.assign(repr_degrees.begin(), repr_degrees.begin() + rho);
                trace->entries.push_back(std::move(entry));
            }
            continue;
        }

        // Second condition: some choice of l < rho degrees representable on I,
        // every other degree reachable through q = k - l distinct outside
        // coordinates with the covering property.
        bool ok = false;
        const int max_l = std::min<int>(rho - 1, static_cast<int>(repr_degrees.size()));
        for (int l = max_l; l >= 0 && !ok; --l) {
            // choose which representable degrees occupy the prefix
            std::vector<int> sel(l);
            std::iota(sel.begin(), sel.end(), 0);
            while (true) {
                std::vector<char> in_prefix(c, 0);
                for (int t = 0; t < l; ++t) in_prefix[repr_degrees[sel[t]]] = 1;
                std::vector<int> tail;
                for (int r = 0; r < c; ++r)
                    if (!in_prefix[r]) tail.push_back(r);
                const int q = k - l;
                std::vector<std::uint32_t> cand(tail.size(), 0);
                for (size_t t = 0; t < tail.size(); ++t) {
                    const Int d = f.degrees[tail[t]];
                    for (int e = 0; e < nvars; ++e) {
                        if (I >> e & 1) continue;
                        if (d >= f.space.weights[e] && reps.representable(I, d - f.space.weights[e]))
                            cand[t] |= 1u << e;
                    }
                }
                std::vector<std::vector<int>> chosen;
                if (covering_choice_exists(cand, q, trace ? &chosen : nullptr)) {
                    ok = true;
                    if (trace) {
                        entry.condition = '2';
                        entry.q2_l = l;
                        for (int t = 0; t < l; ++t) entry.q2_prefix.push_back(repr_degrees[sel[t]]);
                        entry.q2_pointers = std::move(chosen);
                    }
                    break;
                }
                // next l-combination of repr_degrees
                int t = l - 1;
                while (t >= 0 && sel[t] == static_cast<int>(repr_degrees.size()) - l + t) --t;
                if (t < 0) break;
                ++sel[t];
                for (int u = t + 1; u < l; ++u) sel[u] = sel[u - 1] + 1;
            }
        }
        if (!ok) {
            if (trace) {
                entry.condition = 'F';
                entry.note = "no condition holds for this subset";
                trace->entries.push_back(std::move(entry));
            }
            return false;
        }
        if (trace) trace->entries.push_back(std::move(entry));
    }
    if (trace) trace->passed = true;
    return true;
}

}  // namespace mwci
