#include "mwci/wps.hpp"

#include <algorithm>
#include <numeric>

namespace mwci {

bool is_well_formed_space(const WeightedSpace& space) {
    const auto& a = space.weights;
    const int n = static_cast<int>(a.size());
    // prefix[i] = gcd(a_0..a_{i-1}), suffix[i] = gcd(a_i..a_{n-1})
    std::vector<Int> prefix(n + 1, 0), suffix(n + 1, 0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = std::gcd(prefix[i], a[i]);
    for (int i = n - 1; i >= 0; --i) suffix[i] = std::gcd(suffix[i + 1], a[i]);
    for (int i = 0; i < n; ++i)
        if (std::gcd(prefix[i], suffix[i + 1]) != 1) return false;
    return true;
}

std::vector<AmbientStratum> singular_strata(const WeightedSpace& space, Int max_dim) {
    const auto& a = space.weights;
    const int n = static_cast<int>(a.size());
    std::vector<AmbientStratum> out;
    // Grow index sets depth-first; prune once the running gcd drops to 1.
    std::vector<int> J;
    auto rec = [&](auto&& self, int start, Int g) -> void {
        for (int i = start; i < n; ++i) {
            Int g2 = std::gcd(g, a[i]);
            if (g2 == 1) continue;
            J.push_back(i);
            out.push_back({J, g2});
            if (static_cast<Int>(J.size()) <= max_dim) self(self, i + 1, g2);
            J.pop_back();
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end(), [](const AmbientStratum& x, const AmbientStratum& y) {
        if (x.indices.size() != y.indices.size()) return x.indices.size() < y.indices.size();
        return x.indices < y.indices;
    });
    return out;
}

std::string quotient_to_string(const CyclicQuotient& q) {
    std::string s = "1/" + std::to_string(q.r) + "(";
    for (size_t i = 0; i < q.residues.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(q.residues[i]);
    }
    return s + ")";
}

bool is_small_action(const CyclicQuotient& q) {
    const int n = static_cast<int>(q.residues.size());
    std::vector<Int> prefix(n + 1, 0), suffix(n + 1, 0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = std::gcd(prefix[i], q.residues[i]);
    for (int i = n - 1; i >= 0; --i) suffix[i] = std::gcd(suffix[i + 1], q.residues[i]);
    for (int i = 0; i < n; ++i)
        if (std::gcd(q.r, std::gcd(prefix[i], suffix[i + 1])) != 1) return false;
    return true;
}

bool is_isolated_quotient(const CyclicQuotient& q) {
    for (Int a : q.residues)
        if (std::gcd(a, q.r) != 1) return false;
    return true;
}

CyclicQuotient normalize_quotient(const CyclicQuotient& q) {
    if (q.r < 1) throw std::domain_error("quotient order must be positive");
    CyclicQuotient reduced{q.r, q.residues};
    for (Int& a : reduced.residues) a = ((a % q.r) + q.r) % q.r;
    if (q.r == 1) {
        return reduced;  // smooth: all residues 0
    }
    if (!is_small_action(reduced))
        throw RejectNonSmallAction("non-small quotient type " + quotient_to_string(reduced));
    std::vector<Int> best;
    std::vector<Int> cur(reduced.residues.size());
    for (Int m = 1; m < q.r; ++m) {
        if (std::gcd(m, q.r) != 1) continue;
        for (size_t i = 0; i < cur.size(); ++i) cur[i] = (m * reduced.residues[i]) % q.r;
        std::sort(cur.begin(), cur.end());
        if (best.empty() || cur < best) best = cur;
    }
    return {q.r, best};
}

Rat reid_tai_sum(const CyclicQuotient& q, Int k) {
    if (k < 1 || k >= q.r) throw std::domain_error("reid_tai_sum: k out of range");
    Int num = 0;  // sum of (k*a_i mod r), denominator r
    for (Int a : q.residues) num += (k * a) % q.r;
    return Rat(num, q.r);
}

const char* sing_class_name(SingClass c) {
    switch (c) {
        case SingClass::Smooth: return "smooth";
        case SingClass::Terminal: return "terminal";
        case SingClass::CanonicalNonTerminal: return "canonical";
        case SingClass::NonCanonical: return "non-canonical";
    }
    return "?";
}

SingClass classify_quotient(const CyclicQuotient& q) {
    if (q.r == 1) return SingClass::Smooth;
    bool equality_seen = false;
    for (Int k = 1; k < q.r; ++k) {
        Int num = 0;
        for (Int a : q.residues) num += (k * a) % q.r;
        if (num < q.r) return SingClass::NonCanonical;
        if (num == q.r) equality_seen = true;
    }
    return equality_seen ? SingClass::CanonicalNonTerminal : SingClass::Terminal;
}

std::optional<std::pair<Int, Int>> is_three_fold_terminal_form(const CyclicQuotient& q) {
    if (q.residues.size() != 3) throw std::domain_error("terminal form needs 3 residues");
    if (q.r == 1 || classify_quotient(q) != SingClass::Terminal) return std::nullopt;
    const Int r = q.r;
    for (Int m = 1; m < r; ++m) {
        if (std::gcd(m, r) != 1) continue;
        Int v[3];
        for (int i = 0; i < 3; ++i) v[i] = (m * (q.residues[i] % r)) % r;
        // Try to spend one slot on residue 1 and another on r-1; the leftover is b.
        for (int i = 0; i < 3; ++i) {
            if (v[i] != 1) continue;
            for (int j = 0; j < 3; ++j) {
                if (j == i || v[j] != r - 1) continue;
                Int b = v[3 - i - j];
                b = std::min(b, r - b);
                if (b > 0 && std::gcd(b, r) == 1) return std::make_pair(b, r);
            }
        }
    }
    return std::nullopt;
}

}  // namespace mwci
