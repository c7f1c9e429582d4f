#include "mwci/strata.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mwci {

namespace {

using I128 = __int128;

// ---------------------------------------------------------------------------
// Exact lattice-polytope volumes for the torus point counts.
// ---------------------------------------------------------------------------

Int hull_area_times_2(std::vector<std::array<Int, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return 0;
    auto cross = [](const std::array<Int, 2>& o, const std::array<Int, 2>& a,
                    const std::array<Int, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<std::array<Int, 2>> hull(2 * pts.size());
    size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    Int doubled = 0;
    for (size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        doubled += a[0] * b[1] - b[0] * a[1];
    }
    return doubled < 0 ? -doubled : doubled;
}

// Incremental convex hull, exact arithmetic, used only for its volume: a
// point coplanar with every visible facet adds no volume and may be skipped.
Int hull_volume_times_6(std::vector<std::array<Int, 3>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n < 4) return 0;
    auto sub = [](const std::array<Int, 3>& a, const std::array<Int, 3>& b) {
        return std::array<Int, 3>{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    };
    auto det3 = [&](const std::array<Int, 3>& a, const std::array<Int, 3>& b,
                    const std::array<Int, 3>& c) -> I128 {
        I128 d = I128(a[0]) * (I128(b[1]) * c[2] - I128(b[2]) * c[1]);
        d -= I128(a[1]) * (I128(b[0]) * c[2] - I128(b[2]) * c[0]);
        d += I128(a[2]) * (I128(b[0]) * c[1] - I128(b[1]) * c[0]);
        return d;
    };
    auto orient = [&](size_t a, size_t b, size_t c, size_t p) -> I128 {
        return det3(sub(pts[b], pts[a]), sub(pts[c], pts[a]), sub(pts[p], pts[a]));
    };

    // initial tetrahedron
    size_t i1 = 1;
    while (i1 < n && pts[i1] == pts[0]) ++i1;
    size_t i2 = i1 + 1;
    auto collinear = [&](size_t a, size_t b, size_t c) {
        auto u = sub(pts[b], pts[a]), v = sub(pts[c], pts[a]);
        return u[1] * v[2] == u[2] * v[1] && u[0] * v[2] == u[2] * v[0] &&
               u[0] * v[1] == u[1] * v[0];
    };
    while (i2 < n && collinear(0, i1, i2)) ++i2;
    if (i2 >= n) return 0;
    size_t i3 = i2 + 1;
    while (i3 < n && orient(0, i1, i2, i3) == 0) ++i3;
    if (i3 >= n) return 0;

    struct Face {
        size_t a, b, c;
        bool alive = true;
    };
    std::vector<Face> faces;
    auto add_face = [&](size_t a, size_t b, size_t c, size_t inside) {
        if (orient(a, b, c, inside) > 0) std::swap(b, c);  // keep inside below
        faces.push_back({a, b, c, true});
    };
    add_face(0, i1, i2, i3);
    add_face(0, i1, i3, i2);
    add_face(0, i2, i3, i1);
    add_face(i1, i2, i3, 0);

    std::vector<char> used(n, 0);
    used[0] = used[i1] = used[i2] = used[i3] = 1;
    for (size_t p = 0; p < n; ++p) {
        if (used[p]) continue;
        std::vector<size_t> visible;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            if (!faces[fi].alive) continue;
            if (orient(faces[fi].a, faces[fi].b, faces[fi].c, p) > 0) visible.push_back(fi);
        }
        if (visible.empty()) continue;
        std::map<std::pair<size_t, size_t>, int> edge_count;
        for (size_t fi : visible) {
            faces[fi].alive = false;
            const size_t v[3] = {faces[fi].a, faces[fi].b, faces[fi].c};
            for (int t = 0; t < 3; ++t) {
                size_t x = v[t], y = v[(t + 1) % 3];
                auto key = std::minmax(x, y);
                edge_count[{key.first, key.second}] += 1;
            }
        }
        for (size_t fi : visible) {
            const size_t v[3] = {faces[fi].a, faces[fi].b, faces[fi].c};
            for (int t = 0; t < 3; ++t) {
                size_t x = v[t], y = v[(t + 1) % 3];
                auto key = std::minmax(x, y);
                if (edge_count[{key.first, key.second}] != 1) continue;
                // horizon edge, oriented as in the dying face so the new face
                // keeps the hull interior below it
                faces.push_back({x, y, p, true});
            }
        }
    }
    // volume relative to vertex 0 of the point set
    I128 six_vol = 0;
    for (const auto& f : faces) {
        if (!f.alive) continue;
        six_vol += det3(sub(pts[f.a], pts[0]), sub(pts[f.b], pts[0]), sub(pts[f.c], pts[0]));
    }
    if (six_vol < 0) six_vol = -six_vol;
    return static_cast<Int>(six_vol);
}

std::vector<std::vector<Int>> minkowski_sum(const std::vector<std::vector<Int>>& a,
                                            const std::vector<std::vector<Int>>& b) {
    std::vector<std::vector<Int>> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) {
            std::vector<Int> s(x.size());
            for (size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
            out.push_back(std::move(s));
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Normalized volume (n! * euclidean) of the convex hull, dimensions 1..3.
Int normalized_volume(const std::vector<std::vector<Int>>& pts, int dim) {
    if (pts.empty()) return 0;
    if (dim == 1) {
        Int lo = pts[0][0], hi = pts[0][0];
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    if (dim == 2) {
        std::vector<std::array<Int, 2>> q;
        q.reserve(pts.size());
        for (const auto& p : pts) q.push_back({p[0], p[1]});
        return hull_area_times_2(std::move(q));
    }
    if (dim == 3) {
        std::vector<std::array<Int, 3>> q;
        q.reserve(pts.size());
        for (const auto& p : pts) q.push_back({p[0], p[1], p[2]});
        return hull_volume_times_6(std::move(q));
    }
    throw UnsupportedStratum("torus count beyond three equations");
}

/// Generic torus solution count of the system with the given supports:
/// the mixed volume via the alternating sum of Minkowski-sum volumes.
Int bkk_count(const std::vector<std::vector<std::vector<Int>>>& supports, int dim) {
    const int n = static_cast<int>(supports.size());
    if (n != dim) throw UnsupportedStratum("torus system is not square");
    for (const auto& s : supports)
        if (s.empty()) return 0;
    Int total = 0;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        std::vector<std::vector<Int>> sum{std::vector<Int>(static_cast<size_t>(dim), 0)};
        for (int i = 0; i < n; ++i)
            if (s >> i & 1) sum = minkowski_sum(sum, supports[i]);
        Int sign = (n - __builtin_popcount(s)) % 2 ? -1 : 1;
        total += sign * normalized_volume(sum, dim);
    }
    const Int factorial[4] = {1, 1, 2, 6};
    if (total % factorial[dim] != 0)
        throw NonIntegralCount("mixed volume is not integral");
    return total / factorial[dim];
}

// ---------------------------------------------------------------------------
// Shared machinery: expected dimensions come from counting which defining
// degrees admit monomials on a face; point counts on the open face come from
// the generic torus count of the restricted system in one affine chart,
// divided by the chart weight and multiplied by the face stabilizer order.
// ---------------------------------------------------------------------------
class StratumEngine {
public:
    StratumEngine(const WciFamily& f, const RepresentabilityTable& reps)
        : f_(f), reps_(reps), nvars_(static_cast<int>(f.space.weights.size())) {
        gcd_of_.assign(1u << nvars_, 0);
        for (std::uint32_t m = 1; m < (1u << nvars_); ++m) {
            int low = __builtin_ctz(m);
            gcd_of_[m] = std::gcd(m == (1u << low) ? 0 : gcd_of_[m & (m - 1)],
                                  f.space.weights[low]);
        }
        repr_count_.assign(1u << nvars_, -1);
    }

    Int stratum_gcd(std::uint32_t mask) const { return gcd_of_[mask]; }

    int representable_degrees(std::uint32_t mask) const {
        if (repr_count_[mask] < 0) {
            int cnt = 0;
            for (Int d : f_.degrees)
                if (reps_.representable(mask, d)) ++cnt;
            repr_count_[mask] = cnt;
        }
        return repr_count_[mask];
    }

    /// (|J|-1) - #representable degrees for the face alone.
    Int face_dim(std::uint32_t mask) const {
        return __builtin_popcount(mask) - 1 - representable_degrees(mask);
    }

    /// max over sub-faces; the actual dimension of X meeting the closed face.
    Int closure_dim(std::uint32_t mask) const {
        Int best = -1000;
        for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
            if (sub) best = std::max(best, face_dim(sub));
            if (sub == 0) break;
        }
        return best;
    }

    /// Monomial exponents of degree d in the face variables, dehomogenized at
    /// chart (the chart exponent is dropped; membership needs divisibility).
    std::vector<std::vector<Int>> chart_support(std::uint32_t mask, int chart, Int d) const {
        std::vector<int> vars;
        for (int i = 0; i < nvars_; ++i)
            if ((mask >> i & 1) && i != chart) vars.push_back(i);
        std::vector<std::vector<Int>> out;
        std::vector<Int> expo(vars.size(), 0);
        const Int cw = f_.space.weights[chart];
        auto rec = [&](auto&& self, size_t vi, Int remaining) -> void {
            if (vi == vars.size()) {
                if (remaining % cw == 0) out.push_back(expo);
                return;
            }
            const Int w = f_.space.weights[vars[vi]];
            for (Int m = 0; m * w <= remaining; ++m) {
                expo[vi] = m;
                self(self, vi + 1, remaining - m * w);
            }
            expo[vi] = 0;
        };
        rec(rec, 0, d);
        return out;
    }

    /// Points of the member on the open face (all face coordinates nonzero).
    Int open_count(std::uint32_t mask) const {
        const int k = __builtin_popcount(mask);
        if (face_dim(mask) != 0) {
            if (face_dim(mask) < 0) return 0;
            throw UnsupportedStratum("open face has positive expected dimension");
        }
        if (k == 1) return 1;  // vertex avoided by every defining form

        // two independent affine charts as the double-entry check
        std::vector<int> chart_choices;
        int lo = -1, hi = -1;
        for (int i = 0; i < nvars_; ++i) {
            if (!(mask >> i & 1)) continue;
            if (lo < 0 || f_.space.weights[i] < f_.space.weights[lo]) lo = i;
            if (hi < 0 || f_.space.weights[i] >= f_.space.weights[hi]) hi = i;
        }
        chart_choices.push_back(lo);
        if (hi != lo) chart_choices.push_back(hi);

        std::optional<Int> result;
        for (int chart : chart_choices) {
            std::vector<std::vector<std::vector<Int>>> supports;
            for (Int d : f_.degrees)
                if (reps_.representable(mask, d)) supports.push_back(chart_support(mask, chart, d));
            Int raw = bkk_count(supports, k - 1);
            Int scaled = raw * gcd_of_[mask];
            if (scaled % f_.space.weights[chart] != 0)
                throw NonIntegralCount("torus count does not divide by the chart weight");
            Int n = scaled / f_.space.weights[chart];
            if (result && *result != n)
                throw NonIntegralCount("open-face counts disagree between charts");
            result = n;
        }
        if (*result < 0) throw NonIntegralCount("negative open-face count");
        return *result;
    }

    /// Eliminated-coordinate choices: for every degree without a monomial in
    /// the J-variables, an outside coordinate s with d - a_s representable on
    /// J (the implicit-function direction). Returns every system of distinct
    /// representatives; empty means the analysis is inconclusive.
    std::vector<std::vector<int>> elimination_choices(std::uint32_t mask) const {
        std::vector<std::vector<int>> cands;
        for (Int d : f_.degrees) {
            if (reps_.representable(mask, d)) continue;
            std::vector<int> c;
            for (int s = 0; s < nvars_; ++s) {
                if (mask >> s & 1) continue;
                if (d >= f_.space.weights[s] && reps_.representable(mask, d - f_.space.weights[s]))
                    c.push_back(s);
            }
            cands.push_back(std::move(c));
        }
        std::vector<std::vector<int>> out;
        std::vector<int> pick;
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == cands.size()) {
                out.push_back(pick);
                return;
            }
            for (int s : cands[i]) {
                if (std::find(pick.begin(), pick.end(), s) != pick.end()) continue;
                pick.push_back(s);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
        return out;
    }

    const WciFamily& family() const { return f_; }
    int nvars() const { return nvars_; }

private:
    const WciFamily& f_;
    const RepresentabilityTable& reps_;
    int nvars_;
    std::vector<Int> gcd_of_;
    mutable std::vector<int> repr_count_;
};

SingClass worse(SingClass a, SingClass b) { return a > b ? a : b; }

StratificationReport build_report(const WciFamily& f, const RepresentabilityTable& reps) {
    StratumEngine eng(f, reps);
    const int nvars = eng.nvars();
    StratificationReport report;

    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < (1u << nvars); ++m)
        if (eng.stratum_gcd(m) > 1) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [&](std::uint32_t x, std::uint32_t y) {
        int px = __builtin_popcount(x), py = __builtin_popcount(y);
        if (px != py) return px < py;
        // lexicographic on ascending index lists == numeric order of masks
        return x < y;
    });

    for (std::uint32_t mask : masks) {
        const Int e = eng.stratum_gcd(mask);
        const Int fd = eng.face_dim(mask);
        if (fd < 0) continue;
        if (fd > 1) throw UnsupportedStratum("singular stratum meets the member in dimension >= 2");

        SingularLocus locus;
        for (int i = 0; i < nvars; ++i)
            if (mask >> i & 1) locus.stratum.push_back(i);
        locus.e = e;
        locus.locus_dim = static_cast<int>(fd);

        auto eliminations = eng.elimination_choices(mask);
        if (eliminations.empty())
            throw UnsupportedStratum("no implicit-function direction for stratum");

        if (fd == 0) {
            locus.count = eng.open_count(mask);
            if (locus.count == 0) continue;
            for (const auto& elim : eliminations) {
                std::array<int, 3> chart{};
                int at = 0;
                for (int i = 0; i < nvars && at <= 3; ++i) {
                    if (mask >> i & 1) continue;
                    if (std::find(elim.begin(), elim.end(), i) != elim.end()) continue;
                    if (at < 3) chart[at] = i;
                    ++at;
                }
                if (at != 3) throw UnsupportedStratum("local chart is not three-dimensional");
                if (std::find(locus.local_charts.begin(), locus.local_charts.end(), chart) ==
                    locus.local_charts.end())
                    locus.local_charts.push_back(chart);
            }
            std::sort(locus.local_charts.begin(), locus.local_charts.end());
            CyclicQuotient raw{e, {}};
            for (int i : locus.local_charts.front()) raw.residues.push_back(f.space.weights[i] % e);
            locus.quotient = normalize_quotient(raw);
        } else {
            // transverse type along the curve: one zero residue
            const auto& elim = eliminations.front();
            CyclicQuotient raw{e, {0}};
            for (int i = 0; i < nvars; ++i) {
                if (mask >> i & 1) continue;
                if (std::find(elim.begin(), elim.end(), i) != elim.end()) continue;
                raw.residues.push_back(f.space.weights[i] % e);
            }
            if (raw.residues.size() != 3)
                throw UnsupportedStratum("curve locus transverse type is not two-dimensional");
            locus.quotient = normalize_quotient(raw);
        }

        locus.sing_class = classify_quotient(locus.quotient);
        report.loci.push_back(std::move(locus));
    }

    for (size_t i = 0; i < report.loci.size(); ++i) {
        const auto& l = report.loci[i];
        report.worst = worse(report.worst, l.sing_class);
        if (l.locus_dim == 1) report.has_non_isolated_canonical = true;
        if (l.locus_dim == 0 && l.sing_class == SingClass::NonCanonical)
            report.non_canonical.push_back(static_cast<int>(i));
    }
    return report;
}

void check_kfold_gcds(const WciFamily& f, int k) {
    const auto& a = f.space.weights;
    const int n = static_cast<int>(a.size());
    auto rec = [&](auto&& self, int start, int depth, Int g) -> void {
        if (depth == k) {
            if (g != 1)
                throw HypothesisViolation(std::to_string(k) + " weights share a common factor");
            return;
        }
        for (int i = start; i <= n - (k - depth); ++i) self(self, i + 1, depth + 1, std::gcd(g, a[i]));
    };
    rec(rec, 0, 0, 0);
}

// Closed-form counts of the case analysis, cross-checked against the engine.
void cross_check_closed_forms(const WciFamily& f, const StratificationReport& report) {
    const auto& a = f.space.weights;
    const int nvars = static_cast<int>(a.size());
    std::map<std::vector<int>, const SingularLocus*> by_stratum;
    for (const auto& l : report.loci) by_stratum[l.stratum] = &l;

    auto locus_count = [&](std::vector<int> J) -> Int {
        auto it = by_stratum.find(J);
        if (it == by_stratum.end()) return 0;
        if (it->second->locus_dim != 0) return -1;  // curve
        return it->second->count;
    };

    // vertices
    for (int i = 0; i < nvars; ++i) {
        bool in_member = true;
        for (Int d : f.degrees)
            if (d % a[i] == 0) in_member = false;
        Int expected = in_member ? 1 : 0;
        if (a[i] > 1 && locus_count({i}) != expected)
            throw NonIntegralCount("vertex count disagrees with closed form");
    }
    // edges
    for (int i = 0; i < nvars; ++i) {
        for (int j = i + 1; j < nvars; ++j) {
            Int e = std::gcd(a[i], a[j]);
            if (e <= 1) continue;
            std::vector<Int> divisible;
            for (Int d : f.degrees)
                if (d % e == 0) divisible.push_back(d);
            if (divisible.empty()) {
                if (locus_count({i, j}) != -1)
                    throw NonIntegralCount("edge should carry a curve locus");
                continue;
            }
            if (divisible.size() == f.degrees.size() && f.degrees.size() >= 2) {
                if (locus_count({i, j}) != 0)
                    throw NonIntegralCount("edge with all degrees divisible must avoid the member");
                continue;
            }
            if (f.degrees.size() == 1 || divisible.size() == 1) {
                Int expected = (e * divisible.front()) / (a[i] * a[j]);
                if (locus_count({i, j}) != expected)
                    throw NonIntegralCount("edge count disagrees with floor closed form");
            }
        }
    }
    // faces, codimension-2 point case
    if (f.degrees.size() == 2) {
        for (int i = 0; i < nvars; ++i)
            for (int j = i + 1; j < nvars; ++j)
                for (int k = j + 1; k < nvars; ++k) {
                    Int e = std::gcd(std::gcd(a[i], a[j]), a[k]);
                    if (e <= 1) continue;
                    if (f.degrees[0] % e != 0 || f.degrees[1] % e != 0) {
                        if (locus_count({i, j, k}) != -1)
                            throw NonIntegralCount("face should carry a curve locus");
                        continue;
                    }
                    Rat n = Rat(BigInt(f.degrees[0]) * f.degrees[1] * e,
                                BigInt(a[i]) * a[j] * a[k]);
                    for (int t : {i, j, k}) {
                        bool in_member = f.degrees[0] % a[t] != 0 && f.degrees[1] % a[t] != 0;
                        if (in_member) n -= Rat(e, a[t]);
                    }
                    const int pq[3][2] = {{i, j}, {i, k}, {j, k}};
                    for (auto& pr : pq) {
                        Int cnt = locus_count({pr[0], pr[1]});
                        if (cnt < 0) throw NonIntegralCount("face over a curve edge");
                        if (cnt) n -= Rat(cnt * e, std::gcd(a[pr[0]], a[pr[1]]));
                    }
                    if (!rat_is_integer(n) || n < 0)
                        throw NonIntegralCount("face count formula is not a non-negative integer");
                    if (locus_count({i, j, k}) != static_cast<Int>(rat_to_integer(n)))
                        throw NonIntegralCount("face count disagrees with closed form");
                }
    }
}

}  // namespace

Int stratum_intersection_dim(const WciFamily& f, const RepresentabilityTable& reps,
                             std::span<const int> indices) {
    std::uint32_t mask = 0;
    for (int i : indices) mask |= 1u << i;
    StratumEngine eng(f, reps);
    return eng.closure_dim(mask);
}

StratificationReport stratify_hypersurface(const WciFamily& f) {
    if (f.codim() != 1 || f.dim() != 3)
        throw HypothesisViolation("hypersurface stratification needs c = 1, n = 3");
    check_kfold_gcds(f, 3);
    RepresentabilityTable reps(f.space.weights);
    auto report = build_report(f, reps);
    cross_check_closed_forms(f, report);
    return report;
}

StratificationReport stratify_codim2(const WciFamily& f) {
    if (f.codim() != 2 || f.dim() != 3)
        throw HypothesisViolation("codimension-2 stratification needs c = 2, n = 3");
    check_kfold_gcds(f, 4);
    RepresentabilityTable reps(f.space.weights);
    auto report = build_report(f, reps);
    cross_check_closed_forms(f, report);
    return report;
}

StratificationReport stratify_codim3(const WciFamily& f) {
    if (f.codim() != 3 || f.dim() != 3)
        throw HypothesisViolation("codimension-3 stratification needs c = 3, n = 3");
    RepresentabilityTable reps(f.space.weights);
    return build_report(f, reps);
}

StratificationReport stratify(const WciFamily& f) {
    switch (f.codim()) {
        case 1: return stratify_hypersurface(f);
        case 2: return stratify_codim2(f);
        case 3: return stratify_codim3(f);
        default: throw HypothesisViolation("stratification supports codimension 1..3 only");
    }
}

}  // namespace mwci
