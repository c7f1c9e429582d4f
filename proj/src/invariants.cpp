#include "mwci/invariants.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace mwci {

std::string basket_to_string(const Basket& basket) {
    std::ostringstream os;
    for (size_t i = 0; i < basket.size(); ++i) {
        if (i) os << " ";
        if (basket[i].multiplicity > 1) os << basket[i].multiplicity << "x";
        os << "(" << basket[i].b << "," << basket[i].r << ")";
    }
    return os.str();
}

Basket parse_basket(const std::string& text) {
    Basket out;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        Int mult = 1;
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            mult = std::stoll(text.substr(i, j - i));
            i = j;
            if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) ++i;
            else if (i + 1 < text.size() && static_cast<unsigned char>(text[i]) == 0xC3 &&
                     static_cast<unsigned char>(text[i + 1]) == 0x97)
                i += 2;  // UTF-8 multiplication sign
        }
        skip_ws();
        if (i >= text.size() || text[i] != '(') throw std::invalid_argument("bad basket: " + text);
        size_t close = text.find(')', i);
        if (close == std::string::npos) throw std::invalid_argument("bad basket: " + text);
        std::string pair = text.substr(i + 1, close - i - 1);
        auto comma = pair.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("bad basket: " + text);
        out.push_back({std::stoll(pair.substr(0, comma)), std::stoll(pair.substr(comma + 1)), mult});
        i = close + 1;
    }
    std::sort(out.begin(), out.end(), [](const BasketEntry& x, const BasketEntry& y) {
        return std::tie(x.r, x.b) < std::tie(y.r, y.b);
    });
    // merge duplicates
    Basket merged;
    for (const auto& e : out) {
        if (!merged.empty() && merged.back().r == e.r && merged.back().b == e.b)
            merged.back().multiplicity += e.multiplicity;
        else
            merged.push_back(e);
    }
    return merged;
}

Basket assemble_basket(std::span<const CyclicQuotient> final_sings) {
    std::map<std::pair<Int, Int>, Int> acc;
    for (const auto& q : final_sings) {
        if (q.r == 1) continue;  // smooth
        auto br = is_three_fold_terminal_form(q);
        if (!br) throw NonTerminalInput("non-terminal type in basket input: " + quotient_to_string(q));
        acc[{br->second, br->first}] += 1;  // keyed (r, b)
    }
    Basket out;
    for (const auto& [key, mult] : acc) out.push_back({key.second, key.first, mult});
    return out;
}

Int crepant_divisor_count(const CyclicQuotient& q) {
    Int cnt = 0;
    for (Int m = 1; m < q.r; ++m) {
        Int s = 0;
        for (Int a : q.residues) s += (m * a) % q.r;
        if (s == q.r) ++cnt;
    }
    return cnt;
}

namespace {

// Crepant toric terminalization of an isolated canonical cyclic point.
//
// Work on the height-one slice of the quotient cone: lattice points are
// integer triples X with X = m*(a_1,a_2,a_3) mod r and X_1+X_2+X_3 = r.
// The slice triangle (r,0,0),(0,r,0),(0,0,r) is triangulated through every
// such point; each resulting subcone carries no height<=1 point beyond its
// rays, hence is terminal, and its quotient type is read off the lattice.
struct ToricTerminalizer {
    Int r;
    std::array<Int, 3> a;

    using P3 = std::array<Int, 3>;

    static Int orient(const P3& p, const P3& q, const P3& s) {
        // 2D orientation in the slice plane using (X1, X2) coordinates
        return (q[0] - p[0]) * (s[1] - p[1]) - (q[1] - p[1]) * (s[0] - p[0]);
    }

    static BigInt det3(const P3& x, const P3& y, const P3& z) {
        BigInt d = BigInt(x[0]) * (BigInt(y[1]) * z[2] - BigInt(y[2]) * z[1]);
        d -= BigInt(x[1]) * (BigInt(y[0]) * z[2] - BigInt(y[2]) * z[0]);
        d += BigInt(x[2]) * (BigInt(y[0]) * z[1] - BigInt(y[1]) * z[0]);
        return d < 0 ? -d : d;
    }

    std::vector<P3> junior_points() const {
        std::vector<P3> out;
        for (Int m = 1; m < r; ++m) {
            P3 p{(m * a[0]) % r, (m * a[1]) % r, (m * a[2]) % r};
            if (p[0] + p[1] + p[2] == r) out.push_back(p);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::array<P3, 3>> triangulate() const {
        std::vector<std::array<P3, 3>> tris{{P3{r, 0, 0}, P3{0, r, 0}, P3{0, 0, r}}};
        for (const P3& p : junior_points()) {
            for (size_t t = 0; t < tris.size(); ++t) {
                auto [A, B, C] = tris[t];
                Int o1 = orient(A, B, p), o2 = orient(B, C, p), o3 = orient(C, A, p);
                Int s1 = orient(A, B, C) > 0 ? 1 : -1;
                o1 *= s1; o2 *= s1; o3 *= s1;
                if (o1 < 0 || o2 < 0 || o3 < 0) continue;  // outside this triangle
                if (o1 > 0 && o2 > 0 && o3 > 0) {
                    tris[t] = {A, B, p};
                    tris.push_back({B, C, p});
                    tris.push_back({C, A, p});
                } else {
                    // on an interior edge: split both incident triangles
                    std::array<P3, 2> edge{};
                    if (o1 == 0) edge = {A, B};
                    else if (o2 == 0) edge = {B, C};
                    else edge = {C, A};
                    std::vector<std::array<P3, 3>> next;
                    for (const auto& tri : tris) {
                        bool has0 = std::find(tri.begin(), tri.end(), edge[0]) != tri.end();
                        bool has1 = std::find(tri.begin(), tri.end(), edge[1]) != tri.end();
                        if (has0 && has1) {
                            P3 other{};
                            for (const auto& v : tri)
                                if (v != edge[0] && v != edge[1]) other = v;
                            next.push_back({edge[0], other, p});
                            next.push_back({edge[1], other, p});
                        } else {
                            next.push_back(tri);
                        }
                    }
                    tris = std::move(next);
                }
                break;
            }
        }
        return tris;
    }

    // Quotient data of the cone over one triangle: group order and, when
    // nontrivial, the terminal type 1/s(x,y,z) of a cyclic generator.
    CyclicQuotient cone_type(const std::array<P3, 3>& tri) const {
        BigInt d = det3(tri[0], tri[1], tri[2]);
        BigInt s_big = d / (BigInt(r) * r);
        if (s_big * BigInt(r) * r != d)
            throw IntegralityError("cone index is not integral");
        Int s = static_cast<Int>(s_big);
        if (s == 1) return CyclicQuotient{1, {0, 0, 0}};

        // Enumerate lattice points in the half-open parallelepiped of the
        // triangle's rays; each is alpha*A + beta*B + gamma*C with
        // coefficients in [0,1) and denominator s.
        const auto& A = tri[0];
        const auto& B = tri[1];
        const auto& C = tri[2];
        std::vector<std::array<Int, 3>> elems;  // (s*alpha, s*beta, s*gamma)
        BigInt det_signed = BigInt(A[0]) * (BigInt(B[1]) * C[2] - BigInt(B[2]) * C[1]) -
                            BigInt(A[1]) * (BigInt(B[0]) * C[2] - BigInt(B[2]) * C[0]) +
                            BigInt(A[2]) * (BigInt(B[0]) * C[1] - BigInt(B[1]) * C[0]);
        // Cramer solve X = alpha A + beta B + gamma C exactly.
        auto coeffs = [&](const P3& x) -> std::optional<std::array<Rat, 3>> {
            BigInt d1 = BigInt(x[0]) * (BigInt(B[1]) * C[2] - BigInt(B[2]) * C[1]) -
                        BigInt(x[1]) * (BigInt(B[0]) * C[2] - BigInt(B[2]) * C[0]) +
                        BigInt(x[2]) * (BigInt(B[0]) * C[1] - BigInt(B[1]) * C[0]);
            BigInt d2 = BigInt(A[0]) * (BigInt(x[1]) * C[2] - BigInt(x[2]) * C[1]) -
                        BigInt(A[1]) * (BigInt(x[0]) * C[2] - BigInt(x[2]) * C[0]) +
                        BigInt(A[2]) * (BigInt(x[0]) * C[1] - BigInt(x[1]) * C[0]);
            BigInt d3 = BigInt(A[0]) * (BigInt(B[1]) * x[2] - BigInt(B[2]) * x[1]) -
                        BigInt(A[1]) * (BigInt(B[0]) * x[2] - BigInt(B[2]) * x[0]) +
                        BigInt(A[2]) * (BigInt(B[0]) * x[1] - BigInt(B[1]) * x[0]);
            std::array<Rat, 3> out{Rat(d1, det_signed), Rat(d2, det_signed), Rat(d3, det_signed)};
            for (const Rat& v : out)
                if (v < 0 || v >= 1) return std::nullopt;
            return out;
        };
        // Candidate lattice points: m*a mod r plus r*(k1,k2,k3) within the
        // coordinate bounds of the parallelepiped.
        std::array<Int, 3> hi{};
        for (int i = 0; i < 3; ++i) hi[i] = A[i] + B[i] + C[i];
        for (Int m = 0; m < r; ++m) {
            P3 base{(m * a[0]) % r, (m * a[1]) % r, (m * a[2]) % r};
            for (Int k1 = base[0]; k1 < hi[0] || k1 == base[0]; k1 += r)
                for (Int k2 = base[1]; k2 < hi[1] || k2 == base[1]; k2 += r)
                    for (Int k3 = base[2]; k3 < hi[2] || k3 == base[2]; k3 += r) {
                        auto cf = coeffs(P3{k1, k2, k3});
                        if (!cf) continue;
                        std::array<Int, 3> el{};
                        for (int i = 0; i < 3; ++i) {
                            Rat scaled = (*cf)[i] * s;
                            if (!rat_is_integer(scaled))
                                throw IntegralityError("group element coefficient denominator");
                            el[i] = static_cast<Int>(rat_to_integer(scaled));
                        }
                        if (std::find(elems.begin(), elems.end(), el) == elems.end())
                            elems.push_back(el);
                    }
        }
        if (static_cast<Int>(elems.size()) != s)
            throw IntegralityError("cone group enumeration incomplete");
        // pick a generator (an element of order s); the group must be cyclic
        for (const auto& el : elems) {
            Int g = std::gcd(std::gcd(std::gcd(el[0], el[1]), el[2]), s);
            if (g == 1) return CyclicQuotient{s, {el[0], el[1], el[2]}};
        }
        throw NonTerminalInput("subdivided cone has a non-cyclic quotient group");
    }
};

}  // namespace

Terminalization terminalize(std::span<const CyclicQuotient> sings) {
    Terminalization out;
    out.rho_increment = 0;
    std::vector<CyclicQuotient> terminal_types;
    for (const auto& q : sings) {
        SingClass cls = classify_quotient(q);
        if (cls == SingClass::Smooth) continue;
        if (cls == SingClass::NonCanonical)
            throw NonCanonicalInput("non-canonical type in terminalization input: " +
                                    quotient_to_string(q));
        if (q.residues.size() != 3)
            throw NonIsolatedInput("terminalization expects three residues");
        if (cls == SingClass::Terminal) {
            terminal_types.push_back(q);
            continue;
        }
        if (!is_isolated_quotient(q))
            throw NonIsolatedInput("non-isolated canonical type: " + quotient_to_string(q));
        ToricTerminalizer tt{q.r, {q.residues[0], q.residues[1], q.residues[2]}};
        auto juniors = tt.junior_points();
        out.rho_increment += static_cast<Int>(juniors.size());
        if (static_cast<Int>(juniors.size()) != crepant_divisor_count(q))
            throw IntegralityError("crepant divisor count mismatch");
        for (const auto& tri : tt.triangulate()) {
            CyclicQuotient t = tt.cone_type(tri);
            if (t.r == 1) continue;
            if (classify_quotient(t) != SingClass::Terminal)
                throw NonTerminalInput("subdivided cone is not terminal: " + quotient_to_string(t));
            terminal_types.push_back(t);
        }
    }
    out.basket = assemble_basket(terminal_types);
    return out;
}

std::optional<Int> picard_number(const BlowupPlan& plan, const Terminalization& term,
                                 bool has_non_isolated_canonical) {
    if (has_non_isolated_canonical) return std::nullopt;
    return 1 + static_cast<Int>(plan.steps.size()) + term.rho_increment;
}

Rat l_value(const Basket& basket, Int n) {
    if (n < 0) return -l_value(basket, -n + 1);
    if (n <= 1) return Rat(0);
    Rat total;
    for (const auto& entry : basket) {
        Rat one;
        for (Int k = 1; k <= n - 1; ++k) {
            Int bk = (entry.b * k) % entry.r;
            one += Rat(bk * (entry.r - bk), 2 * entry.r);
        }
        total += one * entry.multiplicity;
    }
    return total;
}

BigInt reid_plurigenus(const Rat& vol, const BigInt& chi, const Basket& basket, Int n) {
    if (n < 2) throw std::domain_error("reid_plurigenus: n >= 2 required");
    Rat value = Rat(BigInt(2 * n - 1) * n * (n - 1), 12) * vol;
    value -= Rat(BigInt(2 * n - 1) * chi);
    value += l_value(basket, n);
    if (!rat_is_integer(value) || value < 0)
        throw IntegralityError("plurigenus is not a non-negative integer: " + rat_to_string(value));
    return rat_to_integer(value);
}

GeneraResult chi_and_genera(const WciFamily& f, const BlowupPlan* plan) {
    const Int alpha = amplitude(f);
    if (alpha <= 0) throw std::domain_error("chi_and_genera: positive amplitude required");
    GeneraResult out;
    out.p_g = hilbert_coefficient(f, alpha);
    out.chi = 1 - out.p_g;
    out.p2_raw = hilbert_coefficient(f, 2 * alpha);
    out.discrepancy_ok = true;
    if (plan) {
        for (const auto& step : plan->steps) {
            Int sum = 0;
            for (Int e : step.weight.residues) sum += e;
            if (2 * sum <= step.weight.r) out.discrepancy_ok = false;
        }
    }
    if (out.discrepancy_ok) out.p2_sections = out.p2_raw;
    return out;
}

const char* noether_tag_name(NoetherTag tag) {
    switch (tag) {
        case NoetherTag::OnFirst: return "on-first";
        case NoetherTag::OnSecond: return "on-second";
        case NoetherTag::OnThird: return "on-third";
        case NoetherTag::Between: return "between";
        case NoetherTag::Above: return "above";
        case NoetherTag::NotApplicable: return "n/a";
    }
    return "?";
}

NoetherPosition noether_position(const Rat& vol, const BigInt& p_g) {
    if (p_g < 1) throw std::domain_error("noether_position: p_g >= 1 required");
    NoetherPosition out;
    Rat base = Rat(4 * p_g, 3);
    out.delta = vol - base + Rat(10, 3);
    Rat second = base - Rat(19, 6);
    Rat third = base - Rat(3);
    if (out.delta == 0) out.tag = NoetherTag::OnFirst;
    else if (vol == second) out.tag = NoetherTag::OnSecond;
    else if (vol == third) out.tag = NoetherTag::OnThird;
    else if (vol < third) out.tag = NoetherTag::Between;
    else out.tag = NoetherTag::Above;
    return out;
}

Rat kodaira2_identity(Int a, Int b, Int r) {
    const Int alpha = r - a - b - 1;
    if (alpha <= 0) throw std::domain_error("kodaira2_identity: amplitude must be positive");
    if (std::gcd(a, b) != 1) throw std::domain_error("kodaira2_identity: gcd(a,b) must be 1");
    BigInt alpha3 = BigInt(alpha) * alpha * alpha;
    Rat first(BigInt(2 * r + 4) * (2 * r + 2) * alpha3,
              BigInt(4) * a * b * r * (r + 1) * (r + 2));
    Rat second(alpha3, BigInt(r) * a * b);
    return first - second;
}

}  // namespace mwci
