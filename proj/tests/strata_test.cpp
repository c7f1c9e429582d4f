#include "mwci/strata.hpp"

#include "doctest.h"

#include <algorithm>
#include <map>

using namespace mwci;

namespace {

WciFamily family(std::vector<Int> weights, std::vector<Int> degrees) {
    return {WeightedSpace{std::move(weights)}, std::move(degrees)};
}

std::multiset<std::string> point_types(const StratificationReport& rep) {
    std::multiset<std::string> out;
    for (const auto& l : rep.loci)
        if (l.locus_dim == 0)
            for (Int i = 0; i < l.count; ++i) out.insert(quotient_to_string(l.quotient));
    return out;
}

const SingularLocus* find_locus(const StratificationReport& rep, const CyclicQuotient& raw) {
    auto n = normalize_quotient(raw);
    for (const auto& l : rep.loci)
        if (l.quotient == n) return &l;
    return nullptr;
}

}  // namespace

TEST_CASE("hypersurface stratification: X32 in P(1,1,5,8,12)") {
    auto rep = stratify_hypersurface(family({1, 1, 5, 8, 12}, {32}));
    auto pts = point_types(rep);
    // published singular content: one quarter point on the (8,12) edge and
    // the vertex of weight twelve
    CHECK(pts.count(quotient_to_string(normalize_quotient({4, {1, 1, 1}}))) == 1);
    CHECK(pts.count(quotient_to_string(normalize_quotient({12, {1, 1, 5}}))) == 1);
    CHECK_FALSE(rep.has_non_isolated_canonical);
}

TEST_CASE("hypersurface stratification: X37 in P(1,1,6,9,14)") {
    auto rep = stratify_hypersurface(family({1, 1, 6, 9, 14}, {37}));
    CHECK(find_locus(rep, {9, {2, 3, 1}}) != nullptr);
    CHECK(find_locus(rep, {14, {1, 1, 6}}) != nullptr);
    CHECK(find_locus(rep, {6, {1, 3, 2}}) != nullptr);
    CHECK(rep.has_non_isolated_canonical);  // curves along the (6,14) and (6,9) edges
    std::multiset<Int> curve_orders;
    for (const auto& l : rep.loci)
        if (l.locus_dim == 1) {
            curve_orders.insert(l.quotient.r);
            CHECK(l.sing_class == SingClass::CanonicalNonTerminal);
        }
    CHECK(curve_orders == std::multiset<Int>{2, 3});
    CHECK(rep.non_canonical.size() == 2);
}

TEST_CASE("smooth ambient gives empty stratification") {
    auto rep = stratify_hypersurface(family({1, 1, 1, 1, 1}, {6}));
    CHECK(rep.loci.empty());
    CHECK(rep.worst == SingClass::Smooth);
}

TEST_CASE("codimension 2: X(39,42) in P(6,9,11,13,14,21)") {
    auto rep = stratify_codim2(family({6, 9, 11, 13, 14, 21}, {39, 42}));
    auto pts = point_types(rep);
    std::multiset<std::string> expect;
    for (int i = 0; i < 4; ++i) expect.insert(quotient_to_string(normalize_quotient({3, {2, 1, 2}})));
    expect.insert(quotient_to_string(normalize_quotient({2, {1, 1, 1}})));
    expect.insert(quotient_to_string(normalize_quotient({7, {1, 5, 1}})));
    // the weight-9 vertex keeps the residues of weights 11, 13, 14; the
    // plurigenus cross-check pins this class (not its (1,9) look-alike)
    expect.insert(quotient_to_string(normalize_quotient({9, {2, 4, 5}})));
    expect.insert(quotient_to_string(normalize_quotient({11, {5, 2, 3}})));
    CHECK(pts == expect);
    // the face count is the published N = 4
    auto* face = find_locus(rep, {3, {2, 1, 2}});
    REQUIRE(face != nullptr);
    CHECK(face->count == 4);
    CHECK(face->stratum == std::vector<int>{0, 1, 5});
    CHECK(rep.non_canonical.size() == 1);
    CHECK(rep.loci[rep.non_canonical[0]].quotient == normalize_quotient({11, {5, 2, 3}}));
}

TEST_CASE("codimension 2: X(20,21) in P(3,4,5,7,8,13)") {
    auto rep = stratify_codim2(family({3, 4, 5, 7, 8, 13}, {20, 21}));
    auto pts = point_types(rep);
    std::multiset<std::string> expect;
    expect.insert(quotient_to_string(normalize_quotient({4, {3, 3, 1}})));
    expect.insert(quotient_to_string(normalize_quotient({4, {3, 3, 1}})));
    expect.insert(quotient_to_string(normalize_quotient({8, {3, 7, 5}})));
    expect.insert(quotient_to_string(normalize_quotient({13, {3, 4, 5}})));
    CHECK(pts == expect);
    auto* edge = find_locus(rep, {4, {3, 3, 1}});
    REQUIRE(edge != nullptr);
    CHECK(edge->count == 2);  // published floor(4*20/32) = 2
}

TEST_CASE("codimension 2: X(20,24) in P(1,1,5,8,12,12)") {
    auto rep = stratify_codim2(family({1, 1, 5, 8, 12, 12}, {20, 24}));
    auto pts = point_types(rep);
    std::multiset<std::string> expect;
    expect.insert(quotient_to_string(normalize_quotient({4, {1, 1, 1}})));
    expect.insert(quotient_to_string(normalize_quotient({12, {1, 1, 5}})));
    expect.insert(quotient_to_string(normalize_quotient({12, {1, 1, 5}})));
    CHECK(pts == expect);
    CHECK(rep.non_canonical.size() == 2);  // two loci, three points in total
    CHECK_FALSE(rep.has_non_isolated_canonical);
    // all three points share the local chart of the first three coordinates
    for (const auto& l : rep.loci) {
        REQUIRE(!l.local_charts.empty());
        CHECK(std::find(l.local_charts.begin(), l.local_charts.end(),
                        std::array<int, 3>{0, 1, 2}) != l.local_charts.end());
    }
}

TEST_CASE("codimension 3: the two table families") {
    auto rep = stratify_codim3(family({2, 3, 4, 5, 6, 7, 7}, {10, 12, 14}));
    auto pts = point_types(rep);
    CHECK(pts.count(quotient_to_string(normalize_quotient({7, {1, 2, 3}}))) == 2);
    // two extra terminal third-points on the (3,6) edge
    CHECK(pts.count(quotient_to_string(normalize_quotient({3, {1, 1, 2}}))) == 2);
    CHECK(pts.size() == 4);

    auto rep2 = stratify_codim3(family({2, 3, 4, 5, 6, 7, 8}, {10, 12, 15}));
    auto pts2 = point_types(rep2);
    CHECK(pts2.count(quotient_to_string(normalize_quotient({7, {1, 2, 3}}))) == 1);
}

TEST_CASE("codimension 3 with coprime strata is empty") {
    auto rep = stratify_codim3(family({1, 1, 1, 1, 1, 1, 1}, {2, 3, 4}));
    CHECK(rep.loci.empty());
    CHECK(rep.worst == SingClass::Smooth);
}

TEST_CASE("gcd preconditions are enforced") {
    CHECK_THROWS_AS(stratify_hypersurface(family({2, 4, 6, 1, 1}, {13})), HypothesisViolation);
    CHECK_THROWS_AS(stratify_codim2(family({2, 4, 6, 8, 1, 1}, {13, 15})), HypothesisViolation);
}

TEST_CASE("stratum intersection dimension") {
    auto f = family({3, 4, 5, 7, 8, 13}, {20, 21});
    RepresentabilityTable reps(f.space.weights);
    // the span of weights (7, 8, 13) meets the member in finitely many points
    std::vector<int> rest{3, 4, 5};
    CHECK(stratum_intersection_dim(f, reps, rest) <= 0);
    // a single weight-1 coordinate: empty
    auto g = family({1, 1, 5, 8, 12}, {32});
    RepresentabilityTable reps_g(g.space.weights);
    std::vector<int> one{0};
    CHECK(stratum_intersection_dim(g, reps_g, one) < 0);
}
