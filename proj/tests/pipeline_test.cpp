#include "mwci/pipeline.hpp"

#include "doctest.h"

using namespace mwci;

namespace {

CandidateInput candidate(std::vector<Int> weights, std::vector<Int> degrees,
                         std::vector<CenterPlan> plan = {}) {
    CandidateInput in;
    in.family = {WeightedSpace{std::move(weights)}, std::move(degrees)};
    if (!plan.empty()) in.plan = std::move(plan);
    return in;
}

}  // namespace

TEST_CASE("pipeline: X(20,21) in P(3,4,5,7,8,13)") {
    auto res = verify_candidate(candidate({3, 4, 5, 7, 8, 13}, {20, 21},
                                          {{13, {3, 4, 5}, {}, {}}}));
    REQUIRE(res.accepted);
    CHECK(res.alpha == 1);
    CHECK(res.vol == Rat(1, 120));
    CHECK(res.p_g == 0);
    CHECK(res.p2 == 0);
    CHECK(res.chi == 1);
    REQUIRE(res.rho.has_value());
    CHECK(*res.rho == 2);
    CHECK(basket_to_string(res.basket) == "(1,3) 3x(1,4) (2,5) (3,8)");
    CHECK(res.basket_source == "computed");
    CHECK(res.p2_reid == BigInt(0));
    CHECK(res.kodaira_tag == "general-type");
}

TEST_CASE("pipeline: X(39,42) in P(6,9,11,13,14,21)") {
    auto res = verify_candidate(candidate({6, 9, 11, 13, 14, 21}, {39, 42},
                                          {{11, {2, 3, 5}, {}, {}}}));
    REQUIRE(res.accepted);
    CHECK(res.alpha == 7);
    CHECK(res.vol == Rat(11, 45));
    CHECK(res.p2 == 1);
    CHECK(res.chi == 1);
    REQUIRE(res.rho.has_value());
    CHECK(*res.rho == 5);  // one step plus three crepant divisors
    // the published basket lists (1,9); the plurigenus identity pins (4,9)
    CHECK(basket_to_string(res.basket) == "2x(1,2) 5x(1,3) (2,5) (4,9)");
    CHECK(res.p2_reid == BigInt(1));
}

TEST_CASE("pipeline: X(20,24) in P(1,1,5,8,12,12)") {
    auto res = verify_candidate(candidate({1, 1, 5, 8, 12, 12}, {20, 24},
                                          {{4, {1, 1, 1}, {}, {}},
                                           {12, {1, 1, 5}, {}, {}},
                                           {12, {1, 1, 5}, {}, {}}}));
    REQUIRE(res.accepted);
    CHECK(res.vol == Rat(6));
    CHECK(res.p_g == 7);
    CHECK(res.p2 == 21);
    REQUIRE(res.rho.has_value());
    CHECK(*res.rho == 8);  // three steps plus two increments of two
    CHECK(res.basket.empty());
    CHECK(res.noether == NoetherTag::OnFirst);
    CHECK(res.delta == Rat(0));
}

TEST_CASE("pipeline: X37 in P(1,1,6,9,14)") {
    auto res = verify_candidate(candidate({1, 1, 6, 9, 14}, {37},
                                          {{9, {1, 2, 3}, {}, {}}, {14, {1, 1, 6}, {}, {}}}));
    REQUIRE(res.accepted);
    CHECK(res.vol == Rat(15, 2));
    CHECK(res.p_g == 8);
    CHECK(res.p2 == 25);
    CHECK(res.has_non_isolated_canonical);
    CHECK_FALSE(res.rho.has_value());
    CHECK(res.basket_source == "absent");  // no annotation supplied here
    CHECK(res.noether == NoetherTag::OnSecond);
    CHECK(res.delta == Rat(1, 6));
}

TEST_CASE("pipeline: two-step row X25 in P(1,1,3,5,12)") {
    auto res = verify_candidate(candidate({1, 1, 3, 5, 12}, {25},
                                          {{12, {1, 3, 5}, 5, std::vector<Int>{1, 1, 2}}}));
    REQUIRE(res.accepted);
    CHECK(res.certificate.kind == CriterionKind::III);
    CHECK(res.plan.steps.size() == 2);
    CHECK(res.vol == Rat(7, 2));
    CHECK(res.p_g == 5);
    CHECK(res.p2 == 14);
    CHECK(res.has_non_isolated_canonical);  // the (3,12) edge lies in the member
    CHECK(res.noether == NoetherTag::OnSecond);
}

TEST_CASE("pipeline: two-step row X35 in P(1,1,5,7,17)") {
    auto in = candidate({1, 1, 5, 7, 17}, {35}, {{17, {1, 5, 7}, 7, std::vector<Int>{1, 2, 3}}});
    auto res = verify_candidate(in);
    REQUIRE(res.accepted);
    CHECK(res.certificate.kind == CriterionKind::III);
    CHECK(res.vol == Rat(109, 30));
    CHECK(res.p_g == 5);
    CHECK(res.p2 == 15);
    CHECK_FALSE(res.has_non_isolated_canonical);
    CHECK(basket_to_string(res.basket) == "(1,2) (1,3) (2,5)");
    CHECK(res.basket_source == "computed");
    REQUIRE(res.rho.has_value());
    CHECK(*res.rho == 3);
    CHECK(res.p2_reid == BigInt(15));
    CHECK(res.delta == Rat(3, 10));
}

TEST_CASE("pipeline: search mode without a pinned plan") {
    auto res = verify_candidate(candidate({3, 4, 5, 7, 8, 13}, {20, 21}));
    REQUIRE(res.accepted);
    CHECK(res.vol == Rat(1, 120));
    CHECK(*res.rho == 2);
}

TEST_CASE("pipeline rejections") {
    CHECK(verify_candidate(candidate({1, 1, 1, 1, 1}, {4})).failure_step == "amplitude");
    CHECK(verify_candidate(candidate({1, 2, 3, 4, 5, 6}, {5, 17})).failure_step == "linear-cone");
    CHECK(verify_candidate(candidate({2, 4, 6, 8, 5}, {26})).failure_step == "well-formed");
    CHECK(verify_candidate(candidate({1, 3, 4, 9, 10, 11}, {20, 22})).failure_step ==
          "quasi-smooth");
    // smooth-ambient family of general type has no non-canonical point
    CHECK(verify_candidate(candidate({1, 1, 1, 1, 1}, {6})).failure_step ==
          "no-non-canonical-point");
    // a plan whose weights match no locus
    auto res = verify_candidate(candidate({3, 4, 5, 7, 8, 13}, {20, 21}, {{7, {1, 2, 3}, {}, {}}}));
    CHECK(res.failure_step == "plan-mismatch");
}

TEST_CASE("pipeline: parametric vanishing-volume family") {
    auto res = verify_candidate(candidate({1, 1, 4, 13, 14, 15}, {28, 30}));
    REQUIRE(res.accepted);
    CHECK(res.vol == Rat(0));
    CHECK(res.kodaira_tag == "kodaira-2");
}
