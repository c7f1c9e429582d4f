#include "mwci/blowup.hpp"

#include "doctest.h"

#include <numeric>
#include <set>

using namespace mwci;

namespace {

std::multiset<std::string> chart_names(const BlowupStep& step) {
    std::multiset<std::string> out;
    for (const auto& q : exceptional_charts(step)) out.insert(quotient_to_string(q));
    return out;
}

BlowupStep step_of(Int r, std::vector<Int> weights) {
    BlowupStep s;
    s.weight = {r, std::move(weights)};
    return s;
}

}  // namespace

TEST_CASE("exceptional charts of the worked centers") {
    CHECK(chart_names(step_of(7, {1, 2, 3})) ==
          std::multiset<std::string>{quotient_to_string(normalize_quotient({2, {1, 1, 1}})),
                                     quotient_to_string(normalize_quotient({3, {1, 2, 1}}))});
    CHECK(chart_names(step_of(11, {1, 1, 4})) ==
          std::multiset<std::string>{quotient_to_string(normalize_quotient({4, {1, 1, 1}}))});
    CHECK(chart_names(step_of(13, {3, 4, 5})) ==
          std::multiset<std::string>{quotient_to_string(normalize_quotient({3, {1, 2, 1}})),
                                     quotient_to_string(normalize_quotient({4, {3, 3, 1}})),
                                     quotient_to_string(normalize_quotient({5, {3, 4, 2}}))});
}

TEST_CASE("discrepancies") {
    CHECK(discrepancy(step_of(13, {3, 4, 5})) == Rat(1, 13));
    CHECK(discrepancy(step_of(5, {1, 1, 1})) == Rat(2, 5));
}

TEST_CASE("volume corrections") {
    BlowupPlan plan;
    plan.steps = {step_of(13, {3, 4, 5})};
    CHECK(volume_after(Rat(1, 104), plan) == Rat(1, 120));

    BlowupPlan plan2;
    plan2.steps = {step_of(4, {1, 1, 1}), step_of(12, {1, 1, 5}), step_of(12, {1, 1, 5})};
    CHECK(volume_after(Rat(125, 12), plan2) == Rat(6));

    BlowupPlan empty;
    CHECK(volume_after(Rat(7, 3), empty) == Rat(7, 3));

    BlowupPlan bad;
    bad.steps = {step_of(13, {2, 4, 6})};  // exceptional space P(2,4,6) is not well-formed
    CHECK_THROWS_AS(volume_after(Rat(1), bad), WellFormednessError);
}

TEST_CASE("volume is order independent") {
    BlowupPlan p1, p2;
    p1.steps = {step_of(4, {1, 1, 1}), step_of(12, {1, 1, 5})};
    p2.steps = {step_of(12, {1, 1, 5}), step_of(4, {1, 1, 1})};
    CHECK(volume_after(Rat(9, 2), p1) == volume_after(Rat(9, 2), p2));
}

TEST_CASE("admissible weights") {
    auto w = admissible_weights(normalize_quotient({12, {1, 3, 5}}));
    REQUIRE(!w.empty());
    std::vector<Int> front = w.front();
    std::sort(front.begin(), front.end());
    CHECK(front == std::vector<Int>{1, 3, 5});
    // terminal types admit none: every representative has entry sum above r
    CHECK(admissible_weights(normalize_quotient({5, {1, 4, 2}})).empty());
}

TEST_CASE("minimal-discrepancy charts of terminal types stay terminal, r <= 30") {
    // the representative with entry sum r + 1 extracts the unique divisor of
    // discrepancy 1/r; its charts are again terminal
    for (Int r = 2; r <= 30; ++r)
        for (Int a = 1; a < r; ++a) {
            if (std::gcd(a, r) != 1) continue;
            CyclicQuotient q{r, {1, r - 1, a}};
            std::optional<std::vector<Int>> kawamata;
            for (Int m = 1; m < r && !kawamata; ++m) {
                if (std::gcd(m, r) != 1) continue;
                std::vector<Int> e{(m * 1) % r, (m * (r - 1)) % r, (m * a) % r};
                if (e[0] + e[1] + e[2] == r + 1) kawamata = e;
            }
            REQUIRE(kawamata.has_value());
            BlowupStep s;
            s.weight = {r, *kawamata};
            for (const auto& chart : exceptional_charts(s)) {
                auto cls = classify_quotient(chart);
                CHECK((cls == SingClass::Terminal || cls == SingClass::Smooth));
            }
        }
}

TEST_CASE("discrepancy positive for plan steps") {
    auto w = admissible_weights(normalize_quotient({13, {3, 4, 5}}));
    for (const auto& e : w) {
        BlowupStep s;
        s.weight = {13, e};
        CHECK(discrepancy(s) > 0);
    }
}
