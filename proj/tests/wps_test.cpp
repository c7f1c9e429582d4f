#include "mwci/wps.hpp"

#include "doctest.h"

#include <numeric>
#include <set>

using namespace mwci;

TEST_CASE("well-formed ambient spaces") {
    CHECK(is_well_formed_space({{3, 4, 5, 7, 8, 13}}));
    CHECK(is_well_formed_space({{1, 1, 1}}));
    CHECK_FALSE(is_well_formed_space({{2, 2, 3}}));
    CHECK(is_well_formed_space({{1, 1, 5, 8, 12, 12}}));
    CHECK_FALSE(is_well_formed_space({{2, 4, 6, 5}}));  // dropping 5 leaves the evens
}

TEST_CASE("singular strata enumeration matches an exhaustive scan") {
    WeightedSpace sp{{3, 4, 5, 7, 8, 13}};
    auto strata = singular_strata(sp, 1);
    // oracle: scan all subsets of size <= 2
    std::set<std::pair<std::vector<int>, Int>> expect;
    for (int i = 0; i < 6; ++i) {
        if (sp.weights[i] > 1) expect.insert({{i}, sp.weights[i]});
        for (int j = i + 1; j < 6; ++j) {
            Int g = std::gcd(sp.weights[i], sp.weights[j]);
            if (g > 1) expect.insert({{i, j}, g});
        }
    }
    std::set<std::pair<std::vector<int>, Int>> got;
    for (const auto& s : strata) got.insert({s.indices, s.e});
    CHECK(got == expect);
    // spot values from the scan
    CHECK(got.count({{1, 4}, 4}) == 1);   // weights 4 and 8
    CHECK(got.count({{5}, 13}) == 1);

    WeightedSpace sp2{{1, 1, 2, 3, 4, 5}};
    auto strata2 = singular_strata(sp2, 1);
    std::set<std::pair<std::vector<int>, Int>> got2;
    for (const auto& s : strata2) got2.insert({s.indices, s.e});
    CHECK(got2 == std::set<std::pair<std::vector<int>, Int>>{
                      {{2}, 2}, {{3}, 3}, {{4}, 4}, {{5}, 5}, {{2, 4}, 2}});

    CHECK(singular_strata({{1, 1, 1, 1}}, 3).empty());
}

TEST_CASE("quotient normal forms") {
    auto n1 = normalize_quotient({3, {1, 2, 1}});
    CHECK(n1 == CyclicQuotient{3, {1, 1, 2}});
    CHECK(normalize_quotient({3, {2, 1, 2}}) == n1);
    CHECK(normalize_quotient({4, {3, 3, 3}}) == CyclicQuotient{4, {1, 1, 1}});
    CHECK(normalize_quotient({11, {13, 14, 21}}) == normalize_quotient({11, {5, 2, 3}}));
    CHECK_THROWS_AS(normalize_quotient({4, {2, 2, 1}}), RejectNonSmallAction);
}

TEST_CASE("normalization is idempotent and constant on unit orbits") {
    for (Int r = 2; r <= 30; ++r) {
        for (Int a = 0; a < r; ++a)
            for (Int b = a; b < r; ++b)
                for (Int c = b; c < r; ++c) {
                    CyclicQuotient q{r, {a, b, c}};
                    if (!is_small_action(q)) continue;
                    auto n = normalize_quotient(q);
                    CHECK(normalize_quotient(n) == n);
                    for (Int m = 1; m < r; ++m) {
                        if (std::gcd(m, r) != 1) continue;
                        CyclicQuotient mq{r, {(m * a) % r, (m * b) % r, (m * c) % r}};
                        CHECK(normalize_quotient(mq) == n);
                    }
                }
    }
}

TEST_CASE("Reid-Tai sums") {
    CHECK(reid_tai_sum({13, {3, 4, 5}}, 1) == Rat(12, 13));
    CHECK(reid_tai_sum({2, {1, 1, 1}}, 1) == Rat(3, 2));
    CHECK(reid_tai_sum({7, {1, 5, 1}}, 3) == Rat(1));
}

TEST_CASE("classification by Reid-Tai") {
    CHECK(classify_quotient({7, {1, 2, 3}}) == SingClass::NonCanonical);
    CHECK(classify_quotient({2, {1, 1, 1}}) == SingClass::Terminal);
    CHECK(classify_quotient({7, {1, 5, 1}}) == SingClass::CanonicalNonTerminal);
    CHECK(classify_quotient({1, {0, 0, 0}}) == SingClass::Smooth);
    CHECK(classify_quotient({3, {1, 0, 2}}) == SingClass::CanonicalNonTerminal);
}

TEST_CASE("classification agrees with a brute-force oracle, r <= 50") {
    for (Int r = 2; r <= 50; ++r) {
        for (Int a = 0; a < r; ++a)
            for (Int b = a; b < r; ++b)
                for (Int c = b; c < r; ++c) {
                    CyclicQuotient q{r, {a, b, c}};
                    if (!is_small_action(q)) continue;
                    // oracle: independent evaluation of every sum
                    bool all_gt = true, all_ge = true;
                    for (Int k = 1; k < r; ++k) {
                        Rat s = reid_tai_sum(q, k);
                        all_gt = all_gt && s > 1;
                        all_ge = all_ge && s >= 1;
                    }
                    SingClass expect = all_gt          ? SingClass::Terminal
                                       : all_ge        ? SingClass::CanonicalNonTerminal
                                                       : SingClass::NonCanonical;
                    CHECK(classify_quotient(q) == expect);
                }
    }
}

TEST_CASE("terminal form extraction") {
    auto t1 = is_three_fold_terminal_form({8, {3, 7, 5}});
    REQUIRE(t1.has_value());
    CHECK(*t1 == std::pair<Int, Int>{3, 8});
    auto t2 = is_three_fold_terminal_form({5, {3, 4, 2}});
    REQUIRE(t2.has_value());
    CHECK(*t2 == std::pair<Int, Int>{2, 5});
    auto t3 = is_three_fold_terminal_form({4, {3, 3, 1}});
    REQUIRE(t3.has_value());
    CHECK(*t3 == std::pair<Int, Int>{1, 4});
    CHECK_FALSE(is_three_fold_terminal_form({7, {1, 2, 3}}).has_value());
    CHECK_FALSE(is_three_fold_terminal_form({7, {1, 5, 1}}).has_value());
}

TEST_CASE("terminal forms invert for every 1/r(1,-1,a), r <= 50") {
    for (Int r = 2; r <= 50; ++r)
        for (Int a = 1; a < r; ++a) {
            if (std::gcd(a, r) != 1) continue;
            CyclicQuotient q{r, {1, r - 1, a}};
            CHECK(classify_quotient(q) == SingClass::Terminal);
            auto br = is_three_fold_terminal_form(q);
            REQUIRE(br.has_value());
            CHECK(br->first == std::min(a, r - a));
            CHECK(br->second == r);
        }
}

TEST_CASE("fractional-part pairing over k and r-k") {
    for (Int r = 2; r <= 50; ++r)
        for (Int a = 1; a < r; ++a)
            for (Int b = a; b < r; ++b)
                for (Int c = b; c < r; ++c) {
                    if (std::gcd(a, r) != 1 || std::gcd(b, r) != 1 || std::gcd(c, r) != 1)
                        continue;
                    CyclicQuotient q{r, {a, b, c}};
                    for (Int k = 1; k < r; ++k)
                        CHECK(rat_is_integer(reid_tai_sum(q, k) + reid_tai_sum(q, r - k)));
                }
}
