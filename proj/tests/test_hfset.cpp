// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <thread>

#include "hfl/error.hpp"
#include "hfl/hfset.hpp"
#include "support.hpp"

using namespace hfl;
using namespace hfl::test;

TEST(HfSet, CanonicalCompareExamples) {
    EXPECT_EQ(canonical_compare(E(), S("{{}}")), std::strong_ordering::less);
    const HfSet x = S("{{}, {{}}}");
    EXPECT_EQ(canonical_compare(x, x), std::strong_ordering::equal);
    EXPECT_EQ(canonical_compare(S("{{}}"), S("{{{}}}")), std::strong_ordering::less);
}

TEST(HfSet, CanonicalOrderIsStrictTotalOnV4) {
    const auto v = elements(v_level(4));
    for (const auto& a : v) {
        for (const auto& b : v) {
            const auto ab = canonical_compare(a, b);
            EXPECT_EQ(ab == 0, a == b);
            EXPECT_EQ(ab < 0, canonical_compare(b, a) > 0);
            for (const auto& c : v) {
                if (ab < 0 && canonical_compare(b, c) < 0) {
                    EXPECT_TRUE(canonical_compare(a, c) < 0);
                }
            }
        }
    }
}

TEST(HfSet, ElementsAreSortedAndDeduplicated) {
    const HfSet s = HfSet::of({N(2), E(), N(1), E(), N(2)});
    ASSERT_EQ(s.size(), 3u);
    for (std::size_t i = 1; i < s.size(); ++i) {
        EXPECT_TRUE(canonical_compare(s.elements()[i - 1], s.elements()[i]) < 0);
    }
}

TEST(HfSet, ExtensionalityMatchesStructuralEquality) {
    std::mt19937_64 rng(7);
    const HfSet v4 = v_level(4);
    for (int i = 0; i < 300; ++i) {
        const HfSet a = random_subset(rng, v4);
        const HfSet b = random_subset(rng, v4);
        const bool same_members = is_subset(a, b) && is_subset(b, a);
        EXPECT_EQ(a == b, same_members);
    }
}

TEST(HfSet, PairConstructors) {
    EXPECT_EQ(kpair(E(), S("{{}}")), S("{{{}}, {{}, {{}}}}"));
    EXPECT_EQ(upair(E(), E()), S("{{}}"));
    EXPECT_EQ(upair(N(1), N(1)), singleton(N(1)));
}

TEST(HfSet, PairingLawOnV3) {
    const auto v = elements(v_level(3));
    for (const auto& a : v) {
        for (const auto& b : v) {
            const HfSet p = kpair(a, b);
            auto back = unpair(p);
            ASSERT_TRUE(back.has_value());
            EXPECT_EQ(back->first, a);
            EXPECT_EQ(back->second, b);
            for (const auto& c : v) {
                for (const auto& d : v) {
                    EXPECT_EQ(p == kpair(c, d), a == c && b == d);
                }
            }
        }
    }
}

TEST(HfSet, UnpairRejectsNonPairs) {
    EXPECT_FALSE(unpair(E()).has_value());
    EXPECT_FALSE(unpair(N(3)).has_value());
}

TEST(HfSet, AlgebraExamples) {
    EXPECT_EQ(big_union(S("{{{}}, {{{}}}}")), S("{{}, {{}}}"));
    EXPECT_EQ(powerset(S("{{}}")), S("{{}, {{}}}"));
    EXPECT_EQ(cartprod(v_level(2), v_level(2)).size(), 4u);
    EXPECT_EQ(set_inter(N(3), S("{{}, {{{}}}}")), S("{{}}"));
    EXPECT_EQ(set_diff(N(2), N(1)), S("{{{}}}"));
    EXPECT_EQ(set_union(N(1), S("{{{}}}")), N(2));
}

TEST(HfSet, OrdinalPredicates) {
    EXPECT_TRUE(is_ordinal(S("{{}, {{}}}")));
    EXPECT_FALSE(is_ordinal(S("{{{}}}")));
    EXPECT_EQ(to_nat(nat_ord(3)), 3u);
    EXPECT_FALSE(to_nat(S("{{{}}}")).has_value());
    EXPECT_EQ(succ(N(2)), N(3));
}

TEST(HfSet, RankExamples) {
    EXPECT_EQ(rank(E()), 0u);
    EXPECT_EQ(rank(S("{{{}}}")), 2u);
    EXPECT_EQ(rank(kpair(E(), E())), 2u);
}

TEST(HfSet, RankLawsOnV4) {
    for (const HfSet& a : v_level(4)) {
        EXPECT_LE(rank(big_union(a)), rank(a));
        EXPECT_EQ(rank(powerset(a)), rank(a) + 1);
        EXPECT_LT(rank(a), 4u);
    }
}

TEST(HfSet, VLevelExamplesAndCap) {
    EXPECT_EQ(v_level(0), E());
    EXPECT_EQ(v_level(2), S("{{}, {{}}}"));
    EXPECT_EQ(v_level(4).size(), 16u);
    EXPECT_EQ(v_level(5).size(), 65536u);
    EXPECT_THROW(v_level(6), SizeLimitError);
    EXPECT_THROW(v_level(3, Limits{2, 4, 8}), SizeLimitError);
}

TEST(HfSet, VLevelIsRankBound) {
    const HfSet v4 = v_level(4);
    for (const HfSet& a : v4) {
        for (std::size_t n = 0; n <= 4; ++n) {
            EXPECT_EQ(v_level(n).contains(a), rank(a) < n);
        }
    }
}

TEST(HfSet, EcloseExamples) {
    EXPECT_EQ(eclose(E()), E());
    EXPECT_EQ(eclose(S("{{{{}}}}")), S("{{{{}}}, {{}}, {}}"));
}

TEST(HfSet, EcloseIsLeastTransitiveSuperset) {
    for (const HfSet& a : v_level(4)) {
        const HfSet e = eclose(a);
        EXPECT_TRUE(is_transitive_set(e));
        EXPECT_TRUE(is_subset(a, e));
    }
    // minimality on V_3: dropping an element outside A breaks transitivity
    for (const HfSet& a : v_level(3)) {
        const HfSet e = eclose(a);
        for (const HfSet& x : e) {
            if (a.contains(x)) {
                continue;
            }
            EXPECT_FALSE(is_transitive_set(set_diff(e, singleton(x))));
        }
    }
}

TEST(HfSet, ApplyIsTotal) {
    EXPECT_EQ(apply(HfSet::of({kpair(E(), N(1))}), E()), N(1));
    EXPECT_EQ(apply(E(), N(2)), E());
    EXPECT_EQ(apply(HfSet::of({kpair(E(), E()), kpair(E(), N(1))}), E()), N(1));
}

TEST(HfSet, RenderAndParseRoundTrip) {
    EXPECT_EQ(to_string(v_level(2)), "{{}, {{}}}");
    EXPECT_EQ(to_string(N(3), {.numerals = true}), "3");
    EXPECT_EQ(parse_set("3"), N(3));
    EXPECT_EQ(parse_set(" { 0 , 1 } "), N(2));
    for (const HfSet& a : v_level(4)) {
        EXPECT_EQ(parse_set(to_string(a)), a);
        EXPECT_EQ(parse_set(to_string(a, {.numerals = true})), a);
    }
    EXPECT_EQ(parse_set("<0, 1>"), kpair(N(0), N(1)));
}

TEST(HfSet, ParseErrorsCarryColumn) {
    try {
        parse_set("{{}, {}");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 8u);
    }
    EXPECT_THROW(parse_set("{x}"), ParseError);
    EXPECT_THROW(parse_set("{} {}"), ParseError);
}

TEST(HfSet, ParseList) {
    const auto l = parse_set_list("{},{{}}");
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], E());
    EXPECT_EQ(l[1], N(1));
    EXPECT_TRUE(parse_set_list("").empty());
    EXPECT_TRUE(parse_set_list("  ").empty());
}

TEST(HfSet, InterningIsThreadSafe) {
    std::vector<std::thread> threads;
    std::vector<HfSet> results(8);
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([t, &results] { results[t] = powerset(v_level(3)); });
    }
    for (auto& th : threads) {
        th.join();
    }
    for (const auto& r : results) {
        EXPECT_EQ(r, v_level(4));
    }
}

TEST(HfSet, FilterKeepsMatching) {
    EXPECT_EQ(filter(v_level(3), [](const HfSet& x) { return is_ordinal(x); }), N(3));
}
