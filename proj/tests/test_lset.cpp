// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "hfl/error.hpp"
#include "hfl/lset.hpp"
#include "support.hpp"

using namespace hfl;
using namespace hfl::test;

namespace {

Formula M(Index a, Index b) { return Formula::member(a, b); }
Formula Q(Index a, Index b) { return Formula::equal(a, b); }

OrderPtr canonical() { return std::make_shared<CanonicalOrder>(); }

bool trichotomous(const SetOrder& o, const std::vector<HfSet>& xs) {
    for (const HfSet& a : xs) {
        for (const HfSet& b : xs) {
            const auto ab = o.compare(a, b);
            if ((ab == 0) != (a == b) || (ab < 0) != (o.compare(b, a) > 0)) {
                return false;
            }
            for (const HfSet& c : xs) {
                if (ab < 0 && o.less(b, c) && !o.less(a, c)) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace

TEST(Lset, SmallLevels) {
    EXPECT_EQ(lset(0), E());
    EXPECT_EQ(lset(1), HfSet::of({E()}));
    EXPECT_EQ(lset(2), S("{{}, {{}}}"));
}

TEST(Lset, AgreesWithPowersetIteration) {
    HfSet v = E();
    for (std::size_t n = 0; n <= 4; ++n) {
        EXPECT_EQ(lset(n), v) << "L_" << n;
        v = powerset(v);
    }
}

TEST(Lset, CountAtFiveFromListing) {
    std::size_t verified = 0;
    EXPECT_EQ(lset_count(5, 64, &verified), 65536u);
    EXPECT_EQ(verified, 64u);
    EXPECT_EQ(lset_count(3, 100, &verified), 4u);
    EXPECT_EQ(verified, 4u);
}

TEST(Lset, LevelCap) {
    EXPECT_THROW(lset(6), SizeLimitError);
    EXPECT_THROW(lset(3, Limits{2, 4, 8}), SizeLimitError);
}

TEST(Lset, TransitiveAndMonotone) {
    std::vector<HfSet> levels;
    for (std::size_t n = 0; n <= 4; ++n) {
        levels.push_back(lset(n));
        EXPECT_TRUE(is_transitive_set(levels.back()));
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t j = i; j < levels.size(); ++j) {
            EXPECT_TRUE(is_subset(levels[i], levels[j]));
        }
    }
}

TEST(Lset, OrdinalsEnterOnSchedule) {
    for (std::size_t i = 0; i <= 3; ++i) {
        EXPECT_TRUE(lset(i + 1).contains(N(i)));
        EXPECT_FALSE(lset(i).contains(N(i)));
    }
}

TEST(Lset, LrankMatchesRank) {
    EXPECT_EQ(lrank(E(), 5), 0u);
    EXPECT_EQ(lrank(N(1), 5), 1u);
    for (const HfSet& x : v_level(4)) {
        const std::size_t r = lrank(x, 5);
        EXPECT_EQ(r, rank(x));
        for (std::size_t i = 0; i <= 4; ++i) {
            EXPECT_EQ(lset(i).contains(x), r < i);
        }
    }
    EXPECT_THROW(lrank(N(4), 3), DomainError);
}

TEST(Lset, RlistExamples) {
    const CanonicalOrder base;
    EXPECT_TRUE(rlist_compare(base, {E()}, {E(), E()}) < 0);
    EXPECT_TRUE(rlist_compare(base, {E(), E()}, {E(), N(1)}) < 0);
    EXPECT_TRUE(rlist_compare(base, {N(1), E()}, {E(), N(1)}) > 0);
    EXPECT_TRUE(rlist_compare(base, {}, {}) == 0);
}

TEST(Lset, RlistIsWellOrderForEveryBase) {
    const auto carrier = elements(N(3));
    std::vector<std::size_t> perm{0, 1, 2};
    do {
        std::vector<HfSet> listing;
        for (std::size_t i : perm) {
            listing.push_back(carrier[i]);
        }
        const ListingOrder base(listing);
        const auto lists = all_lists(carrier, 3);
        for (const auto& a : lists) {
            for (const auto& b : lists) {
                const auto ab = rlist_compare(base, a, b);
                ASSERT_EQ(ab == 0, a == b);
                ASSERT_EQ(ab < 0, rlist_compare(base, b, a) > 0);
            }
        }
        // a sorted listing never steps backwards, so the finite order is a chain
        auto sorted = lists;
        std::sort(sorted.begin(), sorted.end(),
                  [&](const auto& a, const auto& b) { return rlist_compare(base, a, b) < 0; });
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            EXPECT_TRUE(rlist_compare(base, sorted[i - 1], sorted[i]) < 0);
            for (std::size_t j = i + 1; j < std::min(sorted.size(), i + 20); ++j) {
                EXPECT_TRUE(rlist_compare(base, sorted[i - 1], sorted[j]) < 0);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Lset, EnvFormExamplesAndTrichotomy) {
    const CanonicalOrder base;
    EXPECT_TRUE(env_form_compare(base, {{E()}, M(0, 0)}, {{}, Q(0, 0)}) > 0);
    EXPECT_TRUE(env_form_compare(base, {{}, M(0, 0)}, {{}, Q(0, 0)}) < 0);
    std::mt19937_64 rng(31);
    const auto pool = elements(v_level(2));
    std::uniform_int_distribution<std::size_t> len(0, 2);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    auto random_witness = [&] {
        DefWitness w{{}, random_formula(rng, 3, 3)};
        for (std::size_t i = len(rng); i > 0; --i) {
            w.env.push_back(pool[pick(rng)]);
        }
        return w;
    };
    for (int i = 0; i < 100; ++i) {
        const DefWitness a = random_witness();
        const DefWitness b = random_witness();
        const auto ab = env_form_compare(base, a, b);
        EXPECT_EQ(ab == 0, a == b);
        EXPECT_EQ(ab < 0, env_form_compare(base, b, a) > 0);
    }
}

TEST(Lset, DpowOrderOnSubsetsOfV2) {
    const HfSet a = v_level(2);
    const DpowOrder order(a, canonical());
    const auto subsets = elements(powerset(a));
    EXPECT_TRUE(trichotomous(order, subsets));
    EXPECT_TRUE(dpow_r_compare(a, canonical(), a, a) == 0);
    // the empty subset has the smallest witness, mem(0,0)
    for (const HfSet& x : subsets) {
        if (x != E()) {
            EXPECT_TRUE(order.less(E(), x));
        }
    }
    EXPECT_TRUE(wellordered_on(powerset(a), order.graph(powerset(a))));
}

TEST(Lset, RlimitRankFirst) {
    // synthetic family: canonical order at even levels, its reverse at odd ones
    struct Reverse final : SetOrder {
        std::strong_ordering compare(const HfSet& a, const HfSet& b) const override {
            return canonical_compare(b, a);
        }
        std::string name() const override { return "reverse"; }
    };
    const RlimitOrder::RankFn rk = [](const HfSet& x) { return rank(x); };
    const RlimitOrder::Family fam = [](std::size_t i) -> OrderPtr {
        if (i % 2 == 0) {
            return std::make_shared<CanonicalOrder>();
        }
        return std::make_shared<Reverse>();
    };
    const RlimitOrder order(rk, fam);
    EXPECT_TRUE(order.less(E(), S("{{{}}}")));
    EXPECT_TRUE(order.compare(N(2), N(2)) == 0);
    const auto v3 = elements(v_level(3));
    EXPECT_TRUE(trichotomous(order, v3));
    for (const HfSet& x : v3) {
        for (const HfSet& y : v3) {
            if (rank(x) < rank(y)) {
                EXPECT_TRUE(rlimit_compare(rk, fam, x, y) < 0);
            }
        }
    }
    // rank-2 ties fall to family(3), the reversed order
    EXPECT_TRUE(order.less(S("{{{}}}"), N(2)) == (canonical_compare(N(2), S("{{{}}}")) < 0));
}

TEST(Lset, LrOrdersAreWellOrders) {
    const OrderPtr zero = l_r(0);
    EXPECT_EQ(zero->name(), "empty");
    EXPECT_TRUE(is_strict_total_on(*zero, E()));
    for (std::size_t n = 1; n <= 4; ++n) {
        const HfSet l = lset(n);
        const OrderPtr o = l_r(n);
        EXPECT_TRUE(is_strict_total_on(*o, l)) << "n=" << n;
        EXPECT_TRUE(wellordered_on(l, o->graph(l))) << "n=" << n;
    }
}

TEST(Lset, LrListingIsStable) {
    const auto first = wellorder_listing(3);
    const auto second = wellorder_listing(3);
    ASSERT_EQ(first.size(), 4u);
    ASSERT_EQ(second.size(), first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        EXPECT_EQ(first[i].element, second[i].element);
        ASSERT_TRUE(first[i].witness.has_value());
        EXPECT_EQ(*first[i].witness, *second[i].witness);
        EXPECT_EQ(defined_set(lset(2), *first[i].witness), first[i].element);
    }
    EXPECT_TRUE(wellorder_listing(0).empty());
}

TEST(Lset, LrListingGoldenAtThree) {
    const auto listing = wellorder_listing(3);
    std::vector<std::string> got;
    for (const auto& r : listing) {
        got.push_back(to_string(r.element));
    }
    EXPECT_EQ(got, (std::vector<std::string>{"{}", "{{}, {{}}}", "{{}}", "{{{}}}"}));
}

TEST(Lset, WellorderCap) {
    EXPECT_THROW(l_r(5, Limits{5, 4, 8}), SizeLimitError);
}
