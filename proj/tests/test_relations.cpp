// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "hfl/error.hpp"
#include "hfl/lset.hpp"
#include "hfl/relations.hpp"
#include "support.hpp"

using namespace hfl;
using namespace hfl::test;

namespace {

HfSet rel(std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
    std::vector<std::pair<HfSet, HfSet>> v;
    for (auto [a, b] : pairs) {
        v.emplace_back(N(a), N(b));
    }
    return relation_from(v);
}

HfSet h_rank(const HfSet& x, const HfSet& g) {
    HfSet out;
    for (const HfSet& y : x) {
        out = set_union(out, succ(apply(g, y)));
    }
    return out;
}

HfSet rank_field(const HfSet& x) { return set_union(eclose(HfSet::of({x})), HfSet::of({x})); }

} // namespace

TEST(Relations, AlgebraExamples) {
    EXPECT_EQ(domain(HfSet::of({kpair(E(), N(1))})), N(1));
    EXPECT_EQ(memrel(v_level(2)), HfSet::of({kpair(E(), N(1))}));
    const HfSet r = rel({{0, 1}, {1, 2}});
    EXPECT_EQ(range(r), HfSet::of({N(1), N(2)}));
    EXPECT_EQ(field(r), N(3));
    EXPECT_EQ(image(r, HfSet::of({N(0)})), HfSet::of({N(1)}));
    EXPECT_EQ(pre_image(r, HfSet::of({N(2)})), HfSet::of({N(1)}));
    EXPECT_EQ(converse(r), rel({{1, 0}, {2, 1}}));
    EXPECT_EQ(restriction(r, HfSet::of({N(1)})), rel({{1, 2}}));
}

TEST(Relations, CompositionConvention) {
    // composition(r, s) runs s first, then r
    const HfSet r = rel({{0, 1}});
    const HfSet s = rel({{1, 2}});
    EXPECT_EQ(composition(s, r), rel({{0, 2}}));
    EXPECT_EQ(composition(r, s), E());
}

TEST(Relations, NonPairsAreIgnored) {
    const HfSet r = HfSet::of({kpair(N(0), N(1)), N(3)});
    EXPECT_EQ(domain(r), HfSet::of({N(0)}));
    EXPECT_EQ(pairs_of(r).size(), 1u);
}

TEST(Relations, WellfoundednessExamples) {
    EXPECT_TRUE(wellfounded_on(v_level(3), memrel(v_level(3))));
    EXPECT_FALSE(wellfounded_on(N(2), rel({{0, 1}, {1, 0}})));
    EXPECT_TRUE(wellordered_on(N(4), memrel(N(4))));
}

TEST(Relations, CycleDetectionMatchesSubsetDefinition) {
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto carrier = elements(N(n));
        for (const HfSet& r : all_relations(carrier)) {
            EXPECT_EQ(wellfounded_on(N(n), r), wellfounded_by_subsets(N(n), r));
        }
    }
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 4 + i % 2;
        const HfSet r = random_relation(rng, elements(N(n)), 0.15);
        EXPECT_EQ(wellfounded_on(N(n), r), wellfounded_by_subsets(N(n), r));
    }
}

TEST(Relations, RtranclExamples) {
    const HfSet r = rel({{0, 1}, {1, 2}});
    const HfSet expected = rel({{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(rtrancl_alt(field(r), r), expected);
    EXPECT_EQ(rtrancl(r), expected);
    EXPECT_EQ(trancl(E()), E());
    EXPECT_EQ(trancl(rel({{0, 1}, {1, 0}})), rel({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(Relations, RtranclAltExcludesPairsOutsideCarrier) {
    const HfSet r = rel({{0, 1}, {1, 2}});
    EXPECT_EQ(rtrancl_alt(N(2), r), rel({{0, 0}, {1, 1}, {0, 1}}));
}

TEST(Relations, TranclIsLeastTransitiveExtension) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto carrier = elements(N(4));
        const HfSet r = random_relation(rng, carrier, 0.25);
        const HfSet t = trancl(r);
        EXPECT_TRUE(is_subset(r, t));
        EXPECT_TRUE(transitive_rel_on(field(r), t));
        // removing any pair not in r breaks transitivity or loses a path
        for (const auto& [x, y] : pairs_of(t)) {
            if (holds(r, x, y)) {
                continue;
            }
            const HfSet smaller = set_diff(t, HfSet::of({kpair(x, y)}));
            EXPECT_FALSE(transitive_rel_on(field(r), smaller));
        }
    }
}

TEST(Relations, WfrecComputesRank) {
    for (const HfSet& x : v_level(4)) {
        EXPECT_EQ(wfrec(memrel(rank_field(x)), x, h_rank), nat_ord(rank(x)));
    }
}

TEST(Relations, WfrecWithoutPredecessors) {
    const auto h = [](const HfSet& a, const HfSet& g) { return HfSet::of({a, g}); };
    EXPECT_EQ(wfrec(E(), N(2), h), HfSet::of({N(2), E()}));
}

TEST(Relations, WfrecRejectsCycles) {
    EXPECT_THROW(wfrec(rel({{0, 1}, {1, 0}}), N(0), h_rank), WellFoundednessError);
}

TEST(Relations, RecfunTables) {
    const HfSet x = N(2);
    const HfSet r = memrel(rank_field(x));
    const HfSet table = wfrec_table(r, x, h_rank);
    EXPECT_TRUE(is_recfun(r, x, h_rank, table));
    EXPECT_TRUE(is_recfun(E(), N(0), h_rank, E()));
    // single-point mutation
    const auto pairs = pairs_of(table);
    ASSERT_FALSE(pairs.empty());
    auto mutated = pairs;
    mutated[0].second = succ(mutated[0].second);
    EXPECT_FALSE(is_recfun(r, x, h_rank, relation_from(mutated)));
}

TEST(Relations, WfrecOnNonTransitiveRelation) {
    // successor chain 0 -> 1 -> 2 -> 3: only immediate predecessors reach H
    const HfSet r = rel({{0, 1}, {1, 2}, {2, 3}});
    const auto count = [](const HfSet&, const HfSet& g) {
        HfSet out;
        for (const auto& [k, v] : pairs_of(g)) {
            out = set_union(out, succ(v));
        }
        return out;
    };
    EXPECT_EQ(wfrec(r, N(3), count), N(3));
    const HfSet table = wfrec_table(r, N(3), count);
    EXPECT_EQ(domain(table), N(3));
    EXPECT_TRUE(is_recfun(r, N(3), count, table));
}

TEST(Relations, OrdermapExamples) {
    EXPECT_EQ(ordertype(N(3), memrel(N(3))), N(3));
    EXPECT_EQ(ordertype(E(), E()), E());
    const HfSet a = S("{{}, {{}}, {{{}}}}");
    const HfSet r = relation_from({{E(), N(1)}, {E(), S("{{{}}}")}, {N(1), S("{{{}}}")}});
    EXPECT_EQ(ordermap(a, r),
              relation_from({{E(), N(0)}, {N(1), N(1)}, {S("{{{}}}"), N(2)}}));
    EXPECT_THROW(ordermap(N(2), rel({{0, 1}, {1, 0}})), NotWellOrderError);
}

TEST(Relations, OrdermapIsIsomorphismForEveryWellOrder) {
    // all strict well-orders of a 4-element carrier arise from permutations
    std::vector<std::size_t> perm{0, 1, 2, 3};
    const auto carrier = elements(N(4));
    do {
        std::vector<std::pair<HfSet, HfSet>> pairs;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                pairs.emplace_back(carrier[perm[i]], carrier[perm[j]]);
            }
        }
        const HfSet r = relation_from(pairs);
        ASSERT_TRUE(wellordered_on(N(4), r));
        const HfSet m = ordermap(N(4), r);
        EXPECT_EQ(range(m), ordertype(N(4), r));
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_EQ(apply(m, carrier[perm[i]]), N(i));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Relations, TransrecBuildsLset) {
    const auto h = [](const HfSet& x, const HfSet& f) {
        HfSet out;
        for (const HfSet& y : x) {
            out = set_union(out, powerset(apply(f, y)));
        }
        return out;
    };
    for (std::size_t n = 0; n <= 4; ++n) {
        EXPECT_EQ(transrec(N(n), h), lset(n));
    }
}

TEST(Relations, Iterates) {
    const auto bu = [](const HfSet& x) { return big_union(x); };
    EXPECT_EQ(iterates(bu, 0, N(2)), N(2));
    EXPECT_EQ(iterates(bu, 2, S("{{{{}}}}")), S("{{}}"));
    const auto sc = [](const HfSet& x) { return succ(x); };
    EXPECT_EQ(iterates(sc, 4, E()), N(4));
}

TEST(Relations, RelationRendering) {
    const HfSet r = rel({{0, 1}});
    EXPECT_EQ(to_string(r, {.numerals = true, .pairs = true}), "{<0, 1>}");
    EXPECT_EQ(parse_set("{<0, 1>}"), r);
}
