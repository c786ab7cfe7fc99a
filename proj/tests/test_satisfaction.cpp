// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "hfl/error.hpp"
#include "hfl/satisfaction.hpp"
#include "support.hpp"

using namespace hfl;
using namespace hfl::test;

namespace {

Formula M(Index a, Index b) { return Formula::member(a, b); }
Formula Q(Index a, Index b) { return Formula::equal(a, b); }

Env cat(Env a, const Env& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

TEST(Satisfaction, NthIsTotal) {
    const Env env{N(0), N(1)};
    EXPECT_EQ(nth(0, env), N(0));
    EXPECT_EQ(nth(1, env), N(1));
    EXPECT_EQ(nth(7, {}), E());
}

TEST(Satisfaction, Examples) {
    EXPECT_TRUE(sats(v_level(2), M(0, 1), {E(), N(1)}));
    EXPECT_TRUE(sats(E(), Formula::forall(neg(Q(0, 0))), {}));
    EXPECT_EQ(satisfies(v_level(2), M(1, 0), {E(), N(1)}), 0);
}

TEST(Satisfaction, OutOfRangeIndicesReadEmpty) {
    // index 5 is past the env and denotes ∅
    EXPECT_TRUE(sats(v_level(2), M(5, 0), {N(1)}));
    EXPECT_TRUE(sats(v_level(2), Q(3, 4), {}));
}

TEST(Satisfaction, EnvOutsideUniverseIsRejected) {
    EXPECT_THROW(sats(v_level(2), M(0, 1), {N(2), E()}), DomainError);
}

TEST(Satisfaction, ConnectivesOnDepthOne) {
    const HfSet a = v_level(2);
    const auto fs = formulas_up_to(1, 2);
    const auto envs = all_lists(elements(a), 2);
    for (std::size_t i = 0; i < fs.size(); i += 7) {
        for (std::size_t j = 0; j < fs.size(); j += 11) {
            const Formula& p = fs[i];
            const Formula& q = fs[j];
            for (const Env& env : envs) {
                const bool sp = sats(a, p, env);
                const bool sq = sats(a, q, env);
                EXPECT_EQ(sats(a, neg(p), env), !sp);
                EXPECT_EQ(sats(a, conj(p, q), env), sp && sq);
                EXPECT_EQ(sats(a, disj(p, q), env), sp || sq);
                EXPECT_EQ(sats(a, implies(p, q), env), !sp || sq);
                EXPECT_EQ(sats(a, iff(p, q), env), sp == sq);
            }
        }
    }
}

TEST(Satisfaction, ExistsMeansSomeWitness) {
    const HfSet a = v_level(2);
    for (const Formula& p : formulas_up_to(1, 2)) {
        for (const Env& env : all_lists(elements(a), 2)) {
            bool some = false;
            for (const HfSet& x : a) {
                some = some || sats(a, p, cat({x}, env));
            }
            EXPECT_EQ(sats(a, exists(p), env), some);
        }
    }
}

TEST(Satisfaction, EnvironmentExtension) {
    const HfSet a = v_level(2);
    EXPECT_TRUE(check_env_extension(a, M(0, 1), {E(), N(1)}, {N(1)}));
    EXPECT_TRUE(check_env_extension(a, M(0, 1), {E(), N(1)}, {}));
    EXPECT_THROW(check_env_extension(a, M(0, 2), {E()}, {N(1)}), ArgumentError);
    for (const Formula& p : formulas_up_to(1, 2)) {
        for (const Env& env : all_lists(elements(a), 3)) {
            if (arity(p) > env.size()) {
                continue;
            }
            for (const Env& extra : all_lists(elements(a), 1)) {
                EXPECT_TRUE(check_env_extension(a, p, env, extra));
            }
        }
    }
}

TEST(Satisfaction, RenamingLemmas) {
    const HfSet a = v_level(2);
    const auto pool = elements(a);
    for (const Formula& p : formulas_up_to(1, 2)) {
        for (const Env& env : all_lists(pool, 1)) {
            for (const Env& bvs : all_lists(pool, 2)) {
                // single insertion: bvs ++ [x] ++ env against bvs ++ env
                for (const HfSet& x : pool) {
                    EXPECT_EQ(sats(a, incr_bv(p, bvs.size()), cat(cat(bvs, {x}), env)),
                              sats(a, p, cat(bvs, env)));
                    // iterated: [x] ++ bvs ++ env against [x] ++ env
                    EXPECT_EQ(sats(a, iterate_incr_bv1(p, bvs.size()), cat(cat({x}, bvs), env)),
                              sats(a, p, cat({x}, env)));
                }
            }
        }
    }
}

TEST(Satisfaction, StructureAgreesWithFreeFunction) {
    std::mt19937_64 rng(9);
    const HfSet a = v_level(3);
    const Structure s(a);
    EXPECT_EQ(s.size(), 4u);
    for (int i = 0; i < 200; ++i) {
        const Formula p = random_formula(rng, 5, 3);
        const Env env{random_subset(rng, a).empty() ? E() : N(1), N(2)};
        EXPECT_EQ(s.sats(p, env), sats(a, p, env));
    }
}

TEST(Satisfaction, TraceListsInstantiations) {
    const Structure s(v_level(2));
    std::string trace;
    EXPECT_TRUE(s.sats_traced(Formula::forall(Q(0, 0)), {}, trace));
    EXPECT_NE(trace.find("all(eq(0,0))"), std::string::npos);
    EXPECT_NE(trace.find("0 := {} -> 1"), std::string::npos);
    EXPECT_NE(trace.find("0 := {{}} -> 1"), std::string::npos);
}

TEST(Satisfaction, EmptyUniverse) {
    EXPECT_TRUE(sats(E(), Formula::forall(M(0, 0)), {}));
    EXPECT_FALSE(sats(E(), exists(Q(0, 0)), {}));
    // the free index reads ∅ even though ∅ is not in the universe
    EXPECT_TRUE(sats(E(), Q(0, 1), {}));
}
