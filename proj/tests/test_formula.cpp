// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <unordered_set>

#include "hfl/error.hpp"
#include "hfl/formula.hpp"
#include "support.hpp"

using namespace hfl;
using namespace hfl::test;

namespace {

const Formula M00 = Formula::member(0, 0);
Formula M(Index a, Index b) { return Formula::member(a, b); }
Formula Q(Index a, Index b) { return Formula::equal(a, b); }
Formula A(Formula p) { return Formula::forall(std::move(p)); }

} // namespace

TEST(Formula, DerivedConnectivesExpand) {
    const Formula p = M(0, 1);
    const Formula q = Q(1, 2);
    EXPECT_EQ(neg(p), Formula::nand(p, p));
    EXPECT_EQ(conj(p, q), neg(Formula::nand(p, q)));
    EXPECT_EQ(disj(p, q), Formula::nand(neg(p), neg(q)));
    EXPECT_EQ(implies(p, q), Formula::nand(p, neg(q)));
    EXPECT_EQ(iff(p, q), conj(implies(p, q), implies(q, p)));
    EXPECT_EQ(exists(p), neg(A(neg(p))));
}

TEST(Formula, ArityExamples) {
    EXPECT_EQ(arity(M(0, 1)), 2u);
    EXPECT_EQ(arity(A(M(0, 1))), 1u);
    EXPECT_EQ(arity(Formula::nand(M00, Q(2, 0))), 3u);
    EXPECT_EQ(arity(A(M00)), 0u);
    EXPECT_EQ(arity(A(A(M00))), 0u);  // pred(0) = 0
}

TEST(Formula, ArityOfDerivedConnectives) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Formula p = random_formula(rng, 4, 4);
        const Formula q = random_formula(rng, 4, 4);
        EXPECT_EQ(arity(neg(p)), arity(p));
        EXPECT_EQ(arity(conj(p, q)), std::max(arity(p), arity(q)));
        EXPECT_EQ(arity(iff(p, q)), std::max(arity(p), arity(q)));
    }
}

TEST(Formula, RenamingExamples) {
    EXPECT_EQ(incr_var(0, 2), 0u);
    EXPECT_EQ(incr_var(2, 2), 3u);
    EXPECT_EQ(incr_bv(M(0, 1), 0), M(1, 2));
    EXPECT_EQ(incr_bv1(A(M(0, 2))), A(M(0, 3)));
    EXPECT_EQ(incr_bv1(M(0, 1)), M(0, 2));
    EXPECT_EQ(iterate_incr_bv1(M(0, 1), 3), M(0, 4));
    EXPECT_EQ(iterate_incr_bv1(M(0, 1), 0), M(0, 1));
}

TEST(Formula, RenamingArityLawOnDepthTwo) {
    for (const Formula& p : formulas_up_to(1, 3)) {
        for (Index n = 0; n <= 4; ++n) {
            const Index a = arity(p);
            EXPECT_EQ(arity(incr_bv(p, n)), n < a ? a + 1 : a) << to_string(p) << " n=" << n;
        }
    }
}

TEST(Formula, RenamingKeepsSharing) {
    Formula p = M(0, 1);
    for (int i = 0; i < 60; ++i) {
        p = neg(p);  // a tree of 2^60 nodes if unshared
    }
    EXPECT_EQ(arity(incr_bv1(p)), 3u);
    EXPECT_EQ(depth(p), 60u);
}

TEST(Formula, DepthExamples) {
    EXPECT_EQ(depth(Q(5, 7)), 0u);
    EXPECT_EQ(depth(A(M(0, 1))), 1u);
    EXPECT_EQ(depth(Formula::nand(M(0, 1), A(Q(0, 0)))), 2u);
}

TEST(Formula, CantorPairing) {
    EXPECT_EQ(cantor_pair(0, 0), 0);
    EXPECT_EQ(cantor_pair(1, 0), 2);
    EXPECT_EQ(cantor_pair(0, 1), 1);
    // bijection onto an initial segment, diagonal by diagonal
    for (int k = 0; k <= 30; ++k) {
        std::set<Natural> seen;
        for (int x = 0; x <= k; ++x) {
            for (int y = 0; x + y <= k; ++y) {
                seen.insert(cantor_pair(x, y));
            }
        }
        EXPECT_EQ(seen.size(), static_cast<std::size_t>((k + 1) * (k + 2) / 2));
        EXPECT_EQ(*seen.rbegin(), Natural((k + 1) * (k + 2) / 2 - 1));
    }
    for (int z = 0; z < 2000; ++z) {
        const auto [x, y] = cantor_unpair(z);
        EXPECT_EQ(cantor_pair(x, y), z);
    }
    const Natural big = Natural(1) << 200;
    const auto [bx, by] = cantor_unpair(cantor_pair(big, big + 7));
    EXPECT_EQ(bx, big);
    EXPECT_EQ(by, big + 7);
}

TEST(Formula, EnumExamples) {
    EXPECT_EQ(enum_of(M00), 0);
    EXPECT_EQ(enum_of(Q(0, 0)), 2);
    EXPECT_EQ(enum_of(A(neg(M(0, 1)))), 354);
}

TEST(Formula, EnumIsInjectiveAndInvertible) {
    std::unordered_set<std::string> seen;
    const auto fs = formulas_up_to(1, 2);
    for (const Formula& p : fs) {
        const Natural e = enum_of(p);
        EXPECT_TRUE(seen.insert(e.str()).second) << to_string(p);
        const auto back = formula_of_enum(e);
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, p);
    }
}

TEST(Formula, EnumIsExactForDeepFormulae) {
    Formula p = M(0, 1);
    for (int i = 0; i < 4; ++i) {
        p = A(Formula::nand(p, Q(i, i + 1)));
    }
    const Natural e = enum_of(p);
    EXPECT_GT(e, Natural(1) << 64);
    EXPECT_EQ(formula_of_enum(e), p);
}

TEST(Formula, FormulasWithEnumBelowExamples) {
    EXPECT_TRUE(formulas_with_enum_below(0).empty());
    const auto one = formulas_with_enum_below(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], M00);
}

TEST(Formula, FormulasWithEnumBelowMatchesDecodingOracle) {
    // every natural below the bound either decodes to a formula or to nothing
    for (int bound : {2, 10, 100, 1000, 5000}) {
        std::vector<Formula> oracle;
        for (int z = 0; z < bound; ++z) {
            if (auto p = formula_of_enum(z)) {
                oracle.push_back(*p);
            }
        }
        const auto got = formulas_with_enum_below(bound);
        ASSERT_EQ(got.size(), oracle.size()) << "bound " << bound;
        for (std::size_t i = 0; i < got.size(); ++i) {
            EXPECT_EQ(got[i], oracle[i]);
            EXPECT_LT(enum_of(got[i]), bound);
        }
    }
}

TEST(Formula, ParseExamples) {
    EXPECT_EQ(parse_formula("all(imp(mem(0,2), mem(0,3)))"), A(implies(M(0, 2), M(0, 3))));
    EXPECT_EQ(parse_formula(" nand ( eq(1 ,2), all(mem(0,0)) ) "),
              Formula::nand(Q(1, 2), A(M00)));
    EXPECT_EQ(parse_formula("ex(and(mem(0,1), or(eq(0,0), iff(mem(1,1), neg(eq(0,2))))))"),
              exists(conj(M(0, 1), disj(Q(0, 0), iff(M(1, 1), neg(Q(0, 2)))))));
}

TEST(Formula, ParseErrorsReportColumn) {
    try {
        parse_formula("all(eq(0,))");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 10u);
    }
    EXPECT_THROW(parse_formula("foo(0,1)"), ParseError);
    EXPECT_THROW(parse_formula("mem(0,1) extra"), ParseError);
    EXPECT_THROW(parse_formula(""), ParseError);
}

TEST(Formula, SugarPrinting) {
    const Formula p = M(0, 1);
    EXPECT_EQ(to_string(neg(p)), "neg(mem(0,1))");
    EXPECT_EQ(to_string(neg(p), false), "nand(mem(0,1), mem(0,1))");
    EXPECT_EQ(to_string(exists(p)), "ex(mem(0,1))");
    EXPECT_EQ(to_string(iff(p, Q(0, 0))), "iff(mem(0,1), eq(0,0))");
}

TEST(Formula, RoundTripOnRandomFormulae) {
    std::mt19937_64 rng(42);
    int checked = 0;
    while (checked < 1000) {
        const Formula p = random_formula(rng, 12, 5);
        if (depth(p) > 5) {
            continue;
        }
        ++checked;
        EXPECT_EQ(parse_formula(to_string(p, true)), p);
        EXPECT_EQ(parse_formula(to_string(p, false)), p);
    }
    // derived-connective shapes too
    for (int i = 0; i < 300; ++i) {
        const Formula p = random_formula(rng, 3, 3);
        const Formula q = random_formula(rng, 3, 3);
        for (const Formula& f : {conj(p, q), disj(p, q), implies(p, q), iff(p, q), exists(p)}) {
            EXPECT_EQ(parse_formula(to_string(f)), f);
        }
    }
}
