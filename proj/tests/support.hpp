// SPDX-License-Identifier: Apache-2.0
//
// Generators and independent oracles shared by the unit and acceptance tests.

#ifndef HFL_TESTS_SUPPORT_HPP
#define HFL_TESTS_SUPPORT_HPP

#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include "hfl/formula.hpp"
#include "hfl/hfset.hpp"
#include "hfl/relations.hpp"

namespace hfl {

// readable gtest failure messages
inline void PrintTo(const HfSet& s, std::ostream* os) { *os << to_string(s); }
inline void PrintTo(const Formula& p, std::ostream* os) { *os << to_string(p); }

} // namespace hfl

namespace hfl::test {

inline HfSet N(std::size_t n) { return nat_ord(n); }
inline HfSet E() { return empty_set(); }
inline HfSet S(std::string_view text) { return parse_set(text); }

inline std::vector<HfSet> elements(const HfSet& a) { return {a.begin(), a.end()}; }

/// Random subset of `pool`, each element kept with probability p.
inline HfSet random_subset(std::mt19937_64& rng, const HfSet& pool, double p = 0.5) {
    std::bernoulli_distribution keep(p);
    std::vector<HfSet> out;
    for (const HfSet& x : pool) {
        if (keep(rng)) {
            out.push_back(x);
        }
    }
    return HfSet::of(std::move(out));
}

/// Random relation on `carrier`, each pair kept with probability p.
inline HfSet random_relation(std::mt19937_64& rng, const std::vector<HfSet>& carrier,
                             double p = 0.3) {
    std::bernoulli_distribution keep(p);
    std::vector<std::pair<HfSet, HfSet>> pairs;
    for (const HfSet& x : carrier) {
        for (const HfSet& y : carrier) {
            if (keep(rng)) {
                pairs.emplace_back(x, y);
            }
        }
    }
    return relation_from(pairs);
}

/// Every relation on `carrier` (2^(n^2) of them), via bitmask.
inline std::vector<HfSet> all_relations(const std::vector<HfSet>& carrier) {
    std::vector<std::pair<HfSet, HfSet>> cells;
    for (const HfSet& x : carrier) {
        for (const HfSet& y : carrier) {
            cells.emplace_back(x, y);
        }
    }
    std::vector<HfSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cells.size()); ++mask) {
        std::vector<std::pair<HfSet, HfSet>> pairs;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (mask >> i & 1) {
                pairs.push_back(cells[i]);
            }
        }
        out.push_back(relation_from(pairs));
    }
    return out;
}

/// Reflexive-transitive closure on field(r) by Warshall over an index matrix.
inline HfSet warshall_rtrancl(const HfSet& r) {
    const std::vector<HfSet> f = elements(field(r));
    const std::size_t n = f.size();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    auto idx = [&](const HfSet& x) {
        return static_cast<std::size_t>(std::find(f.begin(), f.end(), x) - f.begin());
    };
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = true;
    }
    for (const auto& [x, y] : pairs_of(r)) {
        m[idx(x)][idx(y)] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (m[i][k] && m[k][j]) {
                    m[i][j] = true;
                }
            }
        }
    }
    std::vector<std::pair<HfSet, HfSet>> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j]) {
                out.emplace_back(f[i], f[j]);
            }
        }
    }
    return relation_from(out);
}

/// Textbook definition: every nonempty subset of A has an r-minimal element.
inline bool wellfounded_by_subsets(const HfSet& a, const HfSet& r) {
    const std::vector<HfSet> xs = elements(a);
    for (std::size_t mask = 1; mask < (std::size_t{1} << xs.size()); ++mask) {
        bool has_min = false;
        for (std::size_t i = 0; i < xs.size() && !has_min; ++i) {
            if (!(mask >> i & 1)) {
                continue;
            }
            bool minimal = true;
            for (std::size_t j = 0; j < xs.size() && minimal; ++j) {
                if ((mask >> j & 1) && holds(r, xs[j], xs[i])) {
                    minimal = false;
                }
            }
            has_min = minimal;
        }
        if (!has_min) {
            return false;
        }
    }
    return true;
}

/// All formulae of depth ≤ d whose atoms use indices ≤ max_index.
inline std::vector<Formula> formulas_up_to(std::size_t d, Index max_index) {
    std::vector<Formula> level;
    for (Index x = 0; x <= max_index; ++x) {
        for (Index y = 0; y <= max_index; ++y) {
            level.push_back(Formula::member(x, y));
            level.push_back(Formula::equal(x, y));
        }
    }
    std::vector<Formula> all = level;
    for (std::size_t k = 1; k <= d; ++k) {
        std::vector<Formula> next;
        for (const Formula& p : all) {
            next.push_back(Formula::forall(p));
            for (const Formula& q : all) {
                next.push_back(Formula::nand(p, q));
            }
        }
        // keep only the ones of depth exactly k, then merge
        std::vector<Formula> fresh;
        for (const Formula& p : next) {
            if (depth(p) == k) {
                fresh.push_back(p);
            }
        }
        all.insert(all.end(), fresh.begin(), fresh.end());
    }
    return all;
}

/// All lists of length ≤ max_len over `pool`.
inline std::vector<std::vector<HfSet>> all_lists(const std::vector<HfSet>& pool, std::size_t max_len) {
    std::vector<std::vector<HfSet>> out{{}};
    std::vector<std::vector<HfSet>> frontier{{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<HfSet>> next;
        for (const auto& l : frontier) {
            for (const HfSet& x : pool) {
                auto m = l;
                m.push_back(x);
                next.push_back(m);
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

/// Random formula with at most `budget` connectives and indices < n_idx.
inline Formula random_formula(std::mt19937_64& rng, std::size_t budget, Index n_idx) {
    std::uniform_int_distribution<int> kind(0, budget == 0 ? 1 : 3);
    std::uniform_int_distribution<Index> idx(0, n_idx - 1);
    switch (kind(rng)) {
    case 0:
        return Formula::member(idx(rng), idx(rng));
    case 1:
        return Formula::equal(idx(rng), idx(rng));
    case 2: {
        std::uniform_int_distribution<std::size_t> split(0, budget - 1);
        const std::size_t l = split(rng);
        return Formula::nand(random_formula(rng, l, n_idx), random_formula(rng, budget - 1 - l, n_idx));
    }
    default:
        return Formula::forall(random_formula(rng, budget - 1, n_idx));
    }
}

} // namespace hfl::test

#endif
