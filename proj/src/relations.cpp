// SPDX-License-Identifier: Apache-2.0

#include "hfl/relations.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hfl/error.hpp"

namespace hfl {

namespace {

// The carrier A as a dense index space with the restricted adjacency of r.
struct Digraph {
    std::vector<HfSet> nodes;
    std::unordered_map<HfSet, std::size_t> index;
    std::vector<std::vector<bool>> adj;

    Digraph(const HfSet& a, const HfSet& r) : nodes(a.begin(), a.end()) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            index.emplace(nodes[i], i);
        }
        adj.assign(nodes.size(), std::vector<bool>(nodes.size(), false));
        for (const auto& [x, y] : pairs_of(r)) {
            auto ix = index.find(x);
            auto iy = index.find(y);
            if (ix != index.end() && iy != index.end()) {
                adj[ix->second][iy->second] = true;
            }
        }
    }

    std::size_t size() const { return nodes.size(); }
};

} // namespace

std::vector<std::pair<HfSet, HfSet>> pairs_of(const HfSet& r) {
    std::vector<std::pair<HfSet, HfSet>> out;
    for (const HfSet& p : r) {
        if (auto ab = unpair(p)) {
            out.push_back(*ab);
        }
    }
    return out;
}

HfSet relation_from(const std::vector<std::pair<HfSet, HfSet>>& pairs) {
    std::vector<HfSet> out;
    out.reserve(pairs.size());
    for (const auto& [x, y] : pairs) {
        out.push_back(kpair(x, y));
    }
    return HfSet::of(std::move(out));
}

bool holds(const HfSet& r, const HfSet& x, const HfSet& y) { return r.contains(kpair(x, y)); }

HfSet domain(const HfSet& r) {
    std::vector<HfSet> out;
    for (const auto& [x, y] : pairs_of(r)) {
        out.push_back(x);
    }
    return HfSet::of(std::move(out));
}

HfSet range(const HfSet& r) {
    std::vector<HfSet> out;
    for (const auto& [x, y] : pairs_of(r)) {
        out.push_back(y);
    }
    return HfSet::of(std::move(out));
}

HfSet field(const HfSet& r) { return set_union(domain(r), range(r)); }

HfSet image(const HfSet& r, const HfSet& a) {
    std::vector<HfSet> out;
    for (const auto& [x, y] : pairs_of(r)) {
        if (a.contains(x)) {
            out.push_back(y);
        }
    }
    return HfSet::of(std::move(out));
}

HfSet pre_image(const HfSet& r, const HfSet& a) {
    std::vector<HfSet> out;
    for (const auto& [x, y] : pairs_of(r)) {
        if (a.contains(y)) {
            out.push_back(x);
        }
    }
    return HfSet::of(std::move(out));
}

HfSet converse(const HfSet& r) {
    std::vector<std::pair<HfSet, HfSet>> out;
    for (const auto& [x, y] : pairs_of(r)) {
        out.emplace_back(y, x);
    }
    return relation_from(out);
}

HfSet restriction(const HfSet& r, const HfSet& a) {
    return filter(r, [&](const HfSet& p) {
        auto ab = unpair(p);
        return ab && a.contains(ab->first);
    });
}

HfSet composition(const HfSet& r, const HfSet& s) {
    std::vector<std::pair<HfSet, HfSet>> out;
    auto rp = pairs_of(r);
    for (const auto& [x, y] : pairs_of(s)) {
        for (const auto& [y2, z] : rp) {
            if (y == y2) {
                out.emplace_back(x, z);
            }
        }
    }
    return relation_from(out);
}

HfSet memrel(const HfSet& a) {
    std::vector<std::pair<HfSet, HfSet>> out;
    for (const HfSet& y : a) {
        for (const HfSet& x : y) {
            if (a.contains(x)) {
                out.emplace_back(x, y);
            }
        }
    }
    return relation_from(out);
}

bool wellfounded_on(const HfSet& a, const HfSet& r) {
    // Finite carrier: well-founded iff the restricted digraph is acyclic.
    Digraph g(a, r);
    enum : unsigned char { White, Grey, Black };
    std::vector<unsigned char> colour(g.size(), White);
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t root = 0; root < g.size(); ++root) {
        if (colour[root] != White) {
            continue;
        }
        stack.emplace_back(root, 0);
        colour[root] = Grey;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == g.size()) {
                colour[v] = Black;
                stack.pop_back();
                continue;
            }
            std::size_t w = next++;
            if (!g.adj[v][w]) {
                continue;
            }
            if (colour[w] == Grey) {
                return false;
            }
            if (colour[w] == White) {
                colour[w] = Grey;
                stack.emplace_back(w, 0);
            }
        }
    }
    return true;
}

bool linear_on(const HfSet& a, const HfSet& r) {
    Digraph g(a, r);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (!g.adj[i][j] && !g.adj[j][i]) {
                return false;
            }
        }
    }
    return true;
}

bool transitive_rel_on(const HfSet& a, const HfSet& r) {
    Digraph g(a, r);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (!g.adj[i][j]) {
                continue;
            }
            for (std::size_t k = 0; k < g.size(); ++k) {
                if (g.adj[j][k] && !g.adj[i][k]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool wellordered_on(const HfSet& a, const HfSet& r) {
    return transitive_rel_on(a, r) && linear_on(a, r) && wellfounded_on(a, r);
}

HfSet rtrancl_alt(const HfSet& a, const HfSet& r) {
    // For each start x and each length n < |A|, track the possible ends f`n of
    // sequences f ∈ succ(n) -> A with f`0 = x and every step in r. Longer
    // sequences revisit a node and add nothing.
    Digraph g(a, r);
    std::vector<std::pair<HfSet, HfSet>> out;
    for (std::size_t x = 0; x < g.size(); ++x) {
        std::vector<bool> reached(g.size(), false);
        std::vector<bool> ends(g.size(), false);
        ends[x] = true;
        for (std::size_t n = 0; n < std::max<std::size_t>(g.size(), 1); ++n) {
            std::vector<bool> next(g.size(), false);
            for (std::size_t y = 0; y < g.size(); ++y) {
                if (!ends[y]) {
                    continue;
                }
                reached[y] = true;
                for (std::size_t z = 0; z < g.size(); ++z) {
                    if (g.adj[y][z]) {
                        next[z] = true;
                    }
                }
            }
            ends = std::move(next);
        }
        for (std::size_t y = 0; y < g.size(); ++y) {
            if (reached[y]) {
                out.emplace_back(g.nodes[x], g.nodes[y]);
            }
        }
    }
    return relation_from(out);
}

HfSet rtrancl(const HfSet& r) {
    Digraph g(field(r), r);
    auto reach = g.adj;
    for (std::size_t i = 0; i < g.size(); ++i) {
        reach[i][i] = true;
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!reach[i][k]) {
                continue;
            }
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (reach[k][j]) {
                    reach[i][j] = true;
                }
            }
        }
    }
    std::vector<std::pair<HfSet, HfSet>> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (reach[i][j]) {
                out.emplace_back(g.nodes[i], g.nodes[j]);
            }
        }
    }
    return relation_from(out);
}

HfSet trancl(const HfSet& r) { return composition(r, rtrancl(r)); }

// ---------------------------------------------------------------------------
// Well-founded recursion

namespace {

class WfRecursion {
public:
    WfRecursion(const HfSet& r, const RecursionBody& h) : h_(h) {
        for (const auto& [x, y] : pairs_of(r)) {
            preds_[y].push_back(x);
        }
    }

    HfSet value(const HfSet& a) {
        if (auto it = memo_.find(a); it != memo_.end()) {
            return it->second;
        }
        if (!active_.insert(a).second) {
            throw WellFoundednessError("relation has a cycle through " + to_string(a));
        }
        std::vector<HfSet> table;
        if (auto it = preds_.find(a); it != preds_.end()) {
            for (const HfSet& y : it->second) {
                table.push_back(kpair(y, value(y)));
            }
        }
        HfSet v = h_(a, HfSet::of(std::move(table)));
        active_.erase(a);
        memo_.emplace(a, v);
        return v;
    }

    const std::unordered_map<HfSet, HfSet>& memo() const { return memo_; }

private:
    const RecursionBody& h_;
    std::unordered_map<HfSet, std::vector<HfSet>> preds_;
    std::unordered_map<HfSet, HfSet> memo_;
    std::unordered_set<HfSet> active_;
};

} // namespace

HfSet wfrec(const HfSet& r, const HfSet& a, const RecursionBody& h) {
    WfRecursion rec(r, h);
    return rec.value(a);
}

HfSet wfrec_table(const HfSet& r, const HfSet& a, const RecursionBody& h) {
    WfRecursion rec(r, h);
    rec.value(a);
    // Everything memoized besides a itself is a trancl-predecessor of a.
    std::vector<HfSet> table;
    for (const auto& [x, v] : rec.memo()) {
        if (x != a) {
            table.push_back(kpair(x, v));
        }
    }
    return HfSet::of(std::move(table));
}

bool is_recfun(const HfSet& r, const HfSet& a, const RecursionBody& h, const HfSet& f) {
    const HfSet below = pre_image(trancl(r), singleton(a));
    auto graph = pairs_of(f);
    if (graph.size() != f.size() || domain(f) != below || graph.size() != below.size()) {
        return false;
    }
    for (const auto& [x, v] : graph) {
        const HfSet restricted = restriction(f, pre_image(r, singleton(x)));
        if (h(x, restricted) != v) {
            return false;
        }
    }
    return true;
}

HfSet ordermap(const HfSet& a, const HfSet& r) {
    if (!wellordered_on(a, r)) {
        throw NotWellOrderError("relation does not well-order the carrier");
    }
    Digraph g(a, r);
    std::vector<std::pair<HfSet, HfSet>> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::size_t position = 0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            position += g.adj[j][i] ? 1 : 0;
        }
        out.emplace_back(g.nodes[i], nat_ord(position));
    }
    return relation_from(out);
}

HfSet ordertype(const HfSet& a, const HfSet& r) {
    if (!wellordered_on(a, r)) {
        throw NotWellOrderError("relation does not well-order the carrier");
    }
    return nat_ord(a.size());
}

HfSet transrec(const HfSet& a, const RecursionBody& h, const Limits& limits) {
    if (a.rank() > limits.level_cap) {
        throw SizeLimitError("level cap exceeded: transrec at rank " + std::to_string(a.rank()));
    }
    std::unordered_map<HfSet, HfSet> memo;
    std::function<HfSet(const HfSet&)> go = [&](const HfSet& x) -> HfSet {
        if (auto it = memo.find(x); it != memo.end()) {
            return it->second;
        }
        std::vector<HfSet> table;
        for (const HfSet& y : x) {
            table.push_back(kpair(y, go(y)));
        }
        HfSet v = h(x, HfSet::of(std::move(table)));
        memo.emplace(x, v);
        return v;
    };
    return go(a);
}

HfSet iterates(const std::function<HfSet(const HfSet&)>& f, std::size_t n, const HfSet& x) {
    HfSet v = x;
    for (std::size_t i = 0; i < n; ++i) {
        v = f(v);
    }
    return v;
}

} // namespace hfl
