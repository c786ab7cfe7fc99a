// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_HFSET_HPP
#define HFL_HFSET_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hfl/limits.hpp"

namespace hfl {

namespace detail {
struct SetNode;
}

// A hereditarily finite set. Values are interned: two HfSets are extensionally
// equal iff they share a node, so equality and hashing are O(1). Elements are
// kept deduplicated and sorted under canonical_compare.
class HfSet {
public:
    HfSet();  // the empty set

    static HfSet of(std::vector<HfSet> elements);
    static HfSet of(std::initializer_list<HfSet> elements) {
        return of(std::vector<HfSet>(elements));
    }

    std::span<const HfSet> elements() const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    bool contains(const HfSet& x) const;
    std::size_t rank() const;
    std::size_t hash() const;

    auto begin() const { return elements().begin(); }
    auto end() const { return elements().end(); }

    friend bool operator==(const HfSet& a, const HfSet& b) { return a.node_ == b.node_; }
    friend std::strong_ordering operator<=>(const HfSet& a, const HfSet& b);

private:
    explicit HfSet(const detail::SetNode* node) : node_(node) {}
    const detail::SetNode* node_;
};

/// Cardinality first, then lexicographic over the canonically ordered elements.
std::strong_ordering canonical_compare(const HfSet& a, const HfSet& b);

HfSet empty_set();
HfSet singleton(const HfSet& a);
HfSet upair(const HfSet& a, const HfSet& b);
/// Kuratowski pair {{a},{a,b}}.
HfSet kpair(const HfSet& a, const HfSet& b);
/// Inverse of kpair; absent when `p` is not a Kuratowski pair.
std::optional<std::pair<HfSet, HfSet>> unpair(const HfSet& p);

HfSet set_union(const HfSet& a, const HfSet& b);
HfSet big_union(const HfSet& a);
HfSet set_inter(const HfSet& a, const HfSet& b);
HfSet set_diff(const HfSet& a, const HfSet& b);
bool is_subset(const HfSet& a, const HfSet& b);
HfSet powerset(const HfSet& a);
HfSet cartprod(const HfSet& a, const HfSet& b);
/// succ(a) = a ∪ {a}
HfSet succ(const HfSet& a);

bool is_transitive_set(const HfSet& a);
bool is_ordinal(const HfSet& a);
HfSet nat_ord(std::size_t n);
std::optional<std::size_t> to_nat(const HfSet& a);

std::size_t rank(const HfSet& a);
HfSet v_level(std::size_t n, const Limits& limits = {});
HfSet eclose(const HfSet& a);

/// Total application f`x = ⋃(f``{x}); junk (possibly ∅) off the graph.
HfSet apply(const HfSet& f, const HfSet& x);

/// Build a set from a predicate over the elements of `a`.
HfSet filter(const HfSet& a, const std::function<bool(const HfSet&)>& keep);

struct RenderOptions {
    bool numerals = false;  // ordinals as decimal numbers
    bool pairs = false;     // Kuratowski pairs as <a, b>
};

std::string to_string(const HfSet& a, RenderOptions options = {});
/// Braces notation; also accepts decimal numerals and <a, b> pairs.
HfSet parse_set(std::string_view text);
/// Comma-separated list of sets at the top level, e.g. "{}, {{}}". Empty text is the empty list.
std::vector<HfSet> parse_set_list(std::string_view text);

} // namespace hfl

template <>
struct std::hash<hfl::HfSet> {
    std::size_t operator()(const hfl::HfSet& s) const noexcept { return s.hash(); }
};

#endif
