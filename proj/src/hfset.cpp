// SPDX-License-Identifier: Apache-2.0

#include "hfl/hfset.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_set>

#include "hfl/error.hpp"

namespace hfl {

namespace detail {

struct SetNode {
    std::vector<HfSet> elems;
    std::size_t hash = 0;
    std::size_t rank = 0;
};

} // namespace detail

namespace {

using detail::SetNode;

std::size_t hash_elements(const std::vector<HfSet>& elems) {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ elems.size();
    for (const HfSet& e : elems) {
        h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

struct NodeHash {
    std::size_t operator()(const SetNode* n) const noexcept { return n->hash; }
};

struct NodeEq {
    bool operator()(const SetNode* a, const SetNode* b) const noexcept {
        return a->elems == b->elems;
    }
};

// Process-lifetime intern table. Nodes are never freed; insertion is serialized.
class InternTable {
public:
    const SetNode* intern(std::vector<HfSet>&& elems) {
        SetNode probe;
        probe.hash = hash_elements(elems);
        probe.elems = std::move(elems);
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = table_.find(&probe); it != table_.end()) {
            return *it;
        }
        std::size_t r = 0;
        for (const HfSet& e : probe.elems) {
            r = std::max(r, e.rank() + 1);
        }
        probe.rank = r;
        SetNode& node = storage_.emplace_back(std::move(probe));
        table_.insert(&node);
        return &node;
    }

private:
    std::mutex mutex_;
    std::deque<SetNode> storage_;
    std::unordered_set<const SetNode*, NodeHash, NodeEq> table_;
};

InternTable& table() {
    static InternTable t;
    return t;
}

const SetNode* empty_node() {
    static const SetNode* node = table().intern({});
    return node;
}

} // namespace

HfSet::HfSet() : node_(empty_node()) {}

HfSet HfSet::of(std::vector<HfSet> elements) {
    std::sort(elements.begin(), elements.end(),
              [](const HfSet& a, const HfSet& b) { return canonical_compare(a, b) < 0; });
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return HfSet(table().intern(std::move(elements)));
}

std::span<const HfSet> HfSet::elements() const { return node_->elems; }
std::size_t HfSet::size() const { return node_->elems.size(); }
std::size_t HfSet::rank() const { return node_->rank; }
std::size_t HfSet::hash() const { return node_->hash; }

bool HfSet::contains(const HfSet& x) const {
    const auto& elems = node_->elems;
    if (elems.size() <= 16) {
        return std::find(elems.begin(), elems.end(), x) != elems.end();
    }
    auto it = std::lower_bound(elems.begin(), elems.end(), x, [](const HfSet& a, const HfSet& b) {
        return canonical_compare(a, b) < 0;
    });
    return it != elems.end() && *it == x;
}

std::strong_ordering operator<=>(const HfSet& a, const HfSet& b) { return canonical_compare(a, b); }

std::strong_ordering canonical_compare(const HfSet& a, const HfSet& b) {
    if (a == b) {
        return std::strong_ordering::equal;
    }
    if (a.size() != b.size()) {
        return a.size() <=> b.size();
    }
    auto ea = a.elements();
    auto eb = b.elements();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (auto c = canonical_compare(ea[i], eb[i]); c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

HfSet empty_set() { return HfSet(); }
HfSet singleton(const HfSet& a) { return HfSet::of({a}); }
HfSet upair(const HfSet& a, const HfSet& b) { return HfSet::of({a, b}); }
HfSet kpair(const HfSet& a, const HfSet& b) { return HfSet::of({upair(a, a), upair(a, b)}); }

std::optional<std::pair<HfSet, HfSet>> unpair(const HfSet& p) {
    if (p.size() == 1) {
        const HfSet& only = p.elements()[0];
        if (only.size() == 1) {
            const HfSet& a = only.elements()[0];
            return std::pair{a, a};
        }
        return std::nullopt;
    }
    if (p.size() != 2) {
        return std::nullopt;
    }
    // Canonical order puts the singleton first.
    const HfSet& s = p.elements()[0];
    const HfSet& d = p.elements()[1];
    if (s.size() != 1 || d.size() != 2) {
        return std::nullopt;
    }
    const HfSet& a = s.elements()[0];
    if (!d.contains(a)) {
        return std::nullopt;
    }
    const HfSet& b = d.elements()[0] == a ? d.elements()[1] : d.elements()[0];
    return std::pair{a, b};
}

HfSet set_union(const HfSet& a, const HfSet& b) {
    std::vector<HfSet> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return HfSet::of(std::move(out));
}

HfSet big_union(const HfSet& a) {
    std::vector<HfSet> out;
    for (const HfSet& x : a) {
        out.insert(out.end(), x.begin(), x.end());
    }
    return HfSet::of(std::move(out));
}

HfSet filter(const HfSet& a, const std::function<bool(const HfSet&)>& keep) {
    std::vector<HfSet> out;
    for (const HfSet& x : a) {
        if (keep(x)) {
            out.push_back(x);
        }
    }
    return HfSet::of(std::move(out));
}

HfSet set_inter(const HfSet& a, const HfSet& b) {
    return filter(a, [&](const HfSet& x) { return b.contains(x); });
}

HfSet set_diff(const HfSet& a, const HfSet& b) {
    return filter(a, [&](const HfSet& x) { return !b.contains(x); });
}

bool is_subset(const HfSet& a, const HfSet& b) {
    return std::all_of(a.begin(), a.end(), [&](const HfSet& x) { return b.contains(x); });
}

HfSet powerset(const HfSet& a) {
    if (a.size() > 20) {
        throw SizeLimitError("powerset of a " + std::to_string(a.size()) +
                             "-element set exceeds the size limit");
    }
    const std::size_t n = a.size();
    std::vector<HfSet> subsets;
    subsets.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<HfSet> elems;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                elems.push_back(a.elements()[i]);
            }
        }
        subsets.push_back(HfSet::of(std::move(elems)));
    }
    return HfSet::of(std::move(subsets));
}

HfSet cartprod(const HfSet& a, const HfSet& b) {
    std::vector<HfSet> out;
    for (const HfSet& x : a) {
        for (const HfSet& y : b) {
            out.push_back(kpair(x, y));
        }
    }
    return HfSet::of(std::move(out));
}

HfSet succ(const HfSet& a) { return set_union(a, singleton(a)); }

bool is_transitive_set(const HfSet& a) {
    return std::all_of(a.begin(), a.end(), [&](const HfSet& x) { return is_subset(x, a); });
}

bool is_ordinal(const HfSet& a) {
    return is_transitive_set(a) &&
           std::all_of(a.begin(), a.end(), [](const HfSet& x) { return is_transitive_set(x); });
}

HfSet nat_ord(std::size_t n) {
    HfSet s;
    for (std::size_t i = 0; i < n; ++i) {
        s = succ(s);
    }
    return s;
}

std::optional<std::size_t> to_nat(const HfSet& a) {
    if (!is_ordinal(a)) {
        return std::nullopt;
    }
    return a.size();
}

std::size_t rank(const HfSet& a) { return a.rank(); }

HfSet v_level(std::size_t n, const Limits& limits) {
    if (n > limits.level_cap) {
        throw SizeLimitError("level cap exceeded: V_" + std::to_string(n) + " (cap " +
                             std::to_string(limits.level_cap) + ")");
    }
    HfSet v;
    for (std::size_t i = 0; i < n; ++i) {
        v = powerset(v);
    }
    return v;
}

HfSet eclose(const HfSet& a) {
    std::unordered_set<HfSet> seen(a.begin(), a.end());
    std::vector<HfSet> frontier(a.begin(), a.end());
    while (!frontier.empty()) {
        std::vector<HfSet> next;
        for (const HfSet& x : frontier) {
            for (const HfSet& y : x) {
                if (seen.insert(y).second) {
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    return HfSet::of(std::vector<HfSet>(seen.begin(), seen.end()));
}

HfSet apply(const HfSet& f, const HfSet& x) {
    std::vector<HfSet> image;
    for (const HfSet& p : f) {
        if (auto ab = unpair(p); ab && ab->first == x) {
            image.push_back(ab->second);
        }
    }
    return big_union(HfSet::of(std::move(image)));
}

// ---------------------------------------------------------------------------
// Text form

namespace {

void render(const HfSet& a, RenderOptions options, std::string& out) {
    if (options.numerals) {
        if (auto n = to_nat(a)) {
            out += std::to_string(*n);
            return;
        }
    }
    if (options.pairs) {
        if (auto ab = unpair(a)) {
            out += '<';
            render(ab->first, options, out);
            out += ", ";
            render(ab->second, options, out);
            out += '>';
            return;
        }
    }
    out += '{';
    bool first = true;
    for (const HfSet& x : a) {
        if (!first) {
            out += ", ";
        }
        first = false;
        render(x, options, out);
    }
    out += '}';
}

class SetParser {
public:
    explicit SetParser(std::string_view text) : text_(text) {}

    HfSet parse_one() {
        HfSet s = parse_set();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return s;
    }

    std::vector<HfSet> parse_list() {
        std::vector<HfSet> out;
        skip_ws();
        if (pos_ == text_.size()) {
            return out;
        }
        out.push_back(parse_set());
        skip_ws();
        while (pos_ < text_.size()) {
            expect(',');
            out.push_back(parse_set());
            skip_ws();
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_ + 1); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    HfSet parse_set() {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            std::vector<HfSet> elems;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '}') {
                ++pos_;
                return HfSet();
            }
            elems.push_back(parse_set());
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                elems.push_back(parse_set());
                skip_ws();
            }
            expect('}');
            return HfSet::of(std::move(elems));
        }
        if (c == '<') {
            ++pos_;
            HfSet a = parse_set();
            expect(',');
            HfSet b = parse_set();
            expect('>');
            return kpair(a, b);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                n = n * 10 + static_cast<std::size_t>(text_[pos_] - '0');
                if (n > 4096) {
                    fail("numeral too large");
                }
                ++pos_;
            }
            return nat_ord(n);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

std::string to_string(const HfSet& a, RenderOptions options) {
    std::string out;
    render(a, options, out);
    return out;
}

HfSet parse_set(std::string_view text) { return SetParser(text).parse_one(); }

std::vector<HfSet> parse_set_list(std::string_view text) { return SetParser(text).parse_list(); }

} // namespace hfl
