// SPDX-License-Identifier: Apache-2.0

#include "hfl/dpow.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "hfl/error.hpp"

namespace hfl {

bool respects_arity(const DefWitness& w) { return arity(w.formula) <= w.env.size() + 1; }

HfSet defined_set(const Structure& a, const DefWitness& w) {
    auto stack = a.encode(w.env);
    stack.push_back(0);
    std::vector<HfSet> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        stack.back() = static_cast<Structure::Value>(i);
        if (a.sats(w.formula, stack)) {
            out.push_back(a.value(static_cast<Structure::Value>(i)));
        }
    }
    return HfSet::of(std::move(out));
}

HfSet defined_set(const HfSet& a, const DefWitness& w) { return defined_set(Structure(a), w); }

DefWitness witness_complement(const HfSet&, const DefWitness& w) { return {w.env, neg(w.formula)}; }

DefWitness witness_intersect(const HfSet&, const DefWitness& w1, const DefWitness& w2) {
    Env env = w2.env;
    env.insert(env.end(), w1.env.begin(), w1.env.end());
    return {std::move(env), conj(iterate_incr_bv1(w1.formula, w2.env.size()), w2.formula)};
}

DefWitness witness_union(const HfSet& a, const DefWitness& w1, const DefWitness& w2) {
    return witness_complement(
        a, witness_intersect(a, witness_complement(a, w1), witness_complement(a, w2)));
}

namespace {

Formula disjunction_of_equalities(Index first, std::size_t count) {
    Formula f = Formula::equal(0, first);
    for (std::size_t i = 1; i < count; ++i) {
        f = disj(f, Formula::equal(0, first + i));
    }
    return f;
}

void require_subset(const HfSet& x, const HfSet& a) {
    if (!is_subset(x, a)) {
        throw DomainError(to_string(x) + " is not a subset of the universe");
    }
}

} // namespace

DefWitness witness_for_subset(const HfSet& a, const HfSet& x) {
    require_subset(x, a);
    if (x.empty()) {
        return {{}, neg(Formula::equal(0, 0))};
    }
    return {Env(x.begin(), x.end()), disjunction_of_equalities(1, x.size())};
}

DpowListing::DpowListing(const HfSet& a) : carrier_(a), elements_(a.begin(), a.end()) {
    if (elements_.size() > 20) {
        throw SizeLimitError("DPow of a " + std::to_string(elements_.size()) +
                             "-element set is out of reach");
    }
}

HfSet DpowListing::subset(std::size_t mask) const {
    std::vector<HfSet> out;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (mask >> i & 1) {
            out.push_back(elements_[i]);
        }
    }
    return HfSet::of(std::move(out));
}

DefWitness DpowListing::witness(std::size_t mask) const {
    return witness_for_subset(carrier_, subset(mask));
}

std::vector<std::pair<HfSet, DefWitness>> dpow(const HfSet& a) {
    DpowListing listing(a);
    std::vector<std::pair<HfSet, DefWitness>> out;
    out.reserve(listing.size());
    for (std::size_t mask = 0; mask < listing.size(); ++mask) {
        out.emplace_back(listing.subset(mask), listing.witness(mask));
    }
    return out;
}

DefWitness short_witness_for_subset(const HfSet& a, const HfSet& x) {
    require_subset(x, a);
    if (x.empty()) {
        return {{}, neg(Formula::equal(0, 0))};
    }
    Env env;
    for (const HfSet& e : x) {
        if (!e.empty()) {
            env.push_back(e);
        }
    }
    // ∅ sorts first, so when present it becomes the last disjunct.
    const std::size_t count = env.size() + (x.contains(empty_set()) ? 1 : 0);
    return {env, disjunction_of_equalities(1, count)};
}

DefWitness pad_witness(const HfSet& a, const DefWitness& w) {
    const Index need = arity(w.formula);
    if (need <= w.env.size() + 1) {
        return w;
    }
    if (!a.contains(empty_set())) {
        throw DomainError("padding needs ∅ in the universe");
    }
    DefWitness out = w;
    out.env.resize(need - 1, empty_set());
    return out;
}

bool dpow_prime_member(const HfSet& a, const HfSet& x) {
    if (!is_subset(x, a)) {
        return false;
    }
    Structure s(a);
    const DefWitness w = short_witness_for_subset(a, x);
    if (defined_set(s, w) != x) {
        return false;
    }
    if (is_transitive_set(a)) {
        const DefWitness padded = pad_witness(a, w);
        return respects_arity(padded) && defined_set(s, padded) == x;
    }
    return true;
}

Formula defining_formula_for_element(const HfSet& a, const HfSet& element) {
    if (!is_transitive_set(a)) {
        throw DomainError("defining formulae need a transitive universe");
    }
    if (!a.contains(element)) {
        throw DomainError(to_string(element) + " is not in the universe");
    }
    std::unordered_map<HfSet, Formula> memo;
    std::function<Formula(const HfSet&)> phi = [&](const HfSet& v) -> Formula {
        if (auto it = memo.find(v); it != memo.end()) {
            return it->second;
        }
        // all u. (u ∈ v ↔ some φ_b(u)); inside the binder u is 0 and v is 1.
        Formula body = neg(Formula::member(0, 1));
        if (!v.empty()) {
            std::optional<Formula> any;
            for (const HfSet& b : v) {
                Formula fb = phi(b);
                any = any ? disj(*any, fb) : fb;
            }
            body = iff(Formula::member(0, 1), *any);
        }
        Formula f = Formula::forall(body);
        memo.emplace(v, f);
        return f;
    };
    return phi(element);
}

// ---------------------------------------------------------------------------
// Automorphism orbits

namespace {

class Automorphisms {
public:
    Automorphisms(const HfSet& a, const Env& env) : elems_(a.begin(), a.end()) {
        const std::size_t n = elems_.size();
        std::unordered_map<HfSet, std::size_t> index;
        for (std::size_t i = 0; i < n; ++i) {
            index.emplace(elems_[i], i);
        }
        adj_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                adj_[i * n + j] = elems_[j].contains(elems_[i]) ? 1 : 0;
            }
        }
        fixed_.assign(n, false);
        for (const HfSet& e : env) {
            auto it = index.find(e);
            if (it == index.end()) {
                throw DomainError("parameter " + to_string(e) + " is not in the universe");
            }
            fixed_[it->second] = true;
        }
        parent_.resize(n);
        std::iota(parent_.begin(), parent_.end(), 0);
        image_.assign(n, n);
        used_.assign(n, false);
        extend(0);
    }

    std::vector<HfSet> orbits() {
        std::map<std::size_t, std::vector<HfSet>> groups;
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            groups[find(i)].push_back(elems_[i]);
        }
        std::vector<HfSet> out;
        for (auto& [root, members] : groups) {
            out.push_back(HfSet::of(std::move(members)));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    bool edge(std::size_t i, std::size_t j) const { return adj_[i * elems_.size() + j] != 0; }

    bool consistent(std::size_t i, std::size_t j) const {
        if (edge(i, i) != edge(j, j)) {
            return false;
        }
        for (std::size_t k = 0; k < i; ++k) {
            if (edge(i, k) != edge(j, image_[k]) || edge(k, i) != edge(image_[k], j)) {
                return false;
            }
        }
        return true;
    }

    void extend(std::size_t i) {
        const std::size_t n = elems_.size();
        if (i == n) {
            for (std::size_t k = 0; k < n; ++k) {
                unite(k, image_[k]);
            }
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used_[j] || (fixed_[i] && j != i) || (fixed_[j] && j != i)) {
                continue;
            }
            if (!consistent(i, j)) {
                continue;
            }
            used_[j] = true;
            image_[i] = j;
            extend(i + 1);
            used_[j] = false;
        }
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            x = parent_[x] = parent_[parent_[x]];
        }
        return x;
    }
    void unite(std::size_t x, std::size_t y) { parent_[find(x)] = find(y); }

    std::vector<HfSet> elems_;
    std::vector<std::uint8_t> adj_;
    std::vector<bool> fixed_;
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> image_;
    std::vector<bool> used_;
};

} // namespace

std::vector<HfSet> automorphism_orbits(const HfSet& a, const Env& env) {
    return Automorphisms(a, env).orbits();
}

bool definable_from(const HfSet& a, const Env& env, const HfSet& x) {
    if (!is_subset(x, a)) {
        return false;
    }
    for (const HfSet& orbit : automorphism_orbits(a, env)) {
        const HfSet common = set_inter(orbit, x);
        if (!common.empty() && common != orbit) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Least formula for a fixed env: best-first search over meanings.
//
// A subformula under d binders is evaluated at tuples (v_0, ..., v_d) of A,
// v_i being the value of index i (v_d is the defined variable); indices past
// d read the env. Its meaning is a bitset over A^(d+1), tuple index
// v_0 + n v_1 + ... + n^d v_d. Enumerating candidates by F^d(enum), with
// F(e) = enum(Forall(e)), visits every formula no later than any formula that
// contains it, so the first formula met with a given meaning at a given depth
// has least enum for it. Only the least one per meaning is kept.

class LeastWitnessFinder::FormulaSearch {
public:
    FormulaSearch(const HfSet& a, const Env& env) : n_(a.size()), params_(env.size()) {
        std::vector<HfSet> elems(a.begin(), a.end());
        std::unordered_map<HfSet, std::size_t> index;
        for (std::size_t i = 0; i < n_; ++i) {
            index.emplace(elems[i], i);
        }
        mem_.assign(n_ * n_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                mem_[i * n_ + j] = elems[j].contains(elems[i]) ? 1 : 0;
            }
        }
        for (const HfSet& e : env) {
            env_.push_back(index.at(e));
        }
        elems_ = std::move(elems);
        push(Candidate{forall_power(0, 0), 0, Candidate::Activate, 0, 0, std::nullopt});
    }

    /// Least formula defining x; x must be definable from the env.
    Formula least(const HfSet& x) {
        const Bits target = bits_of(x);
        while (true) {
            if (auto it = found_.find(target); it != found_.end()) {
                return it->second;
            }
            step();
        }
    }

private:
    using Bits = std::vector<std::uint64_t>;

    struct BitsHash {
        std::size_t operator()(const Bits& b) const noexcept {
            std::size_t h = b.size();
            for (std::uint64_t w : b) {
                h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            }
            return h;
        }
    };

    struct Candidate {
        enum Kind : std::uint8_t { Activate, Atom, Nand, Forall };
        Natural key;
        std::size_t depth;
        Kind kind;
        std::size_t left;   // Nand: row (finalized id); Forall: body id at depth + 1
        std::size_t right;  // Nand: column (finalized id)
        std::optional<Formula> atom;
    };

    struct Later {
        bool operator()(const Candidate& a, const Candidate& b) const {
            if (a.key != b.key) {
                return a.key > b.key;
            }
            if (a.kind != b.kind) {
                return a.kind > b.kind;
            }
            return a.depth < b.depth;
        }
    };

    struct Entry {
        Natural number;
        Formula formula;
        Bits meaning;
    };

    struct Level {
        std::size_t width = 0;  // bits
        std::vector<Entry> entries;
        std::unordered_map<Bits, std::size_t, BitsHash> seen;
        std::vector<std::size_t> row_next;  // per entry as left operand
        std::vector<std::size_t> dormant;   // rows waiting for a new entry
    };

    static Natural forall_power(const Natural& e, std::size_t d) {
        Natural v = e;
        for (std::size_t i = 0; i < d; ++i) {
            v = cantor_pair(3, v);
        }
        return v;
    }

    void push(Candidate c) { queue_.push(std::move(c)); }

    Bits bits_of(const HfSet& x) const {
        Bits b((n_ + 63) / 64, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            if (x.contains(elems_[i])) {
                b[i / 64] |= std::uint64_t{1} << (i % 64);
            }
        }
        return b;
    }

    void activate(std::size_t d) {
        std::size_t width = 1;
        for (std::size_t i = 0; i <= d; ++i) {
            width *= n_;
            if (width > (std::size_t{1} << 24)) {
                throw SizeLimitError("minimal-formula search needs quantifier depth " +
                                     std::to_string(d) + " over " + std::to_string(n_) +
                                     " elements");
            }
        }
        levels_.emplace_back();
        levels_.back().width = width;
        const Index vars = static_cast<Index>(d + 1 + params_);
        for (Index i = 0; i < vars; ++i) {
            for (Index j = 0; j < vars; ++j) {
                for (bool member : {true, false}) {
                    Formula f = member ? Formula::member(i, j) : Formula::equal(i, j);
                    push(Candidate{forall_power(enum_of(f), d), d, Candidate::Atom, 0, 0, f});
                }
            }
        }
        push(Candidate{forall_power(0, d + 1), d + 1, Candidate::Activate, 0, 0, std::nullopt});
    }

    std::size_t value_at(Index var, std::size_t tuple, std::size_t d) const {
        if (var <= d) {
            for (Index k = 0; k < var; ++k) {
                tuple /= n_;
            }
            return tuple % n_;
        }
        return env_[var - d - 1];
    }

    Bits atom_meaning(const Formula& f, std::size_t d) const {
        const std::size_t width = levels_[d].width;
        Bits b((width + 63) / 64, 0);
        for (std::size_t t = 0; t < width; ++t) {
            const std::size_t x = value_at(f.x(), t, d);
            const std::size_t y = value_at(f.y(), t, d);
            const bool v = f.kind() == Formula::Kind::Member ? mem_[x * n_ + y] != 0 : x == y;
            if (v) {
                b[t / 64] |= std::uint64_t{1} << (t % 64);
            }
        }
        return b;
    }

    Bits nand_meaning(const Bits& p, const Bits& q, std::size_t width) const {
        Bits b(p.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
            b[i] = ~(p[i] & q[i]);
        }
        if (width % 64 != 0) {
            b.back() &= (std::uint64_t{1} << (width % 64)) - 1;
        }
        return b;
    }

    Bits forall_meaning(const Bits& body, std::size_t d) const {
        const std::size_t width = levels_[d].width;
        Bits b((width + 63) / 64, 0);
        for (std::size_t t = 0; t < width; ++t) {
            bool all = true;
            for (std::size_t w = 0; w < n_ && all; ++w) {
                const std::size_t s = w + n_ * t;
                all = (body[s / 64] >> (s % 64) & 1) != 0;
            }
            if (all) {
                b[t / 64] |= std::uint64_t{1} << (t % 64);
            }
        }
        return b;
    }

    void push_row(std::size_t d, std::size_t row) {
        Level& level = levels_[d];
        const std::size_t col = level.row_next[row];
        if (col >= level.entries.size()) {
            level.dormant.push_back(row);
            return;
        }
        const Natural inner = cantor_pair(level.entries[row].number, level.entries[col].number);
        push(Candidate{forall_power(cantor_pair(2, inner), d), d, Candidate::Nand, row, col,
                       std::nullopt});
    }

    void finalize(std::size_t d, Natural number, Formula f, Bits meaning, const Natural& key) {
        Level& level = levels_[d];
        const std::size_t id = level.entries.size();
        level.seen.emplace(meaning, id);
        if (d == 0) {
            found_.emplace(meaning, f);
        }
        level.entries.push_back(Entry{number, f, std::move(meaning)});
        if (d > 0) {
            push(Candidate{key, d - 1, Candidate::Forall, id, 0, std::nullopt});
        }
        std::vector<std::size_t> waking;
        waking.swap(level.dormant);
        for (std::size_t row : waking) {
            push_row(d, row);
        }
        level.row_next.push_back(0);
        push_row(d, id);
    }

    void step() {
        if (queue_.empty()) {
            throw DomainError("minimal-formula search exhausted");
        }
        Candidate c = queue_.top();
        queue_.pop();
        const std::size_t d = c.depth;
        switch (c.kind) {
        case Candidate::Activate:
            activate(d);
            return;
        case Candidate::Atom: {
            Bits m = atom_meaning(*c.atom, d);
            if (!levels_[d].seen.count(m)) {
                finalize(d, enum_of(*c.atom), *c.atom, std::move(m), c.key);
            }
            return;
        }
        case Candidate::Nand: {
            Level& level = levels_[d];
            const Entry& p = level.entries[c.left];
            const Entry& q = level.entries[c.right];
            Bits m = nand_meaning(p.meaning, q.meaning, level.width);
            level.row_next[c.left] = c.right + 1;
            if (!level.seen.count(m)) {
                Natural number = cantor_pair(2, cantor_pair(p.number, q.number));
                Formula f = Formula::nand(p.formula, q.formula);
                finalize(d, std::move(number), std::move(f), std::move(m), c.key);
            }
            push_row(d, c.left);
            return;
        }
        case Candidate::Forall: {
            const Entry& body = levels_[d + 1].entries[c.left];
            Bits m = forall_meaning(body.meaning, d);
            if (!levels_[d].seen.count(m)) {
                finalize(d, cantor_pair(3, body.number), Formula::forall(body.formula),
                         std::move(m), c.key);
            }
            return;
        }
        }
    }

    std::size_t n_;
    std::size_t params_;
    std::vector<HfSet> elems_;
    std::vector<std::uint8_t> mem_;
    std::vector<std::size_t> env_;
    std::deque<Level> levels_;
    std::priority_queue<Candidate, std::vector<Candidate>, Later> queue_;
    std::unordered_map<Bits, Formula, BitsHash> found_;
};

LeastWitnessFinder::LeastWitnessFinder(HfSet a, OrderPtr base, Limits limits)
    : a_(std::move(a)), base_(std::move(base)), limits_(limits) {
    if (a_.size() > limits_.witness_cap) {
        throw SizeLimitError("witness search cap exceeded: |A| = " + std::to_string(a_.size()) +
                             " (cap " + std::to_string(limits_.witness_cap) + ")");
    }
    if (!is_strict_total_on(*base_, a_)) {
        throw NotWellOrderError("base order is not a strict total order on the universe");
    }
    sorted_ = base_->sorted(a_);
}

LeastWitnessFinder::~LeastWitnessFinder() = default;

LeastWitnessFinder::FormulaSearch& LeastWitnessFinder::search_for(const Env& env) {
    auto it = searches_.find(env);
    if (it == searches_.end()) {
        it = searches_.emplace(env, std::make_unique<FormulaSearch>(a_, env)).first;
    }
    return *it->second;
}

DefWitness LeastWitnessFinder::find(const HfSet& x) {
    require_subset(x, a_);
    std::lock_guard lock(mutex_);
    if (auto it = found_.find(x); it != found_.end()) {
        return it->second;
    }
    const std::size_t n = sorted_.size();
    // Envs in rlist order: by length, then head-first over the base order.
    // Listing X itself always works, so the loop ends by length |X|.
    for (std::size_t len = 0; len <= x.size(); ++len) {
        std::vector<std::size_t> digits(len, 0);
        while (true) {
            Env env(len);
            for (std::size_t i = 0; i < len; ++i) {
                env[i] = sorted_[digits[i]];
            }
            if (definable_from(a_, env, x)) {
                DefWitness w{env, search_for(env).least(x)};
                found_.emplace(x, w);
                return w;
            }
            std::size_t pos = len;
            while (pos > 0 && ++digits[pos - 1] == n) {
                digits[--pos] = 0;
            }
            if (pos == 0) {
                break;
            }
        }
    }
    throw DomainError("no witness found for " + to_string(x));
}

DefWitness least_witness(const HfSet& a, OrderPtr base, const HfSet& x, const Limits& limits) {
    return LeastWitnessFinder(a, std::move(base), limits).find(x);
}

std::strong_ordering env_form_compare(const SetOrder& base, const DefWitness& w1,
                                      const DefWitness& w2) {
    if (auto c = rlist_compare(base, w1.env, w2.env); c != 0) {
        return c;
    }
    const Natural e1 = enum_of(w1.formula);
    const Natural e2 = enum_of(w2.formula);
    if (e1 == e2) {
        return std::strong_ordering::equal;
    }
    return e1 < e2 ? std::strong_ordering::less : std::strong_ordering::greater;
}

} // namespace hfl
