// SPDX-License-Identifier: Apache-2.0

#include "hfl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

#include "hfl/error.hpp"

namespace hfl {

struct Formula::Node {
    Kind kind;
    Index x = 0;
    Index y = 0;
    std::optional<Formula> left;
    std::optional<Formula> right;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

} // namespace

Formula Formula::member(Index x, Index y) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Member;
    n->x = x;
    n->y = y;
    n->hash = mix(mix(1, x), y);
    return Formula(std::move(n));
}

Formula Formula::equal(Index x, Index y) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Equal;
    n->x = x;
    n->y = y;
    n->hash = mix(mix(2, x), y);
    return Formula(std::move(n));
}

Formula Formula::nand(Formula p, Formula q) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Nand;
    n->hash = mix(mix(3, p.hash()), q.hash());
    n->left = std::move(p);
    n->right = std::move(q);
    return Formula(std::move(n));
}

Formula Formula::forall(Formula p) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Forall;
    n->hash = mix(4, p.hash());
    n->left = std::move(p);
    return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
Index Formula::x() const { return node_->x; }
Index Formula::y() const { return node_->y; }
const Formula& Formula::left() const { return *node_->left; }
const Formula& Formula::right() const { return *node_->right; }
const Formula& Formula::body() const { return *node_->left; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.hash() != b.hash() || a.kind() != b.kind()) {
        return false;
    }
    switch (a.kind()) {
    case Formula::Kind::Member:
    case Formula::Kind::Equal:
        return a.x() == b.x() && a.y() == b.y();
    case Formula::Kind::Nand:
        return a.left() == b.left() && a.right() == b.right();
    case Formula::Kind::Forall:
        return a.body() == b.body();
    }
    return false;
}

Formula neg(const Formula& p) { return Formula::nand(p, p); }
Formula conj(const Formula& p, const Formula& q) { return neg(Formula::nand(p, q)); }
Formula disj(const Formula& p, const Formula& q) { return Formula::nand(neg(p), neg(q)); }
Formula implies(const Formula& p, const Formula& q) { return Formula::nand(p, neg(q)); }
Formula iff(const Formula& p, const Formula& q) { return conj(implies(p, q), implies(q, p)); }
Formula exists(const Formula& p) { return neg(Formula::forall(neg(p))); }

Index arity(const Formula& p) {
    switch (p.kind()) {
    case Formula::Kind::Member:
    case Formula::Kind::Equal:
        return std::max(p.x(), p.y()) + 1;
    case Formula::Kind::Nand:
        if (p.left() == p.right()) {
            return arity(p.left());
        }
        return std::max(arity(p.left()), arity(p.right()));
    case Formula::Kind::Forall: {
        Index a = arity(p.body());
        return a == 0 ? 0 : a - 1;
    }
    }
    return 0;
}

std::size_t depth(const Formula& p) {
    switch (p.kind()) {
    case Formula::Kind::Member:
    case Formula::Kind::Equal:
        return 0;
    case Formula::Kind::Nand:
        if (p.left() == p.right()) {
            return 1 + depth(p.left());
        }
        return 1 + std::max(depth(p.left()), depth(p.right()));
    case Formula::Kind::Forall:
        return 1 + depth(p.body());
    }
    return 0;
}

Index incr_var(Index x, Index nq) { return x < nq ? x : x + 1; }

Formula incr_bv(const Formula& p, Index nq) {
    switch (p.kind()) {
    case Formula::Kind::Member:
        return Formula::member(incr_var(p.x(), nq), incr_var(p.y(), nq));
    case Formula::Kind::Equal:
        return Formula::equal(incr_var(p.x(), nq), incr_var(p.y(), nq));
    case Formula::Kind::Nand:
        if (p.left() == p.right()) {
            return neg(incr_bv(p.left(), nq));  // keep the sharing
        }
        return Formula::nand(incr_bv(p.left(), nq), incr_bv(p.right(), nq));
    case Formula::Kind::Forall:
        return Formula::forall(incr_bv(p.body(), nq + 1));
    }
    return p;
}

Formula incr_bv1(const Formula& p) { return incr_bv(p, 1); }

Formula iterate_incr_bv1(const Formula& p, std::size_t n) {
    Formula out = p;
    for (std::size_t i = 0; i < n; ++i) {
        out = incr_bv1(out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gödel numbering

Natural cantor_pair(const Natural& x, const Natural& y) {
    Natural s = x + y;
    return s * (s + 1) / 2 + x;
}

std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
    // w = floor((sqrt(8z+1) - 1) / 2), the diagonal holding z.
    Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
    Natural t = w * (w + 1) / 2;
    Natural x = z - t;
    return {x, w - x};
}

namespace {

constexpr unsigned kMemberTag = 0;
constexpr unsigned kEqualTag = 1;
constexpr unsigned kNandTag = 2;
constexpr unsigned kForallTag = 3;

} // namespace

Natural enum_of(const Formula& p) {
    switch (p.kind()) {
    case Formula::Kind::Member:
        return cantor_pair(kMemberTag, cantor_pair(p.x(), p.y()));
    case Formula::Kind::Equal:
        return cantor_pair(kEqualTag, cantor_pair(p.x(), p.y()));
    case Formula::Kind::Nand:
        if (p.left() == p.right()) {
            const Natural e = enum_of(p.left());
            return cantor_pair(kNandTag, cantor_pair(e, e));
        }
        return cantor_pair(kNandTag, cantor_pair(enum_of(p.left()), enum_of(p.right())));
    case Formula::Kind::Forall:
        return cantor_pair(kForallTag, enum_of(p.body()));
    }
    return 0;
}

namespace {

std::optional<Index> to_index(const Natural& n) {
    if (n > std::numeric_limits<Index>::max()) {
        return std::nullopt;
    }
    return static_cast<Index>(n);
}

} // namespace

std::optional<Formula> formula_of_enum(const Natural& n) {
    auto [tag, rest] = cantor_unpair(n);
    if (tag == kMemberTag || tag == kEqualTag) {
        auto [x, y] = cantor_unpair(rest);
        auto ix = to_index(x);
        auto iy = to_index(y);
        if (!ix || !iy) {
            return std::nullopt;
        }
        return tag == kMemberTag ? Formula::member(*ix, *iy) : Formula::equal(*ix, *iy);
    }
    if (tag == kNandTag) {
        auto [a, b] = cantor_unpair(rest);
        auto p = formula_of_enum(a);
        auto q = formula_of_enum(b);
        if (!p || !q) {
            return std::nullopt;
        }
        return Formula::nand(*p, *q);
    }
    if (tag == kForallTag) {
        auto p = formula_of_enum(rest);
        if (!p) {
            return std::nullopt;
        }
        return Formula::forall(*p);
    }
    return std::nullopt;
}

namespace {

// Largest c with cantor_pair(tag, c) < bound, or nullopt when none exists.
std::optional<Natural> max_arg_below(unsigned tag, const Natural& bound) {
    if (cantor_pair(tag, 0) >= bound) {
        return std::nullopt;
    }
    Natural s = boost::multiprecision::sqrt(Natural(2 * bound));
    while (s * (s + 1) / 2 + tag >= bound) {
        --s;
    }
    while ((s + 1) * (s + 2) / 2 + tag < bound) {
        ++s;
    }
    return s - tag;
}

using Numbered = std::vector<std::pair<Natural, Formula>>;

class BoundedGenerator {
public:
    // Every formula with enum < bound. Pruning relies on cantor_pair being
    // strictly increasing in each argument.
    const Numbered& below(const Natural& bound) {
        if (auto it = memo_.find(bound); it != memo_.end()) {
            return it->second;
        }
        Numbered out;
        for (unsigned tag : {kMemberTag, kEqualTag}) {
            if (auto cmax = max_arg_below(tag, bound)) {
                for (Natural c = 0; c <= *cmax; ++c) {
                    auto [x, y] = cantor_unpair(c);
                    auto ix = to_index(x);
                    auto iy = to_index(y);
                    if (!ix || !iy) {
                        throw SizeLimitError("formula enumeration bound too large");
                    }
                    Formula f = tag == kMemberTag ? Formula::member(*ix, *iy)
                                                  : Formula::equal(*ix, *iy);
                    out.emplace_back(cantor_pair(tag, c), std::move(f));
                    check_size(out.size());
                }
            }
        }
        if (auto emax = max_arg_below(kForallTag, bound)) {
            const Numbered sub = below(*emax + 1);
            for (const auto& [e, p] : sub) {
                out.emplace_back(cantor_pair(kForallTag, e), Formula::forall(p));
                check_size(out.size());
            }
        }
        if (auto cmax = max_arg_below(kNandTag, bound)) {
            const Numbered sub = below(*cmax + 1);
            for (const auto& [ep, p] : sub) {
                if (cantor_pair(ep, 0) > *cmax) {
                    break;
                }
                for (const auto& [eq, q] : sub) {
                    Natural c = cantor_pair(ep, eq);
                    if (c > *cmax) {
                        break;
                    }
                    out.emplace_back(cantor_pair(kNandTag, c), Formula::nand(p, q));
                    check_size(out.size());
                }
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return memo_.emplace(bound, std::move(out)).first->second;
    }

private:
    static void check_size(std::size_t n) {
        if (n > 20'000'000) {
            throw SizeLimitError("formula enumeration exceeds 20M formulae");
        }
    }

    std::map<Natural, Numbered> memo_;
};

} // namespace

std::vector<Formula> formulas_with_enum_below(const Natural& bound) {
    BoundedGenerator gen;
    std::vector<Formula> out;
    for (const auto& [e, p] : gen.below(bound)) {
        out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::optional<Formula> match_neg(const Formula& f) {
    if (f.kind() == Formula::Kind::Nand && f.left() == f.right()) {
        return f.left();
    }
    return std::nullopt;
}

void print(const Formula& f, bool sugar, std::string& out);

void print2(const char* name, const Formula& p, const Formula& q, bool sugar, std::string& out) {
    out += name;
    out += '(';
    print(p, sugar, out);
    out += ", ";
    print(q, sugar, out);
    out += ')';
}

void print1(const char* name, const Formula& p, bool sugar, std::string& out) {
    out += name;
    out += '(';
    print(p, sugar, out);
    out += ')';
}

// Sugar is recognized greedily, outermost first; Nand(p,p) prints as neg.
void print(const Formula& f, bool sugar, std::string& out) {
    switch (f.kind()) {
    case Formula::Kind::Member:
    case Formula::Kind::Equal:
        out += f.kind() == Formula::Kind::Member ? "mem(" : "eq(";
        out += std::to_string(f.x());
        out += ',';
        out += std::to_string(f.y());
        out += ')';
        return;
    case Formula::Kind::Forall:
        print1("all", f.body(), sugar, out);
        return;
    case Formula::Kind::Nand:
        break;
    }
    if (!sugar) {
        print2("nand", f.left(), f.right(), sugar, out);
        return;
    }
    const Formula& a = f.left();
    const Formula& b = f.right();
    if (a == b) {
        if (a.kind() == Formula::Kind::Nand) {
            const Formula& l = a.left();
            const Formula& r = a.right();
            if (l.kind() == Formula::Kind::Nand && r.kind() == Formula::Kind::Nand) {
                auto nq = match_neg(l.right());
                auto np = match_neg(r.right());
                if (nq && np && *nq == r.left() && *np == l.left()) {
                    print2("iff", l.left(), r.left(), sugar, out);
                    return;
                }
            }
            print2("and", l, r, sugar, out);
            return;
        }
        if (a.kind() == Formula::Kind::Forall) {
            if (auto p = match_neg(a.body())) {
                print1("ex", *p, sugar, out);
                return;
            }
        }
        print1("neg", a, sugar, out);
        return;
    }
    auto na = match_neg(a);
    auto nb = match_neg(b);
    if (na && nb) {
        print2("or", *na, *nb, sugar, out);
        return;
    }
    if (nb) {
        print2("imp", a, *nb, sugar, out);
        return;
    }
    print2("nand", a, b, sugar, out);
}

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    Formula parse() {
        Formula f = formula();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return f;
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

    Index index() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            fail("expected a de Bruijn index");
        }
        Index v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            Index d = static_cast<Index>(text_[pos_] - '0');
            if (v > (std::numeric_limits<Index>::max() - d) / 10) {
                fail("index out of range");
            }
            v = v * 10 + d;
            ++pos_;
        }
        return v;
    }

    Formula formula() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name.empty()) {
            fail("expected a connective");
        }
        expect('(');
        Formula out = [&]() -> Formula {
            if (name == "mem" || name == "eq") {
                Index x = index();
                expect(',');
                Index y = index();
                return name == "mem" ? Formula::member(x, y) : Formula::equal(x, y);
            }
            if (name == "all" || name == "neg" || name == "ex") {
                Formula p = formula();
                if (name == "all") {
                    return Formula::forall(p);
                }
                return name == "neg" ? neg(p) : exists(p);
            }
            if (name == "nand" || name == "and" || name == "or" || name == "imp" || name == "iff") {
                Formula p = formula();
                expect(',');
                Formula q = formula();
                if (name == "nand") {
                    return Formula::nand(p, q);
                }
                if (name == "and") {
                    return conj(p, q);
                }
                if (name == "or") {
                    return disj(p, q);
                }
                return name == "imp" ? implies(p, q) : iff(p, q);
            }
            pos_ = start;
            fail("unknown connective '" + std::string(name) + "'");
        }();
        expect(')');
        return out;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

std::string to_string(const Formula& p, bool sugar) {
    std::string out;
    print(p, sugar, out);
    return out;
}

} // namespace hfl
