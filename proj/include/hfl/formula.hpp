// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_FORMULA_HPP
#define HFL_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hfl {

using Natural = boost::multiprecision::cpp_int;
using Index = std::uint64_t;

/// Internalized first-order formula over ∈ and =, with de Bruijn indices.
/// Index 0 is the innermost binder. Immutable; copies share structure.
class Formula {
public:
    enum class Kind : std::uint8_t { Member, Equal, Nand, Forall };

    static Formula member(Index x, Index y);
    static Formula equal(Index x, Index y);
    static Formula nand(Formula p, Formula q);
    static Formula forall(Formula p);

    Kind kind() const;
    bool is_atomic() const { return kind() == Kind::Member || kind() == Kind::Equal; }
    Index x() const;  // atoms only
    Index y() const;
    const Formula& left() const;  // Nand only
    const Formula& right() const;
    const Formula& body() const;  // Forall only

    std::size_t hash() const;
    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Derived connectives, expanded into the four primitives.
Formula neg(const Formula& p);                        // Nand(p,p)
Formula conj(const Formula& p, const Formula& q);     // Neg(Nand(p,q))
Formula disj(const Formula& p, const Formula& q);     // Nand(Neg p, Neg q)
Formula implies(const Formula& p, const Formula& q);  // Nand(p, Neg q)
Formula iff(const Formula& p, const Formula& q);      // And(Implies(p,q), Implies(q,p))
Formula exists(const Formula& p);                     // Neg(Forall(Neg p))

/// Least environment length interpreting every free variable.
Index arity(const Formula& p);
std::size_t depth(const Formula& p);

Index incr_var(Index x, Index nq);
/// Shift every free index ≥ nq up by one, respecting binders.
Formula incr_bv(const Formula& p, Index nq);
/// incr_bv(p, 1): leaves index 0 alone.
Formula incr_bv1(const Formula& p);
/// incr_bv1 applied n times.
Formula iterate_incr_bv1(const Formula& p, std::size_t n);

/// (x+y)(x+y+1)/2 + x
Natural cantor_pair(const Natural& x, const Natural& y);
std::pair<Natural, Natural> cantor_unpair(const Natural& z);

/// Gödel number of p under Cantor pairing; injective.
Natural enum_of(const Formula& p);
/// Inverse of enum_of; absent when n is not the number of any formula.
std::optional<Formula> formula_of_enum(const Natural& n);

/// All formulae with enum_of(p) < bound, in increasing enum order.
std::vector<Formula> formulas_with_enum_below(const Natural& bound);

/// Core grammar: mem(i,j) eq(i,j) nand(p,q) all(p); sugar: neg and or imp iff ex.
Formula parse_formula(std::string_view text);
std::string to_string(const Formula& p, bool sugar = true);

} // namespace hfl

template <>
struct std::hash<hfl::Formula> {
    std::size_t operator()(const hfl::Formula& p) const noexcept { return p.hash(); }
};

#endif
