// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_DPOW_HPP
#define HFL_DPOW_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "hfl/formula.hpp"
#include "hfl/limits.hpp"
#include "hfl/order.hpp"
#include "hfl/satisfaction.hpp"

namespace hfl {

/// X = {x ∈ A : sats(A, formula, x :: env)}.
struct DefWitness {
    Env env;
    Formula formula;

    friend bool operator==(const DefWitness&, const DefWitness&) = default;
};

/// arity(formula) ≤ |env| + 1
bool respects_arity(const DefWitness& w);

/// Env entries outside A raise DomainError. No arity requirement, so it also
/// evaluates DPow′ witnesses (free indices past the env read ∅).
HfSet defined_set(const HfSet& a, const DefWitness& w);
HfSet defined_set(const Structure& a, const DefWitness& w);

DefWitness witness_complement(const HfSet& a, const DefWitness& w);
/// env2 ++ env1, with w1's parameters renamed past env2.
DefWitness witness_intersect(const HfSet& a, const DefWitness& w1, const DefWitness& w2);
DefWitness witness_union(const HfSet& a, const DefWitness& w1, const DefWitness& w2);

/// Disjunction of x = e_i over the canonical listing of X; ∅ via x ≠ x.
DefWitness witness_for_subset(const HfSet& a, const HfSet& x);

/// Every subset of A with a witness, indexed by bitmask over A's canonical
/// listing. Witnesses are built on demand.
class DpowListing {
public:
    explicit DpowListing(const HfSet& a);

    std::size_t size() const { return std::size_t{1} << elements_.size(); }
    HfSet subset(std::size_t mask) const;
    DefWitness witness(std::size_t mask) const;
    const HfSet& carrier() const { return carrier_; }

private:
    HfSet carrier_;
    std::vector<HfSet> elements_;
};

/// 2^|A| pairs (subset, witness); |A| ≤ 20.
std::vector<std::pair<HfSet, DefWitness>> dpow(const HfSet& a);

/// A witness for X whose env omits ∅: any element equal to ∅ is named by an
/// index past the env, which reads ∅ by default. Violates the arity bound
/// whenever ∅ ∈ X.
DefWitness short_witness_for_subset(const HfSet& a, const HfSet& x);
/// Pad env with ∅ up to arity(formula) - 1. DomainError if padding is needed
/// and ∅ ∉ A.
DefWitness pad_witness(const HfSet& a, const DefWitness& w);
/// X ∈ DPow′(A), decided through a short witness; for transitive A the padded
/// witness is also required to agree.
bool dpow_prime_member(const HfSet& a, const HfSet& x);

/// Parameter-free φ_a with {x ∈ A : sats(A, φ_a, [x])} = {a}. A transitive.
Formula defining_formula_for_element(const HfSet& a, const HfSet& element);

/// Orbits of the ∈-automorphisms of A fixing every entry of env.
std::vector<HfSet> automorphism_orbits(const HfSet& a, const Env& env);
/// X is definable from env iff it is a union of such orbits.
bool definable_from(const HfSet& a, const Env& env, const HfSet& x);

/// Finds the env_form-least witness for subsets of a fixed universe under a
/// fixed base order. Searches are cached, so repeated queries are cheap.
class LeastWitnessFinder {
public:
    LeastWitnessFinder(HfSet a, OrderPtr base, Limits limits = {});
    ~LeastWitnessFinder();
    LeastWitnessFinder(const LeastWitnessFinder&) = delete;
    LeastWitnessFinder& operator=(const LeastWitnessFinder&) = delete;

    DefWitness find(const HfSet& x);
    const HfSet& universe() const { return a_; }
    const SetOrder& base() const { return *base_; }

private:
    class FormulaSearch;
    FormulaSearch& search_for(const Env& env);

    HfSet a_;
    OrderPtr base_;
    Limits limits_;
    std::vector<HfSet> sorted_;
    std::map<std::vector<HfSet>, std::unique_ptr<FormulaSearch>> searches_;
    std::map<HfSet, DefWitness> found_;
    std::mutex mutex_;
};

DefWitness least_witness(const HfSet& a, OrderPtr base, const HfSet& x, const Limits& limits = {});

/// Lexicographic: rlist on envs, then enum on formulae.
std::strong_ordering env_form_compare(const SetOrder& base, const DefWitness& w1,
                                      const DefWitness& w2);

} // namespace hfl

#endif
