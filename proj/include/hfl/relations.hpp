// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_RELATIONS_HPP
#define HFL_RELATIONS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "hfl/hfset.hpp"

namespace hfl {

// Relations are HfSets of Kuratowski pairs. Elements that are not pairs are
// ignored by every operation here.

/// Decoded pairs of a relation, in the canonical order of the graph.
std::vector<std::pair<HfSet, HfSet>> pairs_of(const HfSet& r);
HfSet relation_from(const std::vector<std::pair<HfSet, HfSet>>& pairs);
bool holds(const HfSet& r, const HfSet& x, const HfSet& y);

HfSet domain(const HfSet& r);
HfSet range(const HfSet& r);
HfSet field(const HfSet& r);
/// r``A
HfSet image(const HfSet& r, const HfSet& a);
/// r⁻¹``A
HfSet pre_image(const HfSet& r, const HfSet& a);
HfSet converse(const HfSet& r);
/// Pairs of r whose first component lies in A.
HfSet restriction(const HfSet& r, const HfSet& a);
/// {⟨x,z⟩ : ∃y. ⟨x,y⟩ ∈ s ∧ ⟨y,z⟩ ∈ r}, i.e. r ∘ s: s is applied first.
HfSet composition(const HfSet& r, const HfSet& s);
/// {⟨x,y⟩ : x,y ∈ A, x ∈ y}
HfSet memrel(const HfSet& a);

bool wellfounded_on(const HfSet& a, const HfSet& r);
bool linear_on(const HfSet& a, const HfSet& r);
bool transitive_rel_on(const HfSet& a, const HfSet& r);
bool wellordered_on(const HfSet& a, const HfSet& r);

/// Path-based reflexive-transitive closure restricted to A × A: ⟨x,y⟩ is in
/// the result iff some sequence x = s0, ..., sn = y over A has every step in r.
HfSet rtrancl_alt(const HfSet& a, const HfSet& r);
/// Reflexive-transitive closure on field(r), by fixpoint iteration.
HfSet rtrancl(const HfSet& r);
/// composition(r, rtrancl(r))
HfSet trancl(const HfSet& r);

/// Body of a recursive definition: H(x, g) where g is the function table
/// of the recursion below x.
using RecursionBody = std::function<HfSet(const HfSet&, const HfSet&)>;

/// f(a) = H(a, f↾(r⁻¹``{a})). Throws WellFoundednessError when a cycle of r
/// is reachable from a.
HfSet wfrec(const HfSet& r, const HfSet& a, const RecursionBody& h);
/// The table of f over the trancl(r)-predecessors of a, as produced by wfrec.
HfSet wfrec_table(const HfSet& r, const HfSet& a, const RecursionBody& h);
bool is_recfun(const HfSet& r, const HfSet& a, const RecursionBody& h, const HfSet& f);

/// Maps each element of A to the numeral of its position under r.
/// Throws NotWellOrderError unless wellordered_on(A, r).
HfSet ordermap(const HfSet& a, const HfSet& r);
HfSet ordertype(const HfSet& a, const HfSet& r);

/// ∈-recursion: transrec(a, H) = H(a, λx∈a. transrec(x, H)).
HfSet transrec(const HfSet& a, const RecursionBody& h, const Limits& limits = {});
HfSet iterates(const std::function<HfSet(const HfSet&)>& f, std::size_t n, const HfSet& x);

} // namespace hfl

#endif
