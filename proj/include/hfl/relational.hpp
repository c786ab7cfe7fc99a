// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_RELATIONAL_HPP
#define HFL_RELATIONAL_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hfl/formula.hpp"
#include "hfl/hfset.hpp"

namespace hfl {

/// Predicate of the relational language. Variables are de Bruijn indices into
/// the bindings: ForallM/ExistsM push a new binding at index 0. Quantifiers
/// range over the model.
class RelPred {
public:
    using Var = std::uint32_t;
    enum class Kind : std::uint8_t { Eq, Mem, Not, And, Or, Implies, Iff, ForallM, ExistsM, Atom };

    static RelPred eq(Var a, Var b);
    static RelPred mem(Var a, Var b);
    static RelPred negate(RelPred p);
    static RelPred conj(RelPred p, RelPred q);
    static RelPred disj(RelPred p, RelPred q);
    static RelPred implies(RelPred p, RelPred q);
    static RelPred iff(RelPred p, RelPred q);
    static RelPred forall_m(RelPred body);
    static RelPred exists_m(RelPred body);
    /// Arity is checked against the catalog; unknown names raise ArgumentError.
    static RelPred atom(std::string_view name, std::vector<Var> args);

    Kind kind() const;
    Var a() const;  // Eq/Mem
    Var b() const;
    const RelPred& sub(std::size_t i) const;  // 0 for unary, 0/1 for binary
    std::size_t atom_id() const;              // index into catalog()
    const std::vector<Var>& args() const;

    friend bool operator==(const RelPred& x, const RelPred& y);

private:
    friend struct RelPredBuilder;
    struct Node;
    explicit RelPred(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// 1 + largest free variable, 0 for sentences.
std::size_t free_count(const RelPred& p);
/// Replace free variable i by map[i], shifting under binders.
RelPred rename(const RelPred& p, const std::vector<RelPred::Var>& map);

struct CatalogEntry {
    std::string name;
    std::vector<std::string> params;
    std::string source;  // surface text of the definition
    RelPred definition;  // free variables 0..arity-1 are the parameters
    /// Hand-built internalized formula taking de Bruijn indices for the parameters.
    std::function<Formula(const std::vector<Index>&)> builder;
    /// Native counterpart over a model: the absolute meaning. Absent for powerset.
    std::function<bool(const HfSet& model, const std::vector<HfSet>& args)> native;

    std::size_t arity() const { return params.size(); }
};

const std::vector<CatalogEntry>& catalog();
/// ArgumentError for unknown names.
const CatalogEntry& catalog_entry(std::string_view name);

/// Surface syntax: mem(x,y) eq(x,y) not/and/or/imp/iff (also with an M suffix),
/// forallM(x, p) existsM(x, p), atom:name(args). Free names are numbered by
/// first appearance unless `free_names` is given, in which case others are errors.
RelPred parse_relpred(std::string_view text,
                      const std::optional<std::vector<std::string>>& free_names = std::nullopt);
/// Free variable i prints as free_names[i] (default v<i>); bound ones as x<depth>.
std::string to_string(const RelPred& p, const std::vector<std::string>& free_names = {});

struct ClassModel {
    HfSet universe;
    bool transitive = false;

    static ClassModel of(const HfSet& universe);
};

/// Evaluates predicates over one model, memoizing atom instances.
class RelEvaluator {
public:
    explicit RelEvaluator(const ClassModel& m);
    ~RelEvaluator();
    RelEvaluator(const RelEvaluator&) = delete;
    RelEvaluator& operator=(const RelEvaluator&) = delete;

    /// bindings[i] interprets Var(i). DomainError if a binding is outside M.
    bool eval(const RelPred& p, const std::vector<HfSet>& bindings);
    const ClassModel& model() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

bool eval_rel(const ClassModel& m, const RelPred& p, const std::vector<HfSet>& bindings);

/// Core-connective formula with sats(A, result, bindings) ⟺ eval_rel(A, p, bindings).
/// ArgumentError if p has a free variable ≥ n_free.
Formula internalize(const RelPred& p, std::size_t n_free);

struct AbsolutenessReport {
    std::string atom;
    bool pass = true;
    std::size_t tuples = 0;
    std::optional<std::vector<HfSet>> counterexample;
    bool relativized = false;  // values at the counterexample
    bool absolute = false;
};

/// Compares the relativized atom with its native meaning on every argument
/// tuple. Refuses non-transitive models (DomainError) unless `diagnostic`.
AbsolutenessReport absoluteness_check(const ClassModel& m, std::string_view atom,
                                      bool diagnostic = false);

enum class AxiomKind {
    Extensionality,
    UpairAx,
    UnionAx,
    PowerAx,
    FoundationAx,
    Separation,
    Univalent,
    Replacement,
    StrongReplacement,
};

struct Axiom {
    AxiomKind kind;
    /// Separation: Var0 = x, Var1.. parameters. Univalent/replacement: Var0 = x,
    /// Var1 = y, Var2.. parameters. Parameters are quantified universally.
    std::optional<RelPred> phi;
    std::optional<HfSet> domain;  // univalent: the set A
    std::string label;
};

struct AxiomResult {
    std::string name;
    bool holds = true;
    /// Values of the leading universal prefix at the first failure.
    std::vector<std::pair<std::string, HfSet>> counterexample;
    /// An independent native check that the counterexample really fails.
    std::optional<bool> verified;
};

/// The relativized axiom as a sentence, with names for its leading ∀ prefix.
RelPred axiom_sentence(const Axiom& axiom, std::vector<std::string>* prefix_names = nullptr);
AxiomResult axiom_check(const ClassModel& m, const Axiom& axiom);
AxiomResult axiom_check(RelEvaluator& ev, const Axiom& axiom);

/// The five fixed axioms plus separation for every catalog atom of arity ≤ 3,
/// with the separated variable in each argument position.
std::vector<Axiom> standard_axioms();

struct ConformanceReport {
    std::size_t universe_size = 0;
    bool transitive = false;
    std::vector<AxiomResult> axioms;
    std::vector<AbsolutenessReport> absoluteness;  // empty when skipped
    bool absoluteness_skipped = false;
    /// Locale assumptions of the generic class model, item → holds.
    std::vector<std::pair<std::string, bool>> checklist;
};

ConformanceReport conformance_report(const ClassModel& m);

} // namespace hfl

#endif
