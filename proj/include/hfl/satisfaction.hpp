// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_SATISFACTION_HPP
#define HFL_SATISFACTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hfl/formula.hpp"
#include "hfl/hfset.hpp"

namespace hfl {

/// Index 0 is the head.
using Env = std::vector<HfSet>;

/// Positional lookup; ∅ past the end.
HfSet nth(std::size_t n, const Env& env);

/// A finite universe with dense element indices and a membership matrix.
/// Element i is the i-th element of A in canonical order. When ∅ ∉ A an extra
/// index size() stands for ∅, the value of out-of-range variables.
class Structure {
public:
    using Value = std::uint32_t;

    explicit Structure(const HfSet& a);

    const HfSet& universe() const { return universe_; }
    std::size_t size() const { return n_; }
    const HfSet& value(Value i) const { return values_[i]; }
    std::optional<Value> index_of(const HfSet& x) const;
    Value empty_index() const { return empty_; }
    bool mem(Value x, Value y) const { return member_[x * values_.size() + y] != 0; }

    /// Env entries must lie in A; DomainError otherwise.
    std::vector<Value> encode(const Env& env) const;

    /// `stack` holds the environment reversed: the head is the last entry.
    bool sats(const Formula& p, std::vector<Value>& stack) const;
    bool sats(const Formula& p, const Env& env) const;
    /// As sats, appending one line per quantifier instantiation.
    bool sats_traced(const Formula& p, const Env& env, std::string& trace) const;

private:
    Value lookup(Index i, const std::vector<Value>& stack) const;
    bool traced(const Formula& p, std::vector<Value>& stack, std::size_t indent,
                std::string& trace) const;

    HfSet universe_;
    std::size_t n_ = 0;
    std::vector<HfSet> values_;
    std::unordered_map<HfSet, Value> index_;
    std::vector<std::uint8_t> member_;
    Value empty_ = 0;
};

/// The 0/1-valued satisfaction function. Env entries outside A raise DomainError.
int satisfies(const HfSet& a, const Formula& p, const Env& env);
bool sats(const HfSet& a, const Formula& p, const Env& env);

/// sats(A, p, env ++ extra) ⟺ sats(A, p, env). Requires arity(p) ≤ |env|.
bool check_env_extension(const HfSet& a, const Formula& p, const Env& env, const Env& extra);

} // namespace hfl

#endif
