// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_ORDER_HPP
#define HFL_ORDER_HPP

#include <compare>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hfl/hfset.hpp"

namespace hfl {

/// A comparator standing for a strict order on some carrier.
class SetOrder {
public:
    virtual ~SetOrder() = default;
    virtual std::strong_ordering compare(const HfSet& a, const HfSet& b) const = 0;
    virtual std::string name() const = 0;

    bool less(const HfSet& a, const HfSet& b) const { return compare(a, b) < 0; }
    /// Elements of the carrier in increasing order.
    std::vector<HfSet> sorted(const HfSet& carrier) const;
    /// {⟨a,b⟩ : a, b ∈ carrier, a < b}, for the relation-level checks.
    HfSet graph(const HfSet& carrier) const;
};

using OrderPtr = std::shared_ptr<const SetOrder>;

class CanonicalOrder final : public SetOrder {
public:
    std::strong_ordering compare(const HfSet& a, const HfSet& b) const override;
    std::string name() const override { return "canonical"; }
};

/// Order given by an explicit listing; elements outside it raise DomainError.
class ListingOrder final : public SetOrder {
public:
    explicit ListingOrder(std::vector<HfSet> listing);
    std::strong_ordering compare(const HfSet& a, const HfSet& b) const override;
    std::string name() const override { return "listing"; }

private:
    std::unordered_map<HfSet, std::size_t> position_;
};

/// The order on ∅: it relates nothing, and comparing distinct values is an error.
class EmptyOrder final : public SetOrder {
public:
    std::strong_ordering compare(const HfSet& a, const HfSet& b) const override;
    std::string name() const override { return "empty"; }
};

/// Rank-first order; ties broken by family(rank + 1).
class RlimitOrder final : public SetOrder {
public:
    using RankFn = std::function<std::size_t(const HfSet&)>;
    using Family = std::function<OrderPtr(std::size_t)>;

    RlimitOrder(RankFn rank, Family family) : rank_(std::move(rank)), family_(std::move(family)) {}
    std::strong_ordering compare(const HfSet& a, const HfSet& b) const override;
    std::string name() const override { return "rlimit"; }

private:
    RankFn rank_;
    Family family_;
};

std::strong_ordering rlimit_compare(const RlimitOrder::RankFn& rank,
                                    const RlimitOrder::Family& family, const HfSet& x,
                                    const HfSet& y);

/// Shorter lists first; equal lengths compare head-first under `base`.
std::strong_ordering rlist_compare(const SetOrder& base, const std::vector<HfSet>& l1,
                                   const std::vector<HfSet>& l2);

/// Whether `order` is a strict total order on `carrier` (brute force).
bool is_strict_total_on(const SetOrder& order, const HfSet& carrier);

} // namespace hfl

#endif
