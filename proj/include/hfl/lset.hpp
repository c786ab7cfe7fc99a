// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_LSET_HPP
#define HFL_LSET_HPP

#include <functional>
#include <memory>
#include <vector>

#include "hfl/dpow.hpp"
#include "hfl/order.hpp"

namespace hfl {

/// L_0 = ∅, L_{i+1} = DPow(L_i), each level built by evaluating every DPow
/// witness. Throws SizeLimitError past limits.level_cap.
HfSet lset(std::size_t n, const Limits& limits = {});

/// |L_n|, with the last level counted from its DPow listing instead of
/// being materialized. `samples` witnesses of that listing are evaluated and
/// must define their subsets; the number checked is returned through `verified`.
std::size_t lset_count(std::size_t n, std::size_t samples, std::size_t* verified = nullptr,
                       const Limits& limits = {});

/// Least i with x ∈ L_{i+1}, searching i < cap. DomainError past the bound.
std::size_t lrank(const HfSet& x, std::size_t cap, const Limits& limits = {});

/// Subsets of A ordered by their least witnesses under env_form order.
class DpowOrder final : public SetOrder {
public:
    DpowOrder(HfSet a, OrderPtr base, Limits limits = {});
    std::strong_ordering compare(const HfSet& x, const HfSet& y) const override;
    std::string name() const override { return "dpow"; }

    DefWitness least_witness(const HfSet& x) const { return finder_->find(x); }
    const HfSet& carrier() const { return a_; }
    const OrderPtr& base() const { return base_; }

private:
    HfSet a_;
    OrderPtr base_;
    std::shared_ptr<LeastWitnessFinder> finder_;
};

std::strong_ordering dpow_r_compare(const HfSet& a, OrderPtr base, const HfSet& x,
                                    const HfSet& y, const Limits& limits = {});

/// l_r(0) is the empty order; l_r(i+1) = DpowOrder(L_i, l_r(i)). Cached.
OrderPtr l_r(std::size_t n, const Limits& limits = {});

struct RankedElement {
    HfSet element;
    std::optional<DefWitness> witness;  // its least witness over L_{n-1}; absent for n = 0
};

/// L_n sorted by l_r(n), each with its least witness.
std::vector<RankedElement> wellorder_listing(std::size_t n, const Limits& limits = {});

} // namespace hfl

#endif
