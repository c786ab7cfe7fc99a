// SPDX-License-Identifier: Apache-2.0

#include "hfl/order.hpp"

#include <algorithm>

#include "hfl/error.hpp"

namespace hfl {

std::vector<HfSet> SetOrder::sorted(const HfSet& carrier) const {
    std::vector<HfSet> out(carrier.begin(), carrier.end());
    std::stable_sort(out.begin(), out.end(),
                     [this](const HfSet& a, const HfSet& b) { return less(a, b); });
    return out;
}

HfSet SetOrder::graph(const HfSet& carrier) const {
    std::vector<HfSet> pairs;
    for (const HfSet& a : carrier) {
        for (const HfSet& b : carrier) {
            if (less(a, b)) {
                pairs.push_back(kpair(a, b));
            }
        }
    }
    return HfSet::of(std::move(pairs));
}

std::strong_ordering CanonicalOrder::compare(const HfSet& a, const HfSet& b) const {
    return canonical_compare(a, b);
}

ListingOrder::ListingOrder(std::vector<HfSet> listing) {
    for (std::size_t i = 0; i < listing.size(); ++i) {
        if (!position_.emplace(listing[i], i).second) {
            throw ArgumentError("listing repeats " + to_string(listing[i]));
        }
    }
}

std::strong_ordering ListingOrder::compare(const HfSet& a, const HfSet& b) const {
    auto ia = position_.find(a);
    auto ib = position_.find(b);
    if (ia == position_.end() || ib == position_.end()) {
        throw DomainError("element outside the listed carrier");
    }
    return ia->second <=> ib->second;
}

std::strong_ordering EmptyOrder::compare(const HfSet& a, const HfSet& b) const {
    if (a != b) {
        throw DomainError("the empty order has no carrier");
    }
    return std::strong_ordering::equal;
}

std::strong_ordering rlimit_compare(const RlimitOrder::RankFn& rank,
                                    const RlimitOrder::Family& family, const HfSet& x,
                                    const HfSet& y) {
    if (x == y) {
        return std::strong_ordering::equal;
    }
    const std::size_t rx = rank(x);
    const std::size_t ry = rank(y);
    if (rx != ry) {
        return rx <=> ry;
    }
    return family(rx + 1)->compare(x, y);
}

std::strong_ordering RlimitOrder::compare(const HfSet& a, const HfSet& b) const {
    return rlimit_compare(rank_, family_, a, b);
}

std::strong_ordering rlist_compare(const SetOrder& base, const std::vector<HfSet>& l1,
                                   const std::vector<HfSet>& l2) {
    if (l1.size() != l2.size()) {
        return l1.size() <=> l2.size();
    }
    for (std::size_t i = 0; i < l1.size(); ++i) {
        if (l1[i] != l2[i]) {
            return base.compare(l1[i], l2[i]);
        }
    }
    return std::strong_ordering::equal;
}

bool is_strict_total_on(const SetOrder& order, const HfSet& carrier) {
    for (const HfSet& a : carrier) {
        if (order.compare(a, a) != 0) {
            return false;
        }
        for (const HfSet& b : carrier) {
            const auto ab = order.compare(a, b);
            if (a != b && ab == 0) {
                return false;
            }
            if (ab != (0 <=> order.compare(b, a))) {
                return false;
            }
            if (ab >= 0) {
                continue;
            }
            for (const HfSet& c : carrier) {
                if (order.less(b, c) && !order.less(a, c)) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace hfl
