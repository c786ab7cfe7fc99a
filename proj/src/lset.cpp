// SPDX-License-Identifier: Apache-2.0

#include "hfl/lset.hpp"

#include <map>
#include <mutex>
#include <random>

#include "hfl/error.hpp"

namespace hfl {

namespace {

void check_level(std::size_t n, const Limits& limits) {
    if (n > limits.level_cap) {
        throw SizeLimitError("level cap exceeded: L_" + std::to_string(n) + " (cap " +
                             std::to_string(limits.level_cap) + ")");
    }
}

HfSet next_level(const HfSet& prev) {
    DpowListing listing(prev);
    Structure s(prev);
    std::vector<HfSet> out;
    out.reserve(listing.size());
    for (std::size_t mask = 0; mask < listing.size(); ++mask) {
        out.push_back(defined_set(s, listing.witness(mask)));
    }
    return HfSet::of(std::move(out));
}

std::mutex levels_mutex;
std::vector<HfSet>& levels() {
    static std::vector<HfSet> cache{empty_set()};
    return cache;
}

} // namespace

HfSet lset(std::size_t n, const Limits& limits) {
    check_level(n, limits);
    std::lock_guard lock(levels_mutex);
    auto& cache = levels();
    while (cache.size() <= n) {
        cache.push_back(next_level(cache.back()));
    }
    return cache[n];
}

std::size_t lset_count(std::size_t n, std::size_t samples, std::size_t* verified,
                       const Limits& limits) {
    check_level(n, limits);
    if (verified) {
        *verified = 0;
    }
    if (n == 0) {
        return 0;
    }
    const HfSet prev = lset(n - 1, limits);
    DpowListing listing(prev);
    Structure s(prev);
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<std::size_t> pick(0, listing.size() - 1);
    // small listings are checked exhaustively
    const bool every = samples >= listing.size();
    const std::size_t rounds = every ? listing.size() : samples;
    for (std::size_t i = 0; i < rounds; ++i) {
        const std::size_t mask = every ? i : pick(rng);
        if (defined_set(s, listing.witness(mask)) != listing.subset(mask)) {
            throw DomainError("witness for subset #" + std::to_string(mask) + " is unsound");
        }
        if (verified) {
            ++*verified;
        }
    }
    // Distinct masks pick distinct subsets, so the listing has no repeats.
    return listing.size();
}

std::size_t lrank(const HfSet& x, std::size_t cap, const Limits& limits) {
    for (std::size_t i = 0; i < cap; ++i) {
        if (lset(i + 1, limits).contains(x)) {
            return i;
        }
    }
    throw DomainError(to_string(x) + " is not constructible within L_" + std::to_string(cap));
}

DpowOrder::DpowOrder(HfSet a, OrderPtr base, Limits limits)
    : a_(a), base_(base), finder_(std::make_shared<LeastWitnessFinder>(a, base, limits)) {}

std::strong_ordering DpowOrder::compare(const HfSet& x, const HfSet& y) const {
    if (x == y) {
        return std::strong_ordering::equal;
    }
    return env_form_compare(*base_, finder_->find(x), finder_->find(y));
}

std::strong_ordering dpow_r_compare(const HfSet& a, OrderPtr base, const HfSet& x,
                                    const HfSet& y, const Limits& limits) {
    return DpowOrder(a, std::move(base), limits).compare(x, y);
}

OrderPtr l_r(std::size_t n, const Limits& limits) {
    if (n > limits.wellorder_cap) {
        throw SizeLimitError("well-order cap exceeded: l_r(" + std::to_string(n) + ") (cap " +
                             std::to_string(limits.wellorder_cap) + ")");
    }
    static std::mutex mutex;
    static std::map<std::size_t, OrderPtr> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) {
        return it->second;
    }
    OrderPtr order = std::make_shared<EmptyOrder>();
    for (std::size_t i = 0; i < n; ++i) {
        if (auto it = cache.find(i + 1); it != cache.end()) {
            order = it->second;
            continue;
        }
        order = std::make_shared<DpowOrder>(lset(i, limits), order, limits);
        cache.emplace(i + 1, order);
    }
    cache.emplace(n, order);
    return order;
}

std::vector<RankedElement> wellorder_listing(std::size_t n, const Limits& limits) {
    OrderPtr order = l_r(n, limits);
    const HfSet level = lset(n, limits);
    std::vector<RankedElement> out;
    const auto* dpow_order = dynamic_cast<const DpowOrder*>(order.get());
    for (const HfSet& x : order->sorted(level)) {
        RankedElement e{x, std::nullopt};
        if (dpow_order) {
            e.witness = dpow_order->least_witness(x);
        }
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace hfl
