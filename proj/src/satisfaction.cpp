// SPDX-License-Identifier: Apache-2.0

#include "hfl/satisfaction.hpp"

#include "hfl/error.hpp"

namespace hfl {

HfSet nth(std::size_t n, const Env& env) { return n < env.size() ? env[n] : empty_set(); }

Structure::Structure(const HfSet& a) : universe_(a), n_(a.size()), values_(a.begin(), a.end()) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        index_.emplace(values_[i], static_cast<Value>(i));
    }
    if (auto it = index_.find(empty_set()); it != index_.end()) {
        empty_ = it->second;
    } else {
        empty_ = static_cast<Value>(values_.size());
        values_.push_back(empty_set());
    }
    const std::size_t m = values_.size();
    member_.assign(m * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            member_[i * m + j] = values_[j].contains(values_[i]) ? 1 : 0;
        }
    }
}

std::optional<Structure::Value> Structure::index_of(const HfSet& x) const {
    if (auto it = index_.find(x); it != index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::vector<Structure::Value> Structure::encode(const Env& env) const {
    std::vector<Value> stack(env.size());
    for (std::size_t i = 0; i < env.size(); ++i) {
        auto v = index_of(env[i]);
        if (!v) {
            throw DomainError("environment entry " + std::to_string(i) + " = " +
                              to_string(env[i]) + " is not in the universe");
        }
        stack[env.size() - 1 - i] = *v;
    }
    return stack;
}

Structure::Value Structure::lookup(Index i, const std::vector<Value>& stack) const {
    return i < stack.size() ? stack[stack.size() - 1 - i] : empty_;
}

bool Structure::sats(const Formula& p, std::vector<Value>& stack) const {
    switch (p.kind()) {
    case Formula::Kind::Member:
        return mem(lookup(p.x(), stack), lookup(p.y(), stack));
    case Formula::Kind::Equal:
        return lookup(p.x(), stack) == lookup(p.y(), stack);
    case Formula::Kind::Nand:
        if (p.left() == p.right()) {
            return !sats(p.left(), stack);
        }
        return !(sats(p.left(), stack) && sats(p.right(), stack));
    case Formula::Kind::Forall:
        for (std::size_t x = 0; x < n_; ++x) {
            stack.push_back(static_cast<Value>(x));
            const bool ok = sats(p.body(), stack);
            stack.pop_back();
            if (!ok) {
                return false;
            }
        }
        return true;
    }
    return false;
}

bool Structure::sats(const Formula& p, const Env& env) const {
    auto stack = encode(env);
    return sats(p, stack);
}

bool Structure::traced(const Formula& p, std::vector<Value>& stack, std::size_t indent,
                       std::string& trace) const {
    switch (p.kind()) {
    case Formula::Kind::Member:
    case Formula::Kind::Equal:
        return sats(p, stack);
    case Formula::Kind::Nand:
        if (p.left() == p.right()) {
            return !traced(p.left(), stack, indent, trace);
        }
        return !(traced(p.left(), stack, indent, trace) && traced(p.right(), stack, indent, trace));
    case Formula::Kind::Forall:
        break;
    }
    const std::string pad(indent * 2, ' ');
    trace += pad + to_string(p) + "\n";
    for (std::size_t x = 0; x < n_; ++x) {
        stack.push_back(static_cast<Value>(x));
        std::string sub;
        const bool ok = traced(p.body(), stack, indent + 1, sub);
        stack.pop_back();
        trace += pad + "  0 := " + to_string(values_[x]) + " -> " + (ok ? "1" : "0") + "\n";
        trace += sub;
        if (!ok) {
            return false;
        }
    }
    return true;
}

bool Structure::sats_traced(const Formula& p, const Env& env, std::string& trace) const {
    auto stack = encode(env);
    return traced(p, stack, 0, trace);
}

int satisfies(const HfSet& a, const Formula& p, const Env& env) { return sats(a, p, env) ? 1 : 0; }

bool sats(const HfSet& a, const Formula& p, const Env& env) { return Structure(a).sats(p, env); }

bool check_env_extension(const HfSet& a, const Formula& p, const Env& env, const Env& extra) {
    if (arity(p) > env.size()) {
        throw ArgumentError("arity " + std::to_string(arity(p)) + " exceeds environment length " +
                            std::to_string(env.size()));
    }
    Structure s(a);
    Env longer = env;
    longer.insert(longer.end(), extra.begin(), extra.end());
    return s.sats(p, longer) == s.sats(p, env);
}

} // namespace hfl
