// SPDX-License-Identifier: Apache-2.0

#include "hfl/hfl.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "hfl/dpow.hpp"
#include "hfl/error.hpp"
#include "hfl/io.hpp"
#include "hfl/lset.hpp"
#include "hfl/relational.hpp"
#include "hfl/relations.hpp"

struct hfl_set {
    hfl::HfSet value;
};

struct hfl_formula {
    hfl::Formula value;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_column = 0;

hfl_status status_of(hfl::ErrorCode code) {
    switch (code) {
    case hfl::ErrorCode::Parse:
        return HFL_ERR_PARSE;
    case hfl::ErrorCode::Domain:
        return HFL_ERR_DOMAIN;
    case hfl::ErrorCode::SizeLimit:
        return HFL_ERR_SIZE_LIMIT;
    case hfl::ErrorCode::NotWellOrder:
        return HFL_ERR_NOT_WELLORDER;
    case hfl::ErrorCode::WellFoundedness:
        return HFL_ERR_WELLFOUNDED;
    case hfl::ErrorCode::Argument:
        return HFL_ERR_ARGUMENT;
    }
    return HFL_ERR_INTERNAL;
}

// Runs f, translating exceptions into status codes and the thread-local message.
template <class F>
hfl_status guarded(F&& f) {
    last_error.clear();
    last_column = 0;
    try {
        f();
        return HFL_OK;
    } catch (const hfl::ParseError& e) {
        last_error = e.what();
        last_column = e.column();
        return HFL_ERR_PARSE;
    } catch (const hfl::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return HFL_ERR_PARSE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return HFL_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return HFL_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr) {
        throw hfl::ArgumentError(std::string(what) + " is null");
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

hfl::Limits limits_of(const hfl_caps* caps) {
    hfl::Limits l;
    if (caps) {
        l.level_cap = caps->level_cap;
        l.wellorder_cap = caps->wellorder_cap;
        l.witness_cap = caps->witness_cap;
    }
    return l;
}

std::size_t parse_level(const std::string& digits, const std::string& spec) {
    if (digits.empty() || digits.size() > 6 ||
        digits.find_first_not_of("0123456789") != std::string::npos) {
        throw hfl::ArgumentError("bad universe spec '" + spec + "': expected a level number");
    }
    return std::stoul(digits);
}

} // namespace

extern "C" {

const char* hfl_last_error(void) { return last_error.c_str(); }
size_t hfl_last_error_column(void) { return last_column; }

const char* hfl_status_name(hfl_status s) {
    switch (s) {
    case HFL_OK:
        return "ok";
    case HFL_ERR_PARSE:
        return "parse error";
    case HFL_ERR_DOMAIN:
        return "domain error";
    case HFL_ERR_SIZE_LIMIT:
        return "size limit";
    case HFL_ERR_NOT_WELLORDER:
        return "not a well-order";
    case HFL_ERR_WELLFOUNDED:
        return "not well-founded";
    case HFL_ERR_ARGUMENT:
        return "bad argument";
    case HFL_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown";
}

hfl_caps hfl_default_caps(void) {
    const hfl::Limits l;
    return {l.level_cap, l.wellorder_cap, l.witness_cap};
}

void hfl_string_free(char* s) { std::free(s); }

hfl_status hfl_set_parse(const char* text, hfl_set** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new hfl_set{hfl::parse_set(text)};
    });
}

hfl_status hfl_set_parse_json(const char* json, hfl_set** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = new hfl_set{hfl::set_from_json(hfl::Json::parse(json))};
    });
}

hfl_status hfl_set_render(const hfl_set* s, hfl_format format, int numerals, char** out) {
    return guarded([&] {
        require(s, "set");
        require(out, "out");
        if (format == HFL_FORMAT_JSON) {
            *out = dup(hfl::to_json(s->value).dump());
        } else {
            *out = dup(hfl::to_string(s->value, {numerals != 0, false}));
        }
    });
}

void hfl_set_free(hfl_set* s) { delete s; }
size_t hfl_set_size(const hfl_set* s) { return s ? s->value.size() : 0; }
int hfl_set_equal(const hfl_set* a, const hfl_set* b) { return a && b && a->value == b->value; }
int hfl_set_contains(const hfl_set* s, const hfl_set* x) {
    return s && x && s->value.contains(x->value);
}
int hfl_set_is_transitive(const hfl_set* s) { return s && hfl::is_transitive_set(s->value); }

hfl_status hfl_v_level(size_t n, const hfl_caps* caps, hfl_set** out) {
    return guarded([&] {
        require(out, "out");
        *out = new hfl_set{hfl::v_level(n, limits_of(caps))};
    });
}

hfl_status hfl_lset(size_t n, const hfl_caps* caps, hfl_set** out) {
    return guarded([&] {
        require(out, "out");
        *out = new hfl_set{hfl::lset(n, limits_of(caps))};
    });
}

hfl_status hfl_universe(const char* spec, const hfl_caps* caps, hfl_set** out) {
    return guarded([&] {
        require(spec, "spec");
        require(out, "out");
        const std::string s(spec);
        const hfl::Limits limits = limits_of(caps);
        if (s.starts_with("v:")) {
            *out = new hfl_set{hfl::v_level(parse_level(s.substr(2), s), limits)};
        } else if (s.starts_with("l:")) {
            *out = new hfl_set{hfl::lset(parse_level(s.substr(2), s), limits)};
        } else if (s.starts_with("file:")) {
            std::ifstream in(s.substr(5));
            if (!in) {
                throw hfl::ArgumentError("cannot read '" + s.substr(5) + "'");
            }
            std::stringstream buf;
            buf << in.rdbuf();
            *out = new hfl_set{hfl::parse_set(buf.str())};
        } else {
            throw hfl::ArgumentError("bad universe spec '" + s + "': use v:N, l:N or file:PATH");
        }
    });
}

hfl_status hfl_formula_parse(const char* text, hfl_formula** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new hfl_formula{hfl::parse_formula(text)};
    });
}

hfl_status hfl_formula_render(const hfl_formula* p, int sugar, char** out) {
    return guarded([&] {
        require(p, "formula");
        require(out, "out");
        *out = dup(hfl::to_string(p->value, sugar != 0));
    });
}

hfl_status hfl_formula_enum(const hfl_formula* p, char** out) {
    return guarded([&] {
        require(p, "formula");
        require(out, "out");
        *out = dup(hfl::enum_of(p->value).str());
    });
}

size_t hfl_formula_arity(const hfl_formula* p) { return p ? hfl::arity(p->value) : 0; }
void hfl_formula_free(hfl_formula* p) { delete p; }

hfl_status hfl_eval(const hfl_set* universe, const hfl_formula* p, const char* env, int* result,
                    char** trace) {
    return guarded([&] {
        require(universe, "universe");
        require(p, "formula");
        require(result, "result");
        const hfl::Env e = env ? hfl::parse_set_list(env) : hfl::Env{};
        hfl::Structure s(universe->value);
        if (trace) {
            std::string t;
            *result = s.sats_traced(p->value, e, t) ? 1 : 0;
            *trace = dup(t);
        } else {
            *result = s.sats(p->value, e) ? 1 : 0;
        }
    });
}

hfl_status hfl_witness(const hfl_set* universe, const hfl_set* subset, int minimal,
                       const char* base_order, const hfl_caps* caps, hfl_format format, int sugar,
                       char** out) {
    return guarded([&] {
        require(universe, "universe");
        require(subset, "subset");
        require(out, "out");
        const hfl::Limits limits = limits_of(caps);
        const hfl::HfSet& a = universe->value;
        const hfl::HfSet& x = subset->value;
        auto find = [&]() -> hfl::DefWitness {
            if (!minimal) {
                return hfl::witness_for_subset(a, x);
            }
            const std::string base = base_order ? base_order : "canonical";
            hfl::OrderPtr order;
            if (base == "canonical") {
                order = std::make_shared<hfl::CanonicalOrder>();
            } else if (base.starts_with("lr:")) {
                const std::size_t n = parse_level(base.substr(3), base);
                if (hfl::lset(n, limits) != a) {
                    throw hfl::ArgumentError("base order " + base + " needs the universe L_" +
                                             std::to_string(n));
                }
                order = hfl::l_r(n, limits);
            } else {
                throw hfl::ArgumentError("unknown base order '" + base + "'");
            }
            return hfl::least_witness(a, order, x, limits);
        };
        const hfl::DefWitness w = find();
        *out = dup(format == HFL_FORMAT_JSON ? hfl::to_json(w, sugar != 0).dump(2) + "\n"
                                             : hfl::to_text(w, sugar != 0));
    });
}

hfl_status hfl_wellorder(size_t n, const hfl_caps* caps, hfl_format format, int sugar, int verify,
                         int* verified, char** out) {
    return guarded([&] {
        require(out, "out");
        const hfl::Limits limits = limits_of(caps);
        const auto listing = hfl::wellorder_listing(n, limits);
        std::string text;
        bool ok = true;
        if (verify) {
            const hfl::HfSet level = hfl::lset(n, limits);
            ok = hfl::wellordered_on(level, hfl::l_r(n, limits)->graph(level));
            if (verified) {
                *verified = ok ? 1 : 0;
            }
        }
        if (format == HFL_FORMAT_JSON) {
            hfl::Json j{{"level", n}, {"elements", hfl::to_json(listing, sugar != 0)}};
            if (verify) {
                j["well_order"] = ok;
            }
            text = j.dump(2) + "\n";
        } else {
            text = hfl::to_text(listing, sugar != 0);
            if (verify) {
                text += ok ? "well-order: OK\n" : "well-order: FAILED\n";
            }
        }
        *out = dup(text);
    });
}

hfl_status hfl_axioms(const hfl_set* universe, hfl_format format, int* clean, char** out) {
    return guarded([&] {
        require(universe, "universe");
        require(out, "out");
        const auto report = hfl::conformance_report(hfl::ClassModel::of(universe->value));
        bool ok = true;
        for (const auto& a : report.axioms) {
            ok = ok && (a.holds || a.verified.value_or(false));
        }
        for (const auto& a : report.absoluteness) {
            ok = ok && a.pass;
        }
        if (clean) {
            *clean = ok ? 1 : 0;
        }
        *out = dup(format == HFL_FORMAT_JSON ? hfl::to_json(report).dump(2) + "\n"
                                             : hfl::to_text(report));
    });
}

} // extern "C"
