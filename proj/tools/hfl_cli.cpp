// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library only through hfl.h.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hfl/hfl.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Failure {
    hfl_status status;
    std::string message;
};

void check(hfl_status s) {
    if (s != HFL_OK) {
        throw Failure{s, hfl_last_error()};
    }
}

struct SetDeleter {
    void operator()(hfl_set* s) const { hfl_set_free(s); }
};
struct FormulaDeleter {
    void operator()(hfl_formula* p) const { hfl_formula_free(p); }
};
struct StringDeleter {
    void operator()(char* s) const { hfl_string_free(s); }
};
using SetPtr = std::unique_ptr<hfl_set, SetDeleter>;
using FormulaPtr = std::unique_ptr<hfl_formula, FormulaDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

SetPtr load_universe(const std::string& spec, const hfl_caps& caps) {
    hfl_set* s = nullptr;
    check(hfl_universe(spec.c_str(), &caps, &s));
    return SetPtr(s);
}

SetPtr parse_set(const std::string& text) {
    hfl_set* s = nullptr;
    check(hfl_set_parse(text.c_str(), &s));
    return SetPtr(s);
}

std::string render(const hfl_set* s, hfl_format format, bool numerals = false) {
    char* out = nullptr;
    check(hfl_set_render(s, format, numerals ? 1 : 0, &out));
    return StringPtr(out).get();
}

std::string take(char* s) { return StringPtr(s).get(); }

// Caps from HFL_* environment variables; flags applied afterwards win.
void caps_from_env(hfl_caps& caps) {
    auto read = [](const char* name, std::size_t& slot) {
        if (const char* v = std::getenv(name); v != nullptr && *v != '\0') {
            char* end = nullptr;
            const unsigned long long n = std::strtoull(v, &end, 10);
            if (*end != '\0') {
                throw Failure{HFL_ERR_ARGUMENT, std::string(name) + " must be a number"};
            }
            slot = static_cast<std::size_t>(n);
        }
    };
    read("HFL_LEVEL_CAP", caps.level_cap);
    read("HFL_WELLORDER_CAP", caps.wellorder_cap);
    read("HFL_WITNESS_CAP", caps.witness_cap);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite constructible-universe toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    bool no_sugar = false;
    std::optional<std::size_t> level_cap, wellorder_cap, witness_cap;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--no-sugar", no_sugar, "Print formulae with the four core constructors only");
    app.add_option("--level-cap", level_cap, "Largest V/L level to build (env HFL_LEVEL_CAP)");
    app.add_option("--wellorder-cap", wellorder_cap,
                   "Largest level for the well-order (env HFL_WELLORDER_CAP)");
    app.add_option("--witness-cap", witness_cap,
                   "Largest universe for minimal-witness search (env HFL_WITNESS_CAP)");

    auto* universe = app.add_subcommand("universe", "Print V_n or L_n");
    std::string kind;
    std::size_t level = 0;
    bool check_v = false;
    bool numerals = false;
    universe->add_option("kind", kind, "v or l")->required()->check(CLI::IsMember({"v", "l"}));
    universe->add_option("n", level, "Level")->required();
    universe->add_flag("--check-v-equality", check_v, "Also compare L_n with V_n");
    universe->add_flag("--numerals", numerals, "Render ordinals as numbers");

    auto* eval = app.add_subcommand("eval", "Evaluate a formula in a universe");
    std::string eval_universe, formula_text, env_text;
    bool trace = false;
    eval->add_option("--universe", eval_universe, "v:N, l:N or file:PATH")->required();
    eval->add_option("formula", formula_text, "Formula text")->required();
    eval->add_option("--env", env_text, "Comma-separated sets, head first");
    eval->add_flag("--trace", trace, "Print the quantifier instantiation tree");

    auto* witness = app.add_subcommand("witness", "Find a definability witness for a subset");
    std::string witness_universe, subset_text, order = "default";
    bool minimal = false;
    witness->add_option("--universe", witness_universe, "v:N, l:N or file:PATH")->required();
    witness->add_option("--subset", subset_text, "The subset, in braces notation")->required();
    witness->add_flag("--minimal", minimal, "Least witness under the env/formula order");
    witness->add_option("--order", order, "Base order for --minimal")
        ->check(CLI::IsMember({"default", "canonical", "lr"}));

    auto* wellorder = app.add_subcommand("wellorder", "List L_n under its constructible well-order");
    std::size_t wo_level = 0;
    bool verify = false;
    wellorder->add_option("n", wo_level, "Level")->required();
    wellorder->add_flag("--verify", verify, "Check that the order is a well-order");

    auto* axioms = app.add_subcommand("axioms", "Audit relativized axioms in a finite model");
    std::string axioms_universe;
    axioms->add_option("--universe", axioms_universe, "v:N, l:N or file:PATH")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const hfl_format fmt = format == "json" ? HFL_FORMAT_JSON : HFL_FORMAT_TEXT;
    const int sugar = no_sugar ? 0 : 1;

    try {
        hfl_caps caps = hfl_default_caps();
        caps_from_env(caps);
        if (level_cap) {
            caps.level_cap = *level_cap;
        }
        if (wellorder_cap) {
            caps.wellorder_cap = *wellorder_cap;
        }
        if (witness_cap) {
            caps.witness_cap = *witness_cap;
        }

        if (universe->parsed()) {
            const std::string spec = kind + ":" + std::to_string(level);
            SetPtr u = load_universe(spec, caps);
            if (!check_v) {
                std::cout << render(u.get(), fmt, numerals) << "\n";
                return kExitOk;
            }
            if (kind != "l") {
                throw Failure{HFL_ERR_ARGUMENT, "--check-v-equality applies to 'universe l N'"};
            }
            SetPtr v = load_universe("v:" + std::to_string(level), caps);
            const bool same = hfl_set_equal(u.get(), v.get()) != 0;
            if (fmt == HFL_FORMAT_JSON) {
                std::cout << "{\"set\": " << render(u.get(), fmt)
                          << ", \"v_equality\": " << (same ? "true" : "false") << "}\n";
            } else {
                std::cout << render(u.get(), fmt, numerals) << "\n"
                          << "L_" << level << " = V_" << level << ": "
                          << (same ? "OK" : "MISMATCH") << "\n";
            }
            return same ? kExitOk : kExitCheckFailed;
        }

        if (eval->parsed()) {
            SetPtr u = load_universe(eval_universe, caps);
            hfl_formula* raw = nullptr;
            check(hfl_formula_parse(formula_text.c_str(), &raw));
            FormulaPtr p(raw);
            int result = 0;
            char* trace_out = nullptr;
            check(hfl_eval(u.get(), p.get(), env_text.c_str(), &result, trace ? &trace_out : nullptr));
            if (trace) {
                std::cout << take(trace_out);
            }
            if (fmt == HFL_FORMAT_JSON) {
                std::cout << "{\"result\": " << result << "}\n";
            } else {
                std::cout << result << "\n";
            }
            return kExitOk;
        }

        if (witness->parsed()) {
            SetPtr u = load_universe(witness_universe, caps);
            SetPtr x = parse_set(subset_text);
            std::string base = order;
            if (base == "default") {
                base = witness_universe.starts_with("l:") ? "lr" : "canonical";
            }
            if (base == "lr") {
                if (!witness_universe.starts_with("l:")) {
                    throw Failure{HFL_ERR_ARGUMENT, "--order lr needs an l:N universe"};
                }
                base = "lr:" + witness_universe.substr(2);
            }
            char* out = nullptr;
            check(hfl_witness(u.get(), x.get(), minimal ? 1 : 0, base.c_str(), &caps, fmt, sugar,
                              &out));
            std::cout << take(out);
            return kExitOk;
        }

        if (wellorder->parsed()) {
            int ok = 1;
            char* out = nullptr;
            check(hfl_wellorder(wo_level, &caps, fmt, sugar, verify ? 1 : 0, &ok, &out));
            std::cout << take(out);
            return ok ? kExitOk : kExitCheckFailed;
        }

        if (axioms->parsed()) {
            SetPtr u = load_universe(axioms_universe, caps);
            int clean = 1;
            char* out = nullptr;
            check(hfl_axioms(u.get(), fmt, &clean, &out));
            std::cout << take(out);
            return clean ? kExitOk : kExitCheckFailed;
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.status == HFL_ERR_INTERNAL ? kExitCheckFailed : kExitUsage;
    }
    return kExitUsage;
}
