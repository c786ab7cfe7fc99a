// SPDX-License-Identifier: Apache-2.0

#include "hfl/io.hpp"

#include <sstream>

#include "hfl/error.hpp"

namespace hfl {

Json to_json(const HfSet& s) {
    Json out = Json::array();
    for (const HfSet& x : s) {
        out.push_back(to_json(x));
    }
    return out;
}

HfSet set_from_json(const Json& j) {
    if (!j.is_array()) {
        throw ParseError("expected a JSON array for a set", 1);
    }
    std::vector<HfSet> elems;
    elems.reserve(j.size());
    for (const Json& e : j) {
        elems.push_back(set_from_json(e));
    }
    return HfSet::of(std::move(elems));
}

Json to_json(const DefWitness& w, bool sugar) {
    Json env = Json::array();
    for (const HfSet& x : w.env) {
        env.push_back(to_json(x));
    }
    return Json{{"env", env}, {"formula", to_string(w.formula, sugar)}};
}

DefWitness witness_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("env") || !j.contains("formula") ||
        !j["env"].is_array() || !j["formula"].is_string()) {
        throw ParseError("expected {\"env\": [...], \"formula\": \"...\"}", 1);
    }
    DefWitness w{{}, parse_formula(j["formula"].get<std::string>())};
    for (const Json& e : j["env"]) {
        w.env.push_back(set_from_json(e));
    }
    return w;
}

Json to_json(const AxiomResult& r) {
    Json out{{"name", r.name}, {"holds", r.holds}};
    if (!r.holds) {
        Json ce = Json::object();
        for (const auto& [name, value] : r.counterexample) {
            ce[name] = to_string(value);
        }
        out["counterexample"] = ce;
    }
    if (r.verified) {
        out["verified"] = *r.verified;
    }
    return out;
}

Json to_json(const AbsolutenessReport& r) {
    Json out{{"atom", r.atom}, {"pass", r.pass}, {"tuples", r.tuples}};
    if (r.counterexample) {
        Json args = Json::array();
        for (const HfSet& x : *r.counterexample) {
            args.push_back(to_string(x));
        }
        out["counterexample"] = {{"args", args}, {"relativized", r.relativized},
                                 {"absolute", r.absolute}};
    }
    return out;
}

Json to_json(const ConformanceReport& r) {
    Json axioms = Json::array();
    for (const auto& a : r.axioms) {
        axioms.push_back(to_json(a));
    }
    Json checklist = Json::object();
    for (const auto& [item, ok] : r.checklist) {
        checklist[item] = ok;
    }
    Json out{{"universe_size", r.universe_size},
             {"transitive", r.transitive},
             {"axioms", axioms},
             {"checklist", checklist}};
    if (r.absoluteness_skipped) {
        out["absoluteness"] = "skipped";
    } else {
        Json abs = Json::array();
        for (const auto& a : r.absoluteness) {
            abs.push_back(to_json(a));
        }
        out["absoluteness"] = abs;
    }
    return out;
}

std::string to_text(const ConformanceReport& r) {
    std::ostringstream out;
    out << "universe: " << r.universe_size << " elements, "
        << (r.transitive ? "transitive" : "not transitive") << "\n";
    out << "axioms:\n";
    for (const auto& a : r.axioms) {
        out << "  " << a.name << ": " << (a.holds ? "PASS" : "FAIL");
        if (!a.holds) {
            out << ", counterexample";
            const char* sep = " ";
            for (const auto& [name, value] : a.counterexample) {
                out << sep << name << "=" << to_string(value);
                sep = ", ";
            }
            if (a.verified) {
                out << (*a.verified ? " (verified)" : " (NOT verified)");
            }
        }
        out << "\n";
    }
    out << "absoluteness:";
    if (r.absoluteness_skipped) {
        out << " SKIPPED (model is not transitive)\n";
    } else {
        out << "\n";
        for (const auto& a : r.absoluteness) {
            out << "  " << a.atom << ": " << (a.pass ? "PASS" : "FAIL") << " (" << a.tuples
                << " tuples)";
            if (a.counterexample) {
                out << ", counterexample";
                const char* sep = " ";
                for (const HfSet& x : *a.counterexample) {
                    out << sep << to_string(x);
                    sep = ", ";
                }
                out << ": relativized " << a.relativized << ", absolute " << a.absolute;
            }
            out << "\n";
        }
    }
    out << "checklist:\n";
    for (const auto& [item, ok] : r.checklist) {
        out << "  " << item << ": " << (ok ? "yes" : "no") << "\n";
    }
    return out.str();
}

Json to_json(const std::vector<RankedElement>& listing, bool sugar) {
    Json out = Json::array();
    for (const auto& e : listing) {
        out.push_back({{"element", to_json(e.element)},
                       {"text", to_string(e.element)},
                       {"witness", e.witness ? to_json(*e.witness, sugar) : Json()}});
    }
    return out;
}

std::string to_text(const DefWitness& w, bool sugar) {
    std::string env = "[";
    for (std::size_t i = 0; i < w.env.size(); ++i) {
        env += (i ? ", " : "") + to_string(w.env[i]);
    }
    return "env: " + env + "]\nformula: " + to_string(w.formula, sugar) + "\n";
}

std::string to_text(const std::vector<RankedElement>& listing, bool sugar) {
    std::ostringstream out;
    for (std::size_t i = 0; i < listing.size(); ++i) {
        const auto& e = listing[i];
        out << i << ": " << to_string(e.element);
        if (e.witness) {
            out << "  env [";
            for (std::size_t k = 0; k < e.witness->env.size(); ++k) {
                out << (k ? ", " : "") << to_string(e.witness->env[k]);
            }
            out << "]  " << to_string(e.witness->formula, sugar);
        }
        out << "\n";
    }
    return out.str();
}

} // namespace hfl
