// Copyright 2026 The gaussdecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gaussdecomp/certificate.hpp"
#include "gaussdecomp/constraints.hpp"
#include "gaussdecomp/extent.hpp"
#include "gaussdecomp/fidelity.hpp"
#include "gaussdecomp/net.hpp"
#include "gaussdecomp/rank.hpp"
#include "gaussdecomp/triples.hpp"

namespace gaussdecomp {

using Json = nlohmann::json;

/// Malformed input file or document.
class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
    return *it;
}

inline int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw FormatError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

inline double number(const Json& v, const std::string& what) {
    if (!v.is_number()) throw FormatError(what + " must be a number");
    return v.get<double>();
}

inline Label label_value(const Json& v, int n, const std::string& what) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw FormatError(what + " must be a non-negative integer");
    const auto x = v.get<long long>();
    if (x >= (1LL << n)) throw FormatError(what + " " + std::to_string(x) + " out of range for n = " + std::to_string(n));
    return static_cast<Label>(x);
}

/// [[label, re, im], ...] entries.
template <class Sink>
void read_entries(const Json& arr, int n, const std::string& what, Sink sink) {
    if (!arr.is_array()) throw FormatError(what + " must be an array");
    std::set<Label> seen;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 3) throw FormatError(what + " entries must be [label, re, im]");
        const Label x = label_value(e[0], n, "label");
        if (!is_even(x)) throw FormatError("label " + std::to_string(x) + " has odd weight");
        if (!seen.insert(x).second) throw FormatError("duplicate label " + std::to_string(x));
        sink(x, Complex(number(e[1], "real part"), number(e[2], "imaginary part")));
    }
}

inline int qubit_field(const Json& j) {
    const int n = int_field(j, "n");
    if (n < 1 || n > kMaxQubits) throw FormatError("n = " + std::to_string(n) + " outside [1, 16]");
    return n;
}

}  // namespace detail

inline Json to_json(const EvenParityState& s) {
    Json amps = Json::array();
    for (std::size_t i = 0; i < s.dimension(); ++i)
        if (s[i] != Complex{}) amps.push_back({even_label(i), s[i].real(), s[i].imag()});
    return {{"n", s.qubits()}, {"amplitudes", amps}};
}

inline EvenParityState state_from_json(const Json& j) {
    const int n = detail::qubit_field(j);
    EvenParityState s(n);
    detail::read_entries(detail::field(j, "amplitudes"), n, "amplitudes", [&](Label x, Complex v) { s.set(x, v); });
    return s;
}

inline Json to_json(const FreeChart& c) {
    Json vals = Json::array();
    for (const auto& [x, v] : c.values) vals.push_back({x, v.real(), v.imag()});
    return {{"n", c.n}, {"favored", c.favored}, {"values", vals}};
}

inline FreeChart chart_from_json(const Json& j) {
    FreeChart c;
    c.n = detail::qubit_field(j);
    c.favored = detail::label_value(detail::field(j, "favored"), c.n, "favored");
    detail::read_entries(detail::field(j, "values"), c.n, "values", [&](Label x, Complex v) { c.values[x] = v; });
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw FormatError(std::string("invalid chart: ") + e.what());
    }
    return c;
}

inline Json to_json(const GaussianTriple& t) {
    return {{"alpha", t.alpha},
            {"beta", t.beta},
            {"states", Json::array({to_json(t.psi0), to_json(t.psi1), to_json(t.psi2)})},
            {"dependence_residual", t.dependence_residual()}};
}

struct TripleChart {
    int n = 0;
    Label anchor = 0;
    std::map<Label, Complex> values;
};

/// { "n":…, "anchor":…, "values": [[label, re, im], …] } for build_triple.
inline TripleChart triple_chart_from_json(const Json& j) {
    TripleChart c;
    c.n = detail::qubit_field(j);
    c.anchor = detail::label_value(detail::field(j, "anchor"), c.n, "anchor");
    detail::read_entries(detail::field(j, "values"), c.n, "values", [&](Label x, Complex v) { c.values[x] = v; });
    return c;
}

inline Json to_json(const DimensionReport& r) {
    return {{"n", r.n},         {"complex_variables", r.complex_variables}, {"equations", r.equations},
            {"rank", r.rank},   {"dimension", r.dimension},                 {"real_dimension", r.real_dimension},
            {"gap", r.gap},     {"singular_values", r.singular_values}};
}

inline Json to_json(const SurveyReport& r) {
    return {{"n", r.n},
            {"samples", r.samples},
            {"seed", r.seed},
            {"values", r.values},
            {"max", r.max},
            {"bound", r.bound},
            {"bound_vacuous", r.bound_vacuous},
            {"within_bound", r.within_bound},
            {"histogram", r.histogram}};
}

inline Json to_json(const PsdCertificate& c) {
    Json cons = Json::array();
    for (const auto& [x, xp, alpha] : c.constraints) cons.push_back({x, xp, alpha});
    return {{"k", c.k},
            {"constraints", cons},
            {"min_eigenvalue", c.min_eigenvalue},
            {"global_min_eigenvalue", c.global_min_eigenvalue},
            {"rounds", c.rounds},
            {"blocks", c.blocks.size()},
            {"blocks_rank_one", c.blocks_rank_one}};
}

inline Json to_json(const FidelityResult& r) {
    return {{"value", r.value},
            {"witness", to_json(r.witness)},
            {"restarts", r.restarts_used},
            {"best_restart", r.best_restart},
            {"converged", r.converged},
            {"restart_values", r.restart_values}};
}

inline Json to_json(const DualWitness& w) {
    return {{"y", to_json(w.y)},
            {"fidelity_estimate", w.fidelity_estimate},
            {"feasibility_margin", w.feasibility_margin},
            {"objective", w.objective},
            {"feasible", w.feasible}};
}

inline Json to_json(const Decomposition& d) {
    Json terms = Json::array();
    for (const auto& t : d.terms) terms.push_back({t.coefficient.real(), t.coefficient.imag(), to_json(t.state)});
    return {{"target", to_json(d.target)}, {"terms", terms}, {"loss", d.loss}, {"extent_value", d.extent_value}};
}

/// Reads a decomposition and recomputes its loss and extent value from the terms.
inline Decomposition decomposition_from_json(const Json& j) {
    Decomposition d;
    d.target = state_from_json(detail::field(j, "target"));
    const Json& terms = detail::field(j, "terms");
    if (!terms.is_array()) throw FormatError("terms must be an array");
    for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 3) throw FormatError("terms entries must be [re, im, state]");
        auto s = state_from_json(t[2]);
        if (s.qubits() != d.target.qubits()) throw FormatError("term qubit count differs from target");
        d.terms.push_back({Complex(detail::number(t[0], "coefficient"), detail::number(t[1], "coefficient")), s});
    }
    d.refresh();
    return d;
}

inline void write_log_csv(std::ostream& os, const std::vector<SearchLogRow>& rows) {
    os << "iteration,temperature,loss,best_loss\n";
    os.precision(17);
    for (const auto& r : rows) os << r.iteration << ',' << r.temperature << ',' << r.loss << ',' << r.best_loss << '\n';
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

inline EvenParityState read_state_file(const std::string& path) { return state_from_json(read_json_file(path)); }

}  // namespace gaussdecomp
