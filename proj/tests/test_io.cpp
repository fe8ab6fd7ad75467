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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "gaussdecomp/io.hpp"

#ifndef GAUSSDECOMP_FIXTURES
#define GAUSSDECOMP_FIXTURES "tests/fixtures"
#endif

namespace gaussdecomp {
namespace {

std::string fixture(const std::string& name) { return std::string(GAUSSDECOMP_FIXTURES) + "/" + name; }

TEST(Io, StateRoundTrip) {
    const auto s = random_gaussian(6, 3);
    const auto back = state_from_json(Json::parse(to_json(s).dump()));
    EXPECT_EQ(back.qubits(), 6);
    EXPECT_EQ(distance_squared(back, s), 0.0);
}

TEST(Io, StateListsOnlyNonzeroEntries) {
    const auto j = to_json(magic_state(MagicKind::kM).state);
    EXPECT_EQ(j["amplitudes"].size(), 2u);
    EXPECT_EQ(j["amplitudes"][1][0], 15);
}

TEST(Io, RejectsMalformedStates) {
    EXPECT_THROW(read_state_file(fixture("bad_duplicate.json")), FormatError);
    EXPECT_THROW(read_state_file(fixture("bad_odd.json")), FormatError);
    EXPECT_THROW(read_state_file(fixture("bad_range.json")), FormatError);
    EXPECT_THROW(read_state_file(fixture("bad_syntax.json")), FormatError);
    EXPECT_THROW(read_state_file(fixture("missing.json")), FormatError);
    EXPECT_THROW(state_from_json(Json::parse(R"({"amplitudes": []})")), FormatError);
    EXPECT_THROW(state_from_json(Json::parse(R"({"n": 40, "amplitudes": []})")), FormatError);
    EXPECT_THROW(state_from_json(Json::parse(R"({"n": 4, "amplitudes": [[0, "x", 0]]})")), FormatError);
    EXPECT_THROW(state_from_json(Json::parse(R"({"n": 4, "amplitudes": [[0, 1]]})")), FormatError);
}

TEST(Io, Fixtures) {
    const auto m = read_state_file(fixture("m.json"));
    EXPECT_NEAR(constraint_f(m, {0, 15}).real(), 0.5, 1e-12);
    EXPECT_FALSE(is_gaussian(m));
    EXPECT_TRUE(is_gaussian(read_state_file(fixture("gaussian4.json"))));
    EXPECT_EQ(read_state_file(fixture("mm.json")).qubits(), 8);
}

TEST(Io, ChartRoundTripAndCompletion) {
    const auto c = chart_from_json(read_json_file(fixture("chart4.json")));
    EXPECT_EQ(c.favored, 0u);
    const auto s = complete_amplitudes(c);
    EXPECT_NEAR(std::abs(s.amplitude(15) - c.get(3) * c.get(12) / c.get(0) + c.get(5) * c.get(10) / c.get(0) -
                         c.get(6) * c.get(9) / c.get(0)),
                0.0, 1e-15);
    const auto back = chart_from_json(Json::parse(to_json(c).dump()));
    EXPECT_EQ(back.values, c.values);
    EXPECT_THROW(chart_from_json(Json::parse(R"({"n": 4, "favored": 0, "values": [[15, 1, 0]]})")), FormatError);
    EXPECT_THROW(chart_from_json(Json::parse(R"({"n": 4, "favored": 0, "values": [[3, 1, 0]]})")), FormatError);
}

TEST(Io, DecompositionRoundTripRecomputes) {
    Decomposition d;
    d.target = magic_state(MagicKind::kM).state;
    d.terms = {{std::sqrt(0.5), EvenParityState::basis(4, 0)}, {std::sqrt(0.5), EvenParityState::basis(4, 15)}};
    d.refresh();
    auto j = to_json(d);
    j["loss"] = 123.0;
    const auto back = decomposition_from_json(j);
    EXPECT_NEAR(back.loss, 0.0, 1e-15);
    EXPECT_NEAR(back.extent_value, 2.0, 1e-12);
    EXPECT_EQ(to_json(back)["terms"].size(), 2u);
}

TEST(Io, ReportFormats) {
    const auto cert = to_json(build_m4_certificate(1));
    EXPECT_EQ(cert["k"], 1);
    ASSERT_EQ(cert["constraints"].size(), 1u);
    EXPECT_EQ(cert["constraints"][0], Json::array({0, 15, -2}));
    EXPECT_TRUE(cert.contains("min_eigenvalue"));

    SurveyReport s;
    s.n = 4;
    s.values = {0.5, 0.7};
    const auto sj = to_json(s);
    for (const char* key : {"n", "samples", "values", "max", "bound", "bound_vacuous"}) EXPECT_TRUE(sj.contains(key)) << key;

    const auto tc = triple_chart_from_json(read_json_file(fixture("triple_trivial.json")));
    const auto t = build_triple(tc.n, MatchgateCircuit{tc.n, {}}, tc.values, tc.anchor);
    const auto tj = to_json(t);
    EXPECT_EQ(tj["states"].size(), 3u);
    EXPECT_NEAR(tj["alpha"].get<double>(), std::sqrt(0.5), 1e-12);
}

TEST(Io, LogCsv) {
    std::ostringstream os;
    write_log_csv(os, {{0, 1.0, 0.5, 0.5}, {10, 0.5, 0.25, 0.25}});
    const std::string out = os.str();
    EXPECT_EQ(out.substr(0, out.find('\n')), "iteration,temperature,loss,best_loss");
    EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 3);
}

}  // namespace
}  // namespace gaussdecomp
