// Copyright 2026 the hetnet-ase authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "hetnet/error.hpp"
#include "hetnet/io.hpp"

using namespace hetnet;
using hetnet::io::json;

namespace {

NetworkModel sample_model()
{
    NetworkModel m;
    m.macro = {0.1, 20.0, 10, 3};
    m.small = {0.7, 1.0 / 3.0, 5, 2};
    m.pl = PathLoss(3.7);
    m.bias = 4.0;
    return m;
}

std::string domain_message(const json& doc)
{
    try {
        io::model_from_json(doc);
    } catch (const DomainError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("numbers carry twelve significant digits")
{
    CHECK(io::format_number(2.972082895621443) == "2.97208289562");
    CHECK(io::format_number(1e-20) == "1e-20");
    CHECK(io::format_number(4.0) == "4");
    CHECK(io::round_significant(2.972082895621443) == 2.97208289562);
    CHECK(std::isinf(io::round_significant(INFINITY)));
}

TEST_CASE("model JSON uses the configuration schema and round-trips exactly")
{
    const NetworkModel m = sample_model();
    const json doc = io::to_json(m);
    CHECK(doc.at("macro").at("density") == 0.1);
    CHECK(doc.at("small").at("users") == 2);
    CHECK(doc.at("alpha") == 3.7);
    CHECK(doc.at("bias") == 4.0);
    CHECK(doc.size() == 4);
    CHECK(io::model_from_json(json::parse(doc.dump())) == m);
}

TEST_CASE("partial model documents keep base values")
{
    const NetworkModel base = sample_model();
    const NetworkModel m = io::model_from_json(json{{"small", {{"antennas", 8}}}, {"bias", 2}}, base);
    CHECK(m.small.antennas == 8);
    CHECK(m.small.users == base.small.users);
    CHECK(m.bias == 2.0);
    CHECK(m.macro == base.macro);
}

TEST_CASE("model parsing errors name the field")
{
    CHECK(domain_message(json{{"macro", {{"densty", 1.0}}}}).find("macro.densty") == 0);
    CHECK(domain_message(json{{"macro", {{"antennas", 2.5}}}}).find("macro.antennas") == 0);
    CHECK(domain_message(json{{"small", {{"power", "high"}}}}).find("small.power") == 0);
    CHECK(domain_message(json{{"alpha", 1.5}}).find("alpha") == 0);
    CHECK(domain_message(json{{"gamma", 1}}).find("gamma") == 0);
    CHECK(domain_message(json::array()).find("model") == 0);
    CHECK(io::model_from_json(json{{"macro", {{"antennas", 6.0}}}}).macro.antennas == 6);
}

TEST_CASE("simulation specs round-trip including the full seed range")
{
    mc::SimSpec spec{sample_model(), 12.615662610100802, 200000, std::numeric_limits<std::uint64_t>::max()};
    const mc::SimSpec back = io::sim_spec_from_json(json::parse(io::to_json(spec).dump()));
    CHECK(back.model == spec.model);
    CHECK(back.disk_radius == spec.disk_radius);
    CHECK(back.replications == spec.replications);
    CHECK(back.seed == spec.seed);
    CHECK_THROWS_AS(io::sim_spec_from_json(json{{"seed", -1}}), DomainError);
    CHECK_THROWS_AS(io::sim_spec_from_json(json{{"replications", 1.5}}), DomainError);
    CHECK_THROWS_AS(io::sim_spec_from_json(json{{"radius", 3}}), DomainError);
}

TEST_CASE("estimate JSON mirrors the field names")
{
    const mc::SimEstimate e{TierId::Small, 1.6712771928400123, 0.015, 6887, 0.6887000000001};
    const json doc = io::to_json(e);
    CHECK(doc.at("tier") == "small");
    CHECK(doc.at("mean_rate") == 1.67127719284);
    CHECK(doc.at("std_error") == 0.015);
    CHECK(doc.at("n_effective") == 6887);
    CHECK(doc.at("association_fraction") == 0.6887);
    CHECK(doc.size() == 5);

    mc::SimResult r;
    r.macro = e;
    r.macro.tier = TierId::Macro;
    r.small = e;
    r.replications = 10;
    const json rd = io::to_json(r);
    for (const char* key : {"macro", "small", "replications", "empty_windows", "interference_free", "seed", "disk_radius"}) {
        CHECK(rd.contains(key));
    }
}

TEST_CASE("result JSON mirrors the field names")
{
    const json a = io::to_json(Allocation{0.6, 0.55, 7, 3, 30.1, 31.2});
    for (const char* key : {"u_macro", "u_small", "k_macro", "k_small", "ase_exact", "ase_approx"}) CHECK(a.contains(key));
    const json r = io::to_json(RateReport{TierId::Macro, 2.5, 2.4});
    CHECK(r.at("tier") == "macro");
    CHECK(r.at("exact") == 2.5);
    CHECK(r.at("approx") == 2.4);
    RegionMap map;
    map.grid.push_back({3, 1, 2.0, 1.0, Verdict::Improve});
    map.bias = 4.0;
    const json m = io::to_json(map);
    CHECK(m.at("grid").at(0).at("verdict") == "Improve");
    CHECK(m.at("epsilon_tie") == kDefaultTieEpsilon);
    CHECK(m.contains("model_template"));
    const json s = io::to_json(AseSweepRow{});
    CHECK(s.size() == 8);
}

TEST_CASE("csv rows follow the headers")
{
    CHECK(std::string(io::kRegionCsvHeader) == "m_macro,m_small,ase_biased,ase_unbiased,verdict");
    CHECK(io::csv_row(RegionCell{4, 1, 8.123456789012345, 8.0, Verdict::Degrade}) == "4,1,8.12345678901,8,Degrade");
    AseSweepRow row;
    row.antennas = 10;
    row.bias = 4.0;
    row.ase_exact = 30.5;
    row.ase_approx = 31.25;
    row.k_macro = 7;
    row.k_small = 3;
    row.u_macro = 0.625;
    row.u_small = 0.5;
    CHECK(io::csv_row(row) == "10,4,30.5,31.25,7,3,0.625,0.5");
    CHECK(io::tier_from_string("small") == TierId::Small);
    CHECK_THROWS_AS(io::tier_from_string("pico"), DomainError);
}
