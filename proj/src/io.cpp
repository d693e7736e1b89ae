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
#include "hetnet/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include "hetnet/error.hpp"

namespace hetnet::io {

namespace {

json num(double value) { return round_significant(value); }

[[noreturn]] void type_fail(const std::string& path, const char* expected)
{
    detail::domain_fail(path, std::string("be ") + expected);
}

void require_object(const json& doc, const std::string& path)
{
    if (!doc.is_object()) type_fail(path.empty() ? "document" : path, "a JSON object");
}

double read_double(const json& value, const std::string& path)
{
    if (!value.is_number()) type_fail(path, "a number");
    return value.get<double>();
}

int read_int(const json& value, const std::string& path)
{
    if (value.is_number_integer() || value.is_number_unsigned()) {
        const auto wide = value.get<long long>();
        if (wide >= std::numeric_limits<int>::min() && wide <= std::numeric_limits<int>::max()) {
            return static_cast<int>(wide);
        }
    } else if (value.is_number_float()) {
        const double d = value.get<double>();
        if (d == std::floor(d) && std::abs(d) < 1e9) return static_cast<int>(d);
    }
    type_fail(path, "an integer");
}

TierParams tier_from_json(const json& doc, TierParams tier, const std::string& path)
{
    require_object(doc, path);
    for (const auto& [key, value] : doc.items()) {
        const std::string field = path + "." + key;
        if (key == "density") {
            tier.density = read_double(value, field);
        } else if (key == "power") {
            tier.power = read_double(value, field);
        } else if (key == "antennas") {
            tier.antennas = read_int(value, field);
        } else if (key == "users") {
            tier.users = read_int(value, field);
        } else {
            detail::domain_fail(field, "be a known field (density, power, antennas, users)");
        }
    }
    return tier;
}

} // namespace

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, value);
    return buf;
}

double round_significant(double value)
{
    if (!std::isfinite(value)) return value;
    return std::strtod(format_number(value).c_str(), nullptr);
}

json to_json(const TierParams& tier)
{
    return {{"density", tier.density}, {"power", tier.power}, {"antennas", tier.antennas}, {"users", tier.users}};
}

json to_json(const NetworkModel& model)
{
    return {{"macro", to_json(model.macro)},
            {"small", to_json(model.small)},
            {"alpha", model.pl.alpha()},
            {"bias", model.bias}};
}

json to_json(const RateReport& report)
{
    return {{"tier", to_string(report.tier)}, {"exact", num(report.exact)}, {"approx", num(report.approx)}};
}

json to_json(const Allocation& a)
{
    return {{"u_macro", num(a.u_macro)},     {"u_small", num(a.u_small)},
            {"k_macro", a.k_macro},          {"k_small", a.k_small},
            {"ase_exact", num(a.ase_exact)}, {"ase_approx", num(a.ase_approx)}};
}

json to_json(const ExhaustiveResult& r)
{
    return {{"k_macro", r.k_macro}, {"k_small", r.k_small}, {"ase_exact", num(r.ase_exact)}};
}

json to_json(const RegionCell& cell)
{
    return {{"m_macro", cell.m_macro},
            {"m_small", cell.m_small},
            {"ase_biased", num(cell.ase_biased)},
            {"ase_unbiased", num(cell.ase_unbiased)},
            {"verdict", to_string(cell.verdict)}};
}

json to_json(const RegionMap& map)
{
    json grid = json::array();
    for (const RegionCell& cell : map.grid) grid.push_back(to_json(cell));
    return {{"grid", std::move(grid)},
            {"model_template", to_json(map.model_template)},
            {"bias", map.bias},
            {"epsilon_tie", map.epsilon_tie}};
}

json to_json(const AseSweepRow& row)
{
    return {{"antennas", row.antennas},         {"bias", row.bias},       {"ase_exact", num(row.ase_exact)},
            {"ase_approx", num(row.ase_approx)}, {"k_macro", row.k_macro}, {"k_small", row.k_small},
            {"u_macro", num(row.u_macro)},       {"u_small", num(row.u_small)}};
}

json to_json(const mc::SimSpec& spec)
{
    return {{"model", to_json(spec.model)},
            {"disk_radius", spec.disk_radius},
            {"replications", spec.replications},
            {"seed", spec.seed}};
}

json to_json(const mc::SimEstimate& e)
{
    return {{"tier", to_string(e.tier)},
            {"mean_rate", num(e.mean_rate)},
            {"std_error", num(e.std_error)},
            {"n_effective", e.n_effective},
            {"association_fraction", num(e.association_fraction)}};
}

json to_json(const mc::SimResult& r)
{
    return {{"macro", to_json(r.macro)},
            {"small", to_json(r.small)},
            {"replications", r.replications},
            {"empty_windows", r.empty_windows},
            {"interference_free", r.interference_free},
            {"seed", r.seed},
            {"disk_radius", r.disk_radius}};
}

NetworkModel model_from_json(const json& doc, NetworkModel base)
{
    require_object(doc, "model");
    for (const auto& [key, value] : doc.items()) {
        if (key == "macro") {
            base.macro = tier_from_json(value, base.macro, "macro");
        } else if (key == "small") {
            base.small = tier_from_json(value, base.small, "small");
        } else if (key == "alpha") {
            base.pl = PathLoss(read_double(value, "alpha"));
        } else if (key == "bias") {
            base.bias = read_double(value, "bias");
        } else {
            detail::domain_fail(key, "be a known field (macro, small, alpha, bias)");
        }
    }
    return base;
}

mc::SimSpec sim_spec_from_json(const json& doc, mc::SimSpec base)
{
    require_object(doc, "spec");
    for (const auto& [key, value] : doc.items()) {
        if (key == "model") {
            base.model = model_from_json(value, base.model);
        } else if (key == "disk_radius") {
            base.disk_radius = read_double(value, "disk_radius");
        } else if (key == "replications") {
            if (!value.is_number_integer() && !value.is_number_unsigned()) type_fail("replications", "an integer");
            base.replications = value.get<std::int64_t>();
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) type_fail("seed", "an unsigned 64-bit integer");
            base.seed = value.get<std::uint64_t>();
        } else {
            detail::domain_fail(key, "be a known field (model, disk_radius, replications, seed)");
        }
    }
    return base;
}

TierId tier_from_string(const std::string& name)
{
    if (name == "macro") return TierId::Macro;
    if (name == "small") return TierId::Small;
    detail::domain_fail("tier", "be macro or small");
}

std::string csv_row(const RegionCell& c)
{
    return std::to_string(c.m_macro) + "," + std::to_string(c.m_small) + "," + format_number(c.ase_biased) + "," +
           format_number(c.ase_unbiased) + "," + std::string(to_string(c.verdict));
}

std::string csv_row(const AseSweepRow& r)
{
    return std::to_string(r.antennas) + "," + format_number(r.bias) + "," + format_number(r.ase_exact) + "," +
           format_number(r.ase_approx) + "," + std::to_string(r.k_macro) + "," + std::to_string(r.k_small) + "," +
           format_number(r.u_macro) + "," + format_number(r.u_small);
}

} // namespace hetnet::io
