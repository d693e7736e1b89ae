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
#pragma once

// JSON and CSV forms of the domain types. JSON field names are the struct
// member names. Computed values are rounded to 12 significant digits; echoed
// inputs keep full precision so emitted documents reproduce their run.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hetnet/ase_optimizer.hpp"
#include "hetnet/mc_oracle.hpp"
#include "hetnet/rate_model.hpp"
#include "hetnet/region_analysis.hpp"

namespace hetnet::io {

using nlohmann::json;

inline constexpr int kSignificantDigits = 12;

/// printf("%.12g").
std::string format_number(double value);

/// The double nearest to format_number(value).
double round_significant(double value);

json to_json(const TierParams& tier);
json to_json(const NetworkModel& model);
json to_json(const RateReport& report);
json to_json(const Allocation& allocation);
json to_json(const ExhaustiveResult& result);
json to_json(const RegionCell& cell);
json to_json(const RegionMap& map);
json to_json(const AseSweepRow& row);
json to_json(const mc::SimSpec& spec);
json to_json(const mc::SimEstimate& estimate);
json to_json(const mc::SimResult& result);

/// Missing fields keep `base` values; unknown fields and wrong types throw
/// DomainError naming the field path. The result is not validated.
NetworkModel model_from_json(const json& doc, NetworkModel base = {});

/// Reads {model, disk_radius, replications, seed}; same rules as model_from_json.
/// A missing disk_radius is left at 0 (meaning "choose automatically").
mc::SimSpec sim_spec_from_json(const json& doc, mc::SimSpec base = {});

TierId tier_from_string(const std::string& name);

inline constexpr const char* kRegionCsvHeader = "m_macro,m_small,ase_biased,ase_unbiased,verdict";
inline constexpr const char* kAseCsvHeader = "antennas,bias,ase_exact,ase_approx,k_macro,k_small,u_macro,u_small";

std::string csv_row(const RegionCell& cell);
std::string csv_row(const AseSweepRow& row);

} // namespace hetnet::io
