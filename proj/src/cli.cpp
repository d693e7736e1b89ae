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
#include "hetnet/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetnet/ase_optimizer.hpp"
#include "hetnet/error.hpp"
#include "hetnet/io.hpp"
#include "hetnet/mc_oracle.hpp"
#include "hetnet/rate_model.hpp"
#include "hetnet/region_analysis.hpp"

namespace hetnet::cli {

namespace {

using io::json;

/// Malformed invocation or unreadable input; maps to kExitUsage.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TierOverrides {
    std::optional<double> density;
    std::optional<double> power;
    std::optional<int> antennas;
    std::optional<int> users;
};

struct Settings {
    std::string command;
    std::string config;
    std::string out_path;
    std::string unit = "nats";
    bool json = false;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;

    std::optional<double> alpha;
    std::optional<double> bias;
    std::vector<double> bias_list;
    TierOverrides macro;
    TierOverrides small;

    std::string mm = "1:30";
    std::string ms = "1:10";
    std::string axis = "mm";
    std::string range = "1:20";
    bool exhaustive = false;

    std::optional<std::int64_t> reps;
    std::string disk_radius = "auto";
};

constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::int64_t kDefaultReplications = 20000;
constexpr int kColumnWidth = 20;

/// Two-tier deployment used when no --config is given.
NetworkModel default_model()
{
    NetworkModel model;
    model.macro = {1.0, 20.0, 10, 3};
    model.small = {5.0, 1.0, 5, 2};
    model.pl = PathLoss(4.0);
    model.bias = 4.0;
    return model;
}

void add_tier_flags(CLI::App* sub, const std::string& name, TierOverrides& t)
{
    sub->add_option("--" + name + "-density", t.density, "BS density of the " + name + " tier");
    sub->add_option("--" + name + "-power", t.power, "transmit power of the " + name + " tier");
    sub->add_option("--" + name + "-antennas", t.antennas, "antennas per " + name + " BS");
    sub->add_option("--" + name + "-users", t.users, "users scheduled per " + name + " BS");
}

CLI::App* add_command(CLI::App& app, Settings& s, const std::string& name, const std::string& help,
                      bool bias_list)
{
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", s.config, "JSON model or simulation document")->check(CLI::ExistingFile);
    sub->add_option("--out", s.out_path, "output path");
    sub->add_option("--unit", s.unit, "rate unit")->check(CLI::IsMember({"nats", "bits"}));
    sub->add_flag("--json", s.json, "machine-readable JSON on stdout");
    sub->add_option("--seed", s.seed, "master seed");
    sub->add_option("--threads", s.threads, "worker threads")->check(CLI::Range(1u, 4096u));
    sub->add_option("--alpha", s.alpha, "path-loss exponent (> 2)");
    if (bias_list) {
        sub->add_option("--bias", s.bias_list, "comma-separated range-expansion biases")->delimiter(',');
    } else {
        sub->add_option("--bias", s.bias, "range-expansion bias");
    }
    add_tier_flags(sub, "macro", s.macro);
    add_tier_flags(sub, "small", s.small);
    sub->callback([&s, name] { s.command = name; });
    return sub;
}

json load_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("--config: cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("--config: " + path + " is not valid JSON (" + e.what() + ")");
    }
}

/// Accepts a bare model, a SimSpec, or any emitted document carrying "spec" or "model".
mc::SimSpec spec_from_document(const json& doc)
{
    mc::SimSpec base;
    base.model = default_model();
    base.replications = kDefaultReplications;
    base.seed = kDefaultSeed;
    if (!doc.is_object()) detail::domain_fail("document", "be a JSON object");
    if (doc.contains("spec")) return io::sim_spec_from_json(doc.at("spec"), base);
    if (doc.contains("model")) {
        json subset = json::object();
        for (const char* key : {"model", "disk_radius", "replications", "seed"}) {
            if (doc.contains(key)) subset[key] = doc.at(key);
        }
        return io::sim_spec_from_json(subset, base);
    }
    base.model = io::model_from_json(doc, base.model);
    return base;
}

void apply(const TierOverrides& o, TierParams& t)
{
    if (o.density) t.density = *o.density;
    if (o.power) t.power = *o.power;
    if (o.antennas) t.antennas = *o.antennas;
    if (o.users) t.users = *o.users;
}

/// File values, then flags. The model is validated after the merge.
mc::SimSpec resolve_spec(const Settings& s)
{
    mc::SimSpec spec;
    if (s.config.empty()) {
        spec.model = default_model();
        spec.replications = kDefaultReplications;
        spec.seed = kDefaultSeed;
    } else {
        spec = spec_from_document(load_document(s.config));
    }
    apply(s.macro, spec.model.macro);
    apply(s.small, spec.model.small);
    if (s.alpha) spec.model.pl = PathLoss(*s.alpha);
    if (s.bias) spec.model.bias = *s.bias;
    if (s.seed) spec.seed = *s.seed;
    if (s.reps) spec.replications = *s.reps;
    spec.model.validate();
    return spec;
}

IntRange parse_range(const std::string& text, const std::string& flag)
{
    const auto colon = text.find(':');
    IntRange r;
    try {
        if (colon == std::string::npos) throw std::invalid_argument(text);
        std::size_t used = 0;
        r.lo = std::stoi(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument(text);
        const std::string hi = text.substr(colon + 1);
        r.hi = std::stoi(hi, &used);
        if (used != hi.size()) throw std::invalid_argument(text);
    } catch (const std::logic_error&) {
        throw UsageError(flag + ": expected lo:hi with integers, got '" + text + "'");
    }
    return r;
}

double unit_scale(const Settings& s) { return s.unit == "bits" ? 1.0 / std::log(2.0) : 1.0; }

std::string cell(const std::string& text, std::size_t width = kColumnWidth)
{
    std::ostringstream os;
    os << std::setw(static_cast<int>(width)) << text;
    return os.str();
}

void table_row(std::ostream& out, const std::vector<std::string>& cols)
{
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i == 0 ? "" : " ") << cell(cols[i]);
    out << '\n';
}

std::string num(double v) { return io::format_number(v); }

class OutFile {
public:
    explicit OutFile(const std::string& path)
    {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw UsageError("--out: cannot open " + path + " for writing");
    }
    bool active() const { return file_.is_open(); }
    void line(const std::string& text)
    {
        if (!active()) return;
        file_ << text << '\n';
        file_.flush();
    }

private:
    std::ofstream file_;
};

/// Inserts "_B<bias>" before the extension when one command writes several maps.
std::string per_bias_path(const std::string& path, double bias, bool several)
{
    if (path.empty() || !several) return path;
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    const std::string tag = "_B" + io::format_number(bias);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

int cmd_rates(const Settings& s, std::ostream& out)
{
    const NetworkModel model = resolve_spec(s).model;
    const double k = unit_scale(s);
    std::vector<RateReport> reports;
    for (TierId tier : kTiers) {
        RateReport r = rate_report(model, tier);
        r.exact *= k;
        r.approx *= k;
        reports.push_back(r);
    }
    if (s.json) {
        json rates = json::array();
        for (const RateReport& r : reports) rates.push_back(io::to_json(r));
        out << json{{"model", io::to_json(model)}, {"unit", s.unit}, {"rates", rates}}.dump(2) << '\n';
        return kExitOk;
    }
    table_row(out, {"tier", "exact[" + s.unit + "]", "approx[" + s.unit + "]", "rel_error"});
    for (const RateReport& r : reports) {
        table_row(out, {std::string(to_string(r.tier)), num(r.exact), num(r.approx),
                        num(std::abs(r.approx - r.exact) / r.exact)});
    }
    return kExitOk;
}

int cmd_optimize(const Settings& s, std::ostream& out)
{
    const NetworkModel model = resolve_spec(s).model;
    const double k = unit_scale(s);
    Allocation a = optimal_users(model);
    a.ase_exact *= k;
    a.ase_approx *= k;
    std::optional<ExhaustiveResult> best;
    if (s.exhaustive) {
        best = exhaustive_search(model);
        best->ase_exact *= k;
    }
    if (s.json) {
        json doc{{"model", io::to_json(model)}, {"unit", s.unit}, {"allocation", io::to_json(a)}};
        if (best) doc["exhaustive"] = io::to_json(*best);
        out << doc.dump(2) << '\n';
        return kExitOk;
    }
    table_row(out, {"tier", "u*", "k*"});
    table_row(out, {"macro", num(a.u_macro), std::to_string(a.k_macro)});
    table_row(out, {"small", num(a.u_small), std::to_string(a.k_small)});
    out << "ase_exact[" << s.unit << "/area]  " << num(a.ase_exact) << '\n';
    out << "ase_approx[" << s.unit << "/area] " << num(a.ase_approx) << '\n';
    if (best) {
        out << "exhaustive k_macro=" << best->k_macro << " k_small=" << best->k_small
            << " ase_exact=" << num(best->ase_exact) << '\n';
    }
    return kExitOk;
}

std::vector<double> biases_for(const Settings& s, const NetworkModel& model)
{
    if (s.bias_list.empty()) return {model.bias};
    for (double b : s.bias_list) {
        if (!std::isfinite(b) || !(b > 0.0)) detail::domain_fail("bias", "finite and > 0");
    }
    return s.bias_list;
}

int cmd_region(const Settings& s, std::ostream& out)
{
    const NetworkModel model = resolve_spec(s).model;
    const IntRange mm = parse_range(s.mm, "--mm");
    const IntRange ms = parse_range(s.ms, "--ms");
    const std::vector<double> biases = biases_for(s, model);
    const double k = unit_scale(s);

    RegionOptions options;
    options.threads = s.threads;
    json maps = json::array();
    for (double bias : biases) {
        OutFile csv(per_bias_path(s.out_path, bias, biases.size() > 1));
        csv.line(io::kRegionCsvHeader);
        if (!s.json) {
            out << "bias " << num(bias) << '\n';
            table_row(out, {"m_macro", "m_small", "ase_biased[" + s.unit + "]", "ase_unbiased[" + s.unit + "]",
                            "verdict"});
        }
        RegionMap map = sweep_region(model, mm, ms, bias, options, [&](const RegionCell& c) {
            RegionCell scaled = c;
            scaled.ase_biased *= k;
            scaled.ase_unbiased *= k;
            csv.line(io::csv_row(scaled));
            if (!s.json) {
                table_row(out, {std::to_string(c.m_macro), std::to_string(c.m_small), num(scaled.ase_biased),
                                num(scaled.ase_unbiased), std::string(to_string(c.verdict))});
                out.flush();
            }
        });
        for (RegionCell& c : map.grid) {
            c.ase_biased *= k;
            c.ase_unbiased *= k;
        }
        if (s.json) maps.push_back(io::to_json(map));
    }
    if (s.json) out << json{{"unit", s.unit}, {"maps", maps}}.dump(2) << '\n';
    return kExitOk;
}

int cmd_sweep(const Settings& s, std::ostream& out)
{
    const NetworkModel model = resolve_spec(s).model;
    if (s.axis != "mm" && s.axis != "ms") throw UsageError("--axis: expected mm or ms, got '" + s.axis + "'");
    const AntennaAxis axis = s.axis == "mm" ? AntennaAxis::Macro : AntennaAxis::Small;
    const IntRange range = parse_range(s.range, "--range");
    const std::vector<double> biases = biases_for(s, model);
    const double k = unit_scale(s);

    AseSweepOptions options;
    options.exhaustive = s.exhaustive;
    options.threads = s.threads;
    OutFile csv(s.out_path);
    csv.line(io::kAseCsvHeader);
    if (!s.json) {
        table_row(out, {"antennas", "bias", "ase_exact[" + s.unit + "]", "ase_approx[" + s.unit + "]", "k_macro",
                        "k_small"});
    }
    std::vector<AseSweepRow> rows = sweep_ase(model, axis, range, biases, options, [&](const AseSweepRow& r) {
        AseSweepRow scaled = r;
        scaled.ase_exact *= k;
        scaled.ase_approx *= k;
        csv.line(io::csv_row(scaled));
        if (!s.json) {
            table_row(out, {std::to_string(r.antennas), num(r.bias), num(scaled.ase_exact), num(scaled.ase_approx),
                            std::to_string(r.k_macro), std::to_string(r.k_small)});
            out.flush();
        }
    });
    if (s.json) {
        json list = json::array();
        for (AseSweepRow& r : rows) {
            r.ase_exact *= k;
            r.ase_approx *= k;
            list.push_back(io::to_json(r));
        }
        out << json{{"model", io::to_json(model)}, {"unit", s.unit}, {"axis", s.axis}, {"rows", list}}.dump(2)
            << '\n';
    }
    return kExitOk;
}

mc::SimSpec simulation_spec(const Settings& s)
{
    mc::SimSpec spec = resolve_spec(s);
    if (s.disk_radius == "auto") {
        if (!(spec.disk_radius > 0.0)) spec.disk_radius = mc::auto_disk_radius(spec.model);
    } else {
        try {
            std::size_t used = 0;
            spec.disk_radius = std::stod(s.disk_radius, &used);
            if (used != s.disk_radius.size()) throw std::invalid_argument(s.disk_radius);
        } catch (const std::logic_error&) {
            throw UsageError("--disk-radius: expected a number or 'auto', got '" + s.disk_radius + "'");
        }
    }
    spec.validate();
    return spec;
}

void scale(mc::SimEstimate& e, double k)
{
    e.mean_rate *= k;
    e.std_error *= k;
}

int cmd_simulate(const Settings& s, std::ostream& out)
{
    const mc::SimSpec spec = simulation_spec(s);
    mc::SimResult result = mc::simulate_rate(spec, s.threads);
    const double k = unit_scale(s);
    scale(result.macro, k);
    scale(result.small, k);
    if (s.json) {
        out << json{{"spec", io::to_json(spec)}, {"unit", s.unit}, {"result", io::to_json(result)}}.dump(2) << '\n';
        return kExitOk;
    }
    table_row(out, {"tier", "mean_rate[" + s.unit + "]", "std_error", "n_effective", "association_fraction"});
    for (TierId tier : kTiers) {
        const mc::SimEstimate& e = result.tier(tier);
        table_row(out, {std::string(to_string(tier)), num(e.mean_rate), num(e.std_error),
                        std::to_string(e.n_effective), num(e.association_fraction)});
    }
    out << "replications " << result.replications << ", empty windows " << result.empty_windows
        << ", interference-free " << result.interference_free << ", disk radius " << num(result.disk_radius)
        << ", seed " << result.seed << '\n';
    return kExitOk;
}

constexpr double kValidateSigma = 3.0;

int cmd_validate(const Settings& s, std::ostream& out)
{
    const mc::SimSpec spec = simulation_spec(s);
    for (TierId tier : kTiers) {
        if (spec.model.tier(tier).users < 1) detail::domain_fail(std::string(to_string(tier)) + ".users", ">= 1");
    }
    mc::SimResult result = mc::simulate_rate(spec, s.threads);
    const double k = unit_scale(s);
    const double served = static_cast<double>(result.macro.n_effective + result.small.n_effective);

    bool all_pass = true;
    json tiers = json::array();
    std::vector<std::vector<std::string>> rows;
    for (TierId tier : kTiers) {
        mc::SimEstimate e = result.tier(tier);
        scale(e, k);
        const double exact = rate_exact(spec.model, tier) * k;
        const double z_rate = e.std_error > 0.0 ? (e.mean_rate - exact) / e.std_error
                                                : (e.mean_rate == exact ? 0.0 : INFINITY);
        const double p = mc::association_probability(spec.model, tier);
        const double p_se = std::sqrt(p * (1.0 - p) / served);
        const double z_assoc = p_se > 0.0 ? (e.association_fraction - p) / p_se : 0.0;
        const bool pass = std::abs(z_rate) <= kValidateSigma && std::abs(z_assoc) <= kValidateSigma;
        all_pass = all_pass && pass;

        json entry = io::to_json(e);
        entry["rate_exact"] = io::round_significant(exact);
        entry["z_score"] = io::round_significant(z_rate);
        entry["association_expected"] = io::round_significant(p);
        entry["association_z_score"] = io::round_significant(z_assoc);
        entry["verdict"] = pass ? "PASS" : "FAIL";
        tiers.push_back(entry);
        rows.push_back({std::string(to_string(tier)), num(e.mean_rate), num(e.std_error), num(exact), num(z_rate),
                        num(z_assoc), pass ? "PASS" : "FAIL"});
    }
    const char* verdict = all_pass ? "PASS" : "FAIL";
    if (s.json) {
        out << json{{"spec", io::to_json(spec)}, {"unit", s.unit}, {"sigma", kValidateSigma},
                    {"tiers", tiers},            {"verdict", verdict}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    table_row(out, {"tier", "mean_rate[" + s.unit + "]", "std_error", "rate_exact", "z_score", "assoc_z", "verdict"});
    for (const auto& row : rows) table_row(out, row);
    out << verdict << " at " << kValidateSigma << " sigma (" << result.replications << " replications, seed "
        << result.seed << ")\n";
    return kExitOk;
}

int dispatch(const Settings& s, std::ostream& out)
{
    if (s.command == "rates") return cmd_rates(s, out);
    if (s.command == "optimize") return cmd_optimize(s, out);
    if (s.command == "region") return cmd_region(s, out);
    if (s.command == "sweep") return cmd_sweep(s, out);
    if (s.command == "simulate") return cmd_simulate(s, out);
    return cmd_validate(s, out);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Settings s;
    CLI::App app{"Two-tier multi-antenna HetNet rates, ASE optimization and Monte Carlo validation", "hetnet"};
    app.require_subcommand(1, 1);

    add_command(app, s, "rates", "exact and approximate per-tier average rates", false);

    CLI::App* optimize = add_command(app, s, "optimize", "optimal user counts and the resulting ASE", false);
    optimize->add_flag("--exhaustive", s.exhaustive, "also run the brute-force search");

    CLI::App* region = add_command(app, s, "region", "range-expansion improvement map over (M_m, M_s)", true);
    region->add_option("--mm", s.mm, "macro antenna range lo:hi")->capture_default_str();
    region->add_option("--ms", s.ms, "small-cell antenna range lo:hi")->capture_default_str();

    CLI::App* sweep = add_command(app, s, "sweep", "optimized ASE against one antenna count", true);
    sweep->add_option("--axis", s.axis, "swept tier: mm or ms")->capture_default_str();
    sweep->add_option("--range", s.range, "antenna range lo:hi")->capture_default_str();
    sweep->add_flag("--exhaustive", s.exhaustive, "take T* from the brute-force search");

    for (const char* name : {"simulate", "validate"}) {
        CLI::App* sub = add_command(app, s, name,
                                    std::string(name) == "simulate" ? "Monte Carlo per-tier rates"
                                                                    : "Monte Carlo against the exact rates at 3 sigma",
                                    false);
        sub->add_option("--reps", s.reps, "replications (default 20000)")->check(CLI::PositiveNumber);
        sub->add_option("--disk-radius", s.disk_radius, "window radius or 'auto'")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitUsage;
    }

    try {
        return dispatch(s, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NonConvergence& e) {
        err << "non-convergence: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const BadBracket& e) {
        err << "non-convergence: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    }
}

} // namespace hetnet::cli
