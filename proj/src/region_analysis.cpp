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
#include "hetnet/region_analysis.hpp"

#include <cmath>
#include <string>

#include "hetnet/error.hpp"
#include "ordered_parallel.hpp"

namespace hetnet {

namespace {

struct Fractions {
    double u_macro;
    double u_small;
};

Fractions fractions_at(NetworkModel model, double bias, const OptimizerOptions& opts)
{
    model.bias = bias;
    return {optimal_fraction(TierId::Macro, model, opts), optimal_fraction(TierId::Small, model, opts)};
}

NetworkModel with_antennas(NetworkModel model, int m_macro, int m_small, double bias)
{
    model.macro.antennas = m_macro;
    model.small.antennas = m_small;
    model.macro.users = 1;
    model.small.users = 1;
    model.bias = bias;
    return model;
}

void check_template(const NetworkModel& model_template, double bias, const RegionOptions& options)
{
    model_template.validate();
    if (!(bias >= 1.0) || !std::isfinite(bias)) detail::domain_fail("bias", "finite and >= 1");
    if (!(options.baseline_bias >= 1.0) || !std::isfinite(options.baseline_bias)) {
        detail::domain_fail("baseline_bias", "finite and >= 1");
    }
    if (!(options.epsilon_tie >= 0.0 && options.epsilon_tie < 1.0)) detail::domain_fail("epsilon_tie", "in [0, 1)");
}

RegionCell evaluate_cell(const NetworkModel& model_template, int m_macro, int m_small, double bias,
                         const Fractions& biased, const Fractions& baseline, const RegionOptions& options)
{
    if (m_macro < 1) detail::domain_fail("m_macro", ">= 1");
    if (m_small < 1) detail::domain_fail("m_small", ">= 1");
    RegionCell cell;
    cell.m_macro = m_macro;
    cell.m_small = m_small;
    cell.ase_biased = round_fractions(with_antennas(model_template, m_macro, m_small, bias), biased.u_macro,
                                      biased.u_small, options.optimizer)
                          .ase_exact;
    cell.ase_unbiased = round_fractions(with_antennas(model_template, m_macro, m_small, options.baseline_bias),
                                        baseline.u_macro, baseline.u_small, options.optimizer)
                            .ase_exact;
    cell.verdict = classify(cell.ase_biased, cell.ase_unbiased, options.epsilon_tie);
    return cell;
}

} // namespace

void IntRange::validate(std::string_view name) const
{
    if (lo < 1) detail::domain_fail(std::string(name) + ".lo", ">= 1");
    if (hi < lo) detail::domain_fail(std::string(name) + ".hi", ">= lo");
}

std::string_view to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::Improve: return "Improve";
    case Verdict::Degrade: return "Degrade";
    case Verdict::Tie: break;
    }
    return "Tie";
}

std::string_view to_string(AntennaAxis axis) { return axis == AntennaAxis::Macro ? "mm" : "ms"; }

Verdict classify(double ase_biased, double ase_unbiased, double epsilon_tie)
{
    if (ase_biased > ase_unbiased * (1.0 + epsilon_tie)) return Verdict::Improve;
    if (ase_biased < ase_unbiased * (1.0 - epsilon_tie)) return Verdict::Degrade;
    return Verdict::Tie;
}

const RegionCell* RegionMap::find(int m_macro, int m_small) const
{
    for (const RegionCell& cell : grid) {
        if (cell.m_macro == m_macro && cell.m_small == m_small) return &cell;
    }
    return nullptr;
}

RegionCell classify_cell(const NetworkModel& model_template, int m_macro, int m_small, double bias,
                         const RegionOptions& options)
{
    const NetworkModel probe = with_antennas(model_template, m_macro < 1 ? 1 : m_macro, m_small < 1 ? 1 : m_small, bias);
    check_template(probe, bias, options);
    return evaluate_cell(model_template, m_macro, m_small, bias, fractions_at(probe, bias, options.optimizer),
                         fractions_at(probe, options.baseline_bias, options.optimizer), options);
}

RegionMap sweep_region(const NetworkModel& model_template, IntRange m_macro, IntRange m_small, double bias,
                       const RegionOptions& options, const CellSink& sink)
{
    m_macro.validate("m_macro");
    m_small.validate("m_small");
    const NetworkModel probe = with_antennas(model_template, m_macro.lo, m_small.lo, bias);
    check_template(probe, bias, options);

    const Fractions biased = fractions_at(probe, bias, options.optimizer);
    const Fractions baseline = fractions_at(probe, options.baseline_bias, options.optimizer);

    RegionMap map;
    map.model_template = probe;
    map.bias = bias;
    map.epsilon_tie = options.epsilon_tie;
    map.grid.resize(static_cast<std::size_t>(m_macro.size()) * static_cast<std::size_t>(m_small.size()));

    const auto cols = static_cast<std::size_t>(m_small.size());
    auto mm_of = [&](std::size_t i) { return m_macro.lo + static_cast<int>(i / cols); };
    auto ms_of = [&](std::size_t i) { return m_small.lo + static_cast<int>(i % cols); };

    detail::ordered_parallel(
        map.grid, options.threads,
        [&](std::size_t i) { return evaluate_cell(probe, mm_of(i), ms_of(i), bias, biased, baseline, options); },
        [&](std::size_t i) {
            if (sink) sink(map.grid[i]);
        },
        [&](std::size_t i) {
            return "cell (m_macro=" + std::to_string(mm_of(i)) + ", m_small=" + std::to_string(ms_of(i)) + ")";
        });
    return map;
}

std::vector<AseSweepRow> sweep_ase(const NetworkModel& model_template, AntennaAxis axis, IntRange range,
                                   const std::vector<double>& biases, const AseSweepOptions& options,
                                   const AseRowSink& sink)
{
    range.validate(axis == AntennaAxis::Macro ? "m_macro" : "m_small");
    if (biases.empty()) detail::domain_fail("bias", "non-empty list");

    std::vector<Fractions> fractions;
    NetworkModel probe = model_template;
    probe.macro.users = 1;
    probe.small.users = 1;
    (axis == AntennaAxis::Macro ? probe.macro : probe.small).antennas = range.lo;
    for (double bias : biases) {
        probe.bias = bias;
        probe.validate();
        fractions.push_back(fractions_at(probe, bias, options.optimizer));
    }

    const auto per_bias = static_cast<std::size_t>(range.size());
    std::vector<AseSweepRow> rows(per_bias * biases.size());
    auto bias_of = [&](std::size_t i) { return i / per_bias; };
    auto antennas_of = [&](std::size_t i) { return range.lo + static_cast<int>(i % per_bias); };

    auto compute = [&](std::size_t i) {
        const std::size_t b = bias_of(i);
        NetworkModel model = probe;
        model.bias = biases[b];
        (axis == AntennaAxis::Macro ? model.macro : model.small).antennas = antennas_of(i);

        AseSweepRow row;
        row.antennas = antennas_of(i);
        row.bias = biases[b];
        row.u_macro = fractions[b].u_macro;
        row.u_small = fractions[b].u_small;
        row.ase_approx = relaxed_ase_approx(model, row.u_macro, row.u_small, options.optimizer.quad);
        if (options.exhaustive) {
            const ExhaustiveResult best = exhaustive_search(model, options.optimizer.quad);
            row.k_macro = best.k_macro;
            row.k_small = best.k_small;
            row.ase_exact = best.ase_exact;
        } else {
            const Allocation alloc = round_fractions(model, row.u_macro, row.u_small, options.optimizer);
            row.k_macro = alloc.k_macro;
            row.k_small = alloc.k_small;
            row.ase_exact = alloc.ase_exact;
        }
        return row;
    };

    detail::ordered_parallel(
        rows, options.threads, compute,
        [&](std::size_t i) {
            if (sink) sink(rows[i]);
        },
        [&](std::size_t i) {
            return std::string("sweep point (") + (axis == AntennaAxis::Macro ? "m_macro=" : "m_small=") +
                   std::to_string(antennas_of(i)) + ", bias=" + std::to_string(biases[bias_of(i)]) + ")";
        });
    return rows;
}

} // namespace hetnet
