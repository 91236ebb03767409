// SPDX-License-Identifier: Apache-2.0
//
// fdris-lib  C++ library for multi-subarray frequency-diverse RIS network
// simulation and weighted sum-rate optimization
// Copyright (C) 2026 the fdris-lib authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fdris/sweep.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fdris/rng.hpp"

namespace fdris
{
    namespace
    {
        using nlohmann::json;

        constexpr const char* kVersion = "0.1.0";

        struct SweepPoint
        {
            double value = 0.0;
            std::string label;
            std::vector<double> weight_set;
        };

        std::vector<SweepPoint> enumerate_points(const Experiment& exp)
        {
            std::vector<SweepPoint> points;
            if (exp.axis == SweepAxis::None)
            {
                points.push_back({0.0, "base", {}});
            }
            else if (exp.axis == SweepAxis::Weights)
            {
                for (size_t i = 0; i < exp.weight_sets.size(); ++i)
                {
                    std::ostringstream label;
                    label << "w=[";
                    for (size_t k = 0; k < exp.weight_sets[i].size(); ++k)
                        label << (k ? "," : "") << exp.weight_sets[i][k];
                    label << "]";
                    points.push_back({static_cast<double>(i), label.str(), exp.weight_sets[i]});
                }
            }
            else
            {
                for (double v : exp.values)
                {
                    std::ostringstream label;
                    label << v;
                    points.push_back({v, label.str(), {}});
                }
            }
            return points;
        }
    }

    std::uint64_t replicate_seed(std::uint64_t base_seed, int replicate)
    {
        return splitmix64(splitmix64(base_seed) ^
                          (0x632BE59BD9B4E019ULL * (static_cast<std::uint64_t>(replicate) + 1)));
    }

    std::vector<const SweepRecord*> SweepRun::select(int point, Scheme scheme) const
    {
        std::vector<const SweepRecord*> out;
        for (const SweepRecord& rec : records)
            if (rec.point == point && rec.scheme == scheme)
                out.push_back(&rec);
        return out;
    }

    SweepRun run_sweep(const Scenario& scenario, const SolveOptions& opts, int workers)
    {
        scenario.validate();
        SweepRun run;
        run.scenario = scenario;

        const std::vector<SweepPoint> points = enumerate_points(scenario.experiment);
        const int n_replicates = scenario.experiment.replicates;
        const auto& schemes = scenario.experiment.schemes;
        const int n_schemes = static_cast<int>(schemes.size());
        const int n_tasks = static_cast<int>(points.size()) * n_replicates * n_schemes;

        run.records.resize(static_cast<size_t>(n_tasks));
        std::vector<SolveTrace> first_traces(points.size() * static_cast<size_t>(n_schemes));

        std::atomic<int> next_task{0};
        const auto worker = [&]() {
            for (;;)
            {
                const int t = next_task.fetch_add(1);
                if (t >= n_tasks)
                    return;
                const int scheme_idx = t % n_schemes;
                const int replicate = (t / n_schemes) % n_replicates;
                const int point = t / (n_schemes * n_replicates);

                SweepRecord rec;
                rec.point = point;
                rec.value = points[static_cast<size_t>(point)].value;
                rec.label = points[static_cast<size_t>(point)].label;
                rec.replicate = replicate;
                rec.scheme = schemes[static_cast<size_t>(scheme_idx)];
                rec.channel_seed = replicate_seed(scenario.system.seed, replicate);
                try
                {
                    const SystemConfig config = apply_sweep_point(
                        scenario.system, scenario.experiment.axis,
                        points[static_cast<size_t>(point)].value,
                        points[static_cast<size_t>(point)].weight_set);
                    const ArrayLayout layout(config.shape);
                    const ChannelSet channels =
                        realize_channels(config, layout, rec.channel_seed);
                    const SolveResult result =
                        solve_scheme(rec.scheme, config, channels, opts);
                    rec.ok = true;
                    rec.wsr = result.state.wsr;
                    rec.rates = result.trace.rows.empty() ? RVec()
                                                          : result.trace.rows.back().rates;
                    rec.iterations = static_cast<int>(result.trace.rows.size());
                    rec.converged = result.trace.converged;
                    rec.wall_seconds = result.trace.rows.empty()
                                           ? 0.0
                                           : result.trace.rows.back().wall_seconds;
                    if (replicate == 0)
                        first_traces[static_cast<size_t>(point) * n_schemes + scheme_idx] =
                            result.trace;
                }
                catch (const std::exception& err)
                {
                    rec.ok = false;
                    rec.error = err.what();
                    rec.wsr = std::nan("");
                }
                run.records[static_cast<size_t>(t)] = std::move(rec);
            }
        };

        if (workers <= 1)
        {
            worker();
        }
        else
        {
            std::vector<std::thread> pool;
            for (int i = 0; i < workers; ++i)
                pool.emplace_back(worker);
            for (std::thread& th : pool)
                th.join();
        }

        for (size_t p = 0; p < points.size(); ++p)
            for (int s = 0; s < n_schemes; ++s)
                run.traces[{static_cast<int>(p), s}] =
                    first_traces[p * static_cast<size_t>(n_schemes) + static_cast<size_t>(s)];
        return run;
    }

    PairedStats paired_difference(const std::vector<const SweepRecord*>& a,
                                  const std::vector<const SweepRecord*>& b)
    {
        PairedStats stats;
        const size_t n = std::min(a.size(), b.size());
        std::vector<double> diffs;
        for (size_t i = 0; i < n; ++i)
            if (a[i]->ok && b[i]->ok)
                diffs.push_back(a[i]->wsr - b[i]->wsr);
        stats.n = static_cast<int>(diffs.size());
        if (diffs.empty())
            return stats;
        double sum = 0.0;
        for (double d : diffs)
            sum += d;
        stats.mean = sum / diffs.size();
        if (diffs.size() > 1)
        {
            double ss = 0.0;
            for (double d : diffs)
                ss += (d - stats.mean) * (d - stats.mean);
            stats.stderr_mean = std::sqrt(ss / (diffs.size() - 1.0) / diffs.size());
        }
        return stats;
    }

    void write_trace_csv(const SolveTrace& trace, const std::string& path)
    {
        std::ofstream file(path);
        if (!file)
            throw std::runtime_error("write_trace_csv: cannot open " + path);
        const int n_users = trace.rows.empty() ? 0 : static_cast<int>(trace.rows[0].rates.size());
        file << "iteration,wsr,surrogate";
        for (int k = 1; k <= n_users; ++k)
            file << ",rate_" << k;
        file << ",mu\n";
        file.precision(12);
        for (const TraceRow& row : trace.rows)
        {
            file << row.iteration << ',' << row.wsr << ',' << row.surrogate;
            for (int k = 0; k < row.rates.size(); ++k)
                file << ',' << row.rates(k);
            file << ',' << row.mu << '\n';
        }
    }

    void write_sweep_csv(const SweepRun& run, const std::string& path)
    {
        std::ofstream file(path);
        if (!file)
            throw std::runtime_error("write_sweep_csv: cannot open " + path);
        const int n_users = run.scenario.system.n_users();
        file << "axis,point,label,value,replicate,scheme,channel_seed,status,wsr";
        for (int k = 1; k <= n_users; ++k)
            file << ",rate_" << k;
        file << ",iterations,converged,wall_seconds\n";
        file.precision(12);
        for (const SweepRecord& rec : run.records)
        {
            file << sweep_axis_name(run.scenario.experiment.axis) << ',' << rec.point << ','
                 << rec.label << ',' << rec.value << ',' << rec.replicate << ','
                 << scheme_name(rec.scheme) << ',' << rec.channel_seed << ','
                 << (rec.ok ? "ok" : "error") << ',' << rec.wsr;
            for (int k = 0; k < n_users; ++k)
                file << ',' << (rec.rates.size() > k ? rec.rates(k) : std::nan(""));
            file << ',' << rec.iterations << ',' << (rec.converged ? 1 : 0) << ','
                 << rec.wall_seconds << '\n';
        }
    }

    std::string summary_to_json_text(const SweepRun& run)
    {
        json j;
        j["version"] = kVersion;
        j["seed"] = run.scenario.system.seed;
        j["config"] = json::parse(scenario_to_json_text(run.scenario));

        json points = json::array();
        const std::vector<SweepPoint> axis_points = enumerate_points(run.scenario.experiment);
        for (size_t p = 0; p < axis_points.size(); ++p)
        {
            for (Scheme scheme : run.scenario.experiment.schemes)
            {
                const auto recs = run.select(static_cast<int>(p), scheme);
                double sum = 0.0;
                int n_ok = 0;
                RVec rate_sum;
                for (const SweepRecord* rec : recs)
                {
                    if (!rec->ok)
                        continue;
                    sum += rec->wsr;
                    if (rate_sum.size() == 0)
                        rate_sum = RVec::Zero(rec->rates.size());
                    rate_sum += rec->rates;
                    ++n_ok;
                }
                json entry;
                entry["point"] = p;
                entry["label"] = axis_points[p].label;
                entry["value"] = axis_points[p].value;
                entry["scheme"] = scheme_name(scheme);
                entry["replicates_ok"] = n_ok;
                if (n_ok > 0)
                {
                    const double mean = sum / n_ok;
                    double ss = 0.0;
                    for (const SweepRecord* rec : recs)
                        if (rec->ok)
                            ss += (rec->wsr - mean) * (rec->wsr - mean);
                    entry["mean_wsr"] = mean;
                    entry["stderr_wsr"] =
                        (n_ok > 1) ? std::sqrt(ss / (n_ok - 1.0) / n_ok) : 0.0;
                    std::vector<double> mean_rates;
                    for (int k = 0; k < rate_sum.size(); ++k)
                        mean_rates.push_back(rate_sum(k) / n_ok);
                    entry["mean_rates"] = mean_rates;
                }
                points.push_back(entry);
            }
        }
        j["points"] = points;
        return j.dump(2);
    }

    void export_results(const SweepRun& run, const std::string& out_dir)
    {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        write_sweep_csv(run, (dir / "sweep_results.csv").string());
        std::ofstream summary(dir / "summary.json");
        if (!summary)
            throw std::runtime_error("export_results: cannot open summary.json");
        summary << summary_to_json_text(run);
        summary.close();

        const auto& schemes = run.scenario.experiment.schemes;
        for (const auto& [key, trace] : run.traces)
        {
            const auto [point, scheme_idx] = key;
            std::ostringstream name;
            name << "trace_p" << point << "_"
                 << scheme_name(schemes[static_cast<size_t>(scheme_idx)]) << ".csv";
            write_trace_csv(trace, (dir / name.str()).string());
        }
    }

    std::string solution_to_json_text(const SolutionState& state, const SystemConfig& config,
                                      const SolveTrace& trace)
    {
        json j;
        j["version"] = kVersion;
        j["wsr"] = state.wsr;
        j["total_power"] = state.total_power();
        j["converged"] = trace.converged;
        j["iterations"] = trace.rows.size();
        if (!trace.rows.empty())
        {
            const RVec& rates = trace.rows.back().rates;
            j["rates"] = std::vector<double>(rates.data(), rates.data() + rates.size());
        }
        j["frequencies_hz"] =
            std::vector<double>(state.f.data(), state.f.data() + state.f.size());
        j["delays_s"] = std::vector<double>(state.tau.data(), state.tau.data() + state.tau.size());
        json theta = json::array();
        for (int i = 0; i < state.theta_tilde.size(); ++i)
            theta.push_back({state.theta_tilde(i).real(), state.theta_tilde(i).imag()});
        j["theta_tilde"] = theta;
        json beams = json::array();
        for (const CVec& wk : state.w)
        {
            json b = json::array();
            for (int i = 0; i < wk.size(); ++i)
                b.push_back({wk(i).real(), wk(i).imag()});
            beams.push_back(b);
        }
        j["beams"] = beams;
        j["noise_power_w"] = config.noise_power;
        j["p_tmax_w"] = config.p_tmax;
        return j.dump(2);
    }
}
