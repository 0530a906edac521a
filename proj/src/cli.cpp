// SPDX-License-Identifier: Apache-2.0
//
// ris-isac: coordinated active/passive beamforming for RIS-assisted ISAC
// Copyright (C) 2026 The ris-isac Authors
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

#include "risisac/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "risisac/bench.hpp"
#include "risisac/config.hpp"

namespace risisac {

namespace {

struct Parser {
    CLI::App app{"Coordinated active/passive beamforming for RIS-assisted ISAC", "ris_isac"};
    Command cmd;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    CLI::App* solve = nullptr;
    CLI::App* sweep = nullptr;
    CLI::App* validate = nullptr;
    CLI::App* dump = nullptr;

    Parser() {
        app.require_subcommand(1, 1);
        app.allow_extras(false);
        solve = app.add_subcommand("solve", "run the optimizer on every slot and print a summary");
        sweep = app.add_subcommand("sweep", "run the configured parameter sweep and write CSV");
        validate = app.add_subcommand("validate", "check the configuration and exit");
        dump = app.add_subcommand("dump-channels", "write the sampled channels as CSV");
        for (CLI::App* sub : {solve, sweep, validate, dump}) {
            sub->add_option("--config", cmd.config_path, "key = value configuration file");
            sub->add_option("--set", sets, "override KEY=VALUE (repeatable)")->take_all();
            sub->add_option("--out", cmd.out_path, "output file (CSV)");
            sub->add_option("--seed", seed, "master RNG seed");
            sub->add_flag("-q,--quiet", cmd.quiet, "suppress the summary");
            sub->add_flag("--trace", cmd.trace, "solve: write the per-iteration trace to --out");
            sub->add_option("--jobs", cmd.jobs, "worker threads (default RIS_ISAC_JOBS or all cores)")
                ->check(CLI::NonNegativeNumber);
        }
    }
};

void write_trace_csv(const std::vector<SlotSolution>& slots, std::ostream& os) {
    os.precision(12);
    os << "slot,iteration,sum_rate,radar_snr_db,power_w\n";
    for (std::size_t l = 0; l < slots.size(); ++l)
        for (const auto& t : slots[l].trace)
            os << l + 1 << ',' << t.iteration << ',' << t.sum_rate << ',' << t.radar_snr_db << ',' << t.power_w
               << '\n';
}

void write_channels_csv(const ScenarioConfig& cfg, std::ostream& os) {
    os.precision(17);
    os << "slot,channel,row,col,real,imag\n";
    auto emit = [&](int slot, const std::string& name, const CMat& m) {
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                os << slot + 1 << ',' << name << ',' << i << ',' << j << ',' << m(i, j).real() << ','
                   << m(i, j).imag() << '\n';
    };
    for (int l = 0; l < cfg.slots; ++l) {
        const ChannelSet ch = sample_channels(cfg, geometry_at_slot(cfg, l), l, cfg.seed);
        emit(l, "G", ch.G);
        for (std::size_t k = 0; k < ch.h_d.size(); ++k) emit(l, "h_d" + std::to_string(k + 1), ch.h_d[k]);
        for (std::size_t k = 0; k < ch.h_r.size(); ++k) emit(l, "h_r" + std::to_string(k + 1), ch.h_r[k]);
        emit(l, "g_dt", ch.g_dt);
        emit(l, "g_rt", ch.g_rt);
    }
}

// Runs `body` against --out or the fallback stream.
template <typename F>
void with_output(const std::string& path, std::ostream& fallback, F&& body) {
    if (path.empty()) {
        body(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    body(file);
    if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

RunConfig load(const Command& cmd) {
    Settings settings;
    if (!cmd.config_path.empty()) settings = read_settings_file(cmd.config_path);
    for (const auto& [k, v] : cmd.overrides) settings[k] = v;
    RunConfig cfg = build_config(settings);
    if (cmd.seed) {
        cfg.scenario.seed = *cmd.seed;
        cfg.sweep.seeds = {*cmd.seed};
    }
    return cfg;
}

int do_solve(const Command& cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto slots = run_scheme(Scheme::Proposed, cfg.scenario);
    bool feasible = true;
    double rate = 0.0, snr = 0.0;
    int iters = 0;
    for (const auto& s : slots) {
        feasible = feasible && s.feasible;
        rate += s.final_sum_rate;
        snr += s.final_radar_snr_db;
        iters += s.iterations;
    }
    const double L = static_cast<double>(slots.size());
    if (!cmd.quiet) {
        out << std::fixed << std::setprecision(6);
        for (std::size_t l = 0; l < slots.size(); ++l) {
            const auto& s = slots[l];
            out << "slot " << l + 1 << ": sum_rate " << s.final_sum_rate << " bit/s/Hz, radar_snr "
                << s.final_radar_snr_db << " dB, power " << s.power_w << " W, iterations " << s.iterations
                << (s.feasible ? "" : " (infeasible)") << '\n';
        }
        out << "mean: sum_rate " << rate / L << " bit/s/Hz, radar_snr " << snr / L << " dB, total iterations "
            << iters << '\n';
    }
    if (cmd.trace) with_output(cmd.out_path.empty() ? "trace.csv" : cmd.out_path, out,
                               [&](std::ostream& os) { write_trace_csv(slots, os); });
    if (!feasible) {
        for (std::size_t l = 0; l < slots.size(); ++l)
            if (!slots[l].feasible) err << "error: slot " << l + 1 << ": " << slots[l].diagnostic << '\n';
        return 1;
    }
    return 0;
}

int do_sweep(const Command& cmd, const RunConfig& cfg, std::ostream& out) {
    const SweepSpec spec = make_sweep_spec(cfg.sweep);
    const SweepResult result = run_sweep(spec, cfg.scenario, resolve_jobs(cmd.jobs));
    with_output(cmd.out_path, out, [&](std::ostream& os) { write_sweep_csv(result, os); });
    if (!cmd.quiet && !cmd.out_path.empty()) {
        out << std::fixed << std::setprecision(4);
        for (const auto& s : summarize(result))
            out << to_string(s.scheme) << ' ' << to_string(spec.param) << '=' << s.param_value << ": "
                << s.mean << " +/- " << s.stderr_ << " bit/s/Hz (" << s.count << " seeds, " << s.infeasible
                << " infeasible)\n";
    }
    return 0;
}

}  // namespace

std::string usage_text() { return Parser().app.help(); }

Command parse_args(const std::vector<std::string>& args) {
    Parser p;
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        p.app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequest(p.app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    Command cmd = p.cmd;
    if (p.solve->parsed()) cmd.subcommand = Subcommand::Solve;
    if (p.sweep->parsed()) cmd.subcommand = Subcommand::Sweep;
    if (p.validate->parsed()) cmd.subcommand = Subcommand::Validate;
    if (p.dump->parsed()) cmd.subcommand = Subcommand::DumpChannels;
    for (const auto& s : p.sets) {
        std::pair<std::string, std::string> kv;
        try {
            kv = split_assignment(s);
        } catch (const ConfigError& e) {
            throw UsageError(std::string("--set: ") + e.what());
        }
        if (!is_known_key(kv.first)) throw UsageError("--set: unknown key '" + kv.first + "'");
        cmd.overrides.push_back(kv);
    }
    for (CLI::App* sub : {p.solve, p.sweep, p.validate, p.dump})
        if (sub->parsed() && sub->count("--seed") > 0) cmd.seed = p.seed;
    return cmd;
}

int execute(const Command& cmd, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = load(cmd);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }
    try {
        switch (cmd.subcommand) {
            case Subcommand::Validate:
                if (!cmd.quiet) out << "ok\n";
                return 0;
            case Subcommand::DumpChannels:
                with_output(cmd.out_path, out, [&](std::ostream& os) { write_channels_csv(cfg.scenario, os); });
                return 0;
            case Subcommand::Solve: return do_solve(cmd, cfg, out, err);
            case Subcommand::Sweep: return do_sweep(cmd, cfg, out);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Command cmd;
    try {
        cmd = parse_args(args);
    } catch (const HelpRequest& h) {
        out << h.what();
        return 0;
    } catch (const UsageError& e) {
        err << e.what() << "\n\n" << usage_text();
        return 2;
    }
    return execute(cmd, out, err);
}

}  // namespace risisac
