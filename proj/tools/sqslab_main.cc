// Copyright 2026 The sqslab Authors
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

// Command-line front end: lemma verification, experiments, spectra, single samples.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sqslab/errors.h"
#include "sqslab/fourier.h"
#include "sqslab/harness.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        sqslab::fail(sqslab::ErrorKind::Usage, "cannot open " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_verify(const std::string &selector, const sqslab::VerifyParams &params) {
    sqslab::VerifyReport report = sqslab::verify_lemmas(selector, params);
    std::cout << report.to_json().dump(2) << "\n";
    return report.all_pass() ? kExitPass : kExitFailure;
}

int run_experiment(const std::string &config_path, std::optional<uint64_t> seed, std::optional<std::string> out) {
    sqslab::ExperimentConfig config = sqslab::ExperimentConfig::parse(read_file(config_path));
    if (seed) {
        config.seed = *seed;
    }
    if (out) {
        config.output = *out;
    }
    sqslab::ExperimentReport report = sqslab::run_experiment(config);
    sqslab::write_report(report, config.output);
    std::cout << report.summary.dump(2) << "\n";
    const auto &ok = report.summary["bound_satisfied"];
    return ok.is_boolean() && !ok.get<bool>() ? kExitFailure : kExitPass;
}

int run_fourier(const std::string &table_path, const std::string &out_path) {
    std::ifstream in(table_path);
    if (!in) {
        sqslab::fail(sqslab::ErrorKind::Usage, "cannot open " + table_path);
    }
    sqslab::SpectrumGF2 spectrum = sqslab::wht(sqslab::read_truth_table_csv(in));
    std::ofstream out(out_path);
    if (!out) {
        sqslab::fail(sqslab::ErrorKind::Resource, "cannot write " + out_path);
    }
    spectrum.write_csv(out);
    std::cout << "n=" << spectrum.n << " parseval=" << std::setprecision(17) << spectrum.parseval_sum() << "\n";
    return kExitPass;
}

int run_sample(const std::string &config_path, std::optional<uint64_t> seed) {
    sqslab::ExperimentConfig config = sqslab::ExperimentConfig::parse(read_file(config_path));
    if (seed) {
        config.seed = *seed;
    }
    std::shared_ptr<const sqslab::ClassTable> table;
    if (!config.honest) {
        table = std::make_shared<const sqslab::ClassTable>(std::get<sqslab::PredicateClass>(config.target));
    }
    sqslab::ExperimentRecord rec = sqslab::run_trial(config, 0, table);
    nlohmann::json j = {{"seed", rec.seed},
                        {"queries", rec.queries},
                        {"output", rec.output ? nlohmann::json(*rec.output) : nlohmann::json(nullptr)},
                        {"is_positive", rec.is_positive},
                        {"notes", rec.notes}};
    if (rec.optimal_success) {
        j["optimal_success"] = *rec.optimal_success;
    }
    std::cout << j.dump(2) << "\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"sqslab: statistical-query sampling laboratory"};
    app.require_subcommand(1);

    sqslab::VerifyParams vparams;
    std::string selector;
    std::optional<int> n;
    std::optional<uint32_t> p;
    std::optional<double> xi;
    std::optional<uint64_t> trials;
    auto *verify = app.add_subcommand("verify", "Check counting lemmas and bounds by enumeration");
    verify->add_option("selector", selector, "Lemma selector")->required();
    verify->add_option("--n", n, "Width");
    verify->add_option("--p", p, "Odd prime modulus");
    verify->add_option("--xi", xi, "Tolerance");
    verify->add_option("--trials", trials, "Random instances");
    verify->add_option("--seed", vparams.seed, "Seed");

    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<std::string> out;
    auto *experiment = app.add_subcommand("experiment", "Run an experiment config and write CSV + summary");
    experiment->add_option("config", config_path, "Config JSON")->required();
    experiment->add_option("--seed", seed, "Override the master seed");
    experiment->add_option("--out", out, "Override the CSV output path");

    std::string table_path;
    std::string spectrum_path;
    auto *fourier = app.add_subcommand("fourier", "Walsh-Hadamard spectrum of a truth table CSV");
    fourier->add_option("table", table_path, "CSV of x,value rows (x in hex)")->required();
    fourier->add_option("--out", spectrum_path, "Spectrum CSV")->required();

    auto *sample = app.add_subcommand("sample", "Run a single trial of a config and print it");
    sample->add_option("config", config_path, "Config JSON")->required();
    sample->add_option("--seed", seed, "Override the master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*verify) {
            vparams.n = n;
            vparams.p = p;
            vparams.xi = xi;
            vparams.trials = trials;
            return run_verify(selector, vparams);
        }
        if (*experiment) {
            return run_experiment(config_path, seed, out);
        }
        if (*fourier) {
            return run_fourier(table_path, spectrum_path);
        }
        if (*sample) {
            return run_sample(config_path, seed);
        }
    } catch (const sqslab::Error &e) {
        std::cerr << e.what() << "\n";
        return e.kind() == sqslab::ErrorKind::Usage ? kExitUsage : kExitFailure;
    } catch (const std::exception &e) {
        std::cerr << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
