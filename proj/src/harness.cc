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

#include "sqslab/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "sqslab/crypto.h"
#include "sqslab/errors.h"
#include "sqslab/fourier.h"
#include "sqslab/learners.h"
#include "sqslab/quantum.h"
#include "sqslab/samplers.h"
#include "sqslab/stats.h"

namespace sqslab {

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("SQSLAB_THREADS")) {
        char *end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) {
            return std::min(hw, static_cast<unsigned>(cap));
        }
    }
    return hw;
}

void parallel_for(uint64_t count, const std::function<void(uint64_t)> &body) {
    unsigned workers = static_cast<unsigned>(std::min<uint64_t>(worker_count(), count));
    if (workers <= 1) {
        for (uint64_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<uint64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; w++) {
        threads.emplace_back([&] {
            while (true) {
                uint64_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                    next = count;
                }
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

namespace {

// Runs fn and rewraps JSON access errors with the field path.
template <typename Fn>
auto field(const std::string &path, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error &e) {
        fail(e.kind(), "config field '" + path + "': " + e.what());
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::Usage, "config field '" + path + "': " + e.what());
    }
}

const nlohmann::json &require(const nlohmann::json &j, const std::string &key, const std::string &path) {
    if (!j.is_object() || !j.contains(key)) {
        fail(ErrorKind::Usage, "config field '" + path + key + "' is missing");
    }
    return j.at(key);
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

int code_width(const Domain &d) {
    return 64 - std::countl_zero(d.ambient_size() - 1);
}

const char *sampler_name(SamplerSpec::Kind kind) {
    switch (kind) {
        case SamplerSpec::Kind::BitFixing:
            return "bit_fixing";
        case SamplerSpec::Kind::Random:
            return "random";
        case SamplerSpec::Kind::LearnThenSample:
            return "learn_then_sample";
    }
    return "?";
}

nlohmann::json honest_to_json(const std::optional<HonestMode> &mode) {
    if (!mode) {
        return {{"kind", "adversarial"}};
    }
    return std::visit(
        [](const auto &m) -> nlohmann::json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, honest::Exact>) {
                return {{"kind", "exact"}};
            } else if constexpr (std::is_same_v<T, honest::Sampled>) {
                return {{"kind", "sampled"}, {"m", m.m}};
            } else {
                return {{"kind", "worst_noise"}};
            }
        },
        *mode);
}

std::unique_ptr<SqLearner> make_learner(const SamplerSpec &spec) {
    if (spec.learner == "dictator") {
        return std::make_unique<DictatorLearner>();
    }
    if (spec.learner == "trivial_sparse") {
        return std::make_unique<TrivialSparseLearner>(spec.density_bound);
    }
    fail(ErrorKind::Usage, "unknown learner '" + spec.learner + "'");
}

Domain target_domain(const ExperimentConfig &config) {
    if (auto *cls = std::get_if<PredicateClass>(&config.target)) {
        return cls->domain();
    }
    return std::get<Predicate>(config.target).domain();
}

}  // namespace

nlohmann::json SamplerSpec::to_json() const {
    nlohmann::json params = nlohmann::json::object();
    switch (kind) {
        case Kind::BitFixing:
            params["size_bound"] = size_bound;
            params["max_queries"] = max_queries ? nlohmann::json(*max_queries) : nlohmann::json(nullptr);
            break;
        case Kind::Random:
            break;
        case Kind::LearnThenSample:
            params["learner"] = learner;
            params["epsilon_prime"] = epsilon_prime;
            params["rho"] = rho;
            params["density_bound"] = density_bound;
            break;
    }
    return {{"sampler", sampler_name(kind)}, {"params", params}};
}

SamplerSpec SamplerSpec::from_json(const nlohmann::json &j) {
    SamplerSpec s;
    std::string name = field("sampler.sampler", [&] { return require(j, "sampler", "sampler.").get<std::string>(); });
    const nlohmann::json &params = require(j, "params", "sampler.");
    if (name == "bit_fixing") {
        s.kind = Kind::BitFixing;
        s.size_bound = field("sampler.params.size_bound",
                             [&] { return require(params, "size_bound", "sampler.params.").get<uint64_t>(); });
        const nlohmann::json &mq = require(params, "max_queries", "sampler.params.");
        if (!mq.is_null()) {
            s.max_queries = field("sampler.params.max_queries", [&] { return mq.get<uint64_t>(); });
        }
    } else if (name == "random") {
        s.kind = Kind::Random;
    } else if (name == "learn_then_sample") {
        s.kind = Kind::LearnThenSample;
        s.learner = field("sampler.params.learner",
                          [&] { return require(params, "learner", "sampler.params.").get<std::string>(); });
        s.epsilon_prime = field("sampler.params.epsilon_prime",
                                [&] { return require(params, "epsilon_prime", "sampler.params.").get<double>(); });
        s.rho = field("sampler.params.rho", [&] { return require(params, "rho", "sampler.params.").get<double>(); });
        s.density_bound = field("sampler.params.density_bound",
                                [&] { return require(params, "density_bound", "sampler.params.").get<double>(); });
        if (s.learner != "dictator" && s.learner != "trivial_sparse") {
            fail(ErrorKind::Usage, "config field 'sampler.params.learner': unknown learner '" + s.learner + "'");
        }
    } else {
        fail(ErrorKind::Usage, "config field 'sampler.sampler': unknown sampler '" + name + "'");
    }
    return s;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json t;
    if (auto *cls = std::get_if<PredicateClass>(&target)) {
        t["class"] = cls->to_json();
    } else {
        t["predicate"] = std::get<Predicate>(target).to_json();
    }
    nlohmann::json q = budget.max_queries == std::numeric_limits<uint64_t>::max() ? nlohmann::json(nullptr)
                                                                                   : nlohmann::json(budget.max_queries);
    return {{"name", name},
            {"target", t},
            {"oracle", honest_to_json(honest)},
            {"sampler", sampler.to_json()},
            {"budget", {{"q", q}, {"xi", budget.min_tolerance}}},
            {"trials", trials},
            {"seed", seed},
            {"output", output},
            {"transcripts", transcripts},
            {"mc_slack", mc_slack}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json &j) {
    ExperimentConfig c;
    c.name = field("name", [&] { return require(j, "name", "").get<std::string>(); });

    const nlohmann::json &target = require(j, "target", "");
    if (target.contains("class") == target.contains("predicate")) {
        fail(ErrorKind::Usage, "config field 'target': needs exactly one of 'class' or 'predicate'");
    }
    if (target.contains("class")) {
        c.target = field("target.class", [&] { return PredicateClass::from_json(target.at("class")); });
    } else {
        c.target = field("target.predicate", [&] { return Predicate::from_json(target.at("predicate")); });
    }

    const nlohmann::json &oracle = require(j, "oracle", "");
    std::string kind = field("oracle.kind", [&] { return require(oracle, "kind", "oracle.").get<std::string>(); });
    if (kind == "exact") {
        c.honest = honest::Exact{};
    } else if (kind == "sampled") {
        c.honest = honest::Sampled{field("oracle.m", [&] { return require(oracle, "m", "oracle.").get<uint64_t>(); })};
    } else if (kind == "worst_noise") {
        c.honest = honest::WorstNoise{};
    } else if (kind == "adversarial") {
        if (!std::holds_alternative<PredicateClass>(c.target)) {
            fail(ErrorKind::Usage, "config field 'oracle.kind': the adversarial oracle needs a class target");
        }
    } else {
        fail(ErrorKind::Usage, "config field 'oracle.kind': unknown oracle '" + kind + "'");
    }

    c.sampler = SamplerSpec::from_json(require(j, "sampler", ""));

    const nlohmann::json &budget = require(j, "budget", "");
    const nlohmann::json &q = require(budget, "q", "budget.");
    if (!q.is_null()) {
        c.budget.max_queries = field("budget.q", [&] { return q.get<uint64_t>(); });
    }
    c.budget.min_tolerance = field("budget.xi", [&] { return require(budget, "xi", "budget.").get<double>(); });

    c.trials = field("trials", [&] { return require(j, "trials", "").get<uint64_t>(); });
    c.seed = field("seed", [&] { return require(j, "seed", "").get<uint64_t>(); });
    c.output = field("output", [&] { return require(j, "output", "").get<std::string>(); });
    c.transcripts = field("transcripts", [&] { return require(j, "transcripts", "").get<bool>(); });
    c.mc_slack = field("mc_slack", [&] { return require(j, "mc_slack", "").get<double>(); });
    return c;
}

ExperimentConfig ExperimentConfig::parse(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        fail(ErrorKind::Usage, std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

TheoryBound theory_bound(const ExperimentConfig &config) {
    TheoryBound t;
    const auto *cls = std::get_if<PredicateClass>(&config.target);
    if (!config.honest && cls) {
        double n = cls->n();
        if (cls->kind() == PredicateClass::Kind::NegParity) {
            t.kind = TheoryBound::Kind::Ceiling;
            t.value = 0.5 + std::pow(2.0, -(n / 4.0 - 2.0));
            t.expression = "1/2 + 2^-(n/4-2)";
        } else if (cls->kind() == PredicateClass::Kind::BoolLinear) {
            double p = cls->p();
            t.kind = TheoryBound::Kind::Ceiling;
            t.value = 1.0 / p + std::pow(p, -n / 13.0);
            t.expression = "1/p + p^-(n/13)";
        }
        return t;
    }
    if (config.sampler.kind == SamplerSpec::Kind::LearnThenSample && config.sampler.learner == "dictator") {
        t.kind = TheoryBound::Kind::Floor;
        t.value = 1.0 - config.sampler.epsilon_prime;
        t.expression = "1 - eps'";
    } else if (config.sampler.kind == SamplerSpec::Kind::BitFixing && config.honest &&
               std::holds_alternative<honest::Exact>(*config.honest)) {
        t.kind = TheoryBound::Kind::Floor;
        t.value = 1.0;
        t.expression = "1";
    }
    return t;
}

ExperimentRecord run_trial(const ExperimentConfig &config, uint64_t trial,
                           const std::shared_ptr<const ClassTable> &table) {
    ExperimentRecord rec;
    rec.trial = trial;
    rec.seed = config.seed ^ trial;
    Rng rng(rec.seed);
    Rng oracle_rng = rng.fork(1);
    Rng sampler_rng = rng.fork(2);
    Rng commit_rng = rng.fork(3);
    Rng member_rng = rng.fork(4);

    std::unique_ptr<SqsOracle> oracle;
    AdversarialSqsOracle *adversary = nullptr;
    std::optional<Predicate> target;
    std::vector<std::string> notes;
    try {
        if (!config.honest) {
            auto adv = std::make_unique<AdversarialSqsOracle>(table, config.budget);
            adversary = adv.get();
            oracle = std::move(adv);
        } else {
            if (auto *cls = std::get_if<PredicateClass>(&config.target)) {
                target = cls->member(member_rng.below(cls->size()));
            } else {
                target = std::get<Predicate>(config.target);
            }
            oracle = std::make_unique<HonestSqsOracle>(*target, *config.honest, oracle_rng, config.budget);
        }

        uint64_t output = 0;
        switch (config.sampler.kind) {
            case SamplerSpec::Kind::Random:
                output = random_guess(oracle->domain(), sampler_rng);
                break;
            case SamplerSpec::Kind::BitFixing: {
                BitFixingOptions options{config.sampler.size_bound, config.sampler.max_queries};
                SamplerOutcome out = bit_fixing_sampler(*oracle, options, sampler_rng);
                output = out.output;
                if (!out.notes.empty()) {
                    notes.push_back(out.notes);
                }
                break;
            }
            case SamplerSpec::Kind::LearnThenSample: {
                std::unique_ptr<SqLearner> learner = make_learner(config.sampler);
                ReductionParams params = ReductionParams::make(config.sampler.epsilon_prime, config.sampler.rho,
                                                               learner->query_count(oracle->domain().n()),
                                                               learner->tolerance());
                LearnThenSampleOutcome out = learn_then_sample(*learner, *oracle, params, sampler_rng);
                output = out.sample.output;
                if (out.hypothesis) {
                    notes.push_back("hypothesis " + out.hypothesis->description());
                }
                if (out.sample.learner_failed) {
                    notes.push_back(out.sample.notes);
                }
                if (out.sample.fallback_used) {
                    notes.push_back("fallback draw");
                }
                break;
            }
        }
        rec.output = output;
        rec.queries = oracle->queries_used();
        if (adversary) {
            rec.optimal_success = adversary->optimal_success().probability;
            target = adversary->commit(commit_rng);
            notes.push_back("committed " + target->describe());
            if (config.transcripts) {
                rec.transcript = adversary->transcript_jsonl();
            }
        }
        rec.is_positive = target->domain().contains(output) && target->eval_unchecked(output);
    } catch (const Error &e) {
        if (oracle) {
            rec.queries = oracle->queries_used();
        }
        notes.push_back(std::string("error: ") + e.what());
    }
    for (size_t i = 0; i < notes.size(); i++) {
        rec.notes += (i ? "; " : "") + notes[i];
    }
    return rec;
}

ExperimentReport run_experiment(const ExperimentConfig &config) {
    ExperimentReport report;
    report.config = config;
    std::shared_ptr<const ClassTable> table;
    if (!config.honest) {
        table = std::make_shared<const ClassTable>(std::get<PredicateClass>(config.target));
    }
    report.records.resize(config.trials);
    parallel_for(config.trials, [&](uint64_t t) { report.records[t] = run_trial(config, t, table); });

    uint64_t successes = 0;
    uint64_t errors = 0;
    uint64_t queries = 0;
    std::optional<double> max_optimal;
    for (const auto &r : report.records) {
        successes += r.is_positive;
        errors += r.notes.find("error: ") != std::string::npos;
        queries += r.queries;
        if (r.optimal_success) {
            max_optimal = std::max(max_optimal.value_or(0.0), *r.optimal_success);
        }
    }
    TheoryBound bound = theory_bound(config);
    nlohmann::json s;
    s["name"] = config.name;
    s["trials"] = config.trials;
    s["successes"] = successes;
    s["errors"] = errors;
    bool no_data = config.trials == 0;
    s["no_data"] = no_data;
    double rate = no_data ? 0.0 : static_cast<double>(successes) / static_cast<double>(config.trials);
    s["success_rate"] = no_data ? nlohmann::json(nullptr) : nlohmann::json(rate);
    s["mean_queries"] =
        no_data ? nlohmann::json(nullptr) : nlohmann::json(static_cast<double>(queries) / config.trials);
    s["mc_slack"] = config.mc_slack;
    switch (bound.kind) {
        case TheoryBound::Kind::None:
            s["theory_kind"] = "none";
            s["theory_bound"] = nullptr;
            s["theory_expression"] = nullptr;
            s["bound_satisfied"] = nullptr;
            break;
        case TheoryBound::Kind::Ceiling:
            s["theory_kind"] = "ceiling";
            s["theory_bound"] = bound.value;
            s["theory_expression"] = bound.expression;
            s["bound_satisfied"] = no_data ? nlohmann::json(nullptr) : nlohmann::json(rate <= bound.value + config.mc_slack);
            break;
        case TheoryBound::Kind::Floor:
            s["theory_kind"] = "floor";
            s["theory_bound"] = bound.value;
            s["theory_expression"] = bound.expression;
            s["bound_satisfied"] = no_data ? nlohmann::json(nullptr) : nlohmann::json(rate >= bound.value - config.mc_slack);
            break;
    }
    if (max_optimal) {
        s["max_optimal_success"] = *max_optimal;
        if (bound.kind == TheoryBound::Kind::Ceiling) {
            s["optimal_success_within_bound"] = *max_optimal <= bound.value;
        }
    }
    if (config.honest && config.sampler.kind == SamplerSpec::Kind::LearnThenSample) {
        s["second_phase_domain"] = target_domain(config).describe();
    }
    s["config"] = config.to_json();
    report.summary = s;
    return report;
}

std::string ExperimentReport::csv() const {
    std::ostringstream out;
    out << "trial,seed,queries,output_hex,is_positive,notes\n";
    Domain d = target_domain(config);
    int width = d.kind() == DomainKind::PuncturedZp ? code_width(d) : d.n();
    for (const auto &r : records) {
        out << r.trial << ',' << r.seed << ',' << r.queries << ',' << (r.output ? to_hex(*r.output, width) : "")
            << ',' << (r.is_positive ? 1 : 0) << ',' << csv_escape(r.notes) << '\n';
    }
    return out.str();
}

std::string ExperimentReport::transcripts_jsonl() const {
    std::string out;
    for (const auto &r : records) {
        std::istringstream lines(r.transcript);
        std::string line;
        while (std::getline(lines, line)) {
            nlohmann::json j = nlohmann::json::parse(line);
            j["trial"] = r.trial;
            out += j.dump();
            out += '\n';
        }
    }
    return out;
}

void write_report(const ExperimentReport &report, const std::string &output_path) {
    namespace fs = std::filesystem;
    fs::path csv_path(output_path);
    if (csv_path.has_parent_path()) {
        fs::create_directories(csv_path.parent_path());
    }
    auto write = [](const fs::path &path, const std::string &content) {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            fail(ErrorKind::Resource, "cannot write " + path.string());
        }
        f << content;
    };
    write(csv_path, report.csv());
    fs::path stem = csv_path.parent_path() / csv_path.stem();
    write(stem.string() + ".summary.json", report.summary.dump(2) + "\n");
    if (report.config.transcripts) {
        write(stem.string() + ".transcripts.jsonl", report.transcripts_jsonl());
    }
}

nlohmann::json LemmaCheck::to_json() const {
    return {{"lemma", lemma},       {"statement", statement}, {"parameters", parameters},
            {"measured", measured}, {"bound", bound},         {"pass", pass},
            {"details", details}};
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck &c) { return c.pass; });
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto &c : checks) {
        list.push_back(c.to_json());
    }
    return {{"checks", list}, {"all_pass", all_pass()}};
}

const std::vector<std::string> &verify_selectors() {
    static const std::vector<std::string> kSelectors = {
        "class-stats", "orthonormalize", "coefficient-formula", "independent-count", "bias-fourier",
        "hoeffding",   "sd",             "simon",               "shor",              "all"};
    return kSelectors;
}

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
}

std::string params_str(std::initializer_list<std::pair<const char *, double>> kv) {
    std::string out;
    for (const auto &[k, v] : kv) {
        out += (out.empty() ? "" : " ") + std::string(k) + "=" + fmt(v);
    }
    return out;
}

TruthTable random_pm_table(const Domain &d, Rng &rng) {
    return TruthTable::from_function(d, [&](uint64_t) { return (rng() & 1) ? 1.0 : -1.0; });
}

void check_class_stats(const VerifyParams &vp, VerifyReport &report) {
    int n = vp.n.value_or(3);
    uint32_t p = vp.p.value_or(3);
    LemmaCheck c;
    c.lemma = "class-stats";
    c.statement = "normalized booleanized linear class: sizes, agreements, per-point counts match closed forms";
    c.parameters = params_str({{"n", n}, {"p", p}});
    try {
        BoolLinearClassStats st = class_stats_boollinear(n, p);
        c.pass = st.all_match();
        c.details = "domain " + std::to_string(st.domain_size) + ", class " + std::to_string(st.class_size) +
                    ", positives " + std::to_string(st.positive_size_min) + ", agreement " +
                    std::to_string(st.agreement_min) + ", per-point " + std::to_string(st.per_point_min) + ", " +
                    std::to_string(st.pairs_checked) + " pairs";
    } catch (const Error &e) {
        c.pass = false;
        c.details = e.what();
    }
    c.measured = c.pass ? 0 : 1;
    report.checks.push_back(c);

    int cube_n = std::min(n + 1, 12);
    for (ParityIndexSet set : {ParityIndexSet::NonZero, ParityIndexSet::All}) {
        NegParityPointCounts pc = negparity_point_counts(cube_n, set);
        uint64_t formula = set == ParityIndexSet::NonZero ? pc.nonzero_formula : pc.all_formula;
        LemmaCheck d;
        d.lemma = "negparity-point-counts";
        d.statement = set == ParityIndexSet::NonZero ? "each nonzero x is positive for 2^(n-1)-1 parities with s != 0"
                                                     : "each nonzero x is positive for 2^(n-1) parities over all s";
        d.parameters = params_str({{"n", cube_n}});
        d.measured = static_cast<double>(pc.max);
        d.bound = static_cast<double>(formula);
        d.pass = pc.min == formula && pc.max == formula;
        d.details = "min " + std::to_string(pc.min) + ", max " + std::to_string(pc.max);
        report.checks.push_back(d);
    }
}

void check_orthonormalize(const VerifyParams &vp, VerifyReport &report) {
    int n = vp.n.value_or(3);
    uint32_t p = vp.p.value_or(3);
    LemmaCheck c;
    c.lemma = "orthonormalize";
    c.statement = "rescaled uniformly correlated family is orthonormal";
    c.parameters = params_str({{"n", n}, {"p", p}});
    c.bound = 1e-9;
    std::vector<TruthTable> out =
        orthonormalize_correlated(bool_linear_pm_tables(n, p), CorrelatedClassStats::bool_linear(n, p));
    c.measured = orthonormality_defect(out);
    c.pass = c.measured <= c.bound;
    c.details = std::to_string(out.size()) + " functions";
    report.checks.push_back(c);
}

void check_coefficient_formula(const VerifyParams &vp, VerifyReport &report) {
    int n = vp.n.value_or(10);
    uint64_t trials = vp.trials.value_or(100);
    Rng rng(vp.seed);
    Domain d = Domain::full_cube(n);
    double worst = 0.0;
    for (uint64_t t = 0; t < trials; t++) {
        TruthTable g = random_pm_table(d, rng);
        SpectrumGF2 spec = wht(g);
        for (uint64_t s = 1; s < g.size(); s++) {
            double from_counts = parity_coefficient_from_counts(parity_counts(g, BitVector(n, s)));
            worst = std::max(worst, std::abs(from_counts - spec[s]));
        }
    }
    LemmaCheck c;
    c.lemma = "coefficient-formula";
    c.statement = "parity coefficient from (a, b, t) counts equals the transform coefficient";
    c.parameters = params_str({{"n", n}, {"tables", static_cast<double>(trials)}});
    c.measured = worst;
    c.bound = 1e-12;
    c.pass = worst <= c.bound;
    report.checks.push_back(c);
}

void check_independent_count(const VerifyParams &vp, VerifyReport &report) {
    int n = vp.n.value_or(16);
    double xi = vp.xi.value_or(std::pow(2.0, -n / 4.0));
    uint64_t trials = vp.trials.value_or(100);
    Rng rng(vp.seed);
    Domain d = Domain::full_cube(n);
    uint64_t worst = 0;
    double bound = 0.0;
    double closed = 0.0;
    bool closed_applies = false;
    for (uint64_t t = 0; t < trials + 1; t++) {
        TruthTable g = t < trials ? random_pm_table(d, rng)
                                  : TruthTable::parity_character(BitVector(n, 1 + rng.below(d.cardinality() - 1)));
        DependentCount dc = count_dependent_negparity(g, xi);
        worst = std::max(worst, dc.count);
        bound = dc.bound;
        closed = dc.closed_form_bound;
        closed_applies = dc.closed_form_applies;
    }
    LemmaCheck c;
    c.lemma = "independent-count";
    c.statement = "negative parities dependent on one query number at most 1/(xi - 6/2^n)^2";
    c.parameters = params_str({{"n", n}, {"xi", xi}, {"queries", static_cast<double>(trials + 1)}});
    c.measured = static_cast<double>(worst);
    c.bound = bound;
    c.pass = static_cast<double>(worst) <= bound && (!closed_applies || static_cast<double>(worst) <= closed);
    c.details = "closed form 2^(n/2+2) = " + fmt(closed) + (closed_applies ? " (applies)" : " (xi below its regime)");
    report.checks.push_back(c);
}

void check_bias_fourier(const VerifyParams &vp, VerifyReport &report) {
    int n = vp.n.value_or(4);
    uint32_t p = vp.p.value_or(3);
    double xi = vp.xi.value_or(std::pow(static_cast<double>(p), -n / 3.0));
    uint64_t trials = vp.trials.value_or(20);
    Rng rng(vp.seed);
    Domain d = Domain::punctured_zp(n, p);
    uint64_t worst = 0;
    double bound = 0.0;
    bool applies = false;
    for (uint64_t t = 0; t < trials; t++) {
        DependentCount dc = count_dependent_boollinear(random_pm_table(d, rng), xi);
        worst = std::max(worst, dc.count);
        bound = dc.bound;
        applies = dc.closed_form_applies;
    }
    LemmaCheck c;
    c.lemma = "bias-fourier";
    c.statement = "booleanized linear predicates dependent on one query number at most p^(2n/3+2)";
    c.parameters = params_str({{"n", n}, {"p", p}, {"xi", xi}, {"queries", static_cast<double>(trials)}});
    c.measured = static_cast<double>(worst);
    c.bound = bound;
    c.pass = static_cast<double>(worst) <= bound;
    c.details = std::string("class size ") + std::to_string(ipow(p, n - 1)) +
                (applies ? "" : "; xi below the regime where the closed form is established");
    report.checks.push_back(c);
}

void check_hoeffding(const VerifyParams &vp, VerifyReport &report) {
    uint64_t trials = vp.trials.value_or(10000);
    Rng rng(vp.seed);
    double worst_ratio = 0.0;
    bool pass = true;
    std::string details;
    for (uint64_t m : {25, 50, 100, 200}) {
        for (double eps : {0.05, 0.1, 0.15, 0.2}) {
            uint64_t exceed = 0;
            for (uint64_t t = 0; t < trials; t++) {
                uint64_t ones = 0;
                for (uint64_t k = 0; k < m; k++) {
                    ones += rng() & 1;
                }
                if (0.5 - static_cast<double>(ones) / static_cast<double>(m) >= eps) {
                    exceed++;
                }
            }
            double empirical = static_cast<double>(exceed) / static_cast<double>(trials);
            double bound = hoeffding_tail(m, eps);
            worst_ratio = std::max(worst_ratio, empirical / bound);
            if (empirical > bound) {
                pass = false;
                details += "m=" + std::to_string(m) + " eps=" + fmt(eps) + " empirical " + fmt(empirical) +
                           " > " + fmt(bound) + "; ";
            }
        }
    }
    LemmaCheck c;
    c.lemma = "hoeffding";
    c.statement = "empirical lower tail of a fair-coin mean stays below exp(-2 m eps^2)";
    c.parameters = params_str({{"trials", static_cast<double>(trials)}});
    c.measured = worst_ratio;
    c.bound = 1.0;
    c.pass = pass;
    c.details = details.empty() ? "16 grid points" : details;
    report.checks.push_back(c);
}

// Midpoint rule on each piece between breakpoints; the integrand is constant on pieces.
double integrate_uniform_sd(const UniformInterval &a, const UniformInterval &b) {
    std::vector<double> cuts = {a.lo(), a.hi(), b.lo(), b.hi()};
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    const int steps = 64;
    for (size_t i = 0; i + 1 < cuts.size(); i++) {
        double h = (cuts[i + 1] - cuts[i]) / steps;
        for (int k = 0; k < steps; k++) {
            double x = cuts[i] + (k + 0.5) * h;
            total += std::abs(a.density(x) - b.density(x)) * h;
        }
    }
    return total / 2.0;
}

Pmf random_pmf(Rng &rng, int64_t support) {
    std::map<int64_t, double> w;
    double total = 0.0;
    for (int64_t x = 0; x < support; x++) {
        double v = rng.unit();
        if (v < 0.3) {
            continue;
        }
        w[x] = v;
        total += v;
    }
    if (w.empty()) {
        w[0] = total = 1.0;
    }
    double sum = 0.0;
    for (auto it = w.begin(); it != w.end(); ++it) {
        it->second /= total;
        sum += it->second;
    }
    w.begin()->second += 1.0 - sum;
    return Pmf(w);
}

void check_sd(const VerifyParams &vp, VerifyReport &report) {
    uint64_t trials = vp.trials.value_or(100);
    Rng rng(vp.seed);
    double worst_gap = 0.0;
    bool bound_ok = true;
    for (uint64_t t = 0; t < trials; t++) {
        double h = 0.05 + rng.unit();
        UniformInterval a{rng.unit() * 2 - 1, h};
        UniformInterval b{rng.unit() * 2 - 1, h};
        double exact = uniform_interval_sd(a, b);
        worst_gap = std::max(worst_gap, std::abs(exact - integrate_uniform_sd(a, b)));
        bound_ok = bound_ok && exact <= uniform_interval_sd_bound(a, b) + 1e-15;
    }
    LemmaCheck c;
    c.lemma = "uniform-sd";
    c.statement = "closed-form SD of equal-width uniforms matches integration and is at most |a-b|/l";
    c.parameters = params_str({{"pairs", static_cast<double>(trials)}});
    c.measured = worst_gap;
    c.bound = 1e-6;
    c.pass = worst_gap <= 1e-6 && bound_ok;
    report.checks.push_back(c);

    double worst_prob = -1.0;
    double worst_subadd = -1.0;
    for (uint64_t t = 0; t < trials; t++) {
        Pmf a = random_pmf(rng, 8);
        Pmf b = random_pmf(rng, 8);
        double sd = statistical_distance(a, b);
        uint64_t mask = rng() & 0xFF;
        auto event = [mask](int64_t x) { return ((mask >> x) & 1) != 0; };
        worst_prob = std::max(worst_prob, std::abs(a.probability_of(event) - b.probability_of(event)) - sd);

        Pmf a2 = random_pmf(rng, 8);
        Pmf b2 = random_pmf(rng, 8);
        double joint = statistical_distance(Pmf::product(a, a2, 8), Pmf::product(b, b2, 8));
        worst_subadd = std::max(worst_subadd, joint - (sd + statistical_distance(a2, b2)));
    }
    LemmaCheck d;
    d.lemma = "sd-prob";
    d.statement = "|Pr_A[T] - Pr_B[T]| <= SD(A, B)";
    d.parameters = params_str({{"instances", static_cast<double>(trials)}});
    d.measured = worst_prob;
    d.bound = 1e-12;
    d.pass = worst_prob <= 1e-12;
    report.checks.push_back(d);

    LemmaCheck e;
    e.lemma = "sd-subadditive";
    e.statement = "SD(A1 x B1, A2 x B2) <= SD(A1, A2) + SD(B1, B2)";
    e.parameters = d.parameters;
    e.measured = worst_subadd;
    e.bound = 1e-12;
    e.pass = worst_subadd <= 1e-12;
    report.checks.push_back(e);
}

void check_simon(const VerifyParams &vp, VerifyReport &report) {
    int n = vp.n.value_or(12);
    uint64_t trials = vp.trials.value_or(1000);
    Rng rng(vp.seed);
    uint64_t standard_ok = 0;
    uint64_t guess_ok = 0;
    Domain cube = Domain::punctured_cube(n);
    SampleSource guess = [&cube](Rng &r) { return random_guess(cube, r); };
    for (uint64_t t = 0; t < trials; t++) {
        SimonInstance inst = SimonInstance::make(BitVector(n, 1 + rng.below((uint64_t{1} << n) - 1)));
        standard_ok += simon_end_to_end(inst, simon_standard_source(inst), 2 * n, rng).success();
        guess_ok += simon_end_to_end(inst, guess, 2 * n, rng).success();
    }
    double standard_rate = static_cast<double>(standard_ok) / trials;
    double guess_rate = static_cast<double>(guess_ok) / trials;
    LemmaCheck c;
    c.lemma = "simon-standard";
    c.statement = "2n samples from the hidden set recover the secret";
    c.parameters = params_str({{"n", n}, {"trials", static_cast<double>(trials)}});
    c.measured = standard_rate;
    c.bound = 0.99;
    c.pass = standard_rate >= 0.99;
    report.checks.push_back(c);

    LemmaCheck d;
    d.lemma = "simon-random-guess";
    d.statement = "2n uniformly guessed samples almost never recover the secret";
    d.parameters = c.parameters;
    d.measured = guess_rate;
    d.bound = 0.01;
    d.pass = guess_rate <= 0.01;
    report.checks.push_back(d);
}

void check_shor(const VerifyParams &vp, VerifyReport &report) {
    ShorInstance inst = ShorInstance::make(15, 7, 8);
    uint64_t Q = uint64_t{1} << inst.n;
    bool all_coprime = true;
    for (uint64_t t = 0; t < inst.r; t++) {
        if (gcd_u64(t, inst.r) != 1) {
            continue;
        }
        std::optional<uint64_t> r = continued_fraction_order(rounded_multiple(t, inst.n, inst.r), Q, inst.N, inst.a);
        all_coprime = all_coprime && r == inst.r;
    }
    LemmaCheck c;
    c.lemma = "shor-continued-fraction";
    c.statement = "every coprime ideal sample of N=15, a=7, Q=256 yields r=4";
    c.parameters = "N=15 a=7 n=8";
    c.measured = all_coprime ? 0 : 1;
    c.pass = all_coprime;
    report.checks.push_back(c);

    uint64_t pairs = vp.trials.value_or(50);
    Rng rng(vp.seed);
    uint64_t recovered = 0;
    for (uint64_t k = 0; k < pairs; k++) {
        uint64_t N = 0, a = 0;
        do {
            N = 3 + rng.below(998);
            a = 2 + rng.below(N - 2);
        } while (gcd_u64(a, N) != 1);
        int n = 64 - std::countl_zero(N * N - 1);
        ShorInstance si = ShorInstance::make(N, a, n);
        std::vector<uint64_t> samples;
        for (int s = 0; s < 32; s++) {
            samples.push_back(rounded_multiple(rng.below(si.r), n, si.r));
        }
        std::optional<uint64_t> r = recover_order_lcm(samples, uint64_t{1} << n, N, a);
        recovered += r == si.r;
    }
    LemmaCheck d;
    d.lemma = "shor-lcm";
    d.statement = "lcm of convergent denominators over ideal samples recovers the order";
    d.parameters = params_str({{"pairs", static_cast<double>(pairs)}});
    d.measured = static_cast<double>(recovered);
    d.bound = static_cast<double>(pairs);
    d.pass = recovered == pairs;
    report.checks.push_back(d);
}

}  // namespace

VerifyReport verify_lemmas(const std::string &selector, const VerifyParams &params) {
    const auto &known = verify_selectors();
    if (std::find(known.begin(), known.end(), selector) == known.end()) {
        fail(ErrorKind::Usage, "unknown selector '" + selector + "'");
    }
    VerifyReport report;
    bool all = selector == "all";
    VerifyParams scoped = params;
    if (all) {
        scoped = VerifyParams{};
        scoped.seed = params.seed;
    }
    if (all || selector == "class-stats") check_class_stats(scoped, report);
    if (all || selector == "orthonormalize") check_orthonormalize(scoped, report);
    if (all || selector == "coefficient-formula") check_coefficient_formula(scoped, report);
    if (all || selector == "independent-count") check_independent_count(scoped, report);
    if (all || selector == "bias-fourier") check_bias_fourier(scoped, report);
    if (all || selector == "hoeffding") check_hoeffding(scoped, report);
    if (all || selector == "sd") check_sd(scoped, report);
    if (all || selector == "simon") check_simon(scoped, report);
    if (all || selector == "shor") check_shor(scoped, report);
    return report;
}

}  // namespace sqslab
