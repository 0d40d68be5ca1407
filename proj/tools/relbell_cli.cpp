// Copyright 2026 The relbell Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// relbell: sweeps, verification, optimization and sampling from the shell.
//
// Exit codes: 0 success, 1 verification failure, 2 bad arguments,
// 3 I/O failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "table.hpp"

#include <relbell/relbell.hpp>

namespace {

using namespace relbell;
using cli::Cell;
using cli::Table;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitIo = 3;

/// Raised for argument problems detected after parsing.
struct BadArguments : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOptions {
    std::string output;
    std::string format = "csv";
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    bool no_meta_time = false;
};

/// Direction and boost overrides read from a --settings file.
struct SettingsFile {
    std::optional<UnitVector3> a, a_prime, b, b_prime, c, c_prime;
    std::vector<Boost> boosts;
};

UnitVector3 read_direction(const nlohmann::json &j, const std::string &key) {
    if (!j.is_array() || j.size() != 3) {
        throw BadArguments("settings key '" + key + "' must be a 3-array");
    }
    try {
        return UnitVector3(j[0].get<double>(), j[1].get<double>(),
                           j[2].get<double>());
    } catch (const relbell::Error &e) {
        throw BadArguments("settings key '" + key + "': " + e.what());
    }
}

SettingsFile load_settings(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoFailure("cannot read settings file " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw BadArguments("settings file " + path + ": " + e.what());
    }
    if (!j.is_object()) {
        throw BadArguments("settings file must hold a JSON object");
    }
    SettingsFile s;
    const auto opt = [&](const char *key, std::optional<UnitVector3> &dst) {
        if (j.contains(key)) {
            dst = read_direction(j[key], key);
        }
    };
    opt("a", s.a);
    opt("a_prime", s.a_prime);
    opt("b", s.b);
    opt("b_prime", s.b_prime);
    opt("c", s.c);
    opt("c_prime", s.c_prime);
    if (j.contains("boosts")) {
        if (!j["boosts"].is_array()) {
            throw BadArguments("'boosts' must be an array");
        }
        for (const auto &b : j["boosts"]) {
            if (!b.is_object() || !b.contains("direction") || !b.contains("beta") ||
                !b["beta"].is_number()) {
                throw BadArguments("each boost needs 'direction' and 'beta'");
            }
            try {
                s.boosts.emplace_back(read_direction(b["direction"], "direction"),
                                      b["beta"].get<double>());
            } catch (const relbell::Error &e) {
                throw BadArguments(std::string("boost: ") + e.what());
            }
        }
    }
    return s;
}

void apply_overrides(ChshSettings &s, const SettingsFile &f,
                     std::optional<double> beta) {
    if (f.a) s.a = *f.a;
    if (f.a_prime) s.a_prime = *f.a_prime;
    if (f.b) s.b = *f.b;
    if (f.b_prime) s.b_prime = *f.b_prime;
    if (f.c || f.c_prime) {
        throw BadArguments("settings file has c/c_prime for a two-particle run");
    }
    if (!f.boosts.empty()) {
        if (f.boosts.size() != 2) {
            throw BadArguments("two-particle settings need exactly 2 boosts");
        }
        s.boost1 = Boost(f.boosts[0].direction(), beta.value_or(f.boosts[0].beta()));
        s.boost2 = Boost(f.boosts[1].direction(), beta.value_or(f.boosts[1].beta()));
    }
}

void apply_overrides(MerminSettings &s, const SettingsFile &f,
                     std::optional<double> beta) {
    if (f.a) s.a = *f.a;
    if (f.a_prime) s.a_prime = *f.a_prime;
    if (f.b) s.b = *f.b;
    if (f.b_prime) s.b_prime = *f.b_prime;
    if (f.c) s.c = *f.c;
    if (f.c_prime) s.c_prime = *f.c_prime;
    if (!f.boosts.empty()) {
        if (f.boosts.size() != 3) {
            throw BadArguments("three-particle settings need exactly 3 boosts");
        }
        s.boost1 = Boost(f.boosts[0].direction(), beta.value_or(f.boosts[0].beta()));
        s.boost2 = Boost(f.boosts[1].direction(), beta.value_or(f.boosts[1].beta()));
        s.boost3 = Boost(f.boosts[2].direction(), beta.value_or(f.boosts[2].beta()));
    }
}

void emit(const GlobalOptions &g, const Table &t, cli::Meta meta) {
    meta.version = kVersion;
    meta.seed = g.seed;
    meta.timestamp = !g.no_meta_time;
    const std::string text = cli::render(
        t, meta, g.format == "json" ? cli::Format::json : cli::Format::csv);
    if (g.output.empty() || g.output == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(g.output, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw IoFailure("cannot write " + g.output);
    }
}

void require_beta(double beta, bool allow_one) {
    if (!(beta >= 0.0 && (allow_one ? beta <= 1.0 : beta < 1.0))) {
        throw BadArguments("beta must lie in [0, " +
                           std::string(allow_one ? "1]" : "1)"));
    }
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
    std::string scenario = "chsh-collinear";
    double beta_min = 0.0;
    double beta_max = 1.0;
    double beta_step = 0.01;
    bool prime_swap = false;
    std::string settings;
};

std::optional<double> safe(auto &&f) {
    try {
        return f();
    } catch (const relbell::Error &) {
        return std::nullopt;
    }
}

ScenarioResult custom_row(ScenarioKind kind, double beta, bool prime_swap,
                          const SettingsFile &file) {
    Scenario sc{kind, beta, prime_swap};
    ScenarioResult r;
    r.beta = beta;
    std::optional<double> closed;
    if (kind == ScenarioKind::chsh_collinear) {
        ChshSettings s = scenario_chsh_settings(sc);
        apply_overrides(s, file, beta);
        closed = safe([&] { return std::sqrt(chsh_zeta(s)); });
        r.closed_form = closed.value_or(NAN);
        if (beta < 1.0) {
            attach_numerics(r, chsh_operator(s), phi_plus().vector);
        }
    } else {
        MerminSettings s = scenario_mermin_settings(sc);
        apply_overrides(s, file, beta);
        closed = safe([&] { return std::sqrt(mermin_lambda3(s)); });
        r.closed_form = closed.value_or(NAN);
        if (beta < 1.0) {
            attach_numerics(r, mermin_operator(s), ghz_plus().vector);
        }
    }
    if (!closed) {
        r.closed_vs_numeric.reset();
        r.closed_vs_state.reset();
    }
    return r;
}

int run_sweep(const GlobalOptions &g, const SweepOptions &o) {
    const auto kind = parse_scenario_kind(o.scenario);
    if (!kind) {
        throw BadArguments("unknown scenario '" + o.scenario + "'");
    }
    if (!(o.beta_min >= 0.0 && o.beta_min <= o.beta_max && o.beta_max <= 1.0) ||
        !(o.beta_step > 0.0)) {
        throw BadArguments("need 0 <= beta-min <= beta-max <= 1 and beta-step > 0");
    }
    std::optional<SettingsFile> file;
    if (!o.settings.empty()) {
        file = load_settings(o.settings);
    }
    Table t{{"beta", "scenario", "closed_form", "numeric_max",
             "state_expectation", "residual"},
            {}};
    for (double beta : beta_grid(o.beta_min, o.beta_max, o.beta_step)) {
        const ScenarioResult r =
            file ? custom_row(*kind, beta, o.prime_swap, *file)
                 : scenario_curve({*kind, beta, o.prime_swap});
        t.rows.push_back({r.beta, std::string(to_string(*kind)),
                          std::isnan(r.closed_form) ? Cell{} : Cell{r.closed_form},
                          cli::cell(r.numeric_max), cli::cell(r.state_expectation),
                          cli::cell(r.closed_vs_numeric)});
    }
    cli::Meta meta;
    meta.command = "sweep";
    meta.extra["scenario"] = o.scenario;
    meta.extra["prime_swap"] = o.prime_swap;
    emit(g, t, meta);
    return kExitOk;
}

// ---------------------------------------------------------------- verify

int run_verify(const GlobalOptions &g, int draws) {
    if (!(g.tolerance > 0.0)) {
        throw BadArguments("tolerance must be positive");
    }
    if (draws < 1) {
        throw BadArguments("draws must be >= 1");
    }
    const auto checks = run_verification({g.tolerance, draws, g.seed});
    Table t{{"check", "status", "residual", "value", "detail"}, {}};
    for (const auto &c : checks) {
        t.rows.push_back({c.name, std::string(to_string(c.status)), c.residual,
                          cli::cell(c.value), c.detail});
    }
    cli::Meta meta;
    meta.command = "verify";
    meta.extra["tolerance"] = g.tolerance;
    meta.extra["draws"] = draws;
    emit(g, t, meta);
    return verification_passed(checks) ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- optimize / sample

struct ExperimentOptions {
    bool three = false;
    std::optional<double> beta;
    std::string boost = "collinear";
    bool prime_swap = false;
    std::string settings;
};

struct Experiment {
    bool three = false;
    std::optional<ChshSettings> chsh;
    std::optional<MerminSettings> mermin;
    double beta = 0.0;
};

Experiment build_experiment(const ExperimentOptions &o) {
    if (o.boost != "collinear" && o.boost != "com") {
        throw BadArguments("boost must be 'collinear' or 'com'");
    }
    if (o.boost == "com" && !o.three) {
        throw BadArguments("center-of-mass boosts need --three");
    }
    std::optional<SettingsFile> file;
    if (!o.settings.empty()) {
        file = load_settings(o.settings);
    }
    double beta = o.beta.value_or(0.0);
    if (!o.beta && file && !file->boosts.empty()) {
        beta = file->boosts.front().beta();
    }
    require_beta(beta, false);
    Experiment e;
    e.three = o.three;
    if (o.three) {
        const Scenario sc{o.boost == "com" ? ScenarioKind::mermin_center_of_mass
                                           : ScenarioKind::mermin_collinear,
                          beta, o.prime_swap};
        MerminSettings s = scenario_mermin_settings(sc);
        if (file) {
            apply_overrides(s, *file, o.beta);
        }
        for (const Boost *b : {&s.boost1, &s.boost2, &s.boost3}) {
            require_beta(b->beta(), false);
        }
        e.mermin = s;
    } else {
        ChshSettings s = scenario_chsh_settings({ScenarioKind::chsh_collinear, beta,
                                                 o.prime_swap});
        if (file) {
            apply_overrides(s, *file, o.beta);
        }
        for (const Boost *b : {&s.boost1, &s.boost2}) {
            require_beta(b->beta(), false);
        }
        e.chsh = s;
    }
    e.beta = beta;
    return e;
}

void add_direction(Table &t, const char *name, const UnitVector3 &v) {
    t.rows.push_back({std::string(name), v.x(), v.y(), v.z(), Cell{}});
}

struct OptimizeOptions {
    std::string constraint = "xy";
    int restarts = 16;
    int grid = 24;
    double refine = 1e-8;
    std::string objective = "norm";
    bool freeze = false;
};

int run_optimize(const GlobalOptions &g, const ExperimentOptions &eo,
                 const OptimizeOptions &o) {
    if (o.constraint != "xy" && o.constraint != "free") {
        throw BadArguments("constraint must be 'xy' or 'free'");
    }
    if (o.objective != "norm" && o.objective != "state") {
        throw BadArguments("objective must be 'norm' or 'state'");
    }
    const Experiment e = build_experiment(eo);
    SearchConfig cfg;
    cfg.constraint = o.constraint == "xy" ? Constraint::xy_plane
                                          : Constraint::free_sphere;
    cfg.restarts = o.restarts;
    cfg.grid_points_per_angle = o.grid;
    cfg.refinement_tolerance = o.refine;
    cfg.seed = g.seed;
    cfg.objective = o.objective == "norm" ? Objective::operator_norm
                                          : Objective::state_expectation;
    cfg.frozen_mask = o.freeze ? 0x3fu : 0u;
    try {
        cfg.validate();
    } catch (const relbell::Error &err) {
        throw BadArguments(err.what());
    }

    Table t{{"quantity", "x", "y", "z", "value"}, {}};
    double value = 0.0;
    int best_restart = 0;
    if (e.three) {
        const auto &s = *e.mermin;
        const auto r = optimize_mermin(
            {s.boost1.direction(), s.boost2.direction(), s.boost3.direction()},
            e.beta, cfg, s);
        add_direction(t, "a", r.settings.a);
        add_direction(t, "a_prime", r.settings.a_prime);
        add_direction(t, "b", r.settings.b);
        add_direction(t, "b_prime", r.settings.b_prime);
        add_direction(t, "c", r.settings.c);
        add_direction(t, "c_prime", r.settings.c_prime);
        value = r.value;
        best_restart = r.best_restart;
    } else {
        const auto &s = *e.chsh;
        const auto r = optimize_chsh({s.boost1.direction(), s.boost2.direction()},
                                     e.beta, cfg, s);
        add_direction(t, "a", r.settings.a);
        add_direction(t, "a_prime", r.settings.a_prime);
        add_direction(t, "b", r.settings.b);
        add_direction(t, "b_prime", r.settings.b_prime);
        value = r.value;
        best_restart = r.best_restart;
    }
    t.rows.push_back({std::string(o.objective == "norm" ? "max_violation"
                                                        : "state_expectation"),
                      Cell{}, Cell{}, Cell{}, value});
    cli::Meta meta;
    meta.command = "optimize";
    meta.extra["three"] = eo.three;
    meta.extra["beta"] = e.beta;
    meta.extra["boost"] = eo.boost;
    meta.extra["constraint"] = o.constraint;
    meta.extra["restarts"] = o.restarts;
    meta.extra["best_restart"] = best_restart;
    emit(g, t, meta);
    return kExitOk;
}

std::string outcome_label(std::size_t k, std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s += ((k >> (n - 1 - i)) & 1u) ? 'm' : 'p';
    }
    return s;
}

int run_sample(const GlobalOptions &g, const ExperimentOptions &eo,
               std::int64_t shots) {
    if (shots < 1) {
        throw BadArguments("shots must be >= 1");
    }
    const Experiment e = build_experiment(eo);
    const auto terms = e.three ? mermin_terms(mermin_observables(*e.mermin))
                               : chsh_terms(chsh_observables(*e.chsh));
    const StateVector state = e.three ? ghz_plus().vector : phi_plus().vector;
    const std::size_t n = e.three ? 3 : 2;

    Table t{{"setting", "sign", "shots"}, {}};
    for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
        t.columns.push_back("count_" + outcome_label(k, n));
    }
    for (const char *c : {"empirical", "exact", "standard_error"}) {
        t.columns.emplace_back(c);
    }

    std::vector<ShotRecord> records;
    std::vector<OutcomeDistribution> dists;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        dists.push_back(joint_distribution(state, terms[i].observables));
        records.push_back(sample(dists.back(), static_cast<std::uint64_t>(shots),
                                 g.seed, static_cast<int>(i)));
        std::vector<Cell> row{terms[i].label, std::int64_t{terms[i].sign}, shots};
        for (auto c : records.back().counts) {
            row.emplace_back(static_cast<std::int64_t>(c));
        }
        const double emp = records.back().correlator();
        row.emplace_back(emp);
        row.emplace_back(dists.back().correlator());
        row.emplace_back(std::sqrt((1.0 - emp * emp) / static_cast<double>(shots)));
        t.rows.push_back(std::move(row));
    }
    const auto signs = term_signs(terms);
    const BellEstimate est = estimate_bell(records, signs);
    std::vector<Cell> summary{std::string("bell"), Cell{},
                              static_cast<std::int64_t>(shots)};
    for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
        summary.emplace_back();
    }
    summary.emplace_back(est.estimate);
    summary.emplace_back(exact_bell(dists, signs));
    summary.emplace_back(est.standard_error);
    t.rows.push_back(std::move(summary));

    cli::Meta meta;
    meta.command = "sample";
    meta.extra["three"] = eo.three;
    meta.extra["beta"] = e.beta;
    meta.extra["boost"] = eo.boost;
    meta.extra["prime_swap"] = eo.prime_swap;
    meta.extra["state"] = e.three ? "ghz_plus" : "phi_plus";
    emit(g, t, meta);
    return kExitOk;
}

void add_experiment_flags(CLI::App *cmd, ExperimentOptions &o) {
    cmd->add_flag("--three", o.three, "Three particles (default: two)");
    cmd->add_option("--beta", o.beta, "Particle speed in [0, 1)");
    cmd->add_option("--boost", o.boost, "Boost geometry: collinear or com")
        ->check(CLI::IsMember({"collinear", "com"}));
    cmd->add_flag("--prime-swap", o.prime_swap,
                  "Exchange primed and unprimed reference directions");
    cmd->add_option("--settings", o.settings,
                    "JSON file with explicit directions and boosts");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Relativistic Bell operator toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    GlobalOptions g;
    app.add_option("--output,-o", g.output, "Output path (default: stdout)");
    app.add_option("--format", g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--tolerance", g.tolerance, "Verification tolerance");
    app.add_flag("--no-meta-time", g.no_meta_time,
                 "Omit the timestamp from JSON metadata");

    SweepOptions sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Closed form vs numeric curve over beta");
    sweep_cmd->add_option("--scenario", sweep.scenario,
                          "chsh-collinear, mermin-collinear or mermin-com")
        ->check(CLI::IsMember({"chsh-collinear", "mermin-collinear", "mermin-com"}));
    sweep_cmd->add_option("--beta-min", sweep.beta_min);
    sweep_cmd->add_option("--beta-max", sweep.beta_max);
    sweep_cmd->add_option("--beta-step", sweep.beta_step);
    sweep_cmd->add_flag("--prime-swap", sweep.prime_swap);
    sweep_cmd->add_option("--settings", sweep.settings);

    int draws = 1000;
    auto *verify_cmd = app.add_subcommand("verify", "Closed forms vs brute force, with erratum report");
    verify_cmd->add_option("--draws", draws, "Random draws per randomized check");

    ExperimentOptions opt_exp;
    OptimizeOptions opt;
    auto *opt_cmd = app.add_subcommand("optimize", "Maximize the Bell value over settings");
    add_experiment_flags(opt_cmd, opt_exp);
    opt_cmd->add_option("--constraint", opt.constraint, "xy or free")
        ->check(CLI::IsMember({"xy", "free"}));
    opt_cmd->add_option("--restarts", opt.restarts);
    opt_cmd->add_option("--grid", opt.grid, "Grid points per angle");
    opt_cmd->add_option("--refine-tol", opt.refine);
    opt_cmd->add_option("--objective", opt.objective, "norm or state")
        ->check(CLI::IsMember({"norm", "state"}));
    opt_cmd->add_flag("--freeze", opt.freeze,
                      "Keep every direction at its reference/anchor value");

    ExperimentOptions sample_exp;
    std::int64_t shots = 100000;
    auto *sample_cmd = app.add_subcommand("sample", "Monte Carlo shots per setting");
    add_experiment_flags(sample_cmd, sample_exp);
    sample_cmd->add_option("--shots", shots, "Shots per setting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitBadArgs;
    }

    try {
        if (*sweep_cmd) {
            return run_sweep(g, sweep);
        }
        if (*verify_cmd) {
            return run_verify(g, draws);
        }
        if (*opt_cmd) {
            return run_optimize(g, opt_exp, opt);
        }
        if (*sample_cmd) {
            return run_sample(g, sample_exp, shots);
        }
    } catch (const BadArguments &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const IoFailure &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const relbell::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    }
    return kExitBadArgs;
}
