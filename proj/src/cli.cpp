#include "mclaims/cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "mclaims/charfn.hpp"
#include "mclaims/error.hpp"
#include "mclaims/exact.hpp"
#include "mclaims/norms.hpp"

namespace mclaims {

namespace {

using nlohmann::json;

void overlay_params(const json& j, RawParams& p) {
    if (j.contains("alpha")) j.at("alpha").get_to(p.alpha);
    if (j.contains("beta")) j.at("beta").get_to(p.beta);
    if (j.contains("gamma")) j.at("gamma").get_to(p.gamma);
    if (j.contains("d")) j.at("d").get_to(p.d);
    if (j.contains("c0")) j.at("c0").get_to(p.c0);
}

json rate_job_json(const RateJob& r) {
    return {{"regime", r.regime}, {"policy", r.policy}, {"c", r.c}, {"base", r.base}, {"n_values", r.n_values}};
}

RateJob rate_job_from(const json& j, RateJob r = {}) {
    r.regime = j.value("regime", r.regime);
    r.policy = j.value("policy", r.policy);
    r.c = j.value("c", r.c);
    if (j.contains("base")) overlay_params(j.at("base"), r.base);
    if (j.contains("n_values")) r.n_values = j.at("n_values").get<std::vector<int>>();
    return r;
}

json check_json(const CheckOptions& c) {
    return {{"t_points", c.t_points},
            {"C2", c.C2},
            {"n_values", c.n_values},
            {"derivative_step", c.derivative_step},
            {"refine", c.refine}};
}

void overlay_check(const json& j, CheckOptions& c) {
    c.t_points = j.value("t_points", c.t_points);
    c.C2 = j.value("C2", c.C2);
    if (j.contains("n_values")) c.n_values = j.at("n_values").get<std::vector<int>>();
    c.derivative_step = j.value("derivative_step", c.derivative_step);
    c.refine = j.value("refine", c.refine);
}

}  // namespace

json to_json(const RunConfig& c) {
    json sweep = json::array();
    for (const auto& r : c.sweep_rates) sweep.push_back(rate_job_json(r));
    return {{"command", c.command},
            {"params", c.params},
            {"n", c.n},
            {"variant", to_string(c.variant)},
            {"norm", c.norm},
            {"engine", c.engine},
            {"samples", c.samples},
            {"seed", c.seed},
            {"format", c.format},
            {"out", c.out},
            {"dump_transform", c.dump_transform},
            {"suite", c.suite},
            {"lemmas", c.lemmas},
            {"rates", rate_job_json(c.rates)},
            {"sweep_rates", sweep},
            {"box", to_json(c.box)},
            {"check", check_json(c.check)},
            {"verify", to_json(c.verify)}};
}

void apply_json(const json& j, RunConfig& c) {
    require(j.is_object(), ErrorCode::config, "config must be a JSON object");
    c.command = j.value("command", c.command);
    if (j.contains("params")) overlay_params(j.at("params"), c.params);
    c.n = j.value("n", c.n);
    if (j.contains("variant")) c.variant = parse_variant(j.at("variant").get<std::string>());
    c.norm = j.value("norm", c.norm);
    c.engine = j.value("engine", c.engine);
    c.samples = j.value("samples", c.samples);
    c.seed = j.value("seed", c.seed);
    c.format = j.value("format", c.format);
    c.out = j.value("out", c.out);
    c.dump_transform = j.value("dump_transform", c.dump_transform);
    c.suite = j.value("suite", c.suite);
    if (j.contains("lemmas")) c.lemmas = j.at("lemmas").get<std::vector<std::string>>();
    if (j.contains("rates")) c.rates = rate_job_from(j.at("rates"), c.rates);
    if (j.contains("sweep_rates")) {
        c.sweep_rates.clear();
        for (const auto& r : j.at("sweep_rates")) c.sweep_rates.push_back(rate_job_from(r));
    }
    if (j.contains("box")) c.box = box_from_json(j.at("box"));
    if (j.contains("check")) overlay_check(j.at("check"), c.check);
    if (j.contains("verify")) from_json(j.at("verify"), c.verify);
}

namespace {

// Everything a command writes goes through one sink so that file and stdout output are identical.
class Output {
public:
    Output(const RunConfig& cfg, std::ostream& fallback) {
        if (!cfg.out.empty() && cfg.out != "-") {
            file_.open(cfg.out);
            require(file_.good(), ErrorCode::config, "cannot open output file '" + cfg.out + "'");
        }
        os_ = file_.is_open() ? static_cast<std::ostream*>(&file_) : &fallback;
        *os_ << std::setprecision(17);
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

json header(const RunConfig& cfg, std::optional<std::int64_t> n_used) {
    json h{{"tool", "mclaims"},
           {"version", tool_version},
           {"command", cfg.command},
           {"params", cfg.params},
           {"n", cfg.n},
           {"variant", to_string(cfg.variant)},
           {"config", to_json(cfg)}};
    h["N_used"] = n_used ? json(*n_used) : json(nullptr);
    return h;
}

void write_csv_header(std::ostream& os, const json& h) {
    for (const char* key : {"tool", "version", "command", "params", "n", "variant", "N_used"})
        os << "# " << key << ": " << h.at(key).dump() << '\n';
    os << "# config: " << h.at("config").dump() << '\n';
}

bool wants_json(const RunConfig& cfg) {
    require(cfg.format == "csv" || cfg.format == "json", ErrorCode::config,
            "--format must be csv or json, got '" + cfg.format + "'");
    return cfg.format == "json";
}

void emit_measure(const RunConfig& cfg, std::ostream& fallback, const LatticeMeasure& m,
                  std::optional<std::int64_t> n_used, json extra = json::object()) {
    Output out(cfg, fallback);
    const json h = header(cfg, n_used);
    if (wants_json(cfg)) {
        json doc{{"header", h}, {"measure", to_json(m)}};
        for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
        out.stream() << doc.dump(2) << '\n';
    } else {
        write_csv_header(out.stream(), h);
        for (auto it = extra.begin(); it != extra.end(); ++it) out.stream() << "# " << it.key() << ": " << it.value().dump() << '\n';
        write_csv(out.stream(), m);
    }
}

int cmd_exact(const RunConfig& cfg, std::ostream& os) {
    const ModelParams p = make_params(cfg.params);
    require(cfg.n >= 1, ErrorCode::config, "--n must be >= 1");
    LatticeMeasure law;
    if (cfg.engine == "dp")
        law = exact_distribution_dp(p, cfg.n);
    else if (cfg.engine == "enum")
        law = exact_distribution_enum(p, cfg.n);
    else if (cfg.engine == "sample")
        law = sample_empirical(p, cfg.n, cfg.samples, cfg.seed);
    else
        fail(ErrorCode::config, "--engine must be dp, enum or sample");
    emit_measure(cfg, os, law, std::nullopt);
    return 0;
}

int cmd_approx(const RunConfig& cfg, std::ostream& os) {
    const ModelParams p = make_params(cfg.params);
    require(cfg.n >= 1, ErrorCode::config, "--n must be >= 1");
    if (!cfg.dump_transform.empty()) {
        const std::int64_t N = cfg.verify.inversion.min_points > 0 ? cfg.verify.inversion.min_points : 512;
        const std::string name = cfg.dump_transform;
        const CharFnGrid g = sample_grid([&](double t) { return named_transform(p, name, t, cfg.n); }, N);
        Output out(cfg, os);
        json h = header(cfg, N);
        if (wants_json(cfg)) {
            json rows = json::array();
            for (std::int64_t j = 0; j < N; ++j)
                rows.push_back({g.t(j), g.values[static_cast<std::size_t>(j)].real(),
                                g.values[static_cast<std::size_t>(j)].imag()});
            out.stream() << json{{"header", h}, {"transform", name}, {"grid", rows}}.dump(2) << '\n';
        } else {
            write_csv_header(out.stream(), h);
            out.stream() << "# transform: " << name << '\n';
            write_grid_csv(out.stream(), g);
        }
        return 0;
    }
    const AliasingProbe probe = approximation_measure(p, cfg.n, cfg.variant, cfg.verify.inversion);
    emit_measure(cfg, os, probe.measure, probe.n_used,
                 {{"tv_delta_last_doubling", probe.tv_delta_last_doubling},
                  {"doublings", probe.doublings},
                  {"mass", probe.measure.mass()}});
    return 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& os) {
    const ModelParams p = make_params(cfg.params);
    require(cfg.n >= 1, ErrorCode::config, "--n must be >= 1");
    static const std::vector<std::string> norms{"all", "local", "kolmogorov", "tv"};
    require(std::find(norms.begin(), norms.end(), cfg.norm) != norms.end(), ErrorCode::config,
            "--norm must be local, kolmogorov, tv or all");
    AliasingProbe probe;
    const LatticeMeasure diff = difference_measure(p, cfg.n, cfg.variant, cfg.verify.inversion, &probe);
    const std::int64_t nd = static_cast<std::int64_t>(cfg.n) * p.d();
    const NormReport rep = norm_report(diff, cfg.verify.bound_a, std::int64_t{1}, nd);
    std::optional<InversionBounds> bounds;
    if (cfg.verify.inversion_bounds)
        bounds = inversion_bounds([&](double t) { return difference_transform(p, cfg.n, cfg.variant, t); },
                               probe.n_used, cfg.verify.bound_a, cfg.verify.bound_b);

    Output out(cfg, os);
    const json h = header(cfg, probe.n_used);
    std::vector<std::pair<std::string, double>> rows;
    if (cfg.norm == "all" || cfg.norm == "local") rows.emplace_back("local", rep.local);
    if (cfg.norm == "all" || cfg.norm == "kolmogorov") rows.emplace_back("kolmogorov", rep.kolmogorov);
    if (cfg.norm == "all" || cfg.norm == "tv") rows.emplace_back("total_variation", rep.total_variation);
    if (wants_json(cfg)) {
        json doc{{"header", h}, {"report", to_json(rep)}};
        if (bounds) doc["inversion_bounds"] = to_json(*bounds);
        out.stream() << doc.dump(2) << '\n';
    } else {
        write_csv_header(out.stream(), h);
        out.stream() << "norm,value\n";
        for (const auto& [name, v] : rows) out.stream() << name << ',' << v << '\n';
        if (bounds) {
            out.stream() << "tsaregradskii_bound," << bounds->tsaregradskii << '\n'
                         << "local_bound," << bounds->local_bound << '\n'
                         << "tv_bound," << bounds->tv_bound << '\n';
        }
    }
    return 0;
}

std::vector<std::string> selected_lemmas(const RunConfig& cfg) {
    if (!cfg.lemmas.empty()) return cfg.lemmas;
    if (cfg.suite == "exact-constant") return exact_constant_ids();
    if (cfg.suite == "constant-fit") return constant_fit_ids();
    if (cfg.suite == "all") {
        auto ids = exact_constant_ids();
        for (auto& id : constant_fit_ids()) ids.push_back(id);
        return ids;
    }
    fail(ErrorCode::config, "--suite must be exact-constant, constant-fit or all");
}

std::vector<BoundCheck> run_lemmas(const RunConfig& cfg) {
    const std::vector<ModelParams> grid = box_points(cfg.box);
    std::vector<BoundCheck> checks;
    for (const auto& id : selected_lemmas(cfg)) checks.push_back(check_lemma(id, grid, cfg.check, cfg.box.describe()));
    return checks;
}

std::string pass_label(const BoundCheck& c) {
    if (c.violated) return *c.violated ? "fail" : "pass";
    if (c.failure) return "error";
    return std::isfinite(c.max_ratio) && (c.kind != BoundKind::lower_constant || c.max_ratio > 0.0) ? "finite"
                                                                                                    : "unbounded";
}

int cmd_verify(const RunConfig& cfg, std::ostream& os) {
    const std::vector<BoundCheck> checks = run_lemmas(cfg);
    bool any_violation = false;
    for (const auto& c : checks) any_violation = any_violation || c.violated.value_or(false);

    Output out(cfg, os);
    const json h = header(cfg, std::nullopt);
    if (wants_json(cfg)) {
        json arr = json::array();
        for (const auto& c : checks) arr.push_back(to_json(c));
        out.stream() << json{{"header", h}, {"checks", arr}, {"violations", any_violation}}.dump(2) << '\n';
    } else {
        write_csv_header(out.stream(), h);
        out.stream() << "lemma_id,kind,points,max_ratio,worst_alpha,worst_beta,worst_gamma,worst_d,worst_t,worst_n,"
                        "status\n";
        for (const auto& c : checks)
            out.stream() << c.lemma_id << ',' << to_string(c.kind) << ',' << c.points_checked << ',' << c.max_ratio
                         << ',' << c.worst_params.alpha << ',' << c.worst_params.beta << ',' << c.worst_params.gamma
                         << ',' << c.worst_params.d << ',' << c.worst_t << ',' << c.worst_n << ',' << pass_label(c)
                         << '\n';
    }
    return any_violation ? exit_verification_failed : 0;
}

ScalingPolicy policy_of(const RateJob& job) {
    ScalingPolicy p;
    p.kind = parse_policy(job.policy);
    p.base = job.base;
    p.c = job.c;
    return p;
}

int cmd_rates(const RunConfig& cfg, std::ostream& os) {
    const Regime r = parse_regime(cfg.rates.regime);
    const RateFit fit = rate_fit(r, policy_of(cfg.rates), cfg.rates.n_values, cfg.verify);
    Output out(cfg, os);
    // The header describes what was actually run: the regime's approximant on the policy base.
    RunConfig shown = cfg;
    shown.variant = regime_variant(r);
    shown.params = cfg.rates.base;
    const json h = header(shown, fit.n_used.empty() ? std::nullopt : std::optional(fit.n_used.back()));
    if (wants_json(cfg)) {
        out.stream() << json{{"header", h}, {"fit", to_json(fit)}}.dump(2) << '\n';
    } else {
        write_csv_header(out.stream(), h);
        out.stream() << "# regime: " << to_string(r) << "\n# policy: " << fit.policy << "\n# slope: " << fit.slope
                     << "\n# intercept: " << fit.intercept << "\n# r_squared: " << fit.r_squared << '\n';
        out.stream() << "n,error,N_used\n";
        for (std::size_t i = 0; i < fit.n_values.size(); ++i)
            out.stream() << fit.n_values[i] << ',' << fit.errors[i] << ',' << fit.n_used[i] << '\n';
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& os) {
    const std::vector<BoundCheck> checks = run_lemmas(cfg);
    std::vector<RateFit> fits;
    const std::vector<RateJob> jobs = cfg.sweep_rates.empty() ? std::vector<RateJob>{RateJob{}} : cfg.sweep_rates;
    for (const auto& job : jobs)
        fits.push_back(rate_fit(parse_regime(job.regime), policy_of(job), job.n_values, cfg.verify));

    Output out(cfg, os);
    write_csv_header(out.stream(), header(cfg, std::nullopt));
    out.stream() << "id,box,value,pass\n";
    const std::string box = cfg.box.describe();
    for (const auto& c : checks) out.stream() << c.lemma_id << ',' << box << ',' << c.max_ratio << ',' << pass_label(c) << '\n';
    for (const auto& f : fits) {
        const bool ok = f.slope < 0.0;
        out.stream() << to_string(f.regime) << ',' << '"' << f.policy << '"' << ',' << f.slope << ','
                     << (ok ? "decreasing" : "not-decreasing") << '\n';
    }
    bool any_violation = false;
    for (const auto& c : checks) any_violation = any_violation || c.violated.value_or(false);
    return any_violation ? exit_verification_failed : 0;
}

void print_error(std::ostream& err, const std::string& kind, int code, const std::string& message) {
    err << json{{"error", kind}, {"code", code}, {"message", message}}.dump() << '\n';
}

struct Flags {
    double alpha = 0, beta = 0, gamma = 0, c0 = 0, c = 0, C2 = 0, gamma_floor = 0, a = 0, b = 1;
    int d = 0, n = 0, max_doublings = 0;
    std::int64_t grid_n = 0, t_points = 0, samples = 0, guard = 0;
    std::uint64_t seed = 0;
    std::string variant, norm, out, format, config, engine, suite, regime, policy, dump;
    std::vector<std::string> lemmas;
    std::vector<int> n_seq;
    bool refine = false, inversion_bounds = false;
};

void add_common(CLI::App* sub, Flags& f, std::map<std::string, CLI::Option*>& opts) {
    opts["alpha"] = sub->add_option("--alpha", f.alpha, "ill -> dead probability");
    opts["beta"] = sub->add_option("--beta", f.beta, "ill -> ill probability");
    opts["gamma"] = sub->add_option("--gamma", f.gamma, "healthy -> ill probability");
    opts["d"] = sub->add_option("--d", f.d, "payment per period once dead");
    opts["c0"] = sub->add_option("--c0", f.c0, "upper bound on alpha");
    opts["n"] = sub->add_option("--n", f.n, "number of periods");
    opts["variant"] = sub->add_option("--variant", f.variant, "GV_E | G1V1_E | G1V2_E | E_only");
    opts["norm"] = sub->add_option("--norm", f.norm, "local | kolmogorov | tv | all");
    opts["out"] = sub->add_option("--out", f.out, "output path (default stdout)");
    opts["format"] = sub->add_option("--format", f.format, "csv | json");
    opts["grid-n"] = sub->add_option("--grid-n", f.grid_n, "minimum number of Fourier grid nodes");
    opts["seed"] = sub->add_option("--seed", f.seed, "RNG seed for sampling");
    opts["config"] = sub->add_option("--config", f.config, "JSON config file");
    opts["guard"] = sub->add_option("--guard", f.guard, "lattice cells kept right of n d");
    opts["max-doublings"] = sub->add_option("--max-doublings", f.max_doublings, "grid doubling cap");
    opts["C2"] = sub->add_option("--C2", f.C2, "separation threshold for alpha");
    opts["gamma-floor"] = sub->add_option("--gamma-floor", f.gamma_floor, "lower bound on gamma (death-dominated)");
    opts["inversion_bounds"] = sub->add_flag("--inversion-bounds", f.inversion_bounds, "also evaluate the inversion-inequality bounds");
    opts["a"] = sub->add_option("--a", f.a, "centre of the non-uniform and TV bounds");
    opts["b"] = sub->add_option("--b", f.b, "scale of the TV bound");
}

RunConfig resolve(const std::string& command, const Flags& f, const std::map<std::string, CLI::Option*>& opts) {
    RunConfig cfg;
    cfg.command = command;
    if (command == "sweep") cfg.suite = "all";
    auto given = [&](const char* name) {
        auto it = opts.find(name);
        return it != opts.end() && it->second->count() > 0;
    };
    if (given("config")) {
        std::ifstream in(f.config);
        require(in.good(), ErrorCode::config, "cannot read config file '" + f.config + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            fail(ErrorCode::config, std::string("config file is not valid JSON: ") + e.what());
        }
        apply_json(j, cfg);
        cfg.command = command;
    }
    if (given("alpha")) cfg.params.alpha = f.alpha;
    if (given("beta")) cfg.params.beta = f.beta;
    if (given("gamma")) cfg.params.gamma = f.gamma;
    if (given("d")) cfg.params.d = f.d;
    if (given("c0")) cfg.params.c0 = f.c0;
    if (given("n")) cfg.n = f.n;
    if (given("variant")) cfg.variant = parse_variant(f.variant);
    if (given("norm")) cfg.norm = f.norm;
    if (given("out")) cfg.out = f.out;
    if (given("format")) cfg.format = f.format;
    if (given("grid-n")) cfg.verify.inversion.min_points = f.grid_n;
    if (given("seed")) cfg.seed = f.seed;
    if (given("guard")) cfg.verify.inversion.guard = f.guard;
    if (given("max-doublings")) cfg.verify.inversion.max_doublings = f.max_doublings;
    if (given("C2")) cfg.verify.C2 = cfg.check.C2 = f.C2;
    if (given("gamma-floor")) cfg.verify.gamma_floor = f.gamma_floor;
    if (given("inversion_bounds")) cfg.verify.inversion_bounds = f.inversion_bounds;
    if (given("a")) cfg.verify.bound_a = f.a;
    if (given("b")) cfg.verify.bound_b = f.b;
    if (given("engine")) cfg.engine = f.engine;
    if (given("samples")) cfg.samples = f.samples;
    if (given("suite")) cfg.suite = f.suite;
    if (given("lemma")) cfg.lemmas = f.lemmas;
    if (given("t-points")) cfg.check.t_points = f.t_points;
    if (given("refine")) cfg.check.refine = f.refine;
    if (given("dump-transform")) cfg.dump_transform = f.dump;
    if (given("regime")) cfg.rates.regime = f.regime;
    if (given("policy")) cfg.rates.policy = f.policy;
    if (given("c")) cfg.rates.c = f.c;
    if (given("n-seq")) cfg.rates.n_values = f.n_seq;
    // model flags double as the base point of a rate policy
    if (given("alpha")) cfg.rates.base.alpha = f.alpha;
    if (given("beta")) cfg.rates.base.beta = f.beta;
    if (given("gamma")) cfg.rates.base.gamma = f.gamma;
    if (given("d")) cfg.rates.base.d = f.d;
    if (given("c0")) cfg.rates.base.c0 = f.c0;
    return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and approximate laws of aggregate claims in a three-state health chain", "mclaims"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    Flags f;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    std::map<std::string, std::function<int(const RunConfig&, std::ostream&)>> handlers{
        {"exact", cmd_exact}, {"approx", cmd_approx}, {"compare", cmd_compare},
        {"verify", cmd_verify}, {"rates", cmd_rates}, {"sweep", cmd_sweep}};
    const std::map<std::string, std::string> help{
        {"exact", "exact law of the n-period claim sum"},
        {"approx", "signed approximating measure recovered from its transform"},
        {"compare", "distances between the exact law and an approximation"},
        {"verify", "check the pointwise and integral bounds on a parameter box"},
        {"rates", "error sequence and rate fit under a scaling policy"},
        {"sweep", "aggregate CSV over the bound catalogue and rate fits"}};

    for (const auto& [name, _] : handlers) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        auto& o = options[name];
        add_common(sub, f, o);
        if (name == "exact") {
            o["engine"] = sub->add_option("--engine", f.engine, "dp | enum | sample");
            o["samples"] = sub->add_option("--samples", f.samples, "number of simulated paths");
        }
        if (name == "approx") o["dump-transform"] = sub->add_option("--dump-transform", f.dump, "emit a named transform on the grid");
        if (name == "verify" || name == "sweep") {
            o["suite"] = sub->add_option("--suite", f.suite, "exact-constant | constant-fit | all");
            o["lemma"] = sub->add_option("--lemma", f.lemmas, "bound id (repeatable)");
            o["t-points"] = sub->add_option("--t-points", f.t_points, "t nodes per parameter point");
            o["refine"] = sub->add_flag("--refine", f.refine, "repeat on a doubled t grid");
        }
        if (name == "rates") {
            o["regime"] = sub->add_option("--regime", f.regime, "general | alpha-separated | death-dominated | total-variation | nonuniform");
            o["policy"] = sub->add_option("--policy", f.policy, "fixed | alpha-gamma-inverse-n | gamma-inverse-n");
            o["c"] = sub->add_option("--c", f.c, "scaling constant of the policy");
            o["n-seq"] = sub->add_option("--n-seq", f.n_seq, "geometric n sequence");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << tool_version << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        print_error(err, "config", static_cast<int>(ErrorCode::config), e.what());
        return static_cast<int>(ErrorCode::config);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const RunConfig cfg = resolve(command, f, options.at(command));
        const int rc = handlers.at(command)(cfg, out);
        if (rc == exit_verification_failed)
            print_error(err, "verification", rc, "one or more exact-constant bounds were violated");
        return rc;
    } catch (const Error& e) {
        print_error(err, std::string(to_string(e.code())), static_cast<int>(e.code()), e.what());
        return static_cast<int>(e.code());
    } catch (const nlohmann::json::exception& e) {
        print_error(err, "config", static_cast<int>(ErrorCode::config), e.what());
        return static_cast<int>(ErrorCode::config);
    } catch (const std::exception& e) {
        print_error(err, "internal", 1, e.what());
        return 1;
    }
}

}  // namespace mclaims
