// Command-line front end: every library operation behind one binary with
// reproducible configs and machine-readable reports.
//
// Exit codes: 0 success, 1 check failure, 2 usage or validation, 3 I/O.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cwork/cwp.hpp"
#include "cwork/deconvolve.hpp"
#include "cwork/fluctuation.hpp"
#include "cwork/io.hpp"
#include "cwork/ladder.hpp"
#include "cwork/potential.hpp"
#include "cwork/rng.hpp"

namespace {

using namespace cwork;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// --------------------------------------------------------------- output ----

void emit(const std::string& out_path, const Json& report) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
    }
}

Json wrap_report(const char* command, Json config, Json payload, const Json& tolerances) {
    // hash before the move below; braced-init elements evaluate left to right
    std::string hash = config_hash(config);
    return Json{{"command", command},
                {"config", std::move(config)},
                {"config_hash", std::move(hash)},
                {"tolerances", tolerances},
                {"report", std::move(payload)}};
}

// Config file keys override flag values.
template <typename T>
void override_from(const Json& config, const char* key, T& value) {
    if (auto it = config.find(key); it != config.end()) {
        value = it->get<T>();
    }
}

Json load_config_overrides(const std::string& path) {
    if (path.empty()) {
        return Json::object();
    }
    Json j = load_json_file(path);
    if (!j.is_object()) {
        throw Error("config: expected a JSON object");
    }
    return j;
}

std::vector<double> load_phase_file(const std::string& path) {
    if (path.empty()) {
        return {};
    }
    Json j = load_json_file(path);
    if (!j.is_array()) {
        throw Error("phases: expected a JSON array of numbers");
    }
    std::vector<double> phases;
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw Error("phases: entries must be numbers");
        }
        phases.push_back(v.get<double>());
    }
    return phases;
}

// ------------------------------------------------------------ decompose ----

struct DecomposeArgs {
    std::string input_path;
    std::string config_path;
    std::string out_path;
    double tol = 1e-8;
    int exhaustive_cap = 16;
    int restarts = 20;
    std::uint64_t seed = 0x5eedULL;
};

int run_decompose(DecomposeArgs args) {
    const Json overrides = load_config_overrides(args.config_path);
    override_from(overrides, "tol", args.tol);
    override_from(overrides, "exhaustive_cap", args.exhaustive_cap);
    override_from(overrides, "restarts", args.restarts);
    override_from(overrides, "seed", args.seed);

    const EnergyDistribution p = distribution_from_json(load_json_file(args.input_path));

    DeconvolveOptions options;
    options.tol = args.tol;
    options.exhaustive_cap = args.exhaustive_cap;
    options.restarts = args.restarts;
    options.seed = args.seed;
    const DeconvolveResult result = deconvolve(p, options);

    Json config{{"input", distribution_to_json(p)},
                {"tol", options.tol},
                {"exhaustive_cap", options.exhaustive_cap},
                {"restarts", options.restarts},
                {"seed", options.seed}};
    emit(args.out_path,
         wrap_report("decompose", std::move(config), deconvolve_result_to_json(result),
                     tolerance_set()));
    return kExitOk;
}

// ------------------------------------------------------------ cwp build ----

struct CwpBuildArgs {
    std::string p_path, q_path, r_path;
    std::string phases_q_path, phases_r_path;
    std::string input_path;
    std::string config_path;
    std::string out_path;
};

int run_cwp_build(const CwpBuildArgs& args) {
    const EnergyDistribution p = distribution_from_json(load_json_file(args.p_path));
    const EnergyDistribution q = distribution_from_json(load_json_file(args.q_path));
    const EnergyDistribution r = distribution_from_json(load_json_file(args.r_path));
    const std::vector<double> phases_q = load_phase_file(args.phases_q_path);
    const std::vector<double> phases_r = load_phase_file(args.phases_r_path);

    const EnergyConservingUnitary v = build_cwp_unitary(p, q, r, phases_q, phases_r);

    LadderState input;
    if (!args.input_path.empty()) {
        input = state_from_json(load_json_file(args.input_path));
    } else {
        std::vector<Complex> amps(p.weights.size());
        for (std::size_t i = 0; i < p.weights.size(); ++i) {
            amps[i] = std::sqrt(p.weights[i]);
        }
        input = LadderState::from(p.offset, std::move(amps));
    }
    const CwpRecord record = apply_cwp(v, input);

    Json config{{"p", distribution_to_json(p)},
                {"q", distribution_to_json(q)},
                {"r", distribution_to_json(r)},
                {"phases_q", phases_q},
                {"phases_r", phases_r},
                {"input", state_to_json(input)}};
    emit(args.out_path, wrap_report("cwp build", std::move(config),
                                    cwp_record_to_json(record, v), tolerance_set()));
    return kExitOk;
}

// ------------------------------------------------------------ cwp check ----

int run_cwp_check(const std::string& record_path) {
    const Json file = load_json_file(record_path);
    const Json& body = file.contains("report") ? file.at("report") : file;
    const StoredCwpRecord stored = cwp_record_from_json(body);

    int failures = 0;
    auto check = [&](const char* name, bool ok, double value) {
        std::printf("%s  %s (%.3e)\n", ok ? "PASS" : "FAIL", name, value);
        if (!ok) {
            ++failures;
        }
    };

    const double unitarity = stored.unitary.unitarity_residual();
    check("unitary within tolerance", unitarity <= 1e-10, unitarity);
    const double commutation = stored.unitary.commutation_residual();
    check("energy conservation", commutation <= 1e-10, commutation);

    const CwpRecord fresh = apply_cwp(stored.unitary, stored.record.input);
    const double d_out = 1.0 - fidelity(fresh.output, stored.record.output);
    check("output state reproduced", d_out <= 1e-10, d_out);
    const double d_work = 1.0 - fidelity(fresh.work, stored.record.work);
    check("work state reproduced", d_work <= 1e-10, d_work);
    check("product output", fresh.product_fidelity >= 1.0 - 1e-8, 1.0 - fresh.product_fidelity);

    const EnergyDistribution p_in = energy_distribution(stored.record.input);
    const EnergyDistribution conv = convolve(energy_distribution(stored.record.output),
                                             energy_distribution(stored.record.work));
    double conv_residual = 0.0;
    for (int n = std::min(p_in.support_lo(), conv.support_lo());
         n <= std::max(p_in.support_hi(), conv.support_hi()); ++n) {
        conv_residual = std::max(conv_residual, std::abs(p_in.at(n) - conv.at(n)));
    }
    check("input = output * work", conv_residual <= 1e-10, conv_residual);

    return failures == 0 ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------ potential ----

struct PotentialArgs {
    std::string state_path;
    std::string beta_grid = "0:5:0.05";
    std::string config_path;
    std::string out_path;
};

std::vector<double> parse_beta_grid(const std::string& text) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0 ||
        hi < lo) {
        throw Error("beta-grid: expected lo:hi:step with step > 0 and hi >= lo");
    }
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double b = lo + step * i;
        if (b > hi + step * 1e-9) {
            break;
        }
        grid.push_back(b);
    }
    return grid;
}

int run_potential(PotentialArgs args) {
    const Json overrides = load_config_overrides(args.config_path);
    override_from(overrides, "beta_grid", args.beta_grid);

    const LadderState psi = state_from_json(load_json_file(args.state_path));
    const std::vector<double> grid = parse_beta_grid(args.beta_grid);
    const EnergyDistribution p = energy_distribution(psi);
    const std::vector<double> kappa = cumulants(p, psi.spectrum, 4);

    Json config{{"state", state_to_json(psi)}, {"beta_grid", args.beta_grid}};
    std::string csv = "# config_hash=" + config_hash(config) + "\n";
    csv += "# tolerances=" + tolerance_set().dump() + "\n";
    csv += "beta,lambda,kappa1,kappa2,kappa3,kappa4,chi_m,beta_m\n";
    for (double beta : grid) {
        const double lambda = effective_potential(beta, p, psi.spectrum);
        const MeanCoherenceReport mc = mean_coherence(p, psi.spectrum, beta);
        csv += format_double(beta);
        csv += ',';
        csv += format_double(lambda);
        for (int k = 0; k < 4; ++k) {
            csv += ',';
            csv += format_double(kappa[k]);
        }
        csv += ',';
        csv += format_double(mc.chi_m);
        csv += ',';
        csv += format_double(mc.beta_m);
        csv += '\n';
    }
    if (args.out_path.empty()) {
        std::cout << csv;
    } else {
        write_text_file(args.out_path, csv);
    }
    return kExitOk;
}

// ------------------------------------------------------------ crooks -------

struct CrooksArgs {
    std::string config_path;
    std::string out_path;
};

LadderState scenario_state(const Json& scenario, const char* key) {
    const std::string file_key = std::string(key) + "_file";
    if (auto it = scenario.find(file_key); it != scenario.end()) {
        if (!it->is_string()) {
            throw Error(std::string("scenario: field '") + file_key + "' must be a string path");
        }
        return state_from_json(load_json_file(it->get<std::string>()));
    }
    if (auto it = scenario.find(key); it != scenario.end()) {
        return state_from_json(*it);
    }
    throw Error(std::string("scenario: missing field '") + key + "'");
}

std::vector<double> number_list(const Json& j, const char* object_name, const char* field) {
    if (!j.is_array()) {
        throw Error(std::string(object_name) + ": field '" + field + "' must be an array");
    }
    std::vector<double> values;
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw Error(std::string(object_name) + ": field '" + field +
                        "' entries must be numbers");
        }
        values.push_back(v.get<double>());
    }
    return values;
}

int run_crooks(const CrooksArgs& args) {
    if (args.config_path.empty()) {
        throw Error("crooks run: --config is required");
    }
    const Json scenario = load_json_file(args.config_path);
    if (!scenario.is_object()) {
        throw Error("scenario: expected a JSON object");
    }
    if (!scenario.contains("version") || !scenario["version"].is_number_integer() ||
        scenario["version"].get<int>() != 1) {
        throw Error("scenario: field 'version' must be the integer 1");
    }

    const LadderState psi0 = scenario_state(scenario, "psi0");
    const LadderState psi1 = scenario_state(scenario, "psi1");

    std::uint64_t seed = 0x5eedULL;
    override_from(scenario, "seed", seed);
    std::vector<double> betas{1.0};
    if (auto it = scenario.find("betas"); it != scenario.end()) {
        betas = number_list(*it, "scenario", "betas");
    }
    for (double b : betas) {
        if (!(b > 0.0)) {
            throw Error("scenario: field 'betas' entries must be positive");
        }
    }

    std::vector<double> h0{0.0, 1.0};
    std::vector<double> h1{0.0, 1.0};
    std::vector<double> h_other;
    if (auto it = scenario.find("bath"); it != scenario.end()) {
        if (!it->is_object() || !it->contains("h0") || !it->contains("h1")) {
            throw Error("scenario: field 'bath' must be an object with 'h0' and 'h1'");
        }
        h0 = number_list((*it)["h0"], "bath", "h0");
        h1 = number_list((*it)["h1"], "bath", "h1");
        if (auto o = it->find("other"); o != it->end()) {
            h_other = number_list(*o, "bath", "other");
        }
    }

    // System energies: explicit list, else the states' spectrum, else unit.
    const int dim_s = std::max(psi0.support_hi(), psi1.support_hi()) + 1;
    if (psi0.support_lo() < 0 || psi1.support_lo() < 0) {
        throw Error("scenario: state supports must lie at nonnegative indices");
    }
    std::vector<double> s_energies(dim_s);
    if (auto it = scenario.find("system_levels"); it != scenario.end()) {
        s_energies = number_list(*it, "scenario", "system_levels");
        if (static_cast<int>(s_energies.size()) < dim_s) {
            throw Error("scenario: field 'system_levels' must cover both state supports");
        }
    } else {
        for (int i = 0; i < dim_s; ++i) {
            s_energies[i] = psi0.spectrum.contains(i) ? psi0.spectrum.energy(i)
                                                      : static_cast<double>(i);
        }
    }
    EnergySpectrum h_s;
    h_s.lo = 0;
    h_s.levels = s_energies;

    std::vector<std::string> checks{"crooks", "mean-coherence", "relative-entropy"};
    if (auto it = scenario.find("checks"); it != scenario.end()) {
        checks.clear();
        for (const auto& c : *it) {
            if (!c.is_string()) {
                throw Error("scenario: field 'checks' entries must be strings");
            }
            checks.push_back(c.get<std::string>());
        }
    }
    auto requested = [&](const char* name) {
        for (const auto& c : checks) {
            if (c == name) {
                return true;
            }
        }
        return false;
    };
    for (const auto& c : checks) {
        if (c != "crooks" && c != "effective-potential" && c != "cumulant" &&
            c != "mean-coherence" && c != "relative-entropy" && c != "coherent-work" &&
            c != "semiclassical") {
            throw Error("scenario: unknown check '" + c + "'");
        }
    }

    Json tolerances = tolerance_set();
    if (auto it = scenario.find("tolerances"); it != scenario.end()) {
        for (auto& [key, value] : it->items()) {
            if (!value.is_number() || value.get<double>() <= 0.0) {
                throw Error("scenario: field 'tolerances." + key + "' must be a positive number");
            }
            tolerances[key] = value;
        }
    }
    const double tol_crooks = tolerances.value("crooks_agreement", 1e-9);
    const double tol_forms = tolerances.value("potential_identity", 1e-9);
    const double tol_cumulant = tolerances.value("cumulant_agreement", 1e-6);
    const double tol_semiclassical = tolerances.value("semiclassical_agreement", 1e-8);

    const EnergyDistribution p0 = energy_distribution(psi0);
    const EnergyDistribution p1 = energy_distribution(psi1);

    bool all_pass = true;
    Json rows = Json::array();
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
        const double beta = betas[bi];
        const BathModel bath = BathModel::make(h0, h1, beta, h_other);
        const ProtocolUnitary v =
            sample_protocol_unitary(s_energies, bath, Rng::derive(seed, bi));

        Json row{{"beta", beta}};
        if (requested("crooks") || requested("effective-potential")) {
            try {
                const CrooksReport report = crooks_check(psi0, psi1, bath, v);
                row["crooks"] = crooks_report_to_json(report);
                row["crooks"]["pass"] = report.agreement <= tol_crooks;
                if (report.agreement > tol_crooks) {
                    all_pass = false;
                }
            } catch (const ReverseZero& e) {
                row["warning"] = e.what();
            }
        }

        const double lambda0 = effective_potential(beta, p0, h_s);
        const double lambda1 = effective_potential(beta, p1, h_s);
        const double rhs = -beta * bath.delta_f - (lambda1 - lambda0);

        Json forms;
        if (requested("mean-coherence")) {
            const MeanCoherenceReport mc0 = mean_coherence(p0, h_s, beta);
            const MeanCoherenceReport mc1 = mean_coherence(p1, h_s, beta);
            const double w_s = p1.mean_energy(h_s) - p0.mean_energy(h_s);
            const double form = -beta * bath.delta_f - beta * w_s +
                                beta * beta / (8.0 * std::numbers::pi) * (mc1.chi_m - mc0.chi_m);
            const double dev = std::abs(form - rhs);
            forms["mean_coherence_deviation"] = dev;
            forms["mean_coherence_pass"] = dev <= tol_forms;
            if (dev > tol_forms) {
                all_pass = false;
            }
        }
        if (requested("relative-entropy")) {
            const EnergyDistribution pt0 = gibbs_rescale(p0, h_s, beta);
            const EnergyDistribution pt1 = gibbs_rescale(p1, h_s, beta);
            const double w_tilde = pt1.mean_energy(h_s) - pt0.mean_energy(h_s);
            const double form = -beta * bath.delta_f - beta * w_tilde +
                                relative_entropy(pt0, p0) - relative_entropy(pt1, p1);
            const double dev = std::abs(form - rhs);
            forms["relative_entropy_deviation"] = dev;
            forms["relative_entropy_pass"] = dev <= tol_forms;
            if (dev > tol_forms) {
                all_pass = false;
            }
        }
        if (requested("cumulant")) {
            if (beta <= 1.0) {
                const std::vector<double> k0 = cumulants(p0, h_s, 8);
                const std::vector<double> k1 = cumulants(p1, h_s, 8);
                const double form = -beta * bath.delta_f -
                                    (cumulant_series(beta, k1) - cumulant_series(beta, k0));
                const double dev = std::abs(form - rhs);
                forms["cumulant_deviation"] = dev;
                forms["cumulant_pass"] = dev <= tol_cumulant;
                if (dev > tol_cumulant) {
                    all_pass = false;
                }
            } else {
                forms["cumulant_skipped"] = "series form certified for beta <= 1 only";
            }
        }
        if (!forms.is_null()) {
            row["forms"] = std::move(forms);
        }

        if (requested("semiclassical")) {
            double alpha0 = 1.0, alpha1 = 0.5, hnu = 1.0;
            int truncation = 60;
            if (auto it = scenario.find("semiclassical"); it != scenario.end()) {
                override_from(*it, "alpha0", alpha0);
                override_from(*it, "alpha1", alpha1);
                override_from(*it, "hnu", hnu);
                override_from(*it, "truncation", truncation);
            }
            const SemiclassicalReport sc =
                semiclassical_relation(alpha0, alpha1, beta, hnu, bath, truncation);
            row["semiclassical"] = Json{{"hnu_th", sc.hnu_th},
                                        {"w_bar_b", sc.w_bar_b},
                                        {"lhs_log_ratio", sc.lhs_log_ratio},
                                        {"rhs_log_ratio", sc.rhs_log_ratio},
                                        {"agreement", sc.agreement},
                                        {"lambda_db", sc.lambda_db},
                                        {"pass", sc.agreement <= tol_semiclassical}};
            if (sc.agreement > tol_semiclassical) {
                all_pass = false;
            }
        }
        rows.push_back(std::move(row));
    }

    Json payload{{"rows", std::move(rows)}};
    if (requested("coherent-work")) {
        LadderState omega;
        bool have_omega = scenario.contains("omega") || scenario.contains("omega_file");
        if (!have_omega) {
            throw Error("scenario: check 'coherent-work' requires field 'omega'");
        }
        omega = scenario_state(scenario, "omega");
        Json cw;
        try {
            const CoherentWorkFtReport report =
                coherent_work_ft_check(psi0, psi1, omega, betas);
            cw = Json{{"direction", report.direction == CwfDirection::ForwardOutput
                                        ? "forward-output"
                                        : "reverse-input"},
                      {"max_deviation", report.max_deviation},
                      {"cwp_verified", report.cwp_verified},
                      {"cwp_fidelity", report.cwp_fidelity},
                      {"pass", true}};
        } catch (const NoMatch& e) {
            cw = Json{{"error", e.what()}, {"pass", false}};
            all_pass = false;
        }
        payload["coherent_work"] = std::move(cw);
    }
    payload["all_pass"] = all_pass;

    // Resolved scenario (states inlined) keeps the hash independent of paths.
    Json resolved = scenario;
    resolved.erase("psi0_file");
    resolved.erase("psi1_file");
    resolved.erase("omega_file");
    resolved["psi0"] = state_to_json(psi0);
    resolved["psi1"] = state_to_json(psi1);
    if (scenario.contains("omega") || scenario.contains("omega_file")) {
        resolved["omega"] = state_to_json(scenario_state(scenario, "omega"));
    }

    Json report{{"command", "crooks run"},
                {"config", resolved},
                {"config_hash", config_hash(resolved)},
                {"tolerances", tolerances},
                {"report", std::move(payload)}};
    emit(args.out_path, report);
    return all_pass ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------ examples -----

int run_examples() {
    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& detail = "") {
        std::printf("%s  %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : ": ",
                    detail.c_str());
        if (!ok) {
            ++failures;
        }
    };

    // Translated two-level superposition: a|0> + b|1> shifts up five rungs
    // while the auxiliary register absorbs five quanta.
    {
        Rng rng(Rng::derive(0x5eedULL, 101));
        bool ok = true;
        double worst = 1.0;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            double wa = 0.0;
            do {
                wa = rng.uniform(1e-3, 1.0 - 1e-3);
            } while (false);
            const double wb = 1.0 - wa;
            const Complex a = std::sqrt(wa) * std::polar(1.0, rng.uniform(0.0, 6.28));
            const Complex b = std::sqrt(wb) * std::polar(1.0, rng.uniform(0.0, 6.28));

            const auto p = EnergyDistribution::from(0, {wa, wb});
            const auto q = EnergyDistribution::from(5, {wa, wb});
            const auto r = EnergyDistribution::point(-5);
            const auto v = build_cwp_unitary(p, q, r);
            const auto record = apply_cwp(v, LadderState::from(0, {a, b}));
            const auto target = LadderState::from(5, {a, b});
            const double f = fidelity(record.output, target);
            const double f_work = fidelity(record.work, LadderState::basis(-5));
            worst = std::min({worst, f, f_work});
            ok = f >= 1.0 - 1e-12 && f_work >= 1.0 - 1e-12;
        }
        report("translated two-level superposition", ok,
               "worst fidelity " + format_double(worst));
    }

    // Factor search on the uniform four-point window: the adjacent pair and
    // the two-spaced pair must both appear.
    DeconvolveResult split;
    {
        const auto p = EnergyDistribution::uniform({0, 1, 2, 3});
        split = deconvolve(p);
        bool found = false;
        for (const auto& f : split.factors) {
            const auto &a = f.first, &b = f.second;
            auto close = [](const EnergyDistribution& d, const std::vector<double>& w) {
                if (d.size() != static_cast<int>(w.size())) {
                    return false;
                }
                for (int i = 0; i < d.size(); ++i) {
                    if (std::abs(d.weights[i] - w[i]) > 1e-6) {
                        return false;
                    }
                }
                return true;
            };
            const bool pair_a = close(a, {0.5, 0.5}) && close(b, {0.5, 0.0, 0.5});
            const bool pair_b = close(a, {0.5, 0.0, 0.5}) && close(b, {0.5, 0.5});
            found = found || pair_a || pair_b;
        }
        report("uniform-window factor search", split.exhaustive && found,
               std::to_string(split.factors.size()) + " factor pairs");
    }

    // End-to-end process on that factorization: uniform window in, adjacent
    // pair out, two-spaced work state, necessarily irreversible.
    {
        const auto p = EnergyDistribution::uniform({0, 1, 2, 3});
        const auto q = EnergyDistribution::uniform({5, 6});
        const auto r = EnergyDistribution::uniform({-5, -3});
        const auto v = build_cwp_unitary(p, q, r);
        std::vector<Complex> amps(4, Complex(0.5, 0.0));
        const auto record = apply_cwp(v, LadderState::from(0, std::move(amps)));
        const auto out_dist = energy_distribution(record.output);
        const auto work_dist = energy_distribution(record.work);
        double dev = 0.0;
        for (int n = 5; n <= 6; ++n) {
            dev = std::max(dev, std::abs(out_dist.at(n) - 0.5));
        }
        dev = std::max(dev, std::abs(work_dist.at(-5) - 0.5));
        dev = std::max(dev, std::abs(work_dist.at(-4)));
        dev = std::max(dev, std::abs(work_dist.at(-3) - 0.5));
        const bool ok = record.product_fidelity >= 1.0 - 1e-8 && dev <= 1e-9 &&
                        !is_reversible(record);
        report("uniform-window end-to-end process", ok, "distribution deviation " + format_double(dev));
    }

    // Work inference must reject an output whose spread grows: no
    // nonnegative work distribution convolves {5,7} up from {0,1}.
    {
        bool rejected = false;
        std::string detail = "no exception";
        try {
            infer_work_distribution(EnergyDistribution::uniform({0, 1}),
                                    EnergyDistribution::uniform({5, 7}));
        } catch (const NoValidProcess& e) {
            rejected = true;
            detail = "rejected as expected";
        }
        report("work inference rejects widened spread", rejected, detail);
    }

    // Mean coherence of the uniform superposition equals the free energy
    // gap between the flat state and the thermal state.
    {
        const int d = 4;
        const double beta = 1.3;
        std::vector<Complex> amps(d, Complex(1.0 / std::sqrt(double(d)), 0.0));
        const auto psi = LadderState::from(0, std::move(amps));
        const auto mc = mean_coherence(psi, beta);
        const double lhs = beta * beta / (8.0 * std::numbers::pi) * mc.chi_m;

        const EnergySpectrum h = EnergySpectrum::unit_ladder();
        double z = 0.0, e_gibbs = 0.0;
        double e_flat = 0.0;
        for (int n = 0; n < d; ++n) {
            z += std::exp(-beta * h.energy(n));
            e_flat += h.energy(n) / d;
        }
        double s_gibbs = 0.0;
        for (int n = 0; n < d; ++n) {
            const double w = std::exp(-beta * h.energy(n)) / z;
            e_gibbs += w * h.energy(n);
            s_gibbs -= w * std::log(w);
        }
        const double f_flat = e_flat - std::log(double(d)) / beta;
        const double f_gibbs = e_gibbs - s_gibbs / beta;
        const double rhs = beta * (f_flat - f_gibbs);
        const double dev = std::abs(lhs - rhs);
        report("uniform-superposition mean coherence", dev <= 1e-10,
               "deviation " + format_double(dev));
    }

    return failures == 0 ? kExitOk : kExitCheckFailed;
}

} // namespace

// ------------------------------------------------------------------ main ---

int main(int argc, char** argv) {
    CLI::App app{"coherent work processes and fluctuation relations"};
    app.require_subcommand(0, 1);

    DecomposeArgs decompose_args;
    CLI::App* cmd_decompose = app.add_subcommand("decompose", "factor an energy distribution");
    cmd_decompose->add_option("input", decompose_args.input_path, "distribution JSON file")
        ->required();
    cmd_decompose->add_option("--tol", decompose_args.tol, "sup-norm acceptance residual");
    cmd_decompose->add_option("--exhaustive-cap", decompose_args.exhaustive_cap,
                              "support size up to which the search is exhaustive");
    cmd_decompose->add_option("--restarts", decompose_args.restarts, "solver restarts per split");
    cmd_decompose->add_option("--seed", decompose_args.seed, "restart seed");
    cmd_decompose->add_option("--config", decompose_args.config_path,
                              "JSON config overriding flags");
    cmd_decompose->add_option("--out", decompose_args.out_path, "report path (default stdout)");

    CLI::App* cmd_cwp = app.add_subcommand("cwp", "build and verify work processes");
    CwpBuildArgs build_args;
    CLI::App* cmd_build = cmd_cwp->add_subcommand("build", "construct the process unitary");
    cmd_build->add_option("--p", build_args.p_path, "input distribution file")->required();
    cmd_build->add_option("--q", build_args.q_path, "output distribution file")->required();
    cmd_build->add_option("--r", build_args.r_path, "work distribution file")->required();
    cmd_build->add_option("--phases-q", build_args.phases_q_path, "output phase profile file");
    cmd_build->add_option("--phases-r", build_args.phases_r_path, "work phase profile file");
    cmd_build->add_option("--input", build_args.input_path,
                          "input state file (default: square roots of p)");
    cmd_build->add_option("--config", build_args.config_path, "JSON config overriding flags");
    cmd_build->add_option("--out", build_args.out_path, "record path (default stdout)");
    std::string check_path;
    CLI::App* cmd_check = cmd_cwp->add_subcommand("check", "re-verify a stored record");
    cmd_check->add_option("record", check_path, "record JSON file")->required();

    PotentialArgs potential_args;
    CLI::App* cmd_potential =
        app.add_subcommand("potential", "effective potential sweep as CSV");
    cmd_potential->add_option("--state", potential_args.state_path, "state JSON file")
        ->required();
    cmd_potential->add_option("--beta-grid", potential_args.beta_grid, "grid as lo:hi:step");
    cmd_potential->add_option("--config", potential_args.config_path,
                              "JSON config overriding flags");
    cmd_potential->add_option("--out", potential_args.out_path, "CSV path (default stdout)");

    CrooksArgs crooks_args;
    CLI::App* cmd_crooks = app.add_subcommand("crooks", "fluctuation relation scenarios");
    CLI::App* cmd_run = cmd_crooks->add_subcommand("run", "run a scenario file");
    cmd_run->add_option("--config", crooks_args.config_path, "scenario JSON file")->required();
    cmd_run->add_option("--out", crooks_args.out_path, "report path (default stdout)");

    CLI::App* cmd_examples =
        app.add_subcommand("examples", "reproduce the built-in worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_decompose->parsed()) {
            return run_decompose(decompose_args);
        }
        if (cmd_cwp->parsed() && cmd_build->parsed()) {
            return run_cwp_build(build_args);
        }
        if (cmd_cwp->parsed() && cmd_check->parsed()) {
            return run_cwp_check(check_path);
        }
        if (cmd_potential->parsed()) {
            return run_potential(potential_args);
        }
        if (cmd_crooks->parsed() && cmd_run->parsed()) {
            return run_crooks(crooks_args);
        }
        if (cmd_examples->parsed()) {
            return run_examples();
        }
        std::cerr << app.help() << std::endl;
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << std::endl;
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return kExitCheckFailed;
    }
}
