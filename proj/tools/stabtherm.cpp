// Copyright 2026 The stabtherm Authors
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


#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stabtherm/bath.hpp"
#include "stabtherm/errors.hpp"
#include "stabtherm/experiment.hpp"
#include "stabtherm/io.hpp"
#include "stabtherm/trotter.hpp"
#include "stabtherm/verifier.hpp"

using namespace stabtherm;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kCapacity = 3, kNumerical = 4 };

struct ModelFlags {
    std::string type = "toric";
    std::size_t L = 2;
    double lambda_e = 1.0;
    double lambda_m = 1.0;
    double lambda = 1.0;

    void add(CLI::App* app) {
        app->add_option("--model", type, "toric or mini-vertex")
            ->check(CLI::IsMember({"toric", "mini-vertex"}))
            ->capture_default_str();
        app->add_option("--L", L, "torus size")->capture_default_str();
        app->add_option("--lambda-e", lambda_e, "vertex coupling (toric)")->capture_default_str();
        app->add_option("--lambda-m", lambda_m, "plaquette coupling (toric)")->capture_default_str();
        app->add_option("--lambda", lambda, "vertex coupling (mini-vertex)")->capture_default_str();
    }

    Json json() const {
        if (type == "toric") return {{"type", type}, {"L", L}, {"lambda_e", lambda_e}, {"lambda_m", lambda_m}};
        return {{"type", type}, {"lambda", lambda}};
    }

    ModelSpec spec() const { return parse_config({{"model", json()}}).model; }
};

struct DynamicsFlags {
    std::string type = "davies";
    double beta = 1.0;
    double gamma0 = 0.1;
    double g = -1.0;
    double t = 0.0;
    std::size_t steps = 1;
    std::string reset = "rate";
    std::size_t reset_interval = 1;
    std::string initial = "mixed";
    std::string observables = "energy,vertex,gibbs_distance";
    std::string json_out, csv_out, schedule_out;
    std::uint64_t seed = 1;

    void add(CLI::App* app, bool evolve) {
        app->add_option("--dynamics", type, "davies, rwa, composite" + std::string(evolve ? " or trotterized" : ""))
            ->capture_default_str();
        app->add_option("--beta", beta, "inverse temperature in units of 1/lambda")->capture_default_str();
        app->add_option("--gamma0", gamma0, "bath rate")->capture_default_str();
        app->add_option("--g", g, "ancilla coupling (default 0.05 * smallest ancilla frequency)");
        if (evolve) {
            app->add_option("--t", t, "evolution time")->required();
            app->add_option("--N", steps, "Trotter steps")->capture_default_str();
            app->add_option("--reset", reset, "rate, full or measured")->capture_default_str();
            app->add_option("--reset-interval", reset_interval, "Trotter steps per reset round")->capture_default_str();
            app->add_option("--initial", initial, "mixed, zero or random")->capture_default_str();
            app->add_option("--emit-schedule", schedule_out, "write the Trotter schedule (JSON lines)");
        }
        app->add_option("--observables", observables, "comma-separated observable list")->capture_default_str();
        app->add_option("--json", json_out, "result JSON path");
        app->add_option("--csv", csv_out, "result CSV path");
        app->add_option("--seed", seed, "seed for random initial states")->capture_default_str();
    }

    Json json(bool evolve) const {
        Json d{{"type", type}, {"beta", beta}, {"gamma0", gamma0}};
        if (g > 0.0) d["g"] = g;
        if (evolve) {
            d["t"] = t;
            d["initial"] = initial;
            if (type == "trotterized") {
                d["N"] = steps;
                d["reset"] = reset;
                d["reset_interval"] = reset_interval;
            }
        }
        return d;
    }
};

Json observable_list(const std::string& csv) {
    Json out = Json::array();
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int run_config(const ExperimentConfig& c) {
    const ExperimentResult r = run_experiment(c);
    write_outputs(c, r);
    if (c.output.json.empty()) {
        std::cout << r.json.dump(2) << '\n';
    } else {
        std::cout << "config_hash " << r.json["config_hash"].get<std::string>() << '\n';
        std::cout << "wrote " << c.output.json << '\n';
    }
    if (!c.output.csv.empty()) std::cout << "wrote " << c.output.csv << '\n';
    if (!c.output.schedule.empty()) std::cout << "wrote " << c.output.schedule << '\n';
    return kOk;
}

Json config_from_flags(const ModelFlags& m, const DynamicsFlags& d, bool evolve) {
    Json j{{"model", m.json()}, {"dynamics", d.json(evolve)}, {"observables", observable_list(d.observables)},
           {"seed", d.seed}};
    Json out = Json::object();
    if (!d.json_out.empty()) out["json"] = d.json_out;
    if (!d.csv_out.empty()) out["csv"] = d.csv_out;
    if (!d.schedule_out.empty()) out["schedule"] = d.schedule_out;
    if (!out.empty()) j["output"] = out;
    return j;
}

std::vector<EigenoperatorDecomposition> all_decompositions(const StabilizerHamiltonian& h) {
    std::vector<EigenoperatorDecomposition> out;
    for (std::size_t q = 0; q < h.num_qubits(); ++q) {
        out.push_back(eigenoperator_decomposition(h, q, Axis::X));
        out.push_back(eigenoperator_decomposition(h, q, Axis::Z));
    }
    return out;
}

Matrix initial_for_schedule(const std::string& kind, std::size_t n, std::uint64_t seed) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    if (kind == "mixed") return Matrix::Identity(dim, dim) / static_cast<double>(dim);
    if (kind == "zero") {
        Matrix m = Matrix::Zero(dim, dim);
        m(0, 0) = 1.0;
        return m;
    }
    if (kind == "plus") return Matrix::Constant(dim, dim, 1.0 / static_cast<double>(dim));
    if (kind == "random") {
        std::mt19937_64 rng(seed);
        return random_density_matrix(static_cast<std::size_t>(dim), rng);
    }
    std::ifstream in(kind);
    if (!in) throw ValidationError("--initial: expected mixed, zero, plus, random or a state JSON file");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("--initial: ") + e.what());
    }
    return matrix_from_json(j.contains("state") ? j.at("state") : j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabtherm: engineered thermalization of stabilizer Hamiltonians", "stabtherm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    // build-model
    auto* build = app.add_subcommand("build-model", "emit lattice and Hamiltonian JSON");
    ModelFlags build_model;
    std::string build_out;
    build_model.add(build);
    build->add_option("--out", build_out, "output path (stdout when omitted)");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "Fourier components of a local Pauli");
    ModelFlags dec_model;
    std::size_t dec_site = 0;
    std::string dec_axis = "x", dec_json;
    dec_model.add(decompose);
    decompose->add_option("--site", dec_site, "qubit index")->required();
    decompose->add_option("--axis", dec_axis, "x, y or z")->check(CLI::IsMember({"x", "y", "z"}))->capture_default_str();
    decompose->add_option("--json", dec_json, "also write the decomposition as JSON");

    // thermalize / steady-state
    auto* thermalize = app.add_subcommand("thermalize", "evolve under the thermalizing dynamics");
    ModelFlags th_model;
    DynamicsFlags th_dyn;
    th_model.add(thermalize);
    th_dyn.add(thermalize, true);

    auto* steady = app.add_subcommand("steady-state", "kernel of the generator and its steady state");
    ModelFlags ss_model;
    DynamicsFlags ss_dyn;
    ss_model.add(steady);
    ss_dyn.add(steady, false);

    // verify
    auto* verify = app.add_subcommand("verify", "fixed-point, ergodicity and attractor checks");
    ModelFlags v_model;
    std::string v_check = "appendix", v_jumps = "full";
    double v_beta = 1.0, v_gamma0 = 0.1, v_tmax = 50.0;
    std::size_t v_trials = 5;
    std::uint64_t v_seed = 1;
    bool v_details = false;
    v_model.add(verify);
    verify->add_option("check", v_check, "appendix, ergodicity or attractor")
        ->check(CLI::IsMember({"appendix", "ergodicity", "attractor"}))
        ->required();
    verify->add_option("--beta", v_beta, "inverse temperature in units of 1/lambda")->capture_default_str();
    verify->add_option("--gamma0", v_gamma0, "bath rate")->capture_default_str();
    verify->add_option("--jumps", v_jumps, "full or translation (ergodicity)")
        ->check(CLI::IsMember({"full", "translation"}))
        ->capture_default_str();
    verify->add_option("--trials", v_trials, "random starts (attractor)")->capture_default_str();
    verify->add_option("--t-max", v_tmax, "propagation time (attractor)")->capture_default_str();
    verify->add_option("--seed", v_seed, "seed (attractor)")->capture_default_str();
    verify->add_flag("--details", v_details, "list per-link residuals");

    // compile
    auto* compile = app.add_subcommand("compile", "compile a Pauli exponential or a Trotter schedule");
    std::string c_pauli, c_emit, c_reset = "rate";
    double c_phi = 0.0, c_beta = 1.0, c_gamma0 = 0.1, c_t = 1.0, c_g = -1.0;
    std::size_t c_steps = 1, c_interval = 1;
    compile->add_option("--pauli", c_pauli, "Pauli string, e.g. ZZZZ or \"-1 XIZY\"");
    compile->add_option("--phi", c_phi, "angle of exp(-i phi P)")->capture_default_str();
    compile->add_option("--emit-schedule", c_emit, "write the schedule (JSON lines)");
    auto* c_trotter = compile->add_flag("--trotter", "trotterize the mini-vertex composite model instead");
    compile->add_option("--beta", c_beta, "inverse temperature (trotter)")->capture_default_str();
    compile->add_option("--gamma0", c_gamma0, "ancilla decay rate (trotter)")->capture_default_str();
    compile->add_option("--g", c_g, "ancilla coupling (trotter)");
    compile->add_option("--t", c_t, "total time (trotter)")->capture_default_str();
    compile->add_option("--N", c_steps, "Trotter steps")->capture_default_str();
    compile->add_option("--reset", c_reset, "rate, full or measured")
        ->check(CLI::IsMember({"rate", "full", "measured"}))
        ->capture_default_str();
    compile->add_option("--reset-interval", c_interval, "Trotter steps per reset round")->capture_default_str();

    // simulate-schedule
    auto* simulate = app.add_subcommand("simulate-schedule", "apply a schedule to a state (exact channel)");
    std::string s_path, s_initial = "zero", s_out;
    std::size_t s_reps = 1;
    std::uint64_t s_seed = 1;
    simulate->add_option("schedule", s_path, "schedule file (JSON lines)")->required();
    simulate->add_option("--initial", s_initial, "mixed, zero, plus, random or a state JSON file")->capture_default_str();
    simulate->add_option("--repetitions", s_reps, "apply the schedule this many times")->capture_default_str();
    simulate->add_option("--out", s_out, "write the final state as JSON");
    simulate->add_option("--seed", s_seed, "seed for --initial random")->capture_default_str();

    // run
    auto* run = app.add_subcommand("run", "run an experiment config");
    std::string r_path;
    run->add_option("config", r_path, "config JSON (see docs/schema)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kConfig;
    }

    try {
        if (*build) {
            const ModelSpec spec = build_model.spec();
            Json out{{"model", build_model.json()}, {"hamiltonian", hamiltonian_to_json(build_hamiltonian(spec))}};
            if (spec.type == "toric") out["lattice"] = lattice_to_json(build_torus(spec.L));
            if (build_out.empty()) {
                std::cout << out.dump(2) << '\n';
            } else {
                std::ofstream f(build_out);
                if (!f) throw ValidationError("cannot write '" + build_out + "'");
                f << out.dump(2) << '\n';
            }
            return kOk;
        }
        if (*decompose) {
            const auto h = build_hamiltonian(dec_model.spec());
            if (dec_site >= h.num_qubits()) throw ValidationError("--site: out of range");
            const auto d = eigenoperator_decomposition(h, dec_site, parse_axis(dec_axis));
            const Json j = decomposition_to_json(d);
            std::cout << "site " << dec_site << " axis " << dec_axis << '\n';
            std::cout << "k  epsilon  norm  terms\n";
            for (std::size_t k = 0; k < j["components"].size(); ++k) {
                const auto& c = j["components"][k];
                std::cout << k << "  " << c["epsilon"].get<double>() << "  " << c["normalized_norm"].get<double>()
                          << "  " << c["lowering"].size() << '\n';
            }
            if (!dec_json.empty()) {
                std::ofstream f(dec_json);
                if (!f) throw ValidationError("cannot write '" + dec_json + "'");
                f << j.dump(2) << '\n';
            }
            return kOk;
        }
        if (*thermalize) return run_config(parse_config(config_from_flags(th_model, th_dyn, true)));
        if (*steady) return run_config(parse_config(config_from_flags(ss_model, ss_dyn, false)));
        if (*verify) {
            const ModelSpec spec = v_model.spec();
            const double beta = v_beta / energy_unit(spec);
            if (v_check == "appendix") {
                if (spec.type != "toric") throw ValidationError("verify appendix: needs --model toric");
                const auto rep = verify_appendix(spec.L, spec.lambda_e, spec.lambda_m, beta);
                std::cout << fixed_point_report_to_json(rep, v_details).dump(2) << '\n';
                return kOk;
            }
            const auto h = build_hamiltonian(spec);
            DaviesOptions dopt;
            if (v_jumps == "translation") dopt.include_lowering = dopt.include_raising = false;
            const auto gen = davies_reduction(h, all_decompositions(h), beta, v_gamma0, dopt);
            if (v_check == "ergodicity") {
                const auto rep = ergodicity_check(gen);
                std::cout << Json{{"jumps", v_jumps},
                                  {"commutant_dimension", rep.commutant_dimension},
                                  {"lower_bound_only", rep.saturated},
                                  {"ergodic", rep.ergodic},
                                  {"residual", rep.residual}}
                                 .dump(2)
                          << '\n';
                return kOk;
            }
            AttractorOptions aopt;
            aopt.seed = v_seed;
            const auto rep = uniqueness_and_attractor_probe(gen, v_trials, v_tmax, aopt);
            std::cout << Json{{"kernel_dimension", rep.kernel_dimension},
                              {"distances", rep.distances},
                              {"max_distance", rep.max_distance},
                              {"max_pairwise_distance", rep.max_pairwise_distance},
                              {"gibbs_distance", trace_distance(rep.reference, gibbs_state(h, beta))}}
                             .dump(2)
                      << '\n';
            return kOk;
        }
        if (*compile) {
            GateSchedule s;
            Json summary;
            if (*c_trotter) {
                ModelSpec mini;
                mini.type = "mini-vertex";
                const auto h = build_hamiltonian(mini);
                BathOptions bo;
                bo.coupling = c_g;
                auto [model, gen] = attach_ancillas(h, {eigenoperator_decomposition(h, 0, Axis::X)}, c_beta, c_gamma0, bo);
                const ResetMode mode = c_reset == "full" ? ResetMode::Full
                                       : c_reset == "measured" ? ResetMode::Measured
                                                               : ResetMode::Rate;
                s = trotterize(lab_frame_model(model), c_t, c_steps, mode, c_interval);
                summary["model"] = "mini-vertex + 1 ancilla";
            } else {
                if (c_pauli.empty()) throw ValidationError("compile: give --pauli or --trotter");
                const auto p = PauliString::from_text(c_pauli);
                s = compile_pauli_exponential(p, c_phi);
                summary["pauli"] = p.str();
                summary["phi"] = c_phi;
                summary["distance_to_exact"] =
                    phase_insensitive_distance(schedule_unitary(s), unitary_propagator(p.to_dense(), c_phi));
            }
            std::map<std::string, std::size_t> counts;
            for (const auto& g : s.gates) ++counts[gate_kind_name(g.kind)];
            summary["num_qubits"] = s.num_qubits;
            summary["num_bits"] = s.num_bits;
            summary["num_gates"] = s.gates.size();
            summary["gate_counts"] = counts;
            if (!c_emit.empty()) {
                save_schedule(c_emit, s);
                summary["schedule"] = c_emit;
            }
            std::cout << summary.dump(2) << '\n';
            return kOk;
        }
        if (*simulate) {
            const GateSchedule s = load_schedule(s_path);
            const Matrix rho0 = initial_for_schedule(s_initial, s.num_qubits, s_seed);
            const Matrix rho = simulate_schedule(s, rho0, s_reps);
            Json summary{{"num_qubits", s.num_qubits},
                         {"num_gates", s.gates.size()},
                         {"repetitions", s_reps},
                         {"trace", rho.trace().real()},
                         {"purity", (rho * rho).trace().real()},
                         {"min_eigenvalue", min_eigenvalue(rho)}};
            if (!s_out.empty()) {
                std::ofstream f(s_out);
                if (!f) throw ValidationError("cannot write '" + s_out + "'");
                f << Json{{"state", matrix_to_json(rho)}}.dump() << '\n';
                summary["state"] = s_out;
            }
            std::cout << summary.dump(2) << '\n';
            return kOk;
        }
        if (*run) return run_config(load_config(r_path));
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kCapacity;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    std::cerr << app.help();
    return kConfig;
}
