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


#include "stabtherm/experiment.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Core>

#include "stabtherm/bath.hpp"
#include "stabtherm/errors.hpp"
#include "stabtherm/lindblad.hpp"
#include "stabtherm/nonabelian.hpp"
#include "stabtherm/toric.hpp"
#include "stabtherm/trotter.hpp"

namespace stabtherm {

namespace {

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ValidationError(path + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ValidationError(path + ": unknown field '" + key + "'");
    }
}

double number(const Json& j, const char* key, const std::string& path, double fallback, bool positive,
              bool allow_zero = false) {
    if (!j.contains(key)) return fallback;
    const Json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(path + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(path + "." + key + ": must be finite");
    if (positive && !(x > 0.0 || (allow_zero && x == 0.0))) {
        throw ValidationError(path + "." + key + (allow_zero ? ": must be non-negative" : ": must be positive"));
    }
    return x;
}

std::size_t count(const Json& j, const char* key, const std::string& path, std::size_t fallback, std::size_t min) {
    if (!j.contains(key)) return fallback;
    const Json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min)) {
        throw ValidationError(path + "." + key + ": expected an integer >= " + std::to_string(min));
    }
    return v.get<std::size_t>();
}

std::string text(const Json& j, const char* key, const std::string& path, const std::string& fallback,
                 std::initializer_list<const char*> choices = {}) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ValidationError(path + "." + key + ": expected a string");
    const auto s = j.at(key).get<std::string>();
    if (choices.size() == 0) return s;
    for (const char* c : choices) {
        if (s == c) return s;
    }
    std::string list;
    for (const char* c : choices) list += std::string(list.empty() ? "" : ", ") + c;
    throw ValidationError(path + "." + key + ": '" + s + "' is not one of " + list);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::size_t num_system_qubits(const ModelSpec& m) { return m.type == "toric" ? 2 * m.L * m.L : 4; }

std::vector<std::pair<std::size_t, Axis>> default_decompositions(const ExperimentConfig& c) {
    if (!c.dynamics.decompositions.empty()) return c.dynamics.decompositions;
    std::vector<std::pair<std::size_t, Axis>> out;
    if (c.dynamics.type == "davies") {
        for (std::size_t q = 0; q < num_system_qubits(c.model); ++q) {
            out.push_back({q, Axis::X});
            out.push_back({q, Axis::Z});
        }
    } else {
        out.push_back({0, Axis::X});
    }
    return out;
}

ResetMode reset_mode(const std::string& s) {
    if (s == "full") return ResetMode::Full;
    if (s == "measured") return ResetMode::Measured;
    return ResetMode::Rate;
}

Matrix initial_state(const std::string& kind, std::size_t dim, std::mt19937_64& rng) {
    const auto n = static_cast<Eigen::Index>(dim);
    if (kind == "zero") {
        Matrix m = Matrix::Zero(n, n);
        m(0, 0) = 1.0;
        return m;
    }
    if (kind == "random") return random_density_matrix(dim, rng);
    return Matrix::Identity(n, n) / static_cast<double>(dim);
}

// lim_{t->inf} e^{Lt} rho0 = R (L^dagger R)^{-1} L^dagger rho0 with R, L the
// right and left kernels.
Matrix kernel_limit(const SparseMatrix& superop, std::size_t dim, const SteadyStateResult& right,
                    const Matrix& rho0) {
    const SparseMatrix adj = SparseMatrix(superop.adjoint());
    KernelOptions ko;
    ko.max_block = std::max<std::size_t>(ko.max_block, 2 * right.kernel_dimension);
    const auto left = steady_states(adj, dim, ko);
    if (left.kernel_dimension != right.kernel_dimension || right.saturated || left.saturated) {
        throw NumericalError("steady state: left and right kernels do not match (" +
                             std::to_string(left.kernel_dimension) + " vs " +
                             std::to_string(right.kernel_dimension) + ")");
    }
    const auto k = static_cast<Eigen::Index>(right.kernel_dimension);
    const auto n = static_cast<Eigen::Index>(dim * dim);
    Matrix r(n, k), l(n, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        r.col(a) = vectorize(right.basis[static_cast<std::size_t>(a)]);
        l.col(a) = vectorize(left.basis[static_cast<std::size_t>(a)]);
    }
    const Matrix overlap = l.adjoint() * r;
    Eigen::FullPivLU<Matrix> lu(overlap);
    if (!lu.isInvertible()) throw NumericalError("steady state: singular kernel overlap");
    const Vector v = r * lu.solve(l.adjoint() * vectorize(rho0));
    Matrix rho = hermitian_part(unvectorize(v, dim));
    return rho / rho.trace();
}

double real_expectation(const Matrix& rho, const Matrix& op) { return (op * rho).trace().real(); }

}  // namespace

const std::vector<std::string>& known_observables() {
    static const std::vector<std::string> names{"energy", "vertex", "plaquette", "loops", "gibbs_distance"};
    return names;
}

ExperimentConfig parse_config(const Json& j) {
    ExperimentConfig c;
    c.raw = j;
    only_keys(j, "config", {"model", "dynamics", "observables", "seed", "output"});
    if (!j.contains("model")) throw ValidationError("config: missing field 'model'");

    const Json& m = j.at("model");
    only_keys(m, "model", {"type", "L", "lambda_e", "lambda_m", "lambda", "group", "table", "geometries"});
    c.model.type = text(m, "type", "model", "", {"toric", "mini-vertex", "nonabelian"});
    if (c.model.type.empty()) throw ValidationError("model: missing field 'type'");
    c.model.L = count(m, "L", "model", 2, 2);
    c.model.lambda_e = number(m, "lambda_e", "model", 1.0, true);
    c.model.lambda_m = number(m, "lambda_m", "model", 1.0, true);
    c.model.lambda = number(m, "lambda", "model", 1.0, true);
    c.model.group = text(m, "group", "model", "S3");
    if (m.contains("table")) c.model.table = m.at("table");
    if (m.contains("geometries")) {
        if (!m.at("geometries").is_array()) throw ValidationError("model.geometries: expected an array");
        for (const auto& g : m.at("geometries")) {
            if (!g.is_string()) throw ValidationError("model.geometries: expected strings");
            c.model.geometries.push_back(g.get<std::string>());
        }
    }

    Json d = j.value("dynamics", Json::object());
    only_keys(d, "dynamics",
              {"type", "beta", "betas", "gamma0", "g", "t", "N", "reset", "reset_interval", "decompositions", "initial"});
    c.dynamics.type = text(d, "type", "dynamics", c.model.type == "nonabelian" ? "none" : "gibbs",
                           {"none", "gibbs", "davies", "rwa", "composite", "trotterized"});
    if (d.contains("beta") && d.contains("betas")) throw ValidationError("dynamics: give either 'beta' or 'betas'");
    if (d.contains("betas")) {
        if (!d.at("betas").is_array() || d.at("betas").empty()) {
            throw ValidationError("dynamics.betas: expected a non-empty array");
        }
        c.dynamics.betas.clear();
        for (const auto& b : d.at("betas")) {
            if (!b.is_number() || !std::isfinite(b.get<double>()) || b.get<double>() < 0.0) {
                throw ValidationError("dynamics.betas: entries must be non-negative numbers");
            }
            c.dynamics.betas.push_back(b.get<double>());
        }
    } else {
        c.dynamics.betas = {number(d, "beta", "dynamics", 1.0, true, true)};
    }
    c.dynamics.gamma0 = number(d, "gamma0", "dynamics", 0.1, true);
    c.dynamics.coupling = number(d, "g", "dynamics", -1.0, false);
    if (d.contains("g") && c.dynamics.coupling <= 0.0) throw ValidationError("dynamics.g: must be positive");
    c.dynamics.t = number(d, "t", "dynamics", 0.0, true, true);
    c.dynamics.steps = count(d, "N", "dynamics", 1, 1);
    c.dynamics.reset = text(d, "reset", "dynamics", "rate", {"rate", "full", "measured"});
    c.dynamics.reset_interval = count(d, "reset_interval", "dynamics", 1, 1);
    c.dynamics.initial = text(d, "initial", "dynamics", "mixed", {"mixed", "zero", "random"});
    if (d.contains("decompositions")) {
        if (!d.at("decompositions").is_array()) throw ValidationError("dynamics.decompositions: expected an array");
        for (const auto& e : d.at("decompositions")) {
            only_keys(e, "dynamics.decompositions[]", {"site", "axis"});
            const std::size_t site = count(e, "site", "dynamics.decompositions[]", 0, 0);
            const std::string axis = text(e, "axis", "dynamics.decompositions[]", "x", {"x", "y", "z"});
            if (site >= num_system_qubits(c.model)) {
                throw ValidationError("dynamics.decompositions[]: site " + std::to_string(site) + " is out of range");
            }
            c.dynamics.decompositions.push_back({site, parse_axis(axis)});
        }
    }
    if (c.dynamics.type == "trotterized" && c.dynamics.t <= 0.0) {
        throw ValidationError("dynamics.t: trotterized dynamics needs t > 0");
    }
    if (c.model.type == "nonabelian" && c.dynamics.type != "none") {
        throw ValidationError("dynamics.type: non-abelian models support only 'none'");
    }
    if (c.model.type != "nonabelian" && c.dynamics.type == "none") {
        throw ValidationError("dynamics.type: 'none' is only meaningful for non-abelian models");
    }
    if (c.model.type == "nonabelian") build_group(c.model);

    if (j.contains("observables")) {
        if (!j.at("observables").is_array()) throw ValidationError("observables: expected an array");
        std::set<std::string> seen;
        for (const auto& o : j.at("observables")) {
            if (!o.is_string()) throw ValidationError("observables: expected strings");
            const auto name = o.get<std::string>();
            const auto& known = known_observables();
            if (std::find(known.begin(), known.end(), name) == known.end()) {
                throw ValidationError("observables: unknown observable '" + name + "'");
            }
            if (!seen.insert(name).second) throw ValidationError("observables: duplicate '" + name + "'");
            if (c.model.type == "nonabelian") throw ValidationError("observables: not available for non-abelian models");
            if ((name == "plaquette" || name == "loops") && c.model.type != "toric") {
                throw ValidationError("observables: '" + name + "' needs the toric model");
            }
            c.observables.push_back(name);
        }
    }
    if (j.contains("seed")) {
        const Json& seed = j.at("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) throw ValidationError("seed: expected a non-negative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output")) {
        const Json& o = j.at("output");
        only_keys(o, "output", {"json", "csv", "schedule"});
        c.output.json = text(o, "json", "output", "");
        c.output.csv = text(o, "csv", "output", "");
        c.output.schedule = text(o, "schedule", "output", "");
        if (!c.output.schedule.empty() && c.dynamics.type != "trotterized") {
            throw ValidationError("output.schedule: only trotterized dynamics emit a schedule");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config '" + path + "': " + e.what());
    }
    return parse_config(j);
}

std::string sha256_hex(const std::string& text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw NumericalError("sha256 failed");
    }
    std::string out;
    char buf[3];
    for (unsigned int k = 0; k < len; ++k) {
        std::snprintf(buf, sizeof buf, "%02x", digest[k]);
        out += buf;
    }
    return out;
}

std::string config_hash(const Json& j) { return sha256_hex(j.dump()); }

Json versions() {
    Json modules = Json::object();
    for (const char* m : {"pauli_core", "toric_model", "lindblad_engine", "bath_builder", "steady_verifier",
                          "trotter_compiler", "nonabelian_core", "cli_runner"}) {
        modules[m] = kVersion;
    }
    return {{"stabtherm", kVersion},
            {"modules", modules},
            {"openssl", OpenSSL_version(OPENSSL_VERSION_STRING)},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

double energy_unit(const ModelSpec& m) { return m.type == "toric" ? m.lambda_e : m.lambda; }

StabilizerHamiltonian build_hamiltonian(const ModelSpec& m) {
    if (m.type == "toric") return toric_hamiltonian(build_torus(m.L), m.lambda_e, m.lambda_m);
    if (m.type == "mini-vertex") {
        return StabilizerHamiltonian(4, {{m.lambda, PauliString::from_text("ZZZZ"), TermKind::Vertex, 0}});
    }
    throw ModelError("model '" + m.type + "' has no stabilizer Hamiltonian");
}

FiniteGroup build_group(const ModelSpec& m) {
    const std::string& g = m.group;
    if (g == "table") {
        if (m.table.is_null()) throw ValidationError("model.table: required when group is 'table'");
        return group_from_json(m.table.is_object() ? m.table : Json{{"table", m.table}});
    }
    if (g.size() >= 2 && (g[0] == 'Z' || g[0] == 'S')) {
        std::size_t n = 0;
        try {
            std::size_t used = 0;
            n = std::stoul(g.substr(1), &used);
            if (used != g.size() - 1) throw std::invalid_argument(g);
        } catch (const std::exception&) {
            throw ValidationError("model.group: cannot parse '" + g + "'");
        }
        return g[0] == 'Z' ? FiniteGroup::cyclic(n) : FiniteGroup::symmetric(n);
    }
    throw ValidationError("model.group: expected Z<n>, S<n> or 'table'");
}

namespace {

Json run_nonabelian(const ExperimentConfig& c) {
    const FiniteGroup g = build_group(c.model);
    std::vector<Patch> patches;
    if (c.model.geometries.empty()) {
        patches = standard_geometries();
    } else {
        for (const auto& name : c.model.geometries) {
            if (name == "TL" || name == "TR" || name == "BR" || name == "BL") {
                patches.push_back(corner_patch(name));
            } else if (name.rfind("corner-", 0) == 0) {
                patches.push_back(corner_patch(name.substr(7)));
            } else if (name == "disjoint") {
                patches.push_back(disjoint_patch());
            } else if (name == "two-plaquette") {
                patches.push_back(two_plaquette_patch());
            } else if (name == "two-vertex") {
                patches.push_back(two_vertex_patch());
            } else {
                throw ValidationError("model.geometries: unknown geometry '" + name + "'");
            }
        }
    }
    CommutationOptions opts;
    opts.seed = c.seed;
    const auto report = commutation_suite(g, patches, opts);
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        entries.push_back({{"geometry", e.geometry},
                           {"shared_links", e.shared_links},
                           {"num_links", e.num_links},
                           {"method", e.method},
                           {"commutator_norm", e.commutator_norm}});
    }
    Json out{{"group", group_to_json(g)},
             {"commutation", {{"max_norm", report.max_norm()}, {"entries", entries}}}};
    if (patch_dimension(g, 4) <= kDenseQuditDimLimit) {
        const Matrix a = vertex_op(g, standard_vertex_pattern()).matrix;
        const Matrix b = plaquette_op(g, standard_plaquette_pattern()).matrix;
        out["projectors"] = {{"vertex_residual", (a * a - a).norm()},
                             {"plaquette_residual", (b * b - b).norm()},
                             {"vertex_rank", static_cast<std::size_t>(std::llround(a.trace().real()))},
                             {"plaquette_rank", static_cast<std::size_t>(std::llround(b.trace().real()))}};
    }
    return out;
}

struct PointState {
    Matrix rho;  // system state
    Json info = Json::object();
};

PointState solve_point(const ExperimentConfig& c, const StabilizerHamiltonian& h, double beta, std::mt19937_64& rng) {
    const std::size_t n_sys = h.num_qubits();
    const std::size_t dim_sys = std::size_t{1} << n_sys;
    PointState out;
    const auto& d = c.dynamics;
    if (d.type == "gibbs") {
        out.rho = gibbs_state(h, beta);
        return out;
    }
    std::vector<EigenoperatorDecomposition> decomps;
    for (auto [site, axis] : default_decompositions(c)) decomps.push_back(eigenoperator_decomposition(h, site, axis));

    auto settle = [&](const LindbladGenerator& gen, const Matrix& rho0) -> Matrix {
        if (d.t > 0.0) {
            if (gen.dim() * gen.dim() <= EvolveOptions{}.exact_limit) return evolve(gen, rho0, d.t).state;
            const SparseMatrix superop = build_superoperator(gen);
            return propagate(superop, gen.dim(), {rho0}, d.t).front();
        }
        const SparseMatrix superop = build_superoperator(gen);
        KernelOptions ko;
        auto ss = steady_states(superop, gen.dim(), ko);
        while (ss.saturated && ko.max_block < gen.dim() * gen.dim()) {
            ko.max_block *= 4;
            ss = steady_states(superop, gen.dim(), ko);
        }
        out.info["kernel_dimension"] = ss.kernel_dimension;
        out.info["kernel_saturated"] = ss.saturated;
        out.info["unique"] = ss.unique;
        out.info["kernel_residual"] = ss.residual;
        if (ss.states.empty()) throw NumericalError("no trace-carrying steady state found");
        if (ss.unique) return ss.states.front();
        out.info["steady_state"] = "limit of the initial state";
        return kernel_limit(superop, gen.dim(), ss, rho0);
    };

    if (d.type == "davies") {
        const LindbladGenerator gen = davies_reduction(h, decomps, beta, d.gamma0);
        out.rho = settle(gen, initial_state(d.initial, dim_sys, rng));
        return out;
    }

    BathOptions bo;
    bo.coupling = d.coupling;
    auto [model, lab_gen] = attach_ancillas(h, decomps, beta, d.gamma0, bo);
    out.info["ancillas"] = model.ancillas.size();
    out.info["coupling"] = model.coupling;
    const std::size_t n_all = model.num_qubits();
    Matrix anc_ground = Matrix::Zero(static_cast<Eigen::Index>(model.dim() / dim_sys),
                                     static_cast<Eigen::Index>(model.dim() / dim_sys));
    anc_ground(0, 0) = 1.0;
    const Matrix rho0 = kron(anc_ground, initial_state(d.initial, dim_sys, rng));

    Matrix full;
    if (d.type == "rwa") {
        full = settle(rwa_generator(model, decomps), rho0);
    } else if (d.type == "composite") {
        full = settle(lab_gen, rho0);
    } else {
        const LabFrameModel lab = lab_frame_model(model);
        const GateSchedule s = trotterize(lab, d.t, d.steps, reset_mode(d.reset), d.reset_interval);
        out.info["gates"] = s.gates.size();
        if (!c.output.schedule.empty()) save_schedule(c.output.schedule, s);
        full = simulate_schedule(s, rho0);
    }
    out.info["target_distance"] = trace_distance(full, model.target_state());
    out.rho = partial_trace_high(full, n_sys, n_all);
    return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& c) {
    ExperimentResult r;
    r.json = {{"config", c.raw}, {"config_hash", config_hash(c.raw)}, {"versions", versions()}};
    if (c.model.type == "nonabelian") {
        r.json["nonabelian"] = run_nonabelian(c);
        return r;
    }
    if (c.observables.empty()) return r;

    const StabilizerHamiltonian h = build_hamiltonian(c.model);
    const double unit = energy_unit(c.model);
    const Matrix hd = h.to_dense();
    if (c.model.type == "toric") {
        const auto lattice = build_torus(c.model.L);
        const auto ops = all_excitation_ops(lattice, h);
        const auto fit = fourier_form_check(lattice, h, ops);
        r.json["fourier_form"] = {{"prefactor", fit.prefactor}, {"constant", fit.constant}, {"residual", fit.residual}};
    }

    std::vector<Matrix> vertex_ops, plaquette_ops;
    for (const auto& t : h.terms()) {
        if (t.kind == TermKind::Vertex) vertex_ops.push_back(t.stabilizer.to_dense());
        if (t.kind == TermKind::Plaquette) plaquette_ops.push_back(t.stabilizer.to_dense());
    }
    std::vector<std::pair<std::string, Matrix>> loops;
    if (c.model.type == "toric") {
        const auto lo = loop_operators(build_torus(c.model.L));
        loops = {{"x1", lo.x1.to_dense()}, {"x2", lo.x2.to_dense()}, {"z1", lo.z1.to_dense()}, {"z2", lo.z2.to_dense()}};
    }

    r.csv_header = {"beta_lambda"};
    for (const auto& o : c.observables) {
        if (o == "loops") {
            for (const auto& [name, op] : loops) r.csv_header.push_back("loop_" + name);
        } else {
            r.csv_header.push_back(o);
        }
    }

    std::mt19937_64 rng(c.seed);
    Json points = Json::array();
    for (double beta_lambda : c.dynamics.betas) {
        const double beta = beta_lambda / unit;
        PointState ps = solve_point(c, h, beta, rng);
        Json point{{"beta_lambda", beta_lambda}};
        std::vector<double> row{beta_lambda};
        for (const auto& o : c.observables) {
            if (o == "energy") {
                const double e = real_expectation(ps.rho, hd) / unit;
                point["energy"] = e;
                row.push_back(e);
            } else if (o == "vertex" || o == "plaquette") {
                const auto& list = o == "vertex" ? vertex_ops : plaquette_ops;
                double sum = 0.0;
                for (const auto& op : list) sum += real_expectation(ps.rho, op);
                const double mean = sum / static_cast<double>(list.size());
                point[o] = mean;
                row.push_back(mean);
            } else if (o == "loops") {
                Json lj = Json::object();
                for (const auto& [name, op] : loops) {
                    const double w = real_expectation(ps.rho, op);
                    lj[name] = {{"mean", w}, {"p_plus", 0.5 * (1.0 + w)}, {"p_minus", 0.5 * (1.0 - w)}};
                    row.push_back(w);
                }
                point["loops"] = lj;
            } else if (o == "gibbs_distance") {
                const double dist = trace_distance(ps.rho, gibbs_state(hd, beta));
                point["gibbs_distance"] = dist;
                row.push_back(dist);
            }
        }
        if (!ps.info.empty()) point["dynamics"] = ps.info;
        points.push_back(point);
        r.csv_rows.push_back(row);
    }
    r.json["points"] = points;
    return r;
}

void write_csv(std::ostream& out, const ExperimentResult& r) {
    for (std::size_t k = 0; k < r.csv_header.size(); ++k) out << (k ? "," : "") << r.csv_header[k];
    out << '\n';
    for (const auto& row : r.csv_rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << fmt(row[k]);
        out << '\n';
    }
}

void write_outputs(const ExperimentConfig& c, const ExperimentResult& r) {
    if (!c.output.json.empty()) {
        std::ofstream out(c.output.json);
        if (!out) throw ValidationError("cannot write '" + c.output.json + "'");
        out << r.json.dump(2) << '\n';
    }
    if (!c.output.csv.empty()) {
        std::ofstream out(c.output.csv);
        if (!out) throw ValidationError("cannot write '" + c.output.csv + "'");
        write_csv(out, r);
    }
}

Json fixed_point_report_to_json(const FixedPointReport& r, bool include_residuals) {
    Json j{{"beta", r.beta},
           {"p0", r.p0},
           {"p1", r.p1},
           {"max_lowering", r.max_lowering},
           {"max_raising", r.max_raising},
           {"max_translation", r.max_translation},
           {"max_residual", r.max_residual()},
           {"satisfied_1e-9", r.satisfied(1e-9)}};
    if (r.kernel_dimension) j["kernel_dimension"] = *r.kernel_dimension;
    if (r.gibbs_distance) j["gibbs_distance"] = *r.gibbs_distance;
    if (r.ergodic) j["ergodic"] = *r.ergodic;
    if (include_residuals) {
        Json rows = Json::array();
        for (const auto& x : r.residuals) {
            rows.push_back({{"link", x.link},
                            {"sector", sector_name(x.sector)},
                            {"lowering", x.lowering},
                            {"raising", x.raising},
                            {"translation", x.translation}});
        }
        j["residuals"] = rows;
    }
    return j;
}

FixedPointReport verify_appendix(std::size_t L, double lambda_e, double lambda_m, double beta) {
    const auto lattice = build_torus(L);
    const auto h = toric_hamiltonian(lattice, lambda_e, lambda_m);
    const auto ops = all_excitation_ops(lattice, h);
    const Matrix rho = gibbs_state(h, beta);
    return check_fixed_point_conditions(rho, ops, beta);
}

}  // namespace stabtherm
