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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "stabtherm/errors.hpp"
#include "stabtherm/experiment.hpp"

using namespace stabtherm;

namespace {

Json toric_config(Json dynamics, Json observables) {
    return {{"model", {{"type", "toric"}, {"L", 2}}}, {"dynamics", dynamics}, {"observables", observables}};
}

std::string error_of(const Json& j) {
    try {
        parse_config(j);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

// L = 2 torus: the four vertex signs are free up to an even number of -1.
double vertex_mean_oracle(double beta_lambda) {
    double z = 0.0, s = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) % 2) continue;
        double total = 0.0;
        for (int v = 0; v < 4; ++v) total += (mask >> v & 1) ? -1.0 : 1.0;
        const double w = std::exp(beta_lambda * total);
        z += w;
        s += w * total / 4.0;
    }
    return s / z;
}

}  // namespace

TEST_CASE("config errors carry the offending path") {
    const Json ok = toric_config({{"type", "gibbs"}, {"beta", 1.0}}, {"energy"});
    CHECK(error_of(ok).empty());

    auto with = [&](const std::string& ptr, Json value) {
        Json j = ok;
        j[Json::json_pointer(ptr)] = value;
        return error_of(j);
    };
    CHECK(error_of(Json{{"dynamics", ok["dynamics"]}}).find("model") != std::string::npos);
    CHECK(with("/colour", "red").find("colour") != std::string::npos);
    CHECK(with("/model/Lx", 3).find("Lx") != std::string::npos);
    CHECK(with("/model/type", "ising").find("model") != std::string::npos);
    CHECK(with("/model/L", 1).find("model.L") != std::string::npos);
    CHECK(with("/model/L", "two").find("model") != std::string::npos);
    CHECK(with("/model/lambda_e", -1.0).find("lambda_e") != std::string::npos);
    CHECK(with("/dynamics/beta", -0.5).find("dynamics.beta") != std::string::npos);
    CHECK(with("/dynamics/betas", Json::array({0.5})).find("beta") != std::string::npos);
    CHECK(with("/dynamics/gamma0", 0.0).find("gamma0") != std::string::npos);
    CHECK(with("/dynamics/g", -0.1).find("dynamics.g") != std::string::npos);
    CHECK(with("/dynamics/reset", "sometimes").find("reset") != std::string::npos);
    CHECK(with("/observables", Json::array({"entropy"})).find("entropy") != std::string::npos);
    CHECK(with("/observables", Json::array({"energy", "energy"})).find("duplicate") != std::string::npos);
    CHECK(with("/seed", -3).find("seed") != std::string::npos);
    CHECK(with("/output", Json{{"schedule", "s.jsonl"}}).find("output.schedule") != std::string::npos);
    CHECK(with("/dynamics/decompositions", Json::array({{{"site", 8}, {"axis", "x"}}})).find("site 8") !=
          std::string::npos);

    Json mini{{"model", {{"type", "mini-vertex"}}}, {"observables", {"plaquette"}}};
    CHECK(error_of(mini).find("plaquette") != std::string::npos);
    Json trot{{"model", {{"type", "mini-vertex"}}}, {"dynamics", {{"type", "trotterized"}}}};
    CHECK(error_of(trot).find("dynamics.t") != std::string::npos);

    Json na{{"model", {{"type", "nonabelian"}, {"group", "Q8"}}}};
    CHECK(error_of(na).find("model.group") != std::string::npos);
    na["model"]["group"] = "table";
    CHECK(error_of(na).find("model.table") != std::string::npos);
    na["model"]["table"] = {{0, 1}, {1, 1}};
    CHECK_FALSE(error_of(na).empty());
    na["model"]["table"] = {{0, 1}, {1, 0}};
    CHECK(error_of(na).empty());

    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ValidationError);
    const auto path = std::filesystem::temp_directory_path() / "stabtherm_bad_config.json";
    std::ofstream(path) << "{ \"model\": ";
    CHECK_THROWS_AS(load_config(path.string()), ValidationError);
}

TEST_CASE("sha256 and config hash") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const Json a = Json::parse(R"({"model": {"type": "toric", "L": 2}, "seed": 4})");
    const Json b = Json::parse(R"({"seed": 4, "model": {"L": 2, "type": "toric"}})");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(Json::parse(R"({"model": {"type": "toric", "L": 3}, "seed": 4})")));
    CHECK(config_hash(a).size() == 64);
}

TEST_CASE("empty observables only echo the config") {
    const auto c = parse_config(toric_config({{"type", "gibbs"}, {"beta", 1.0}}, Json::array()));
    const auto r = run_experiment(c);
    CHECK(r.json.size() == 3);
    CHECK(r.json.at("config") == c.raw);
    CHECK(r.json.at("config_hash") == config_hash(c.raw));
    CHECK(r.json.at("versions").at("stabtherm") == std::string(kVersion));
    CHECK(r.csv_rows.empty());
}

TEST_CASE("gibbs sweep matches the sector-sum oracle") {
    const std::vector<double> betas{0.0, 0.2, 0.5, 1.0, 2.0, 5.0};
    Json j = toric_config({{"type", "gibbs"}, {"betas", betas}}, {"energy", "vertex", "plaquette", "loops"});
    j["model"]["lambda_m"] = 0.5;
    const auto r = run_experiment(parse_config(j));
    const auto& points = r.json.at("points");
    REQUIRE(points.size() == betas.size());
    for (std::size_t k = 0; k < betas.size(); ++k) {
        const auto& p = points[k];
        const double av = vertex_mean_oracle(betas[k]);
        const double bp = vertex_mean_oracle(0.5 * betas[k]);
        CHECK(p.at("beta_lambda").get<double>() == betas[k]);
        CHECK(std::abs(p.at("vertex").get<double>() - av) < 1e-8);
        CHECK(std::abs(p.at("plaquette").get<double>() - bp) < 1e-8);
        CHECK(std::abs(p.at("energy").get<double>() - (-4.0 * av - 4.0 * 0.5 * bp)) < 1e-8);
        for (const auto& name : {"x1", "x2", "z1", "z2"}) {
            CHECK(std::abs(p.at("loops").at(name).at("mean").get<double>()) < 1e-10);
        }
    }
    REQUIRE(r.csv_header.size() == 8);
    CHECK(r.csv_header[0] == "beta_lambda");
    CHECK(r.csv_header[4] == "loop_x1");
    CHECK(r.csv_rows.size() == betas.size());
}

TEST_CASE("fourier form of the toric model") {
    const auto r = run_experiment(parse_config(toric_config({{"type", "gibbs"}, {"beta", 1.0}}, {"energy"})));
    const auto& f = r.json.at("fourier_form");
    CHECK(std::abs(f.at("residual").get<double>()) < 1e-10);
}

TEST_CASE("outputs are byte-identical across runs") {
    Json j{{"model", {{"type", "mini-vertex"}}},
           {"dynamics", {{"type", "composite"}, {"betas", {0.5, 1.0}}, {"t", 2.0}, {"initial", "random"}}},
           {"observables", {"energy", "vertex", "gibbs_distance"}}};
    j["seed"] = 11;
    const auto dir = std::filesystem::temp_directory_path();
    auto run_once = [&](const std::string& tag) {
        Json jj = j;
        jj["output"] = {{"json", (dir / ("st_" + tag + ".json")).string()},
                        {"csv", (dir / ("st_" + tag + ".csv")).string()}};
        const auto c = parse_config(jj);
        write_outputs(c, run_experiment(c));
        std::ifstream a(dir / ("st_" + tag + ".json")), b(dir / ("st_" + tag + ".csv"));
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        return std::make_pair(sa.str(), sb.str());
    };
    const auto first = run_once("a");
    const auto second = run_once("a");
    CHECK(first == second);
    CHECK(first.first.find("config_hash") != std::string::npos);
    CHECK(first.second.rfind("beta_lambda,energy,vertex,gibbs_distance\n", 0) == 0);

    j["seed"] = 12;
    const auto other = run_once("b");
    CHECK(other.second != first.second);
}

TEST_CASE("davies steady state of L=2 is the Gibbs state") {
    const auto r = run_experiment(
        parse_config(toric_config({{"type", "davies"}, {"beta", 1.0}}, {"vertex", "gibbs_distance"})));
    const auto& p = r.json.at("points")[0];
    CHECK(p.at("dynamics").at("kernel_dimension") == 1);
    CHECK(p.at("gibbs_distance").get<double>() < 1e-8);
    CHECK(std::abs(p.at("vertex").get<double>() - vertex_mean_oracle(1.0)) < 1e-8);
}

TEST_CASE("composite mini-vertex steady state") {
    const auto r = run_experiment(parse_config(
        Json{{"model", {{"type", "mini-vertex"}}}, {"dynamics", {{"type", "rwa"}, {"beta", 1.0}}},
             {"observables", {"energy", "gibbs_distance"}}}));
    const auto& p = r.json.at("points")[0];
    CHECK(p.at("dynamics").at("target_distance").get<double>() < 1e-8);
    CHECK(p.at("gibbs_distance").get<double>() < 1e-8);
}

TEST_CASE("non-abelian report") {
    const auto r = run_experiment(parse_config(
        Json{{"model", {{"type", "nonabelian"}, {"group", "S3"}, {"geometries", {"TR", "disjoint"}}}}}));
    const auto& na = r.json.at("nonabelian");
    CHECK(na.at("group").at("order") == 6);
    CHECK(na.at("commutation").at("max_norm").get<double>() < 1e-10);
    CHECK(na.at("commutation").at("entries").size() == 2);

    const auto z3 = run_experiment(parse_config(Json{{"model", {{"type", "nonabelian"}, {"group", "Z3"}}}}));
    CHECK(z3.json.at("nonabelian").at("projectors").at("vertex_residual").get<double>() < 1e-10);
    CHECK(z3.json.at("nonabelian").at("projectors").at("vertex_rank") == 27);
}
