// Copyright 2026 The VQF Authors
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
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "vqf/errors.hpp"
#include "vqf/optimizer.hpp"
#include "vqf/pipeline.hpp"
#include "vqf/simplifier.hpp"
#include "vqf/spin_polynomial.hpp"

namespace vqf {

using json = nlohmann::json;

/// Bumped whenever a field changes meaning or disappears.
inline constexpr int kResultSchemaVersion = 1;

inline json clause_to_json(const Clause &c) {
    json terms = json::array();
    for (const auto &[mono, coeff] : c.terms()) {
        json vars = json::array();
        for (const auto &v : mono) {
            vars.push_back(v.name());
        }
        terms.push_back({{"vars", vars}, {"coeff", coeff}});
    }
    return {{"terms", terms}, {"const", c.constant()}, {"text", c.str()}};
}

inline Clause clause_from_json(const json &j) {
    Clause c(j.at("const").get<int64_t>());
    for (const auto &t : j.at("terms")) {
        std::vector<Variable> vars;
        for (const auto &name : t.at("vars")) {
            vars.push_back(Variable::parse(name.get<std::string>()));
        }
        c.add(std::move(vars), t.at("coeff").get<int64_t>());
    }
    return c;
}

/// Interchange document for a reduced problem.
inline json problem_to_json(const SimplifiedProblem &prob) {
    json j;
    j["schema_version"] = kResultSchemaVersion;
    j["m"] = prob.m;
    j["n_p"] = prob.n_p;
    j["n_q"] = prob.n_q;
    j["length_mode"] = prob.length_mode == LengthMode::wlog ? "wlog" : "known";
    j["curated"] = prob.curated;
    j["passes"] = prob.passes;
    j["n"] = prob.n;
    j["n_z"] = prob.n_z;
    j["qubit_map"] = json::array();
    for (const auto &v : prob.qubit_map) {
        j["qubit_map"].push_back(v.name());
    }
    j["clauses"] = json::array();
    for (const auto &c : prob.clauses) {
        j["clauses"].push_back(clause_to_json(c));
    }
    json assigned = json::object();
    for (const auto &[v, value] : prob.relations.assignments()) {
        assigned[v.name()] = value;
    }
    j["assignments"] = assigned;
    j["equalities"] = json::array();
    for (const auto &[v, lit] : prob.relations.equalities()) {
        j["equalities"].push_back({{"var", v.name()}, {"equals", lit.var.name()}, {"negated", lit.negated}});
    }
    j["product_zeros"] = json::array();
    for (const auto &[a, b] : prob.relations.product_zeros()) {
        j["product_zeros"].push_back({a.name(), b.name()});
    }
    return j;
}

inline SimplifiedProblem problem_from_json(const json &j) {
    try {
        SimplifiedProblem prob;
        prob.m = j.at("m").get<uint64_t>();
        prob.n_p = j.at("n_p").get<int>();
        prob.n_q = j.at("n_q").get<int>();
        prob.length_mode = j.value("length_mode", std::string("known")) == "wlog" ? LengthMode::wlog : LengthMode::known;
        prob.curated = j.value("curated", false);
        prob.passes = j.value("passes", 0);
        for (const auto &name : j.at("qubit_map")) {
            prob.qubit_map.push_back(Variable::parse(name.get<std::string>()));
        }
        std::sort(prob.qubit_map.begin(), prob.qubit_map.end());
        for (const auto &c : j.at("clauses")) {
            prob.clauses.push_back(clause_from_json(c));
        }
        const json assigned = j.value("assignments", json::object());
        for (const auto &[name, value] : assigned.items()) {
            prob.relations.assign(Variable::parse(name), value.get<int>());
        }
        for (const auto &e : j.value("equalities", json::array())) {
            prob.relations.equate(Variable::parse(e.at("var").get<std::string>()),
                                  Variable::parse(e.at("equals").get<std::string>()), e.at("negated").get<bool>());
        }
        for (const auto &z : j.value("product_zeros", json::array())) {
            prob.relations.add_product_zero(Variable::parse(z.at(0).get<std::string>()),
                                            Variable::parse(z.at(1).get<std::string>()));
        }
        prob.n = static_cast<int>(prob.qubit_map.size());
        prob.n_z = static_cast<int>(std::count_if(prob.qubit_map.begin(), prob.qubit_map.end(),
                                                  [](const Variable &v) { return v.is_carry(); }));
        for (const auto &c : prob.clauses) {
            for (const auto &v : c.variables()) {
                if (prob.qubit_of(v) < 0) {
                    throw ParseError("clause variable " + v.name() + " is missing from the qubit map");
                }
            }
        }
        return prob;
    } catch (const json::exception &e) {
        throw ParseError(std::string("malformed problem: ") + e.what());
    }
}

inline SimplifiedProblem read_problem_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return problem_from_json(json::parse(in));
    } catch (const json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline json result_to_json(const VqfResult &r) {
    json j;
    j["schema_version"] = kResultSchemaVersion;
    j["m"] = r.m;
    j["n_p"] = r.n_p;
    j["n_q"] = r.n_q;
    j["n"] = r.n;
    j["n_z"] = r.n_z;
    j["s"] = r.s;
    j["epsilon"] = r.epsilon;
    j["nu"] = r.nu;
    j["seed"] = r.seed;
    j["grid_size"] = r.grid_size;
    j["cost_mode"] = r.cost_mode;
    j["params"] = {{"betas", r.params.betas}, {"gammas", r.params.gammas}};
    j["final_cost"] = r.final_cost;
    j["training_cost"] = r.training_cost;
    j["success_prob"] = r.success_prob;
    j["factors"] = r.factors ? json{{"p", r.factors->p}, {"q", r.factors->q}} : json(nullptr);
    j["eval_count"] = r.eval_count;
    j["grid_evals"] = r.grid_evals;
    j["bfgs_evals"] = r.bfgs_evals;
    j["converged"] = r.converged;
    j["classically_solved"] = r.classically_solved;
    j["qubits"] = r.qubits;
    return j;
}

/// Reads back the scalar fields of a result file (distribution excluded).
inline VqfResult result_from_json(const json &j) {
    try {
        if (j.at("schema_version").get<int>() != kResultSchemaVersion) {
            throw ParseError("unsupported result schema version " + j.at("schema_version").dump());
        }
        VqfResult r;
        r.m = j.at("m").get<uint64_t>();
        r.n = j.at("n").get<int>();
        r.n_z = j.at("n_z").get<int>();
        r.s = j.at("s").get<int>();
        r.epsilon = j.at("epsilon").get<double>();
        r.nu = j.at("nu").get<int>();
        r.seed = j.at("seed").get<uint64_t>();
        r.params.betas = j.at("params").at("betas").get<std::vector<double>>();
        r.params.gammas = j.at("params").at("gammas").get<std::vector<double>>();
        r.final_cost = j.at("final_cost").get<double>();
        r.success_prob = j.at("success_prob").get<double>();
        r.eval_count = j.at("eval_count").get<int64_t>();
        r.n_p = j.value("n_p", 0);
        r.n_q = j.value("n_q", 0);
        r.grid_size = j.value("grid_size", 0);
        r.cost_mode = j.value("cost_mode", std::string{});
        r.training_cost = j.value("training_cost", 0.0);
        r.bfgs_evals = j.value("bfgs_evals", int64_t{0});
        r.grid_evals = j.value("grid_evals", int64_t{0});
        r.converged = j.value("converged", true);
        r.classically_solved = j.value("classically_solved", false);
        if (!j.at("factors").is_null()) {
            r.factors = FactorPair{j["factors"].at("p").get<uint64_t>(), j["factors"].at("q").get<uint64_t>()};
        }
        return r;
    } catch (const json::exception &e) {
        throw ParseError(std::string("malformed result: ") + e.what());
    }
}

inline VqfResult read_result_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return result_from_json(json::parse(in));
    } catch (const json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
}

/// index,bitstring,probability,energy for every basis state, plus the
/// sampled count.
inline void write_distribution_csv(std::ostream &out, const VqfResult &r) {
    out << "index,bitstring,probability,energy,samples\n";
    out << std::setprecision(17);
    for (size_t b = 0; b < r.probabilities.size(); ++b) {
        auto it = r.distribution.find(b);
        out << b << ',' << basis_bitstring(b, r.n) << ',' << r.probabilities[b] << ','
            << (b < r.energies.size() ? r.energies[b] : 0.0) << ',' << (it == r.distribution.end() ? 0 : it->second)
            << '\n';
    }
}

inline void write_energy_csv(std::ostream &out, const EnergyTable &t) {
    out << "index,bitstring,energy\n" << std::setprecision(17);
    for (size_t b = 0; b < t.size(); ++b) {
        out << b << ',' << basis_bitstring(b, t.n) << ',' << t[b] << '\n';
    }
}

/// Binary table: "VQFE", uint32 n, then 2^n little-endian float64 values.
inline void write_energy_binary(std::ostream &out, const EnergyTable &t) {
    static_assert(std::endian::native == std::endian::little, "binary tables assume a little-endian host");
    out.write("VQFE", 4);
    const auto n = static_cast<uint32_t>(t.n);
    out.write(reinterpret_cast<const char *>(&n), sizeof n);
    out.write(reinterpret_cast<const char *>(t.values.data()), static_cast<std::streamsize>(t.values.size() * sizeof(double)));
}

inline EnergyTable read_energy_binary(std::istream &in) {
    char magic[4];
    uint32_t n = 0;
    if (!in.read(magic, 4) || std::memcmp(magic, "VQFE", 4) != 0 || !in.read(reinterpret_cast<char *>(&n), sizeof n) ||
        n > 40) {
        throw ParseError("not an energy table");
    }
    EnergyTable t;
    t.n = static_cast<int>(n);
    t.values.resize(size_t{1} << n);
    if (!in.read(reinterpret_cast<char *>(t.values.data()), static_cast<std::streamsize>(t.values.size() * sizeof(double)))) {
        throw ParseError("truncated energy table");
    }
    return t;
}

inline json trace_to_json(const TraceRecord &r) {
    json j{{"eval", r.eval_index}, {"stage", r.stage}, {"layer", r.layer}, {"params", r.params}, {"cost", r.cost}};
    return j;
}

/// JSON-lines sink for Objective::set_trace.
class TraceWriter {
   public:
    explicit TraceWriter(const std::string &path) : out_(path) {
        if (!out_) {
            throw Error("cannot open trace file " + path);
        }
    }
    void operator()(const TraceRecord &r) {
        std::lock_guard lock(mu_);
        out_ << trace_to_json(r).dump() << '\n';
    }

   private:
    std::ofstream out_;
    std::mutex mu_;
};

inline void write_sweep_csv(std::ostream &out, uint64_t m, const std::vector<SweepCell> &cells) {
    out << "m,s,epsilon,repetitions,mean_success,stddev_success,mean_bfgs_evals,mean_evals\n" << std::setprecision(10);
    for (const auto &c : cells) {
        double be = 0.0;
        double ev = 0.0;
        for (auto v : c.bfgs_evals) {
            be += static_cast<double>(v);
        }
        for (auto v : c.evals) {
            ev += static_cast<double>(v);
        }
        const double k = c.success.empty() ? 1.0 : static_cast<double>(c.success.size());
        out << m << ',' << c.s << ',' << c.epsilon << ',' << c.success.size() << ',' << c.mean << ',' << c.stddev << ','
            << be / k << ',' << ev / k << '\n';
    }
}

}  // namespace vqf
