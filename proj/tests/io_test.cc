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
#include "vqf/io.hpp"

#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"

using namespace vqf;

TEST(result_json, schema_and_round_trip) {
    RunConfig c;
    c.train.s = 1;
    c.noise.nu = 500;
    c.noise.seed = 3;
    auto r = run_vqf(35, c);
    auto j = result_to_json(r);
    for (const char *key : {"m", "n", "n_z", "s", "epsilon", "nu", "seed", "params", "final_cost", "success_prob",
                            "factors", "eval_count"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_TRUE(j["params"].contains("betas"));
    EXPECT_TRUE(j["params"].contains("gammas"));
    auto back = result_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.m, r.m);
    EXPECT_EQ(back.params, r.params);
    EXPECT_EQ(back.success_prob, r.success_prob);
    EXPECT_EQ(back.eval_count, r.eval_count);
    EXPECT_EQ(back.factors, r.factors);
    j["schema_version"] = 99;
    EXPECT_THROW(result_from_json(j), ParseError);
    EXPECT_THROW(result_from_json(json::object()), ParseError);
}

TEST(distribution_csv, one_row_per_basis_state) {
    RunConfig c;
    c.train.s = 1;
    c.noise.nu = 100;
    auto r = run_vqf(56153, c);
    std::ostringstream out;
    write_distribution_csv(out, r);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "index,bitstring,probability,energy,samples");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 16);
}

TEST(energy_table, csv_and_binary) {
    auto p = prepare_problem(77);
    auto t = diagonal(build_hamiltonian(p), p.n);
    std::stringstream bin;
    write_energy_binary(bin, t);
    auto back = read_energy_binary(bin);
    EXPECT_EQ(back.n, t.n);
    EXPECT_EQ(back.values, t.values);
    std::stringstream junk("nope");
    EXPECT_THROW(read_energy_binary(junk), ParseError);
    std::ostringstream csv;
    write_energy_csv(csv, t);
    EXPECT_EQ(csv.str().substr(0, 23), "index,bitstring,energy\n");
}

TEST(problem_json, round_trip_preserves_the_hamiltonian) {
    for (uint64_t m : {35ull, 77ull, 1207ull, 56153ull, 291311ull}) {
        auto p = prepare_problem(m);
        auto back = problem_from_json(json::parse(problem_to_json(p).dump()));
        EXPECT_EQ(back.qubit_map, p.qubit_map) << m;
        EXPECT_EQ(back.clauses, p.clauses) << m;
        EXPECT_EQ(back.relations.assignments(), p.relations.assignments()) << m;
        EXPECT_EQ(back.n_z, p.n_z);
        if (p.n <= 12) {
            EXPECT_EQ(diagonal(build_hamiltonian(back), back.n).values, diagonal(build_hamiltonian(p), p.n).values);
            for (uint64_t b = 0; b < (uint64_t{1} << p.n); b += 3) {
                EXPECT_EQ(decode_factors(back, b), decode_factors(p, b));
            }
        }
    }
    auto j = problem_to_json(prepare_problem(35));
    j["qubit_map"] = json::array({"p1"});
    EXPECT_THROW(problem_from_json(j), ParseError);
}

TEST(trace_writer, one_line_per_evaluation) {
    auto path = std::filesystem::temp_directory_path() / "vqf_trace_test.jsonl";
    {
        TraceWriter w(path.string());
        w({0, "grid", 1, {0.1, 0.2}, 1.5});
        w({1, "bfgs", 0, {0.1, 0.2}, 1.25});
    }
    std::ifstream in(path);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        auto j = json::parse(line);
        EXPECT_EQ(j["eval"].get<int>(), n);
        ++n;
    }
    EXPECT_EQ(n, 2);
    std::filesystem::remove(path);
}
