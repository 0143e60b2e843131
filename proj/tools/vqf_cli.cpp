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
// vqf: factor biprimes with a simulated noisy QAOA, and run the scaling
// studies around it. See README.md for the output schemas.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "vqf/io.hpp"
#include "vqf/vqf.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitNoFactors = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitPrime = 3;
constexpr int kExitUsage = 4;

struct ProblemArgs {
    uint64_t m = 0;
    std::string mode = "auto";
    int n_p = 0;
    int n_q = 0;
    bool no_curated = false;
    bool carry_bound = false;
    bool equality = false;
    std::string problem;

    void attach(CLI::App *cmd, bool allow_problem_file = false) {
        auto *mopt = cmd->add_option("--m", m, "Odd biprime to factor");
        if (allow_problem_file) {
            auto *popt = cmd->add_option("--problem", problem, "Reduced problem JSON from 'vqf simplify'")
                             ->check(CLI::ExistingFile);
            mopt->excludes(popt);
        } else {
            mopt->required();
        }
        cmd->add_option("--mode", mode, "Factor lengths: auto, wlog or known")
            ->check(CLI::IsMember({"auto", "wlog", "known"}));
        cmd->add_option("--np", n_p, "Bit length of the larger factor (implies known)");
        cmd->add_option("--nq", n_q, "Bit length of the smaller factor (implies known)");
        cmd->add_flag("--no-curated", no_curated, "Always run the rule engine");
        cmd->add_flag("--carry-bound", carry_bound, "Re-truncate carries during simplification");
        cmd->add_flag("--equality", equality, "Merge variables forced equal by two-term clauses");
    }

    vqf::ProblemConfig config() const {
        vqf::ProblemConfig cfg;
        if (n_p > 0 || n_q > 0) {
            if (n_p <= 0 || n_q <= 0) {
                throw vqf::InvalidLengths("--np and --nq must be given together");
            }
            cfg.lengths = vqf::FactorLengths{n_p, n_q};
            cfg.length_mode = vqf::LengthMode::known;
        }
        if (mode == "wlog") {
            if (cfg.lengths) {
                throw vqf::InvalidLengths("--np/--nq contradict --mode wlog");
            }
            cfg.length_mode = vqf::LengthMode::wlog;
        } else if (mode == "known") {
            cfg.length_mode = vqf::LengthMode::known;
        }
        cfg.use_curated = !no_curated;
        cfg.simplify.carry_bound_rule = carry_bound;
        cfg.simplify.equality_rule = equality;
        return cfg;
    }

    vqf::SimplifiedProblem load() const {
        if (!problem.empty()) {
            return vqf::read_problem_file(problem);
        }
        if (m == 0) {
            throw vqf::Error("give --m or --problem");
        }
        return vqf::prepare_problem(m, config());
    }
};

struct TrainArgs {
    int depth = 3;
    double epsilon = 1e-3;
    int nu = 10000;
    uint64_t seed = 0;
    int grid = 0;
    std::string cost_mode = "sampled";
    bool per_layer = false;
    int64_t max_evals = 50'000'000;
    double bfgs_tol = 1e-4;
    double fd_step = 1e-4;

    void attach(CLI::App *cmd, bool with_depth = true, bool with_epsilon = true) {
        if (with_depth) {
            cmd->add_option("--depth,-s", depth, "Number of QAOA layers")->check(CLI::PositiveNumber);
        }
        if (with_epsilon) {
            cmd->add_option("--epsilon", epsilon, "Pauli error rate per qubit")->check(CLI::Range(0.0, 1.0));
        }
        cmd->add_option("--nu", nu, "Samples per cost estimate")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "Base seed");
        cmd->add_option("--grid", grid, "Grid points per axis (0: default)")->check(CLI::NonNegativeNumber);
        cmd->add_option("--cost-mode", cost_mode, "sampled or exact")->check(CLI::IsMember({"sampled", "exact"}));
        cmd->add_flag("--per-layer-refine", per_layer, "Refine all angles after every new layer");
        cmd->add_option("--max-evals", max_evals, "Cost evaluation budget per run");
        cmd->add_option("--bfgs-tol", bfgs_tol, "Gradient-norm stop threshold")->check(CLI::PositiveNumber);
        cmd->add_option("--fd-step", fd_step, "Finite-difference step (radians)")->check(CLI::PositiveNumber);
    }

    vqf::RunConfig config(const vqf::ProblemConfig &problem) const {
        vqf::RunConfig cfg;
        cfg.problem = problem;
        cfg.train.s = depth;
        cfg.train.grid_size = grid;
        cfg.train.cost_mode = cost_mode == "exact" ? vqf::CostMode::exact : vqf::CostMode::sampled;
        cfg.train.per_layer_refine = per_layer;
        cfg.train.max_evals = max_evals;
        cfg.train.bfgs_tol = bfgs_tol;
        cfg.train.fd_step = fd_step;
        cfg.noise.epsilon = epsilon;
        cfg.noise.nu = nu;
        cfg.noise.seed = seed;
        if (const char *w = std::getenv("VQF_WORKERS")) {
            cfg.train.workers = std::max(1, std::atoi(w));
        }
        return cfg;
    }
};

/// Writes to `path`, or stdout when it is empty or "-".
class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty() && path != "-") {
            if (auto parent = fs::path(path).parent_path(); !parent.empty()) {
                fs::create_directories(parent);
            }
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw vqf::Error("cannot write " + path);
            }
        }
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

   private:
    std::unique_ptr<std::ofstream> file_;
};

std::string factors_text(const std::optional<vqf::FactorPair> &f) {
    return f ? std::to_string(f->p) + " x " + std::to_string(f->q) : "none";
}

int cmd_factor(const ProblemArgs &pa, const TrainArgs &ta, const std::string &out_dir, const std::string &trace) {
    const auto cfg = ta.config(pa.config());
    const auto prob = pa.load();
    std::unique_ptr<vqf::TraceWriter> writer;
    vqf::VqfResult res;
    if (!trace.empty()) {
        writer = std::make_unique<vqf::TraceWriter>(trace);
        res = vqf::run_vqf(prob, cfg, {}, [&](const vqf::TraceRecord &r) { (*writer)(r); });
    } else {
        res = vqf::run_vqf(prob, cfg);
    }
    fs::create_directories(out_dir);
    const std::string stem = "factor_m" + std::to_string(prob.m) + "_s" + std::to_string(res.s) + "_seed" +
                             std::to_string(ta.seed);
    {
        std::ofstream js(fs::path(out_dir) / (stem + ".json"));
        js << std::setw(2) << vqf::result_to_json(res) << '\n';
    }
    {
        std::ofstream csv(fs::path(out_dir) / (stem + "_distribution.csv"));
        vqf::write_distribution_csv(csv, res);
    }
    std::cout << "m=" << res.m << " n=" << res.n << " n_z=" << res.n_z << " s=" << res.s
              << (res.classically_solved ? " (classically solved)" : "") << "\n"
              << "success_prob=" << res.success_prob << " final_cost=" << res.final_cost
              << " eval_count=" << res.eval_count << "\n"
              << "factors=" << factors_text(res.factors) << "\n"
              << "wrote " << (fs::path(out_dir) / (stem + ".json")).string() << "\n";
    return res.factors ? 0 : kExitNoFactors;
}

int cmd_simplify(const ProblemArgs &pa, const std::string &out) {
    const auto prob = vqf::prepare_problem(pa.m, pa.config());
    Output o(out);
    o.stream() << std::setw(2) << vqf::problem_to_json(prob) << '\n';
    return 0;
}

int cmd_oracle(const ProblemArgs &pa) {
    const auto prob = pa.load();
    std::cout << "m = " << prob.m << "  (n_p=" << prob.n_p << ", n_q=" << prob.n_q << ", "
              << (prob.length_mode == vqf::LengthMode::wlog ? "wlog" : "known") << " lengths"
              << (prob.curated ? ", shipped clause table" : "") << ")\n";
    std::cout << "clauses (" << prob.clauses.size() << "):\n";
    for (const auto &c : prob.clauses) {
        std::cout << "  " << c.str() << " = 0\n";
    }
    std::cout << "qubits: n=" << prob.n << " n_z=" << prob.n_z << "\n";
    for (int k = 0; k < prob.n; ++k) {
        std::cout << "  " << k << ": " << prob.qubit_map[static_cast<size_t>(k)].name() << "\n";
    }
    if (prob.n == 0) {
        const auto f = vqf::decode_factors(prob, 0);
        std::cout << "classically solved: " << f.p << " x " << f.q << "\n";
        return vqf::is_nontrivial_factorization(f, prob.m) ? 0 : kExitInfeasible;
    }
    const auto h = vqf::build_hamiltonian(prob);
    const auto gs = vqf::ground_states_bruteforce(h, prob.n);
    std::cout << "H = " << h.str() << "\n";
    std::cout << "minimum energy " << gs.min_energy << " on " << gs.states.size() << " state(s):\n";
    bool any = false;
    for (uint64_t b : gs.states) {
        const auto f = vqf::decode_factors(prob, b);
        const bool ok = vqf::is_nontrivial_factorization(f, prob.m);
        any = any || ok;
        std::cout << "  " << vqf::basis_bitstring(b, prob.n) << " -> " << f.p << " x " << f.q
                  << (ok ? "" : "  (not a nontrivial factorization)") << "\n";
    }
    return any ? 0 : kExitInfeasible;
}

int cmd_energies(const ProblemArgs &pa, const std::string &out, const std::string &binary) {
    const auto prob = pa.load();
    const auto table = vqf::diagonal(vqf::build_hamiltonian(prob), prob.n);
    if (!binary.empty()) {
        std::ofstream bin(binary, std::ios::binary);
        vqf::write_energy_binary(bin, table);
    }
    if (binary.empty() || !out.empty()) {
        Output o(out);
        vqf::write_energy_csv(o.stream(), table);
    }
    return 0;
}

int cmd_sweep_depth(const ProblemArgs &pa, const TrainArgs &ta, std::vector<int> depths, int reps, bool retrain,
                    const std::string &out) {
    const auto cfg = ta.config(pa.config());
    const auto prob = vqf::prepare_problem(pa.m, cfg.problem);
    std::sort(depths.begin(), depths.end());
    const auto cells = vqf::sweep_depth(prob, depths, cfg, {reps, !retrain});
    Output o(out);
    vqf::write_sweep_csv(o.stream(), pa.m, cells);
    return 0;
}

int cmd_sweep_noise(const ProblemArgs &pa, const TrainArgs &ta, const std::vector<double> &eps, int reps,
                    const std::string &out) {
    const auto cfg = ta.config(pa.config());
    const auto prob = vqf::prepare_problem(pa.m, cfg.problem);
    const auto cells = vqf::sweep_noise(prob, eps, cfg, {reps, true});
    Output o(out);
    vqf::write_sweep_csv(o.stream(), pa.m, cells);
    return 0;
}

int cmd_qubit_scaling(std::vector<uint64_t> ms, int random, int max_bits, uint64_t seed, const std::string &mode,
                      const std::string &out) {
    if (random > 0) {
        auto extra = vqf::random_biprimes(random, max_bits, seed);
        ms.insert(ms.end(), extra.begin(), extra.end());
    }
    if (ms.empty()) {
        throw vqf::Error("give --m values or --random N");
    }
    std::vector<vqf::ScalingRow> rows;
    Output o(out);
    o.stream() << "m,n_m,qubits_raw,qubits_simplified\n";
    for (uint64_t m : ms) {
        vqf::ProblemConfig pc;
        pc.use_curated = false;
        if (mode == "wlog") {
            pc.length_mode = vqf::LengthMode::wlog;
        }
        const auto mode_used = vqf::resolve_length_mode(m, pc);
        auto lengths = mode_used == vqf::LengthMode::known ? vqf::reference_lengths(m) : std::nullopt;
        if (mode_used == vqf::LengthMode::known && !lengths) {
            throw vqf::InvalidLengths("no known factor lengths for " + std::to_string(m));
        }
        rows.push_back(vqf::qubit_scaling_row(m, mode_used, lengths));
        const auto &r = rows.back();
        o.stream() << r.m << ',' << r.n_m << ',' << r.raw << ',' << r.simplified << '\n';
    }
    try {
        std::cerr << "growth exponent: raw " << vqf::growth_exponent(rows, false) << ", simplified "
                  << vqf::growth_exponent(rows, true) << "\n";
    } catch (const vqf::Error &) {
        // Too few bit lengths for a fit.
    }
    return 0;
}

int cmd_report(const std::vector<std::string> &files, const std::string &out) {
    if (files.empty()) {
        throw vqf::Error("report needs at least one result file");
    }
    struct Acc {
        std::vector<double> success, cost;
        std::vector<int64_t> evals;
        int found = 0;
    };
    std::map<std::tuple<uint64_t, int, double>, Acc> groups;
    for (const auto &f : files) {
        const auto r = vqf::read_result_file(f);
        auto &a = groups[{r.m, r.s, r.epsilon}];
        a.success.push_back(r.success_prob);
        a.cost.push_back(r.final_cost);
        a.evals.push_back(r.eval_count);
        a.found += r.factors ? 1 : 0;
    }
    auto stats = [](const std::vector<double> &v) {
        vqf::SweepCell c;
        c.success = v;
        vqf::summarize(c);
        return std::pair{c.mean, c.stddev};
    };
    Output o(out);
    auto &os = o.stream();
    os << "m,s,epsilon,runs,mean_success,stddev_success,mean_final_cost,stddev_final_cost,mean_eval_count,factored\n"
       << std::setprecision(10);
    for (const auto &[key, a] : groups) {
        const auto [ms, ss] = stats(a.success);
        const auto [mc, sc] = stats(a.cost);
        double ev = 0.0;
        for (auto e : a.evals) {
            ev += static_cast<double>(e);
        }
        os << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << a.success.size() << ','
           << ms << ',' << ss << ',' << mc << ',' << sc << ',' << ev / static_cast<double>(a.evals.size()) << ','
           << a.found << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational quantum factoring on a simulated noisy device"};
    app.require_subcommand(1);

    ProblemArgs factor_p;
    TrainArgs factor_t;
    std::string factor_out = ".";
    std::string trace;
    auto *factor = app.add_subcommand("factor", "Train the ansatz and sample factors; exit 0 iff found");
    factor_p.attach(factor, true);
    factor_t.attach(factor);
    factor->add_option("--out", factor_out, "Directory for the result JSON and distribution CSV");
    factor->add_option("--trace", trace, "JSON-lines file with one record per cost evaluation");

    ProblemArgs simp_p;
    std::string simp_out;
    auto *simp = app.add_subcommand("simplify", "Print the reduced clause system as JSON");
    simp_p.attach(simp);
    simp->add_option("--out", simp_out, "Output file (default stdout)");

    ProblemArgs oracle_p;
    auto *oracle = app.add_subcommand("oracle", "Brute-force the ground states of the reduced Hamiltonian");
    oracle_p.attach(oracle, true);

    ProblemArgs en_p;
    std::string en_out;
    std::string en_bin;
    auto *energies = app.add_subcommand("energies", "Dump the diagonal of the Hamiltonian");
    en_p.attach(energies, true);
    energies->add_option("--out", en_out, "CSV output (default stdout)");
    energies->add_option("--binary", en_bin, "Binary table output");

    ProblemArgs sd_p;
    TrainArgs sd_t;
    std::vector<int> depths{1, 2, 3, 4, 5, 6, 7, 8};
    int sd_reps = 3;
    bool retrain = false;
    std::string sd_out;
    auto *sd = app.add_subcommand("sweep-depth", "Success probability against depth");
    sd_p.attach(sd);
    sd_t.attach(sd, false, true);
    sd->add_option("--depths", depths, "Depths to train")->check(CLI::PositiveNumber);
    sd->add_option("--repetitions", sd_reps, "Runs per depth (seeds seed..seed+r-1)")->check(CLI::PositiveNumber);
    sd->add_flag("--retrain", retrain, "Train every depth from scratch instead of extending");
    sd->add_option("--out", sd_out, "CSV output (default stdout)");

    ProblemArgs sn_p;
    TrainArgs sn_t;
    std::vector<double> eps{0.0, 1e-4, 1e-3};
    int sn_reps = 3;
    std::string sn_out;
    auto *sn = app.add_subcommand("sweep-noise", "Success probability against Pauli error rate");
    sn_p.attach(sn);
    sn_t.attach(sn, true, false);
    sn->add_option("--epsilons", eps, "Error rates");
    sn->add_option("--repetitions", sn_reps, "Runs per rate")->check(CLI::PositiveNumber);
    sn->add_option("--out", sn_out, "CSV output (default stdout)");

    std::vector<uint64_t> qs_m;
    int qs_random = 0;
    int qs_bits = 16;
    uint64_t qs_seed = 0;
    std::string qs_mode = "wlog";
    std::string qs_out;
    auto *qs = app.add_subcommand("qubit-scaling", "Qubit counts before and after simplification");
    qs->add_option("--m", qs_m, "Biprimes to include");
    qs->add_option("--random", qs_random, "Number of seeded random biprimes to add");
    qs->add_option("--max-bits", qs_bits, "Bit limit for random biprimes")->check(CLI::Range(4, 40));
    qs->add_option("--seed", qs_seed, "Seed for random biprimes");
    qs->add_option("--mode", qs_mode, "wlog, or auto (tabulated lengths for reference instances)")
        ->check(CLI::IsMember({"wlog", "auto"}));
    qs->add_option("--out", qs_out, "CSV output (default stdout)");

    std::vector<std::string> files;
    std::string rep_out;
    auto *report = app.add_subcommand("report", "Aggregate result files by (m, s, epsilon)");
    report->add_option("files", files, "Result JSON files")->check(CLI::ExistingFile);
    report->add_option("--out", rep_out, "CSV output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (factor->parsed()) return cmd_factor(factor_p, factor_t, factor_out, trace);
        if (simp->parsed()) return cmd_simplify(simp_p, simp_out);
        if (oracle->parsed()) return cmd_oracle(oracle_p);
        if (energies->parsed()) return cmd_energies(en_p, en_out, en_bin);
        if (sd->parsed()) return cmd_sweep_depth(sd_p, sd_t, depths, sd_reps, retrain, sd_out);
        if (sn->parsed()) return cmd_sweep_noise(sn_p, sn_t, eps, sn_reps, sn_out);
        if (qs->parsed()) return cmd_qubit_scaling(qs_m, qs_random, qs_bits, qs_seed, qs_mode, qs_out);
        if (report->parsed()) return cmd_report(files, rep_out);
    } catch (const vqf::PrimeInput &e) {
        std::cerr << "error: " << e.what() << " (prime input)\n";
        return kExitPrime;
    } catch (const vqf::InfeasibleInstance &e) {
        std::cerr << "error: infeasible instance: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const vqf::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
