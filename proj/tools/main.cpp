// finchar - triangular decomposition of polynomial systems over small
// finite fields, with generators for the stream-cipher and matrix
// benchmarks.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "finchar/decompose.hpp"
#include "finchar/io.hpp"
#include "finchar/oracle.hpp"
#include "finchar/problems.hpp"

namespace {

using namespace finchar;

constexpr int kExitParse = 2;
constexpr int kExitAlgorithm = 3;
constexpr int kExitResource = 4;

void emit_report(const nlohmann::json& report, const std::string& json_target) {
    if (json_target.empty()) return;
    if (json_target == "-") {
        std::cout << render_report(report);
        return;
    }
    std::ofstream out(json_target);
    if (!out) throw std::runtime_error("cannot write: " + json_target);
    out << render_report(report);
}

std::string r_column(std::uint64_t n_components, std::uint32_t nvars) {
    return std::to_string(n_components) + "*2^-" + std::to_string(nvars);
}

int cmd_solve(const std::string& input, std::string algorithm, bool enumerate,
              std::uint64_t limit, const std::string& json_target, unsigned threads,
              std::uint64_t max_components, double time_budget) {
    SystemFile sys;
    try {
        sys = load_system(input);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }

    if (algorithm.empty()) algorithm = sys.spec->q() == 2 ? "mfcs" : "tdcs";
    Algorithm alg;
    try {
        alg = algorithm_from_string(algorithm);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitAlgorithm;
    }
    if ((alg == Algorithm::tdcs2 || alg == Algorithm::mfcs) && sys.spec->q() != 2) {
        std::cerr << "algorithm " << algorithm << " requires q = 2 (field is "
                  << sys.spec->label() << ")\n";
        return kExitAlgorithm;
    }

    SolveOptions opts;
    opts.threads = threads;
    if (max_components) opts.max_components = max_components;
    opts.time_budget_seconds = time_budget;

    Decomposition dec;
    try {
        dec = solve(alg, sys.polys, sys.spec, sys.nvars, opts);
    } catch (const ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        nlohmann::json report = build_report(e.partial, sys.spec, sys.nvars, {});
        emit_report(report, json_target);
        return kExitResource;
    }

    ReportOptions ropts;
    ropts.enumerate = enumerate;
    ropts.enumerate_limit = limit;
    nlohmann::json report;
    try {
        report = build_report(dec, sys.spec, sys.nvars, ropts);
    } catch (const std::invalid_argument& e) {
        std::cerr << "enumeration failed: " << e.what() << "\n";
        return kExitResource;
    }
    emit_report(report, json_target);
    if (json_target != "-") {
        std::cout << "status=" << report["status"].get<std::string>()
                  << " components=" << dec.components.size() << " count="
                  << (report.contains("total_count")
                          ? report["total_count"].get<std::string>()
                          : std::string("0"))
                  << " time=" << dec.wall_seconds << "s\n";
    }
    return 0;
}

std::vector<std::uint32_t> parse_int_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    return out;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::vector<std::uint8_t> string_to_bits(const std::string& s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c == '0') bits.push_back(0);
        else if (c == '1') bits.push_back(1);
        else throw std::invalid_argument("keystream must be a 0/1 string");
    }
    return bits;
}

void write_instance(const ProblemInstance& inst, const std::string& out_base, bool plant,
                    const nlohmann::json& params, const std::vector<Poly>* check = nullptr) {
    SystemFile sys{inst.spec, inst.nvars, inst.polys};
    save_system(out_base + ".sys", sys, inst.family + " instance");
    if (check) {
        SystemFile chk{inst.spec, inst.nvars, *check};
        save_system(out_base + ".check.sys", chk, inst.family + " reduction check");
    }
    nlohmann::json meta;
    meta["family"] = inst.family;
    meta["params"] = params;
    meta["seed"] = inst.seed;
    meta["nvars"] = inst.nvars;
    meta["equations"] = inst.polys.size();
    if (plant && inst.planted) meta["planted"] = bits_to_string(*inst.planted);
    std::ofstream out(out_base + ".json");
    if (!out) throw std::runtime_error("cannot write: " + out_base + ".json");
    out << meta.dump(2) << "\n";
}

int cmd_verify(const std::string& decomposition_path, const std::string& check_path) {
    LoadedReport rep = load_report(decomposition_path);
    if (rep.status == "partial") {
        std::cerr << "partial decomposition cannot be verified\n";
        return kExitResource;
    }
    SystemFile chk = load_system(check_path);
    ReductionFailure fail;
    if (verify_reduction(chk.polys, rep.decomposition, &fail)) {
        std::cout << "all " << chk.polys.size() << " polynomials reduce to 0 against "
                  << rep.decomposition.components.size() << " component(s)\n";
        return 0;
    }
    std::cout << "reduction failed: component " << fail.component << ", polynomial "
              << fail.poly << "\n";
    return 1;
}

struct BenchRow {
    std::string instance;
    std::string algorithm;
    double seconds;
    std::uint64_t n_components;
    std::uint32_t nvars;
    std::uint64_t max_len;
    std::uint64_t mul_count;
};

BenchRow bench_run(const std::string& name, Algorithm alg, const std::vector<Poly>& ps,
                   const FieldSpecPtr& spec, std::uint32_t nvars, unsigned repeat,
                   double time_budget) {
    SolveOptions opts;
    opts.time_budget_seconds = time_budget;
    opts.audit_monomials = false;
    std::vector<double> times;
    SolveStats stats;
    std::uint64_t n_components = 0;
    for (unsigned i = 0; i < std::max(1u, repeat); ++i) {
        try {
            Decomposition d = solve(alg, ps, spec, nvars, opts);
            times.push_back(d.wall_seconds);
            stats = d.stats;
            n_components = d.components.size();
        } catch (const ResourceCapError& e) {
            times.push_back(time_budget);
            stats = e.partial.stats;
            n_components = e.partial.components.size();
        }
    }
    std::sort(times.begin(), times.end());
    return {name,
            algorithm_name(alg),
            times[times.size() / 2],
            n_components,
            nvars,
            stats.max_len,
            stats.mul_count};
}

int cmd_bench(const std::string& suite, unsigned repeat, const std::string& csv_path,
              bool full, double time_budget) {
    std::vector<BenchRow> rows;
    if (suite == "matmul") {
        for (std::uint32_t n : std::vector<std::uint32_t>{2, 3, 4}) {
            if (n == 4 && !full && time_budget == 0) time_budget = 300;
            MatMulProblem prob = matmul_equations(n);
            rows.push_back(bench_run("matmul-n" + std::to_string(n), Algorithm::mfcs,
                                     prob.instance.polys, prob.instance.spec,
                                     prob.instance.nvars, repeat, time_budget));
            if (n <= 3)
                rows.push_back(bench_run("matmul-n" + std::to_string(n), Algorithm::tdcs2,
                                         prob.instance.polys, prob.instance.spec,
                                         prob.instance.nvars, repeat, time_budget));
        }
    } else if (suite == "nfg-simple" || suite == "nfg-weighty") {
        const bool weighty = suite == "nfg-weighty";
        std::vector<std::uint32_t> feedback =
            weighty ? std::vector<std::uint32_t>{40, 35, 32, 27, 24, 19, 15, 12, 7, 1, 0}
                    : std::vector<std::uint32_t>{40, 21, 19, 2, 0};
        std::vector<int> filters = weighty ? (full ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}
                                                   : std::vector<int>{1, 4, 7})
                                           : std::vector<int>{1, 2, 3, 4, 5};
        std::vector<std::uint32_t> keybits_simple{52, 44, 64, 60, 40};
        for (std::size_t i = 0; i < filters.size(); ++i) {
            NfgSpec spec;
            spec.lfsr = LfsrSpec::from_feedback_exponents(40, feedback);
            spec.filter = canfil(filters[i]);
            spec.tap_positions = {0, 1, 2, 3, 4, 5, 6};
            spec.keybits = weighty ? 60 : keybits_simple[i];
            ProblemInstance inst = make_nfg_instance(spec, 1);
            rows.push_back(bench_run(suite + "-" + spec.filter.name, Algorithm::mfcs, inst.polys,
                                     inst.spec, inst.nvars, repeat, time_budget));
        }
    } else if (suite == "bivium") {
        std::vector<std::uint32_t> clock_counts = full ? std::vector<std::uint32_t>{100, 700}
                                                       : std::vector<std::uint32_t>{30};
        for (std::uint32_t n : clock_counts) {
            double budget = time_budget > 0 ? time_budget : 120;
            ProblemInstance inst = make_bivium_instance(n, 1);
            rows.push_back(bench_run("bivium-N" + std::to_string(n), Algorithm::mfcs, inst.polys,
                                     inst.spec, inst.nvars, repeat, budget));
        }
    } else {
        std::cerr << "unknown suite: " << suite
                  << " (expected matmul, nfg-simple, nfg-weighty, bivium)\n";
        return kExitParse;
    }

    std::ostringstream csv;
    csv << "instance,algorithm,seconds,N_C,R,max_len,mul_count\n";
    for (const auto& r : rows)
        csv << r.instance << "," << r.algorithm << "," << r.seconds << "," << r.n_components
            << "," << r_column(r.n_components, r.nvars) << "," << r.max_len << ","
            << r.mul_count << "\n";
    if (csv_path.empty() || csv_path == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write: " + csv_path);
        out << csv.str();
    }
    return 0;
}

int cmd_oracle(const std::string& input, std::uint64_t limit, const std::string& json_target) {
    SystemFile sys;
    try {
        sys = load_system(input);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    OracleLimits limits;
    if (limit) limits.max_points = limit;
    std::vector<Point> zeros;
    try {
        zeros = brute_zero_set(sys.polys, sys.nvars, sys.spec, limits);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitResource;
    }
    if (!json_target.empty()) {
        nlohmann::json j;
        j["count"] = std::to_string(zeros.size());
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& z : zeros) {
            std::vector<std::uint16_t> codes(z.size());
            for (std::size_t i = 0; i < z.size(); ++i) codes[i] = z[i].code;
            pts.push_back(codes);
        }
        j["solutions"] = std::move(pts);
        emit_report(j, json_target);
    } else {
        std::cout << "count=" << zeros.size() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characteristic-set solver for polynomial systems over small finite fields"};
    app.require_subcommand(1);

    // solve
    std::string in_path, algorithm, json_target;
    bool enumerate = false;
    std::uint64_t enum_limit = std::uint64_t(1) << 20;
    unsigned threads = 1;
    std::uint64_t max_components = 0;
    double time_budget = 0;
    auto* solve_cmd = app.add_subcommand("solve", "Decompose a polynomial system");
    solve_cmd->add_option("input", in_path, "system file")->required();
    solve_cmd->add_option("--algorithm", algorithm, "tdcs, tdcs2 or mfcs");
    solve_cmd->add_flag("--enumerate", enumerate, "list all solutions");
    solve_cmd->add_option("--limit", enum_limit, "enumeration limit");
    solve_cmd->add_option("--json", json_target, "write the report here ('-' for stdout)");
    solve_cmd->add_option("--threads", threads, "worker threads");
    solve_cmd->add_option("--max-components", max_components, "component cap");
    solve_cmd->add_option("--time-budget", time_budget, "seconds before giving up");

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Generate benchmark systems");
    gen_cmd->require_subcommand(1);
    std::uint64_t seed = 1;
    bool plant = false;
    std::string out_base = "instance";

    auto* nfg_cmd = gen_cmd->add_subcommand("nfg", "nonlinear filter generator equations");
    std::string filter_name = "canfil1", feedback_str, taps_str = "0,1,2,3,4,5,6",
                keystream_str;
    std::uint32_t L = 40, keybits = 0;
    nfg_cmd->add_option("--filter", filter_name, "canfil1..canfil10");
    nfg_cmd->add_option("--L", L, "register length")->required();
    nfg_cmd->add_option("--feedback", feedback_str, "feedback exponents, e.g. 40,21,19,2,0")
        ->required();
    nfg_cmd->add_option("--taps", taps_str, "tapping sequence");
    nfg_cmd->add_option("--keybits", keybits, "number of output equations")->required();
    nfg_cmd->add_option("--keystream", keystream_str, "explicit keystream bits (otherwise planted)");
    nfg_cmd->add_option("--seed", seed, "PRNG seed for the planted key");
    nfg_cmd->add_flag("--plant", plant, "record the planted key in the sidecar");
    nfg_cmd->add_option("-o,--output", out_base, "output base name");

    auto* bivium_cmd = gen_cmd->add_subcommand("bivium", "Bivium-A equations");
    std::uint32_t clocks = 0;
    bivium_cmd->add_option("--clocks", clocks, "output bits N")->required();
    bivium_cmd->add_option("--seed", seed, "PRNG seed for the planted state");
    bivium_cmd->add_flag("--plant", plant, "record the planted state in the sidecar");
    bivium_cmd->add_option("-o,--output", out_base, "output base name");

    auto* matmul_cmd = gen_cmd->add_subcommand("matmul", "Boolean matrix AB=I equations");
    std::uint32_t mat_n = 2;
    matmul_cmd->add_option("--n", mat_n, "matrix size")->required();
    matmul_cmd->add_option("-o,--output", out_base, "output base name");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Check reduction of a system against a decomposition");
    std::string dec_path, check_path;
    verify_cmd->add_option("--decomposition", dec_path, "solve report JSON")->required();
    verify_cmd->add_option("--check", check_path, "system file with the check polynomials")
        ->required();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
    std::string suite, csv_path;
    unsigned repeat = 1;
    bool full = false;
    double bench_budget = 0;
    bench_cmd->add_option("suite", suite, "matmul, nfg-simple, nfg-weighty or bivium")->required();
    bench_cmd->add_option("--repeat", repeat, "repetitions (median reported)");
    bench_cmd->add_option("--csv", csv_path, "CSV output path ('-' for stdout)");
    bench_cmd->add_flag("--full", full, "include the expensive rows");
    bench_cmd->add_option("--time-budget", bench_budget, "per-row time budget in seconds");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force zero set of a system");
    std::string oracle_input, oracle_json;
    std::uint64_t oracle_limit = 0;
    oracle_cmd->add_option("input", oracle_input, "system file")->required();
    oracle_cmd->add_option("--limit", oracle_limit, "point cap");
    oracle_cmd->add_option("--json", oracle_json, "write results here ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed())
            return cmd_solve(in_path, algorithm, enumerate, enum_limit, json_target, threads,
                             max_components, time_budget);
        if (nfg_cmd->parsed()) {
            NfgSpec spec;
            spec.lfsr = LfsrSpec::from_feedback_exponents(L, parse_int_list(feedback_str));
            if (filter_name.rfind("canfil", 0) == 0)
                spec.filter = canfil(std::stoi(filter_name.substr(6)));
            else
                throw std::invalid_argument("unknown filter: " + filter_name);
            spec.tap_positions = parse_int_list(taps_str);
            spec.keybits = keybits;
            nlohmann::json params{{"filter", spec.filter.name},
                                  {"L", L},
                                  {"feedback", parse_int_list(feedback_str)},
                                  {"taps", spec.tap_positions},
                                  {"keybits", keybits}};
            if (!keystream_str.empty()) {
                ProblemInstance inst = nfg_equations(spec, string_to_bits(keystream_str));
                params["keystream"] = keystream_str;
                write_instance(inst, out_base, false, params);
            } else {
                ProblemInstance inst = make_nfg_instance(spec, seed);
                params["keystream"] = bits_to_string(nfg_keystream(
                    spec, *inst.planted, spec.keybits));
                write_instance(inst, out_base, plant, params);
            }
            return 0;
        }
        if (bivium_cmd->parsed()) {
            ProblemInstance inst = make_bivium_instance(clocks, seed);
            nlohmann::json params{{"clocks", clocks}};
            write_instance(inst, out_base, plant, params);
            return 0;
        }
        if (matmul_cmd->parsed()) {
            MatMulProblem prob = matmul_equations(mat_n);
            nlohmann::json params{{"n", mat_n}};
            write_instance(prob.instance, out_base, false, params, &prob.check);
            return 0;
        }
        if (verify_cmd->parsed()) return cmd_verify(dec_path, check_path);
        if (bench_cmd->parsed()) return cmd_bench(suite, repeat, csv_path, full, bench_budget);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_input, oracle_limit, oracle_json);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
