// End-to-end checks of the command-line tool: exit codes, golden outputs,
// deterministic generation.  Spawns the built binary.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& args, std::string* output = nullptr) {
    const std::string out_file = "/tmp/finchar_smoke_out.txt";
    std::string cmd = std::string(FINCHAR_BIN) + " " + args + " > " + out_file + " 2>&1";
    int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out_file);
        std::stringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

int main() {
    const std::string dir = "/tmp/finchar_smoke";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());

    // the worked F_3 example solves to count 4
    write_file(dir + "/ex.sys", "q 3\nn 3\nx1*x2*x3^2 + 2\n");
    std::string out;
    expect(run("solve " + dir + "/ex.sys --json -", &out) == 0, "solve exits 0");
    expect(out.find("\"total_count\": \"4\"") != std::string::npos, "count 4 in report");
    expect(out.find("\"status\": \"complete\"") != std::string::npos, "status complete");

    // empty Boolean system covers the whole space
    write_file(dir + "/empty.sys", "q 2\nn 3\n");
    expect(run("solve " + dir + "/empty.sys --json -", &out) == 0, "empty solve exits 0");
    expect(out.find("\"total_count\": \"8\"") != std::string::npos, "count 8 for empty system");

    // parse errors exit 2
    expect(run("solve " + dir + "/missing.sys") == 2, "missing file exits 2");
    write_file(dir + "/bad.sys", "q 3\nn 1\nx2 + 1\n");
    expect(run("solve " + dir + "/bad.sys") == 2, "out-of-range variable exits 2");

    // incompatible algorithm exits 3
    expect(run("solve " + dir + "/ex.sys --algorithm mfcs") == 3, "mfcs on q=3 exits 3");
    expect(run("solve " + dir + "/ex.sys --algorithm tdcs2") == 3, "tdcs2 on q=3 exits 3");

    // resource cap exits 4 and leaves a partial report
    write_file(dir + "/two.sys", "q 2\nn 2\nx1*x2\n");
    expect(run("solve " + dir + "/two.sys --max-components 1 --json " + dir + "/part.json") == 4,
           "component cap exits 4");
    expect(slurp(dir + "/part.json").find("\"status\": \"partial\"") != std::string::npos,
           "partial report written");

    // inconsistent systems are not an error
    write_file(dir + "/none.sys", "q 3\nn 1\nx1^2 + 1\n");
    expect(run("solve " + dir + "/none.sys --json -", &out) == 0, "inconsistent exits 0");
    expect(out.find("\"status\": \"inconsistent\"") != std::string::npos, "status inconsistent");

    // threads do not change the report
    std::string t1, t8;
    run("solve " + dir + "/ex.sys --threads 1 --enumerate --json -", &t1);
    run("solve " + dir + "/ex.sys --threads 8 --enumerate --json -", &t8);
    expect(!t1.empty() && t1 == t8, "reports identical across thread counts");

    // generation is deterministic and planted keys satisfy their systems
    const std::string gen_args =
        "generate nfg --filter canfil5 --L 40 --feedback 40,21,19,2,0 --taps 0,1,2,3,4,5,6 "
        "--keybits 40 --seed 7 --plant -o ";
    expect(run(gen_args + dir + "/a") == 0, "generate nfg exits 0");
    expect(run(gen_args + dir + "/b") == 0, "generate nfg again");
    expect(slurp(dir + "/a.sys") == slurp(dir + "/b.sys"), "same seed, identical system");
    expect(slurp(dir + "/a.json") == slurp(dir + "/b.json"), "same seed, identical sidecar");
    expect(slurp(dir + "/a.json").find("\"planted\"") != std::string::npos, "plant recorded");
    {
        std::ifstream in(dir + "/a.sys");
        std::string line;
        int polys = 0;
        bool nline = false;
        while (std::getline(in, line)) {
            if (line.rfind("n ", 0) == 0) nline = line == "n 40";
            if (!line.empty() && line[0] == 'x') ++polys;
        }
        expect(nline, "nfg header n 40");
        expect(polys == 40, "nfg has 40 equations");
    }

    expect(run("generate bivium --clocks 10 --seed 1 -o " + dir + "/bv") == 0, "generate bivium");
    {
        std::string sys = slurp(dir + "/bv.sys");
        expect(sys.find("n 197") != std::string::npos, "bivium has 197 variables");
    }

    // matmul pipeline: generate, solve, verify
    expect(run("generate matmul --n 2 -o " + dir + "/mm") == 0, "generate matmul");
    expect(run("solve " + dir + "/mm.sys --algorithm mfcs --json " + dir + "/mm.json", &out) == 0,
           "solve matmul");
    expect(run("verify --decomposition " + dir + "/mm.json --check " + dir + "/mm.check.sys") == 0,
           "verify BA=I reduces");
    write_file(dir + "/one.sys", "q 2\nn 8\n1\n");
    expect(run("verify --decomposition " + dir + "/mm.json --check " + dir + "/one.sys") == 1,
           "verify rejects the constant 1");
    write_file(dir + "/zero.sys", "q 2\nn 8\n0\n");
    expect(run("verify --decomposition " + dir + "/mm.json --check " + dir + "/zero.sys") == 0,
           "verify accepts the zero polynomial");

    // oracle agrees with the solve count
    expect(run("oracle " + dir + "/ex.sys", &out) == 0, "oracle runs");
    expect(out.find("count=4") != std::string::npos, "oracle count 4");

    // bench emits the pinned CSV columns
    expect(run("bench matmul --repeat 1 --time-budget 60 --csv -", &out) == 0,
           "bench matmul runs");
    expect(out.rfind("instance,algorithm,seconds,N_C,R,max_len,mul_count\n", 0) == 0,
           "bench CSV header");

    if (failures == 0) std::cout << "cli smoke: all checks passed\n";
    return failures == 0 ? 0 : 1;
}
