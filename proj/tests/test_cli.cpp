#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* cli_path() { return std::getenv("QREAD_CLI"); }

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path();
    const fs::path out = dir / ("qread_cli_out_" + std::to_string(++counter) + ".txt");
    const fs::path err = dir / ("qread_cli_err_" + std::to_string(counter) + ".txt");
    const std::string cmd = std::string(cli_path()) + " " + args + " > " + out.string() + " 2> " +
                            err.string();
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out);
    res.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return res;
}

}  // namespace

TEST_CASE("command line: design report") {
    if (cli_path() == nullptr) {
        WARN("QREAD_CLI not set; skipping CLI tests");
        return;
    }
    const RunResult ok = run_cli("design --nbar-max 1000 --K 1");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("reflectivity r") != std::string::npos);
    CHECK(ok.out.find("0.999") != std::string::npos);

    const RunResult infeasible = run_cli("design --nbar-max 10 --K 20");
    CHECK(infeasible.exit_code == 2);
    CHECK(infeasible.err.find("error") != std::string::npos);

    // machine-readable twin
    const fs::path json_path = fs::temp_directory_path() / "qread_design.json";
    const RunResult with_json =
        run_cli("design --nbar-max 1000 --K 1 --out " + json_path.string());
    CHECK(with_json.exit_code == 0);
    const std::string json = slurp(json_path);
    CHECK(json.find("\"r\": 0.999") != std::string::npos);
    CHECK(json.find("\"info_quantum\"") != std::string::npos);
    fs::remove(json_path);
}

TEST_CASE("command line: sweep CSV output") {
    if (cli_path() == nullptr) {
        WARN("QREAD_CLI not set; skipping CLI tests");
        return;
    }
    const fs::path csv1 = fs::temp_directory_path() / "qread_sweep1.csv";
    const fs::path csv2 = fs::temp_directory_path() / "qread_sweep2.csv";
    const std::string flags = "sweep-delta --n-min 1 --n-max 100 --n-steps 6 "
                              "--r-min 0.99 --r-max 0.999 --r-steps 4 --out ";
    CHECK(run_cli(flags + csv1.string()).exit_code == 0);
    CHECK(run_cli(flags + csv2.string()).exit_code == 0);
    const std::string a = slurp(csv1), b = slurp(csv2);
    CHECK(!a.empty());
    CHECK(a == b);  // byte-identical across runs
    CHECK(a.rfind("n_bar,r,delta\n", 0) == 0);
    CHECK(a.find('\r') == std::string::npos);
    fs::remove(csv1);
    fs::remove(csv2);

    const RunResult io_fail = run_cli(flags + "/nonexistent_dir_zz/x.csv");
    CHECK(io_fail.exit_code == 3);

    const RunResult bad_grid = run_cli("condition-curves --K 1 --n-min 0.5 --n-max 10");
    CHECK(bad_grid.exit_code == 2);

    const RunResult cap = run_cli("classical-cap --nbar-max 100 --n-steps 10");
    CHECK(cap.exit_code == 0);
    CHECK(cap.out.rfind("n_bar,info_classical\n", 0) == 0);
}

TEST_CASE("command line: oracle check") {
    if (cli_path() == nullptr) {
        WARN("QREAD_CLI not set; skipping CLI tests");
        return;
    }
    const RunResult ok = run_cli("oracle-check 1 0.25");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("[PASS]") != std::string::npos);
    CHECK(ok.out.find("[FAIL]") == std::string::npos);

    const RunResult vacuum = run_cli("oracle-check 0 0.5");
    CHECK(vacuum.exit_code == 0);

    const RunResult guard = run_cli("oracle-check 6 0.5");
    CHECK(guard.exit_code == 2);
    CHECK(guard.err.find("desk scale") != std::string::npos);

    const RunResult tiny_cutoff = run_cli("oracle-check 1 0.25 --cutoff 3");
    CHECK(tiny_cutoff.exit_code == 2);
    CHECK(tiny_cutoff.err.find("tail") != std::string::npos);

    const RunResult unknown = run_cli("no-such-subcommand");
    CHECK(unknown.exit_code == 2);

    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
}
