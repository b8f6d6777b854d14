#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cmd(const std::string& args) {
    const std::string cmd = std::string(SPECLAB_BIN) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("speclab_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("unknown experiment is a usage error (exit 3)") {
    CHECK(run_cmd("no-such-experiment") == 3);
    CHECK(run_cmd("") == 3);  // a subcommand is required
}

TEST_CASE("invalid scaling configuration exits 3") {
    const fs::path out = fresh_dir("badcfg");
    // s >= s_c = 1/6 violates the admissibility inequality
    CHECK(run_cmd("inflation --set s=0.2 --out " + out.string()) == 3);
    // s_c <= 0
    CHECK(run_cmd("inflation --set sigma=2 --out " + out.string()) == 3);
    // malformed override
    CHECK(run_cmd("solve-nls --set nonsense --out " + out.string()) == 3);
    // missing config file
    CHECK(run_cmd("solve-nls --config /no/such/file --out " + out.string()) == 3);
}

TEST_CASE("solve-nls run produces the full artifact set and exits 0") {
    const fs::path out = fresh_dir("nls");
    const int rc = run_cmd("solve-nls --set N=128 --set t_final=0.1 --set samples=3 --out " +
                           out.string());
    CHECK(rc == 0);
    CHECK(fs::exists(out / "report.csv"));
    CHECK(fs::exists(out / "summary.json"));
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "fields" / "u_0000.slf"));
    CHECK(fs::exists(out / "fields" / "u_0002.slf"));

    const std::string csv = slurp(out / "report.csv");
    CHECK(csv.rfind("t,mass,energy,mass_drift,energy_drift\n", 0) == 0);
    const std::string summary = slurp(out / "summary.json");
    CHECK(summary.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("rerunning from the manifest reproduces the CSV byte-for-byte") {
    const fs::path out1 = fresh_dir("repro1");
    const fs::path out2 = fresh_dir("repro2");
    REQUIRE(run_cmd("solve-limit --set N=256 --set samples=3 --set t_max=0.1 --out " +
                    out1.string()) == 0);
    REQUIRE(run_cmd("solve-limit --config " + (out1 / "manifest.json").string() +
                    " --out " + out2.string()) == 0);
    const std::string a = slurp(out1 / "report.csv");
    CHECK(a == slurp(out2 / "report.csv"));
    CHECK(!a.empty());
}

TEST_CASE("a manifest is rejected under a different experiment") {
    const fs::path out1 = fresh_dir("cross1");
    const fs::path out2 = fresh_dir("cross2");
    REQUIRE(run_cmd("solve-nls --set N=128 --set t_final=0.1 --set samples=2 --out " +
                    out1.string()) == 0);
    CHECK(run_cmd("solve-limit --config " + (out1 / "manifest.json").string() + " --out " +
                  out2.string()) == 3);
}

TEST_CASE("an experiment whose attached assertion fails exits 2") {
    const fs::path out = fresh_dir("assertfail");
    // 128 points cannot resolve u = a^sigma to the 1e-6 bar
    CHECK(run_cmd("solve-limit --set N=128 --set samples=3 --set t_max=0.1 --out " +
                  out.string()) == 2);
    const std::string summary = slurp(out / "summary.json");
    CHECK(summary.find("\"pass\": false") != std::string::npos);
    CHECK(fs::exists(out / "manifest.json"));  // artifacts still written
}

TEST_CASE("--set overrides a config file value") {
    const fs::path out = fresh_dir("override");
    const fs::path cfgfile = out / "run.cfg";
    std::ofstream(cfgfile) << "N = 128\nt_final = 0.1\nsamples = 2\n# comment\n";
    REQUIRE(run_cmd("solve-nls --config " + cfgfile.string() + " --set samples=4 --out " +
                    out.string()) == 0);
    // 4 samples -> header plus four rows
    const std::string csv = slurp(out / "report.csv");
    int lines = 0;
    for (char c : csv) lines += (c == '\n');
    CHECK(lines == 5);
}
