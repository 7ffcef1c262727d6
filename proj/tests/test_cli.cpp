#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "spinforge/assembly.hpp"
#include "spinforge/state_io.hpp"

using namespace spinforge;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("spinforge_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string binary() {
    const char* bin = std::getenv("SPINFORGE_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "SPINFORGE_BIN must point at the CLI binary");
    return bin;
}

// Runs `cmd` under the shell, capturing stdout via the pipe and stderr via a
// scratch file.
RunResult run(const std::string& cmd) {
    static int counter = 0;
    fs::path err_file = scratch_dir() / ("stderr_" + std::to_string(counter++) + ".txt");
    std::string full = cmd + " 2>" + err_file.string();
    FILE* pipe = ::popen(full.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
    int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.err = slurp(err_file);
    fs::remove(err_file);
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path path = scratch_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("tables pins the derivation rows") {
    RunResult r = run(binary() + " tables");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "spinforge state tables"));
    CHECK(contains(r.out, "[eq10] chi(0,0) = (ud - du)/sqrt2"));
    CHECK(contains(r.out, "[eq27] chi(1,1/2,1/2) = (2 uud - udu - duu)/sqrt6"));
    CHECK(contains(r.out, "[eq39]"));
    CHECK(contains(r.out, "[eq43:3/2]"));
}

TEST_CASE("tables json state files reparse to the same text") {
    RunResult r = run(binary() + " tables --format json");
    CHECK(r.exit_code == 0);
    auto json = nlohmann::json::parse(r.out);
    REQUIRE(json.contains("states"));
    int reparsed = 0;
    for (const auto& row : json["states"]) {
        std::string file = row["state_file"].get<std::string>();
        if (file.empty()) continue;
        ParsedState parsed = parse_state_text(file);
        std::string again =
            std::visit([](const auto& s) { return write_state_text(s); }, parsed);
        CHECK(again == file);
        ++reparsed;
    }
    CHECK(reparsed >= 20);
}

TEST_CASE("verify passes, is deterministic, and honors the seed sources") {
    RunResult a = run(binary() + " verify");
    CHECK(a.exit_code == 0);
    CHECK(contains(a.out, "spinforge verify report"));
    CHECK(contains(a.out, "seed = 42"));
    CHECK(contains(a.out, "fail 0"));
    CHECK(contains(a.out, "result: PASS"));

    RunResult b = run(binary() + " verify");
    CHECK(b.out == a.out);

    RunResult seeded = run("SPINFORGE_SEED=123 " + binary() + " verify");
    CHECK(seeded.exit_code == 0);
    CHECK(contains(seeded.out, "seed = 123"));
    RunResult seeded2 = run("SPINFORGE_SEED=123 " + binary() + " verify");
    CHECK(seeded2.out == seeded.out);

    // The flag outranks the environment.
    RunResult flag = run("SPINFORGE_SEED=123 " + binary() + " verify --seed 7");
    CHECK(flag.exit_code == 0);
    CHECK(contains(flag.out, "seed = 7"));

    RunResult bad_env = run("SPINFORGE_SEED=abc " + binary() + " verify");
    CHECK(bad_env.exit_code == 2);
    CHECK(contains(bad_env.err, "SPINFORGE_SEED"));
}

TEST_CASE("verify json reports all_pass") {
    RunResult r = run(binary() + " verify --format json");
    CHECK(r.exit_code == 0);
    auto json = nlohmann::json::parse(r.out);
    CHECK(json["tool"] == "spinforge");
    CHECK(json["seed"] == 42);
    CHECK(json["all_pass"] == true);
    CHECK(json["sections"].size() == 11);
}

TEST_CASE("classify embeds bare spin states") {
    fs::path file = write_file("singlet.txt",
                               "SPINSTATE v1 n=2\n(0 1 0 0)/2 ud\n(0 -1 0 0)/2 du\n");
    RunResult r = run(binary() + " classify --state " + file.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "spinforge classify: SPINSTATE n=2"));
    CHECK(contains(r.out, "embedding: shared orbital 'o' on every particle"));
    CHECK(contains(r.out, "norm2 = 1"));
    CHECK(contains(r.out, "factorable = true"));
    CHECK(contains(r.out, "spin_entangled = true"));
    CHECK(contains(r.out, "space_entangled = false"));
    CHECK(contains(r.out, "verdict = spin_only"));
    CHECK(contains(r.out, "space_factor = (o,o)"));
    CHECK(contains(r.out, "spin_factor = (ud - du)/sqrt2"));
    CHECK(contains(r.out, "cut {1}|{2}: schmidt_rank = 2, entropy_bits = 1"));
}

TEST_CASE("classify reports the pair-singlet assembly as nonfactorable") {
    TotalState psi = assemble(AssemblyCase::PairSinglet, {"n", "n", "l"}, 1);
    fs::path file = write_file("pair_singlet.txt", write_state_text(psi));

    RunResult r = run(binary() + " classify --state " + file.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "spinforge classify: TOTALSTATE n=3"));
    CHECK(!contains(r.out, "embedding:"));
    CHECK(contains(r.out, "factorable = false"));
    CHECK(contains(r.out, "verdict = full_nonfactorable"));
    CHECK(!contains(r.out, "space_factor"));
    CHECK(!contains(r.out, "spin_factor"));
    CHECK(contains(r.out, "cut {1}|{2,3}: schmidt_rank = 3, entropy_bits = 1.5849625"));
    // All three bipartitions by default.
    int cut_lines = 0;
    for (const auto& line : lines_of(r.out)) {
        if (line.rfind("cut ", 0) == 0) ++cut_lines;
    }
    CHECK(cut_lines == 3);

    // --cut narrows to one bipartition.
    RunResult one = run(binary() + " classify --state " + file.string() + " --cut 1");
    CHECK(one.exit_code == 0);
    int one_cuts = 0;
    for (const auto& line : lines_of(one.out)) {
        if (line.rfind("cut ", 0) == 0) ++one_cuts;
    }
    CHECK(one_cuts == 1);
    CHECK(contains(one.out, "cut {1}|{2,3}:"));

    // JSON variant carries the same verdict.
    RunResult j = run(binary() + " classify --state " + file.string() + " --format json");
    CHECK(j.exit_code == 0);
    auto json = nlohmann::json::parse(j.out);
    CHECK(json["verdict"] == "full_nonfactorable");
    CHECK(json["factorable"] == false);
    CHECK(json["cuts"].size() == 3);
}

TEST_CASE("classify renormalizes spectra when the norm leaves the field") {
    fs::path file = write_file("norm5.txt",
                               "SPINSTATE v1 n=2\n(2 0 0 0)/1 uu\n(1 0 0 0)/1 ud\n");
    RunResult r = run(binary() + " classify --state " + file.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "norm2 = 5"));
    CHECK(contains(r.out, "verdict = none"));
    CHECK(contains(r.out,
                   "cut {1}|{2}: schmidt_rank = 1, entropy_bits = 0 [spectrum renormalized]"));
}

TEST_CASE("classify input errors exit 2 with located messages") {
    fs::path bad = write_file("bad_scalar.txt", "SPINSTATE v1 n=2\n(1 2)/0 uu\n");
    RunResult r = run(binary() + " classify --state " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "error: ParseError: line 2, column 7: ZeroDenominator"));

    RunResult missing = run(binary() + " classify --state /nonexistent/state.txt");
    CHECK(missing.exit_code == 2);
    CHECK(contains(missing.err, "cannot open state file"));

    fs::path good = write_file("uu.txt", "SPINSTATE v1 n=2\n(1 0 0 0)/1 uu\n");
    RunResult badcut = run(binary() + " classify --state " + good.string() + " --cut xy");
    CHECK(badcut.exit_code == 2);
    CHECK(contains(badcut.err, "cut must look like"));

    RunResult outside = run(binary() + " classify --state " + good.string() + " --cut 3");
    CHECK(outside.exit_code == 2);

    RunResult noflag = run(binary() + " classify");
    CHECK(noflag.exit_code == 2);
}

TEST_CASE("decay emits the scan as CSV plus a summary") {
    RunResult r = run(binary() + " decay");
    CHECK(r.exit_code == 0);

    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 14);  // header + 13 rows for steps=12
    CHECK(lines[0] == "d,overlap,sv1,sv2,sv3plus,p_same");
    CHECK(lines[1].rfind("0,1,1,", 0) == 0);

    // Overlap column tracks exp(-d^2 / (4 sigma^2)) to 1e-6.
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::string field;
        std::getline(row, field, ',');
        double d = std::stod(field);
        std::getline(row, field, ',');
        double overlap = std::stod(field);
        CHECK(std::fabs(overlap - std::exp(-d * d / 4.0)) <= 1e-6);
    }

    CHECK(contains(r.err, "decay summary: sigma=1 dmax=12 steps=12"));
    CHECK(contains(r.err, "threshold a0 (a teeny number): overlap first < 1e-08 at d = 9"));
    CHECK(contains(r.err, "closed form crosses at 8.58386411*sigma"));
    CHECK(contains(r.err, "antisymmetric branch: degenerate pair persists"));
}

TEST_CASE("decay honors -o and the scan flags") {
    fs::path csv_path = scratch_dir() / "scan.csv";
    RunResult r = run(binary() + " decay --sigma 2 --dmax 8 --steps 4 -o " +
                      csv_path.string());
    CHECK(r.exit_code == 0);
    // Summary moves to stdout when the CSV goes to a file.
    CHECK(contains(r.out, "decay summary: sigma=2 dmax=8 steps=4"));
    CHECK(r.err.empty());

    auto lines = lines_of(slurp(csv_path));
    REQUIRE(lines.size() == 6);  // header + 5 rows
    CHECK(lines[0] == "d,overlap,sv1,sv2,sv3plus,p_same");
    CHECK(lines[1].rfind("0,1,1,", 0) == 0);
    CHECK(lines[5].rfind("8,", 0) == 0);
    fs::remove(csv_path);
}

TEST_CASE("usage errors exit 2 and help exits 0") {
    CHECK(run(binary()).exit_code == 2);
    CHECK(run(binary() + " frobnicate").exit_code == 2);
    CHECK(run(binary() + " decay --steps 0").exit_code == 2);
    CHECK(run(binary() + " decay --sigma -1").exit_code == 2);
    CHECK(run(binary() + " verify --format yaml").exit_code == 2);
    CHECK(run(binary() + " verify --bogus-flag").exit_code == 2);

    RunResult help = run(binary() + " --help");
    CHECK(help.exit_code == 0);
    CHECK(contains(help.out, "spinforge"));
    CHECK(run(binary() + " verify --help").exit_code == 0);
}
