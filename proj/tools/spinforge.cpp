// spinforge: command-line front end for the exact spin-coupling workbench.
//
// Exit codes: 0 success, 1 failed verification checks (or internal error),
// 2 usage or input errors (bad flags, unparseable state files, bad cuts).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinforge/assembly.hpp"
#include "spinforge/entanglement.hpp"
#include "spinforge/report.hpp"
#include "spinforge/state_io.hpp"

namespace sf = spinforge;

namespace {

unsigned env_seed() {
    const char* env = std::getenv("SPINFORGE_SEED");
    if (env == nullptr || *env == '\0') return 42;
    std::string text(env);
    if (text.find_first_not_of("0123456789") != std::string::npos) {
        throw sf::Error(sf::ErrorCode::ParseError,
                        "SPINFORGE_SEED must be a nonnegative integer, got '" + text + "'");
    }
    unsigned long value = std::strtoul(text.c_str(), nullptr, 10);
    if (value > std::numeric_limits<unsigned>::max()) {
        throw sf::Error(sf::ErrorCode::ParseError, "SPINFORGE_SEED out of range: " + text);
    }
    return static_cast<unsigned>(value);
}

int run_tables(const std::string& format) {
    auto rows = sf::build_state_tables();
    std::cout << (format == "json" ? sf::render_tables_json(rows)
                                   : sf::render_tables_text(rows));
    return 0;
}

int run_verify(std::optional<unsigned> seed_flag, const std::string& format) {
    sf::VerifyOptions opts;
    opts.seed = seed_flag ? *seed_flag : env_seed();
    sf::AnalysisReport report = sf::build_verify_report(opts);
    std::cout << (format == "json" ? sf::render_json(report) : sf::render_text(report));
    return report.exit_code();
}

// "--cut 1|23" style: digits left of '|' name the left block.
sf::Bipartition parse_cut(const std::string& text, int n) {
    std::string left = text.substr(0, text.find('|'));
    sf::ParticleSet side;
    for (char c : left) {
        if (c < '1' || c > '9') {
            throw sf::Error(sf::ErrorCode::ParseError,
                            "cut must look like 1|23 or 1, got '" + text + "'");
        }
        side.push_back(c - '0');
    }
    return sf::Bipartition::of(n, side);
}

struct CutReport {
    sf::Bipartition cut;
    int rank = 0;
    double entropy = 0.0;
    bool renormalized = false;  // spectrum rescaled because the norm leaves the field
};

CutReport cut_report(const sf::TotalState& x, const sf::Bipartition& cut) {
    CutReport out{cut, sf::schmidt_rank(x, cut), 0.0, false};
    if (x.is_normalized()) {
        out.entropy = sf::entropy_bits(x, cut);
        return out;
    }
    try {
        out.entropy = sf::entropy_bits(sf::total_normalize(x), cut);
    } catch (const sf::Error&) {
        out.renormalized = true;
        sf::ExactMatrix rho = sf::reduced_density(x, cut);
        std::vector<double> evs = sf::symmetric_eigenvalues(rho);
        double trace = 0.0;
        for (double v : evs) trace += v;
        if (trace > 0.0) {
            for (double& v : evs) v /= trace;
            out.entropy = sf::entropy_of_spectrum(evs);
        }
    }
    return out;
}

int run_classify(const std::string& path, const std::string& cut_text,
                 const std::string& format) {
    sf::ParsedState parsed = sf::parse_state_file(path);
    bool embedded = std::holds_alternative<sf::SpinState>(parsed);
    sf::TotalState total = [&] {
        if (!embedded) return std::get<sf::TotalState>(parsed);
        const sf::SpinState& spin = std::get<sf::SpinState>(parsed);
        sf::OrbitalTuple shared(static_cast<std::size_t>(spin.particles()), "o");
        return sf::combine(sf::SpaceState::single(shared), spin);
    }();
    int n = total.particles();

    std::vector<sf::Bipartition> cuts;
    if (cut_text.empty()) {
        cuts = sf::Bipartition::all(n);
    } else {
        cuts.push_back(parse_cut(cut_text, n));
    }

    sf::Classification cls = sf::classify(total);
    std::vector<CutReport> reports;
    reports.reserve(cuts.size());
    for (const sf::Bipartition& cut : cuts) reports.push_back(cut_report(total, cut));

    if (format == "json") {
        nlohmann::ordered_json j;
        j["tool"] = "spinforge";
        j["report"] = "classify";
        j["input"] = embedded ? "SPINSTATE" : "TOTALSTATE";
        j["particles"] = n;
        if (embedded) j["embedding"] = "shared orbital 'o' on every particle";
        j["norm2"] = sf::format_scalar(total.norm_squared());
        j["factorable"] = cls.factorable;
        j["spin_entangled"] = cls.spin_entangled;
        j["space_entangled"] = cls.space_entangled;
        j["verdict"] = sf::to_string(cls.verdict);
        if (cls.space_factor) j["space_factor"] = sf::pretty_space(*cls.space_factor);
        if (cls.spin_factor) j["spin_factor"] = sf::pretty_spin(*cls.spin_factor);
        nlohmann::ordered_json jcuts = nlohmann::ordered_json::array();
        for (const CutReport& r : reports) {
            nlohmann::ordered_json jc;
            jc["cut"] = r.cut.to_text();
            jc["schmidt_rank"] = r.rank;
            jc["entropy_bits"] = sf::format_float(r.entropy);
            jc["renormalized"] = r.renormalized;
            jcuts.push_back(std::move(jc));
        }
        j["cuts"] = std::move(jcuts);
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::cout << "spinforge classify: " << (embedded ? "SPINSTATE" : "TOTALSTATE")
              << " n=" << n << "\n";
    if (embedded) std::cout << "embedding: shared orbital 'o' on every particle\n";
    std::cout << "norm2 = " << sf::format_scalar(total.norm_squared()) << "\n";
    std::cout << "factorable = " << (cls.factorable ? "true" : "false") << "\n";
    std::cout << "spin_entangled = " << (cls.spin_entangled ? "true" : "false") << "\n";
    std::cout << "space_entangled = " << (cls.space_entangled ? "true" : "false") << "\n";
    std::cout << "verdict = " << sf::to_string(cls.verdict) << "\n";
    if (cls.space_factor) {
        std::cout << "space_factor = " << sf::pretty_space(*cls.space_factor) << "\n";
    }
    if (cls.spin_factor) {
        std::cout << "spin_factor = " << sf::pretty_spin(*cls.spin_factor) << "\n";
    }
    for (const CutReport& r : reports) {
        std::cout << "cut " << r.cut.to_text() << ": schmidt_rank = " << r.rank
                  << ", entropy_bits = " << sf::format_float(r.entropy)
                  << (r.renormalized ? " [spectrum renormalized]" : "") << "\n";
    }
    return 0;
}

int run_decay(double sigma, double dmax, int steps, const std::string& out_path) {
    sf::ScanParams params = sf::default_scan_params(sigma);
    std::vector<double> distances;
    distances.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        distances.push_back(dmax * static_cast<double>(i) / static_cast<double>(steps));
    }
    std::vector<sf::ScanRow> rows = sf::separation_scan(params, distances);
    std::string csv = sf::render_decay_csv(rows);
    std::string summary = sf::render_decay_summary(sf::summarize_decay(rows, sigma, dmax, steps));
    if (out_path.empty()) {
        std::cout << csv;
        std::cerr << summary;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            throw sf::Error(sf::ErrorCode::ParseError, "cannot open output file: " + out_path);
        }
        file << csv;
        std::cout << summary;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinforge: exact three-spin coupling and entanglement workbench"};
    app.require_subcommand(1);

    std::string tables_format = "text";
    CLI::App* tables = app.add_subcommand("tables", "print every constructed state");
    tables->add_option("--format", tables_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string verify_format = "text";
    std::optional<unsigned> verify_seed;
    CLI::App* verify =
        app.add_subcommand("verify", "run the full derivation and entanglement audit");
    verify->add_option("--format", verify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--seed", verify_seed,
                       "random-product seed (default: SPINFORGE_SEED or 42)");

    std::string classify_state;
    std::string classify_cut;
    std::string classify_format = "text";
    CLI::App* classify =
        app.add_subcommand("classify", "classify the entanglement of a state file");
    classify->add_option("--state", classify_state, "path to a state file")->required();
    classify->add_option("--cut", classify_cut, "single bipartition, e.g. 1|23");
    classify->add_option("--format", classify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    double decay_sigma = 1.0;
    double decay_dmax = 12.0;
    int decay_steps = 12;
    std::string decay_output;
    CLI::App* decay =
        app.add_subcommand("decay", "scan exchange-term decay against orbital separation");
    decay->add_option("--sigma", decay_sigma, "orbital width (> 0)")
        ->check(CLI::PositiveNumber);
    decay->add_option("--dmax", decay_dmax, "largest separation (> 0)")
        ->check(CLI::PositiveNumber);
    decay->add_option("--steps", decay_steps, "number of scan intervals (>= 1)")
        ->check(CLI::PositiveNumber);
    decay->add_option("-o,--output", decay_output, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tables->parsed()) return run_tables(tables_format);
        if (verify->parsed()) return run_verify(verify_seed, verify_format);
        if (classify->parsed()) return run_classify(classify_state, classify_cut, classify_format);
        if (decay->parsed()) return run_decay(decay_sigma, decay_dmax, decay_steps, decay_output);
    } catch (const sf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
