// fqinc: command-line driver for the certificates and incidence experiments.
//
// Exit codes: 0 every check passed, 1 a falsifiable check failed, 2 configuration error, 3 guard exceeded.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fqinc/experiments.hpp"

namespace ex = fqinc::experiments;
using ex::Json;

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kGuard = 3 };

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

fqinc::BigRational parse_rational(const std::string& s) {
    try {
        const auto parts = split(s, '/');
        fqinc::require(parts.size() == 1 || parts.size() == 2, fqinc::ErrorKind::ParseError, "bad rational '" + s + "'");
        const fqinc::BigInt num(parts[0]);
        const fqinc::BigInt den(parts.size() == 2 ? parts[1] : "1");
        fqinc::require(den != 0, fqinc::ErrorKind::ParseError, "zero denominator in '" + s + "'");
        return fqinc::BigRational(num, den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const fqinc::Error*>(&e)) throw;
        fqinc::fail(fqinc::ErrorKind::ParseError, "bad rational '" + s + "'");
    }
}

struct FamilyArgs {
    std::string field = "3";
    std::size_t n = 1, d = 1;
    std::string b;  // "1,1;3,1": one row per i
    std::string h;  // "x1^2;x1+1": one polynomial per i

    ex::FamilySpec spec() const {
        ex::FamilySpec s = ex::plain_family(field, n, d);
        if (!h.empty()) s.h = split(h, ';');
        if (!b.empty()) {
            s.b.clear();
            for (const auto& row : split(b, ';')) {
                std::vector<std::uint64_t> r;
                for (const auto& e : split(row, ',')) {
                    fqinc::require(!e.empty() && e.find_first_not_of("0123456789") == std::string::npos,
                                   fqinc::ErrorKind::ParseError, "bad exponent '" + e + "' in --b");
                    r.push_back(std::stoull(e));
                }
                s.b.push_back(r);
            }
        }
        ex::build_family(s);  // validates
        return s;
    }

    void add_to(CLI::App* app) {
        app->add_option("--field", field, "field: p, p^m or p^m/c0,...,cm")->capture_default_str();
        app->add_option("--n", n, "base dimension n >= 1")->capture_default_str();
        app->add_option("--d", d, "codimension d >= 1")->capture_default_str();
        app->add_option("--b", b, "exponents b_{i,j}: rows separated by ';', entries by ','");
        app->add_option("--h", h, "polynomials h_i separated by ';' (e.g. \"x1^2;2*x1+1\")");
    }
};

std::vector<std::uint64_t> parse_sizes(const std::string& s) {
    std::vector<std::uint64_t> out;
    if (s.empty()) return out;
    for (const auto& e : split(s, ',')) {
        fqinc::require(!e.empty() && e.find_first_not_of("0123456789") == std::string::npos, fqinc::ErrorKind::ParseError,
                       "bad size '" + e + "'");
        out.push_back(std::stoull(e));
    }
    return out;
}

std::string csv_cell(const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

/// The "rows" array as CSV: header from the first row's keys, nested values as JSON text.
std::string to_csv(const Json& report) {
    std::ostringstream os;
    if (!report.contains("rows") || report["rows"].empty()) return "";
    const Json& rows = report["rows"];
    std::vector<std::string> keys;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << (row.contains(keys[i]) ? csv_cell(row[keys[i]]) : "");
        os << '\n';
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    fqinc::require(bool(f), fqinc::ErrorKind::ParseError, "cannot write '" + path + "'");
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact spectral certificates and incidence experiments over finite fields"};
    app.set_help_flag("--help", "print this help and exit");  // -h is taken by --h
    app.set_config("--config", "", "TOML file mirroring the command-line flags");
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 1;
    std::string out_path, csv_path;
    bool timings = false;
    fqinc::Guards guards;
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--csv", csv_path, "write report rows as CSV");
    app.add_flag("--timings", timings, "add wall-clock timings to the report (breaks byte-identical output)");
    app.add_option("--max-matrix-bits", guards.max_matrix_bits, "guard on incidence matrix size")->capture_default_str();
    app.add_option("--max-gram-order", guards.max_gram_order, "guard on Gram matrix order")->capture_default_str();
    app.add_option("--max-flats", guards.max_flats, "guard on the flat census")->capture_default_str();

    // spectrum
    FamilyArgs spec_fam;
    bool characters = true, with_projectors = false;
    std::string dump_T, dump_gram;
    auto* spectrum = app.add_subcommand("spectrum", "annihilation, multiplicity and character certificates");
    spec_fam.add_to(spectrum);
    spectrum->add_flag("--characters,!--no-characters", characters, "check every character eigenvector")->capture_default_str();
    spectrum->add_flag("--projectors", with_projectors, "build and verify the three eigenspace projectors");
    spectrum->add_option("--dump-T", dump_T, "write the incidence matrix");
    spectrum->add_option("--dump-gram", dump_gram, "write both Gram matrices");

    // incidence
    FamilyArgs inc_fam;
    ex::IncidenceConfig inc_cfg;
    std::string sizesP, sizesV, bound_names;
    auto* incidence = app.add_subcommand("incidence", "random (P, V) trials against the incidence bounds");
    inc_fam.add_to(incidence);
    incidence->add_option("--trials", inc_cfg.trials, "number of trials")->capture_default_str();
    incidence->add_option("--sizeP", sizesP, "point set sizes, comma separated (default 1,q,q^2,all)");
    incidence->add_option("--sizeV", sizesV, "variety set sizes, comma separated (default 1,q,q^2,all)");
    incidence->add_option("--bound", bound_names, "bounds, comma separated (default stated,intermediate,phuong)");
    incidence->add_flag("--rows", inc_cfg.rows, "include one row per (trial, bound)");
    incidence->add_flag("--spectral-chain,!--no-spectral-chain", inc_cfg.spectral_chain,
                        "also check delta^2 against the exact eigenspace projections")->capture_default_str();

    // flats
    std::string flats_field = "2";
    std::size_t flats_n = 2, flats_d = 1;
    bool census_only = false;
    std::string dump_flats;
    ex::FlatsConfig flats_cfg;
    auto* flats = app.add_subcommand("flats", "flat census, affine action and the point-flat bound");
    flats->add_option("--field", flats_field, "field spec")->capture_default_str();
    flats->add_option("--n", flats_n, "flat dimension")->capture_default_str();
    flats->add_option("--d", flats_d, "codimension")->capture_default_str();
    flats->add_flag("--census", census_only, "census only, no random trials");
    flats->add_option("--trials", flats_cfg.theorem_trials, "bound trials over the whole census")->capture_default_str();
    flats->add_option("--invariance-trials", flats_cfg.invariance_trials, "affine invariance trials")->capture_default_str();
    flats->add_option("--family-trials", flats_cfg.family_trials, "bound trials within the flat family")->capture_default_str();
    flats->add_option("--transitivity-trials", flats_cfg.transitivity_trials, "constructed-map trials")->capture_default_str();
    flats->add_option("--dump", dump_flats, "write the census, one flat per line");

    // pinned
    std::string pinned_field = "7", epsilon = "1/2";
    std::size_t pinned_n = 2;
    std::uint64_t pinned_size = 0;
    ex::PinnedRunConfig pinned_cfg;
    auto* pinned = app.add_subcommand("pinned", "pinned distance guarantee and its incidence identity");
    pinned->add_option("--field", pinned_field, "odd field spec")->capture_default_str();
    pinned->add_option("--n", pinned_n, "dimension")->capture_default_str();
    pinned->add_option("--epsilon", epsilon, "rational in (0,1), e.g. 1/4")->capture_default_str();
    pinned->add_option("--trials", pinned_cfg.trials, "random point sets")->capture_default_str();
    pinned->add_option("--sizeP", pinned_size, "fixed |P| (default: least admissible size or above)");
    pinned->add_flag("--report-only", pinned_cfg.report_only, "allow undersized P; conclusions become statistics");
    pinned->add_flag("--rows", pinned_cfg.rows, "include one row per draw");

    auto* grid = app.add_subcommand("grid", "run the full acceptance matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfig;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Json report;
    std::string command;
    try {
        if (spectrum->parsed()) {
            command = "spectrum";
            const auto spec = spec_fam.spec();
            report = ex::run_spectrum(spec, guards, characters, with_projectors);
            if (!dump_T.empty() || !dump_gram.empty()) {
                const auto fam = ex::build_family(spec);
                const auto t = fqinc::build_T(fam, guards);
                if (!dump_T.empty()) {
                    std::ofstream f(dump_T);
                    t.dump(f);
                }
                if (!dump_gram.empty()) {
                    std::ofstream f(dump_gram);
                    fqinc::dump_matrix(f, fqinc::gram_points(fam, t, guards).entries);
                    fqinc::dump_matrix(f, fqinc::gram_varieties(fam, t, guards).entries);
                }
            }
        } else if (incidence->parsed()) {
            command = "incidence";
            inc_cfg.seed = seed;
            inc_cfg.sizesP = parse_sizes(sizesP);
            inc_cfg.sizesV = parse_sizes(sizesV);
            for (const auto& name : split(bound_names, ',')) inc_cfg.bounds.push_back(fqinc::parse_bound_name(name));
            report = ex::run_incidence(inc_fam.spec(), 0, inc_cfg, guards);
        } else if (flats->parsed()) {
            command = "flats";
            flats_cfg.seed = seed;
            report = Json{{"census", ex::run_flats_census(flats_field, flats_n, flats_d, guards)}};
            bool pass = report["census"]["pass"].get<bool>();
            if (!census_only) {
                report["trials"] = ex::run_flats_trials(flats_field, flats_n, flats_d, 0, flats_cfg, guards);
                pass = pass && report["trials"]["pass"].get<bool>();
            }
            report["pass"] = pass;
            if (!dump_flats.empty()) {
                const auto ctx = fqinc::FieldCtx::parse(flats_field);
                std::ofstream f(dump_flats);
                for (const auto& fl : fqinc::enumerate_all_flats(ctx, flats_n, flats_d, guards.max_flats))
                    fqinc::dump_flat(f, fl);
            }
        } else if (pinned->parsed()) {
            command = "pinned";
            pinned_cfg.seed = seed;
            if (pinned_size) pinned_cfg.size = pinned_size;
            report = ex::run_pinned(pinned_field, pinned_n, parse_rational(epsilon), 0, pinned_cfg);
        } else if (grid->parsed()) {
            command = "grid";
            report = ex::run_grid(seed, guards);
            report["pass"] = report["verdict"]["fail"].get<std::size_t>() == 0;
        }
    } catch (const fqinc::Error& e) {
        std::cerr << "fqinc: " << e.what() << '\n';
        switch (e.kind()) {
            case fqinc::ErrorKind::TooLarge: return kGuard;
            case fqinc::ErrorKind::FormulaMismatch:
            case fqinc::ErrorKind::AnnihilationFailed:
            case fqinc::ErrorKind::MultiplicityMismatch:
            case fqinc::ErrorKind::EigenvectorMismatch: return kFail;
            default: return kConfig;
        }
    }

    Json full{{"command", command}, {"seed", seed}, {"report", report}};
    if (timings) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        full["timings"] = {{"total_seconds", secs}};
    }
    const std::string text = full.dump(2) + "\n";
    try {
        if (!out_path.empty()) write_file(out_path, text);
        else std::cout << text;
        if (!csv_path.empty()) write_file(csv_path, to_csv(report));
        if (const char* dir = std::getenv("FQINC_REPORT_DIR"); dir && *dir) {
            std::filesystem::create_directories(dir);
            write_file((std::filesystem::path(dir) / (command + ".json")).string(), text);
        }
    } catch (const fqinc::Error& e) {
        std::cerr << "fqinc: " << e.what() << '\n';
        return kConfig;
    }
    return report.value("pass", false) ? kPass : kFail;
}
