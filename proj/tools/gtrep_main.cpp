// gtrep: build, export, and verify exact pattern-basis modules over finite
// W-algebras / shifted Yangians. All arithmetic is exact rational; every
// check is tolerance-free. Exit codes: 0 success, 1 usage/input error,
// 2 verification failure.

#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gtrep/json_io.hpp"
#include "gtrep/parallel.hpp"
#include "gtrep/repbuild.hpp"
#include "gtrep/verify.hpp"

namespace {

using namespace gtrep;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

std::vector<int> parse_int_csv(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InvalidInput("not an integer list: '" + s + "'");
        }
    }
    if (out.empty()) throw InvalidInput("empty integer list");
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

struct CommonInput {
    std::string weights_path;
    std::string pyramid_csv;

    HighestWeightSpec load() const {
        if (weights_path.empty()) throw InvalidInput("--weights FILE is required");
        if (pyramid_csv.empty()) return load_weights_file(weights_path);
        const std::vector<int> rows = parse_int_csv(pyramid_csv);
        return load_weights_file(weights_path, &rows);
    }
};

enum class SuiteId { abc, lemma22, center, defining, highest, dimension, branching, gln };

const std::vector<std::pair<std::string, SuiteId>> kSuiteNames = {
    {"abc", SuiteId::abc},           {"lemma22", SuiteId::lemma22},
    {"center", SuiteId::center},     {"defining", SuiteId::defining},
    {"highest", SuiteId::highest},   {"dimension", SuiteId::dimension},
    {"branching", SuiteId::branching}, {"gln", SuiteId::gln}};

SuiteId suite_from_name(const std::string& name) {
    for (const auto& [n, id] : kSuiteNames)
        if (n == name) return id;
    throw InvalidInput("unknown suite '" + name +
                       "' (known: abc,lemma22,center,defining,highest,dimension,"
                       "branching,gln)");
}

/// Suites applicable to every configuration, plus branching for n >= 2 and
/// gln for one-column pyramids.
std::vector<SuiteId> default_suites(const Representation& rep) {
    std::vector<SuiteId> s{SuiteId::abc,     SuiteId::lemma22,  SuiteId::center,
                           SuiteId::defining, SuiteId::highest, SuiteId::dimension};
    if (rep.pyramid().height() >= 2) s.push_back(SuiteId::branching);
    if (rep.pyramid().is_one_column()) s.push_back(SuiteId::gln);
    return s;
}

VerificationReport run_suite(const Representation& rep, SuiteId id, int R,
                             int threads) {
    switch (id) {
        case SuiteId::abc:
            return verify_polynomial_identities(rep, PolySuite::abc, threads);
        case SuiteId::lemma22:
            return verify_polynomial_identities(rep, PolySuite::lemma22, threads);
        case SuiteId::center:
            return verify_polynomial_identities(rep, PolySuite::center, threads);
        case SuiteId::defining:
            return check_defining_relations(rep, R, threads);
        case SuiteId::highest:
            return check_highest_vector(rep, R);
        case SuiteId::dimension:
            return check_dimension(rep);
        case SuiteId::branching:
            return check_branching(rep, threads);
        case SuiteId::gln:
            return check_gln_specialization(rep);
    }
    throw std::logic_error("unreachable suite id");
}

/// Runs the requested suites (in order), parallelizing across suites when
/// several are requested. Returns the reports in request order.
std::vector<VerificationReport> run_suites(const Representation& rep,
                                           const std::vector<SuiteId>& suites, int R,
                                           int threads) {
    std::vector<VerificationReport> reports(suites.size(),
                                            VerificationReport{});
    if (suites.size() == 1) {
        reports[0] = run_suite(rep, suites[0], R, threads);
        return reports;
    }
    // operators are shared; build the common ones once up front
    for (int i = 1; i <= rep.pyramid().height(); ++i) rep.A(i);
    for (int i = 1; i + 1 <= rep.pyramid().height(); ++i) {
        rep.B(i);
        rep.C(i);
    }
    parallel_for(suites.size(), threads, [&](std::size_t s) {
        reports[s] = run_suite(rep, suites[s], R, 1);
    });
    return reports;
}

void print_suite_summaries(const std::vector<VerificationReport>& reports) {
    for (const auto& rep : reports) {
        std::size_t asserted = 0;
        for (const auto& r : rep.results)
            if (!r.observed) ++asserted;
        std::cout << "suite " << rep.suite << ": "
                  << (rep.passed() ? "pass" : "FAIL") << " (" << asserted
                  << " identities";
        if (rep.failure_count() > 0) std::cout << ", " << rep.failure_count()
                                               << " failed";
        std::cout << ", " << rep.elapsed_ms << " ms)\n";
    }
}

int cmd_dim(const CommonInput& in) {
    const HighestWeightSpec spec = in.load();
    Representation rep(spec);
    std::cout << rep.basis().dimension() << "\n";
    for (int k = 1; k <= rep.pyramid().columns(); ++k) {
        const auto cw = rep.spec().column_weight(k);
        std::cout << "column " << k << ": height " << cw.weights.size()
                  << ", weight (";
        for (std::size_t j = 0; j < cw.weights.size(); ++j)
            std::cout << (j ? ", " : "") << to_string(cw.weights[j]);
        std::cout << "), dim " << weyl_dimension(cw.weights) << "\n";
    }
    return kExitOk;
}

int cmd_patterns(const CommonInput& in, const std::string& out) {
    Representation rep(in.load());
    const json j = basis_json(rep);
    if (out == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out, j);
    return kExitOk;
}

int cmd_matrices(const CommonInput& in, const std::string& ops_csv,
                 const std::string& out_dir) {
    Representation rep(in.load());
    const int n = rep.pyramid().height();
    std::filesystem::create_directories(out_dir);
    bool want_a = false, want_b = false, want_c = false, want_tau_low = false,
         want_tau_high = false;
    for (const std::string& op : split_csv(ops_csv)) {
        if (op == "A") want_a = true;
        else if (op == "B") want_b = true;
        else if (op == "C") want_c = true;
        else if (op == "tau") want_tau_low = want_tau_high = true;
        else if (op == "tau_low") want_tau_low = true;
        else if (op == "tau_high") want_tau_high = true;
        else throw InvalidInput("unknown op '" + op + "' (known: A,B,C,tau,tau_low,tau_high)");
    }
    const auto emit = [&](const std::string& op, int r, const MatrixPoly& m) {
        const std::string path =
            (std::filesystem::path(out_dir) / (op + "_" + std::to_string(r) + ".json"))
                .string();
        write_json_file(path, matrix_poly_json(op, r, rep.dim(), m));
    };
    if (want_a)
        for (int r = 1; r <= n; ++r) emit("A", r, rep.A(r));
    if (want_b)
        for (int r = 1; r <= n - 1; ++r) emit("B", r, rep.B(r));
    if (want_c)
        for (int r = 1; r <= n - 1; ++r) emit("C", r, rep.C(r));
    if (want_tau_low)
        for (int i = 1; i <= n - 1; ++i) emit("tau_low", i, rep.tau_lowering(i));
    if (want_tau_high)
        for (int i = 1; i <= n - 1; ++i) emit("tau_high", i, rep.tau_raising(i));
    return kExitOk;
}

int cmd_verify(const CommonInput& in, const std::string& suites_csv, int truncation,
               const std::string& report_path, int threads) {
    Representation rep(in.load());
    std::vector<SuiteId> suites;
    if (suites_csv.empty() || suites_csv == "all") {
        suites = default_suites(rep);
    } else {
        for (const std::string& name : split_csv(suites_csv))
            suites.push_back(suite_from_name(name));
        for (SuiteId id : suites) {
            if (id == SuiteId::gln && !rep.pyramid().is_one_column())
                throw WrongPyramid("suite gln requires the one-column pyramid");
            if (id == SuiteId::branching && rep.pyramid().height() < 2)
                throw WrongPyramid("suite branching requires height >= 2");
        }
    }
    const int R = truncation > 0 ? truncation : rep.default_truncation();
    const auto reports = run_suites(rep, suites, R, threads);
    print_suite_summaries(reports);
    if (!report_path.empty()) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_json(r, rep.spec()));
        write_json_file(report_path, arr);
    }
    for (const auto& r : reports)
        if (!r.passed()) return kExitVerify;
    return kExitOk;
}

int cmd_branch(const CommonInput& in, const std::string& out) {
    Representation rep(in.load());
    if (rep.pyramid().height() < 2)
        throw WrongPyramid("branch requires a pyramid of height >= 2");
    std::vector<BranchingDatum> data;
    for (const auto& mu : rep.branch_weights())
        data.push_back(rep.branching_vector(mu));
    const json j = branch_json(rep, data);
    if (out == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out, j);
    return kExitOk;
}

int cmd_demo_gln(int n, const std::string& weight_csv, int truncation,
                 const std::string& report_path, int threads) {
    if (n < 1) throw InvalidInput("--n must be >= 1");
    std::vector<std::vector<Rat>> grid;
    for (const std::string& tok : split_csv(weight_csv))
        grid.push_back({rat_from_string(tok)});
    if (static_cast<int>(grid.size()) != n)
        throw InvalidInput("--weight must list exactly n entries");
    HighestWeightSpec spec =
        HighestWeightSpec::validate(Pyramid(std::vector<int>(n, 1)), grid);
    Representation rep(spec);
    std::cout << "one-column module, n = " << n
              << ", dim = " << rep.basis().dimension() << "\n";
    const int R = truncation > 0 ? truncation : rep.default_truncation();
    const auto suites = default_suites(rep);
    const auto reports = run_suites(rep, suites, R, threads);
    print_suite_summaries(reports);
    if (!report_path.empty()) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_json(r, rep.spec()));
        write_json_file(report_path, arr);
    }
    for (const auto& r : reports)
        if (!r.passed()) return kExitVerify;
    return kExitOk;
}

void print_error(const std::string& code, const std::string& message) {
    json j;
    j["error"] = code;
    j["message"] = message;
    std::cerr << j.dump() << "\n";
}

} // namespace

namespace {

int run_main(int argc, char** argv) {
    CLI::App app{"exact pattern-basis modules for finite W-algebras: build, export, verify"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for suite execution");

    CommonInput dim_in, pat_in, mat_in, ver_in, br_in;
    std::string pat_out = "-", br_out = "-";
    std::string mat_ops = "A,B,C,tau", mat_out;
    std::string suites_csv = "all", report_path;
    int truncation = 0;
    int demo_n = 0;
    std::string demo_weight;

    auto add_common = [](CLI::App* cmd, CommonInput& in) {
        cmd->fallthrough();  // let --threads before/after the subcommand work
        cmd->add_option("--weights", in.weights_path, "weights JSON file");
        cmd->add_option("--pyramid", in.pyramid_csv,
                        "comma-separated row lengths overriding the file");
    };

    CLI::App* dim = app.add_subcommand("dim", "print dimension and per-column factors");
    add_common(dim, dim_in);

    CLI::App* patterns = app.add_subcommand("patterns", "export the pattern basis");
    add_common(patterns, pat_in);
    patterns->add_option("--out", pat_out, "output file ('-' for stdout)");

    CLI::App* matrices = app.add_subcommand("matrices", "export operator matrices");
    add_common(matrices, mat_in);
    matrices->add_option("--ops", mat_ops, "A,B,C,tau,tau_low,tau_high");
    matrices->add_option("--out", mat_out, "output directory")->required();

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify, ver_in);
    verify->add_option("--suites", suites_csv,
                       "abc,lemma22,center,defining,highest,dimension,branching,gln"
                       " or 'all'");
    verify->add_option("--truncation", truncation, "series truncation order (default 2N+2)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--report", report_path, "write a JSON report");

    CLI::App* branch = app.add_subcommand("branch", "export branching data");
    add_common(branch, br_in);
    branch->add_option("--out", br_out, "output file ('-' for stdout)");

    CLI::App* demo = app.add_subcommand("demo-gln", "one-column module end to end");
    demo->fallthrough();
    demo->add_option("--n", demo_n, "pyramid height")->required();
    demo->add_option("--weight", demo_weight, "comma-separated weight a1,...,aN")
        ->required();
    demo->add_option("--truncation", truncation, "series truncation order")
        ->check(CLI::PositiveNumber);
    demo->add_option("--report", report_path, "write a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("Usage", e.what());
        return kExitInput;
    }

    try {
        if (dim->parsed()) return cmd_dim(dim_in);
        if (patterns->parsed()) return cmd_patterns(pat_in, pat_out);
        if (matrices->parsed()) return cmd_matrices(mat_in, mat_ops, mat_out);
        if (verify->parsed())
            return cmd_verify(ver_in, suites_csv, truncation, report_path, threads);
        if (branch->parsed()) return cmd_branch(br_in, br_out);
        if (demo->parsed())
            return cmd_demo_gln(demo_n, demo_weight, truncation, report_path, threads);
    } catch (const Error& e) {
        print_error(e.code(), e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        print_error("Internal", e.what());
        return kExitInput;
    }
    print_error("Usage", "no subcommand given");
    return kExitInput;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_main(argc, argv);
    } catch (const std::exception& e) {
        print_error("Internal", e.what());
        return kExitInput;
    } catch (...) {
        print_error("Internal", "unknown error");
        return kExitInput;
    }
}
