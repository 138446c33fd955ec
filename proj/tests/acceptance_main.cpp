// Acceptance suite: one line per criterion, exact checks only.
//
// Usage: gtrep_acceptance <gtrep-cli-path> <configs-dir> <scratch-dir>
//
// Exit code is the number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtrep/json_io.hpp"
#include "gtrep/repbuild.hpp"
#include "gtrep/verify.hpp"

#include "test_configs.hpp"

using namespace gtrep;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
std::string g_configs;
std::string g_scratch;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

struct NamedSpec {
    std::string name;
    HighestWeightSpec spec;
};

std::vector<NamedSpec> test_matrix() {
    return {{"p1", testcfg::p1()},   {"p11", testcfg::p11()},
            {"p12", testcfg::p12()}, {"p22", testcfg::p22()},
            {"p111", testcfg::p111()}, {"p122", testcfg::p122()}};
}

void require_suite(const VerificationReport& rep, const std::string& where) {
    for (const auto& r : rep.results)
        if (!r.observed && !r.pass) {
            std::ostringstream os;
            os << where << ": suite " << rep.suite << " failed at " << r.id << " (";
            for (const auto& [k, v] : r.params) os << k << "=" << v << " ";
            os << ")";
            for (const auto& [k, v] : r.witness) os << " " << k << "=" << v;
            throw Failure(os.str());
        }
}

int run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args;
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    if (WIFEXITED(rc)) return WEXITSTATUS(rc);
    return -2;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---- criteria ----

std::string criterion_dimensions() {
    const std::map<std::string, std::size_t> expected{
        {"p1", 1}, {"p11", 2}, {"p12", 2}, {"p22", 6}, {"p111", 8}};
    std::ostringstream detail;
    for (const auto& [name, spec] : test_matrix()) {
        Representation rep(spec);
        Int weyl(1);
        for (int k = 1; k <= rep.pyramid().columns(); ++k)
            weyl *= weyl_dimension(rep.spec().column_weight(k).weights);
        require(Int(rep.basis().dimension()) == weyl,
                name + ": pattern count disagrees with the Weyl product");
        if (auto it = expected.find(name); it != expected.end())
            require(rep.basis().dimension() == it->second,
                    name + ": unexpected dimension " +
                        std::to_string(rep.basis().dimension()));
        else
            require(rep.basis().dimension() <= 100,
                    name + ": dimension exceeds 100");
        detail << name << "=" << rep.basis().dimension() << " ";
    }
    return "dims " + detail.str();
}

std::string criterion_interpolation() {
    std::size_t nodes_checked = 0;
    for (const auto& [name, spec] : test_matrix()) {
        Representation rep(spec);
        const auto& pyr = rep.pyramid();
        for (int r = 1; r <= pyr.height(); ++r) {
            require(rep.A(r).degree() == pyr.degree_sum(r),
                    name + ": deg A_" + std::to_string(r));
            require(rep.A(r)[static_cast<std::size_t>(pyr.degree_sum(r))]
                        .is_identity(),
                    name + ": A_" + std::to_string(r) + " not monic");
        }
        for (int r = 1; r <= pyr.height() - 1; ++r) {
            require(rep.B(r).degree() <= pyr.degree_sum(r) - 1,
                    name + ": deg B_" + std::to_string(r));
            require(rep.C(r).degree() <= pyr.degree_sum(r) - 1,
                    name + ": deg C_" + std::to_string(r));
        }
        for (std::size_t t = 0; t < rep.basis().dimension(); ++t) {
            const GTPattern p = rep.basis().pattern(t);
            const SparseVector xi =
                SparseVector::unit(rep.dim(), static_cast<int>(t));
            for (int r = 1; r <= pyr.height() - 1; ++r)
                for (int i = 1; i <= r; ++i)
                    for (int k = 1; k <= pyr.row(i); ++k) {
                        const Rat x = -p.shifted(r, i, k);
                        SparseVector eb(rep.dim()), ec(rep.dim());
                        if (auto up = rep.basis().moved_index(t, r, i, k, +1))
                            eb.set(static_cast<int>(*up),
                                   raise_node_value(p, r, i, k));
                        if (auto dn = rep.basis().moved_index(t, r, i, k, -1))
                            ec.set(static_cast<int>(*dn),
                                   lower_node_value(p, r, i, k));
                        require(apply_poly(rep.B(r), x, xi) == eb,
                                name + ": B node value mismatch");
                        require(apply_poly(rep.C(r), x, xi) == ec,
                                name + ": C node value mismatch");
                        nodes_checked += 2;
                    }
        }
    }
    return std::to_string(nodes_checked) + " node evaluations reproduced";
}

std::string criterion_poly_suites() {
    std::size_t identities = 0;
    for (const auto& [name, spec] : test_matrix()) {
        Representation rep(spec);
        for (PolySuite s : {PolySuite::abc, PolySuite::lemma22, PolySuite::center}) {
            const auto rep_out = verify_polynomial_identities(rep, s, 4);
            require_suite(rep_out, name);
            identities += rep_out.results.size();
        }
        // both exchange identities must be present for every admissible i
        if (rep.pyramid().height() >= 2) {
            const auto l22 = verify_polynomial_identities(rep, PolySuite::lemma22);
            std::set<long long> exch, prod;
            for (const auto& r : l22.results) {
                if (r.id == "bc-exchange") exch.insert(r.params.at("i"));
                if (r.id == "bc-product") prod.insert(r.params.at("i"));
            }
            require(static_cast<int>(exch.size()) == rep.pyramid().height() - 1,
                    name + ": missing bc-exchange instances");
            require(static_cast<int>(prod.size()) == rep.pyramid().height() - 1,
                    name + ": missing bc-product instances");
        }
    }
    return std::to_string(identities) + " polynomial identities, all residuals zero";
}

std::string criterion_defining() {
    std::size_t identities = 0;
    for (const auto& [name, spec] : test_matrix()) {
        Representation rep(spec);
        const int R = 2 * rep.pyramid().bricks() + 2;
        const auto out = check_defining_relations(rep, R, 4);
        require_suite(out, name);
        identities += out.results.size();

        const auto& rows = rep.pyramid().row_lengths();
        if (rows.size() >= 2 && rows[0] == rows[1]) {
            bool saw = false;
            for (const auto& r : out.results)
                if (r.id == "ef" && r.params.at("i") == 1 && r.params.at("j") == 1 &&
                    r.params.at("r") == 1 && r.params.at("s") == 1 && r.pass)
                    saw = true;
            require(saw, name + ": ef instance (1,1,1,1) missing");
        }
        if (rep.pyramid().height() >= 3) {
            std::size_t serre = 0;
            for (const auto& r : out.results)
                if (r.id == "serre-e" || r.id == "serre-f") ++serre;
            require(serre > 0, name + ": no Serre instances in range");
        }
    }
    return std::to_string(identities) + " relation instances at R = 2N+2";
}

std::string criterion_highest() {
    for (const auto& [name, spec] : test_matrix()) {
        Representation rep(spec);
        require_suite(check_highest_vector(rep, rep.default_truncation()), name);
    }
    return "highest-vector and quotient conditions exact on all configurations";
}

std::string criterion_branching() {
    Representation rep(testcfg::p111());
    const auto mus = rep.branch_weights();
    require(mus.size() == 4,
            "expected 4 branch weights, got " + std::to_string(mus.size()));
    std::multiset<std::size_t> dims;
    std::size_t sum = 0;
    for (const auto& mu : mus) {
        const auto d = rep.branching_vector(mu);
        dims.insert(d.sub_dimension);
        sum += d.sub_dimension;
    }
    require(dims == std::multiset<std::size_t>{1, 2, 2, 3},
            "branch dimensions are not {3,2,2,1}");
    require(sum == 8, "branch dimensions do not sum to 8");
    require_suite(check_branching(rep, 4), "p111");
    // the branching suite also holds on the other multi-row configurations
    for (const auto& [name, spec] : test_matrix()) {
        if (spec.pyramid().height() < 2) continue;
        Representation r2(spec);
        require_suite(check_branching(r2, 4), name);
    }
    return "4 branches with dims 3+2+2+1 = 8; eigen, kill, and move facts exact";
}

std::string criterion_gln() {
    {
        const auto spec =
            HighestWeightSpec::validate(Pyramid({1, 1}), {{Rat(1)}, {Rat(0)}});
        Representation rep(spec);
        require_suite(check_gln_specialization(rep), "p11");
        require(rep.basis().dimension() == 2, "p11: dimension != 2");
    }
    {
        Representation rep(testcfg::p111());
        require_suite(check_gln_specialization(rep), "p111");
        require(rep.basis().dimension() == 8, "p111: dimension != 8");
    }
    return "one-column relations, dimensions 2 and 8, spectra match";
}

std::string criterion_mutation() {
    Representation rep(testcfg::p11());
    const MatrixPoly& c1 = rep.C(1);
    std::size_t mutations = 0;
    for (std::size_t j = 0; j < c1.size(); ++j) {
        std::vector<std::tuple<int, int, Rat>> entries;
        c1[j].for_each_entry(
            [&](int row, int col, const Rat& v) { entries.emplace_back(row, col, v); });
        for (const auto& [row, col, v] : entries) {
            std::vector<SparseMatrix> coeffs(c1.coeffs());
            coeffs[j].set(row, col, v + 1);
            Representation broken =
                rep.with_operator_override('C', 1, MatrixPoly(std::move(coeffs)));
            const auto abc = verify_polynomial_identities(broken, PolySuite::abc);
            bool detected = !abc.passed();
            bool witnessed = false;
            for (const auto& r : abc.results)
                if (!r.pass && !r.observed && !r.witness.empty()) witnessed = true;
            if (!detected) {
                const auto def =
                    check_defining_relations(broken, broken.default_truncation());
                detected = !def.passed();
                for (const auto& r : def.results)
                    if (!r.pass && !r.witness.empty()) witnessed = true;
            }
            require(detected, "mutation at power " + std::to_string(j) + " entry (" +
                                  std::to_string(row) + "," + std::to_string(col) +
                                  ") undetected");
            require(witnessed, "mutation detected but no witness located");
            ++mutations;
        }
    }
    require(mutations > 0, "C_1 stored no entries to mutate");
    return std::to_string(mutations) +
           " single-entry flips, all detected with witnesses";
}

std::string criterion_determinism() {
    const auto run_all = [&](const fs::path& dir) {
        fs::create_directories(dir);
        for (const auto& [name, spec] : test_matrix()) {
            const std::string cfg = g_configs + "/" + name + ".json";
            require(fs::exists(cfg), "missing bundled config " + cfg);
            require(run_cli("dim --weights " + cfg + " > " +
                            (dir / ("dim_" + name + ".txt")).string()) == 0,
                    name + ": dim failed");
            require(run_cli("patterns --weights " + cfg + " --out " +
                            (dir / ("patterns_" + name + ".json")).string()) == 0,
                    name + ": patterns failed");
            require(run_cli("matrices --weights " + cfg + " --ops A,B,C,tau --out " +
                            (dir / ("mats_" + name)).string()) == 0,
                    name + ": matrices failed");
            if (spec.pyramid().height() >= 2)
                require(run_cli("branch --weights " + cfg + " --out " +
                                (dir / ("branch_" + name + ".json")).string()) == 0,
                        name + ": branch failed");
            require(run_cli("verify --weights " + cfg + " --threads 4 --report " +
                            (dir / ("report_" + name + ".json")).string() +
                            " > /dev/null") == 0,
                    name + ": verify (all suites) did not exit 0");
        }
    };
    const fs::path run1 = fs::path(g_scratch) / "run1";
    const fs::path run2 = fs::path(g_scratch) / "run2";
    fs::remove_all(run1);
    fs::remove_all(run2);
    run_all(run1);
    run_all(run2);

    std::size_t compared = 0;
    std::vector<fs::path> rel;
    for (const auto& e : fs::recursive_directory_iterator(run1))
        if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), run1));
    std::sort(rel.begin(), rel.end());
    for (const auto& r : rel) {
        require(fs::exists(run2 / r), "second run missing " + r.string());
        std::string a = read_file(run1 / r);
        std::string b = read_file(run2 / r);
        if (r.filename().string().rfind("report_", 0) == 0) {
            // reports carry wall-clock timings; mask them, compare the rest
            auto mask = [](const std::string& s) {
                json arr = json::parse(s);
                for (auto& suite : arr) suite["elapsed_ms"] = 0.0;
                return arr.dump(2);
            };
            a = mask(a);
            b = mask(b);
        } else {
            require(!a.empty(), r.string() + " is empty");
        }
        require(a == b, "output differs between runs: " + r.string());
        ++compared;
    }
    require(compared > 0, "no outputs compared");
    return std::to_string(compared) + " exported files byte-identical across runs";
}

struct Criterion {
    int number;
    std::string name;
    double budget_ms;  // 0 = no budget
    std::function<std::string()> body;
};

} // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: gtrep_acceptance <gtrep-cli> <configs-dir> <scratch-dir>\n";
        return 64;
    }
    g_cli = argv[1];
    g_configs = argv[2];
    g_scratch = argv[3];
    fs::create_directories(g_scratch);

    const std::vector<Criterion> criteria = {
        {1, "dimension equality", 1000.0, criterion_dimensions},
        {2, "interpolation consistency and degree bounds", 5000.0,
         criterion_interpolation},
        {3, "polynomial identity suites (abc, lemma22, center)", 60000.0,
         criterion_poly_suites},
        {4, "defining relations at R = 2N+2", 120000.0, criterion_defining},
        {5, "highest vector and quotient conditions", 0.0, criterion_highest},
        {6, "branching decomposition", 0.0, criterion_branching},
        {7, "gl_n specialization", 0.0, criterion_gln},
        {8, "mutation sensitivity", 0.0, criterion_mutation},
        {9, "byte-identical exports", 0.0, criterion_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = c.body();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        if (ok && c.budget_ms > 0 && ms > c.budget_ms) {
            ok = false;
            detail = "runtime " + std::to_string(ms) + " ms exceeds budget " +
                     std::to_string(c.budget_ms) + " ms";
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << " ("
                  << c.name << "): " << detail << " [" << static_cast<long>(ms)
                  << " ms]\n";
        if (!ok) ++failures;
    }
    return failures;
}
