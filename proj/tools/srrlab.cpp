#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "srrlab/caps.hpp"
#include "srrlab/checks.hpp"
#include "srrlab/codes.hpp"
#include "srrlab/designs.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/gm.hpp"
#include "srrlab/mld.hpp"
#include "srrlab/rational.hpp"
#include "srrlab/report.hpp"
#include "srrlab/srr.hpp"
#include "srrlab/version.hpp"

namespace {

using namespace srrlab;

// Cap flags shared by every subcommand that enumerates: flags win over the
// SRRLAB_CAPS environment variable, which wins over the built-in defaults.
struct CapFlags {
    std::uint64_t dual = 0;
    std::uint64_t clique = 0;
    CLI::Option* dual_opt = nullptr;
    CLI::Option* clique_opt = nullptr;

    void attach(CLI::App* cmd) {
        dual_opt = cmd->add_option("--cap-dual", dual,
                                   "enumeration cap (codewords, patterns; env key 'dual')");
        clique_opt = cmd->add_option("--cap-clique-nodes", clique,
                                     "clique search node budget (env key 'clique-nodes')");
    }
    Caps resolve() const {
        Caps caps = caps_from_env();
        if (dual_opt != nullptr && dual_opt->count() > 0) {
            if (dual == 0) throw UsageError("--cap-dual must be positive");
            caps.dual_enum = dual;
        }
        if (clique_opt != nullptr && clique_opt->count() > 0) {
            if (clique == 0) throw UsageError("--cap-clique-nodes must be positive");
            caps.clique_nodes = clique;
        }
        return caps;
    }
};

std::string set_str(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file: " + out_path);
    f << text;
    f.flush();
    if (!f) throw UsageError("write failed: " + out_path);
}

LinearCode load_code(const std::string& path) {
    return LinearCode::from_generator(read_gm_file(path));
}

// --- family ----------------------------------------------------------------

struct FamilyArgs {
    std::string name;
    std::vector<int> params;
    std::string form = "evaluation";
    std::uint64_t seed = 0;
    std::string out;
    CLI::Option* form_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
};

LinearCode make_family(const FamilyArgs& a) {
    auto need = [&](std::size_t n, const char* shape) {
        if (a.params.size() != n)
            throw UsageError("family " + a.name + ": --param must give " + shape);
    };
    if (a.name != "simplex" && a.form_opt->count() > 0)
        throw UsageError("--form applies to the simplex family only");
    if (a.name != "random" && a.seed_opt->count() > 0)
        throw UsageError("--seed applies to the random family only");
    if (a.name == "hamming") {
        need(1, "one value (r)");
        return hamming(a.params[0]);
    }
    if (a.name == "simplex") {
        need(1, "one value (r)");
        return simplex(a.params[0], a.form == "systematic" ? SimplexForm::systematic
                                                           : SimplexForm::evaluation);
    }
    if (a.name == "repetition") {
        need(1, "one value (n)");
        return repetition(a.params[0]);
    }
    if (a.name == "spc") {
        need(1, "one value (n)");
        return spc(a.params[0]);
    }
    if (a.name == "reed-muller") {
        need(2, "two values (r, m)");
        return reed_muller(a.params[0], a.params[1]);
    }
    if (a.name == "random") {
        need(2, "two values (n, k)");
        if (a.seed_opt->count() == 0) throw UsageError("the random family requires --seed");
        return random_code(a.params[0], a.params[1], a.seed);
    }
    throw UsageError("unknown family: " + a.name);
}

void run_family(const FamilyArgs& a) {
    std::ostringstream os;
    write_gm(os, make_family(a).generator());
    write_output(os.str(), a.out);
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
    std::string path;
    int object = 0;
    CLI::Option* object_opt = nullptr;
    std::string format = "table";
    bool exact_lp = false;
    int jobs = 1;
    std::string out;
    CapFlags caps;
};

void run_analyze(const AnalyzeArgs& a) {
    const Caps caps = a.caps.resolve();
    const LinearCode c = load_code(a.path);
    std::optional<int> object;
    if (a.object_opt->count() > 0) object = a.object;
    const AnalysisReport rep = analyze(c, object, a.exact_lp, caps, a.jobs);
    ReportFormat fmt = ReportFormat::table;
    if (a.format == "json") fmt = ReportFormat::json;
    else if (a.format == "csv") fmt = ReportFormat::csv;
    write_output(render(rep, fmt), a.out);
}

// --- feasible ----------------------------------------------------------------

struct FeasibleArgs {
    std::string path;
    std::string demand;
    CapFlags caps;
};

std::vector<Rational> parse_demand(const std::string& csv) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream is(csv);
    while (std::getline(is, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw ParseError("empty demand entry");
        out.push_back(parse_rational(item.substr(first, last - first + 1)));
    }
    if (out.empty()) throw ParseError("empty demand list");
    return out;
}

void run_feasible(const FeasibleArgs& a) {
    const Caps caps = a.caps.resolve();
    const LinearCode c = load_code(a.path);
    const std::vector<Rational> demand = parse_demand(a.demand);
    const FeasibilityResult res = feasible(c, demand, caps);
    std::ostringstream os;
    if (res.feasible) {
        os << "feasible\n";
        for (const auto& e : res.allocation)
            os << "  object " << e.object << ": " << set_str(e.servers) << " rate "
               << rational_str(e.rate) << "\n";
    } else {
        const auto& cert = *res.certificate;
        os << "infeasible\n";
        os << "certificate:\n";
        os << "  y_demand:";
        for (const auto& y : cert.y_demand) os << " " << rational_str(y);
        os << "\n  y_server:";
        for (const auto& y : cert.y_server) os << " " << rational_str(y);
        Rational total = 0;
        for (std::size_t i = 0; i < cert.y_demand.size(); ++i) total += cert.y_demand[i] * demand[i];
        for (const auto& y : cert.y_server) total += y;
        os << "\n  value: " << rational_str(total) << " (negative certifies infeasibility)\n";
    }
    write_output(os.str(), "");
}

// --- mld ---------------------------------------------------------------------

struct MldArgs {
    std::string path;
    int object = 0;
    int t = 0;
    std::string mode = "exhaustive";
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    CapFlags caps;
};

void run_mld(const MldArgs& a) {
    const Caps caps = a.caps.resolve();
    const LinearCode c = load_code(a.path);
    const VoteSet votes = build_votes(c, a.object, caps);
    std::ostringstream os;
    os << "votes: direct " << set_str(votes.direct) << "; checks";
    if (votes.check_sums.empty()) os << " (none)";
    for (const auto& cs : votes.check_sums) os << " " << set_str(cs);
    os << "\n";
    const CapabilityReport rep =
        a.mode == "sampled"
            ? verify_capability_sampled(votes, c.n(), a.t, a.samples, a.seed)
            : verify_capability_with(votes, c.n(), a.t, caps.dual_enum);
    if (rep.ok)
        os << "PASS: " << rep.patterns_checked << " error patterns of weight <= " << a.t
           << " all decode object " << a.object << " correctly\n";
    else
        os << "FAIL: pattern " << set_str(*rep.counterexample)
           << " defeats the vote majority for object " << a.object << "\n";
    write_output(os.str(), "");
}

// --- design ------------------------------------------------------------------

struct DesignArgs {
    std::string path;
    std::string weight = "min";
    int t = 0;
    int puncture = 0;
    CLI::Option* puncture_opt = nullptr;
    CapFlags caps;
};

void run_design(const DesignArgs& a) {
    const Caps caps = a.caps.resolve();
    const LinearCode c = load_code(a.path);
    int w = 0;
    if (a.weight == "min") {
        w = c.min_distance(caps.dual_enum);
    } else {
        for (char ch : a.weight)
            if (ch < '0' || ch > '9')
                throw UsageError("--weight must be 'min' or a positive integer");
        w = std::stoi(a.weight);
        if (w < 1) throw UsageError("--weight must be 'min' or a positive integer");
    }
    BlockCollection bc;
    bc.v = c.n();
    bc.blocks = c.min_weight_codewords(w, std::nullopt, caps.dual_enum);
    int t_eff = a.t;
    const bool punctured = a.puncture_opt->count() > 0;
    if (punctured) {
        if (a.t < 2)
            throw UsageError("puncturing verifies the derived design at t-1, so t must be >= 2");
        bc = reduce_design(bc, {a.puncture});
        t_eff = a.t - 1;
    }
    const DesignReport rep = check_t_design(bc, t_eff, caps.dual_enum);
    std::ostringstream os;
    os << "blocks: " << bc.blocks.size() << " (weight-" << w << " codeword supports";
    if (punctured) os << ", punctured at " << a.puncture;
    os << ")\n";
    if (rep.is_design) {
        os << t_eff << "-(" << rep.v << "," << *rep.block_size << "," << rep.lambda->str()
           << ") design: YES";
        if (*rep.lambda == 1) os << " (Steiner)";
        os << "\n";
    } else {
        os << t_eff << "-design on " << rep.v << " points: NO";
        if (rep.offending_sizes)
            os << " (block sizes " << rep.offending_sizes->first << " and "
               << rep.offending_sizes->second << " differ)";
        else if (bc.blocks.empty())
            os << " (no blocks)";
        else
            os << " (coverage is not constant)";
        os << "\n";
    }
    write_output(os.str(), "");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"srrlab: service rate regions of binary linear codes"};
    app.set_version_flag("--version", std::string("srrlab ") + kVersion);
    app.require_subcommand(1);

    FamilyArgs family_args;
    CLI::App* family = app.add_subcommand("family", "generate a code family as a .gm file");
    family->add_option("--name", family_args.name, "family name")
        ->required()
        ->check(CLI::IsMember({"hamming", "simplex", "repetition", "spc", "reed-muller", "random"}));
    family->add_option("--param", family_args.params, "family parameters (repeat per value)")
        ->required();
    family_args.form_opt =
        family->add_option("--form", family_args.form, "simplex form (default evaluation)")
            ->check(CLI::IsMember({"evaluation", "systematic"}));
    family_args.seed_opt = family->add_option("--seed", family_args.seed, "random family seed");
    family->add_option("--out", family_args.out, "output path (default stdout)");
    family->callback([&]() { run_family(family_args); });

    AnalyzeArgs analyze_args;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "per-object bounds, designs, and rates");
    analyze_cmd->add_option("path", analyze_args.path, "generator file (.gm)")->required();
    analyze_args.object_opt =
        analyze_cmd->add_option("--object", analyze_args.object, "restrict to one object");
    analyze_cmd->add_option("--format", analyze_args.format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    analyze_cmd->add_flag("--exact-lp", analyze_args.exact_lp, "solve the exact rate LP per object");
    analyze_cmd->add_option("--jobs", analyze_args.jobs, "worker threads (default 1)")
        ->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--out", analyze_args.out, "output path (default stdout)");
    analyze_args.caps.attach(analyze_cmd);
    analyze_cmd->callback([&]() { run_analyze(analyze_args); });

    FeasibleArgs feasible_args;
    CLI::App* feasible_cmd =
        app.add_subcommand("feasible", "test whether a demand vector is servable");
    feasible_cmd->add_option("path", feasible_args.path, "generator file (.gm)")->required();
    feasible_cmd
        ->add_option("demand", feasible_args.demand,
                     "comma-separated rationals, one per object (e.g. \"3,0,1/2\")")
        ->required();
    feasible_args.caps.attach(feasible_cmd);
    feasible_cmd->callback([&]() { run_feasible(feasible_args); });

    MldArgs mld_args;
    CLI::App* mld_cmd = app.add_subcommand("mld", "verify one-step majority-logic decoding");
    mld_cmd->add_option("path", mld_args.path, "generator file (.gm)")->required();
    mld_cmd->add_option("--object", mld_args.object, "object to decode")->required();
    mld_cmd->add_option("--t", mld_args.t, "error weight to verify")->required();
    mld_cmd->add_option("--mode", mld_args.mode, "exhaustive | sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    mld_cmd->add_option("--samples", mld_args.samples, "sample count for sampled mode");
    mld_cmd->add_option("--seed", mld_args.seed, "sample seed");
    mld_args.caps.attach(mld_cmd);
    mld_cmd->callback([&]() { run_mld(mld_args); });

    DesignArgs design_args;
    CLI::App* design_cmd = app.add_subcommand("design", "check codeword supports as a t-design");
    design_cmd->add_option("path", design_args.path, "generator file (.gm)")->required();
    design_cmd->add_option("--weight", design_args.weight, "'min' or a codeword weight");
    design_cmd->add_option("--t", design_args.t, "design strength to verify")->required();
    design_args.puncture_opt = design_cmd->add_option(
        "--puncture", design_args.puncture, "puncture at this point and verify at t-1");
    design_args.caps.attach(design_cmd);
    design_cmd->callback([&]() { run_design(design_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const srrlab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
