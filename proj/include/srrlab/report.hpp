#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "srrlab/caps.hpp"
#include "srrlab/codes.hpp"
#include "srrlab/errors.hpp"
#include "srrlab/rational.hpp"
#include "srrlab/srr.hpp"
#include "srrlab/version.hpp"

// Report assembly and rendering. One row per object: the bound triple, the
// exact intercept when available, and the design-route allocation summary.
// Rendering is deterministic — identical inputs and flags produce
// byte-identical text in all three formats, regardless of worker count.

namespace srrlab {

struct ReportRow {
    int object = 0;
    int a = 0;
    int J = 0;
    bool j_exact = true;
    Rational lower;
    std::optional<Rational> upper_refined;
    std::optional<Rational> upper_loose;
    std::optional<Rational> lambda_max;
    std::string lambda_source;  // "design" | "lp" | "" when lambda_max absent
    std::string design_status;  // "1-design" | "none" | "n/a"
    std::optional<int> direct_column;       // allocation summary, present iff 1-design
    std::optional<std::uint64_t> blocks;    //   number of blocks (gamma)
    std::optional<Rational> block_weight;   //   rate per block (1/d_c)
};

struct AnalysisReport {
    std::string version;
    int n = 0;
    int k = 0;
    int d_min = 0;
    std::optional<int> d_dual;
    std::uint64_t cap_dual = 0;
    std::uint64_t cap_clique_nodes = 0;
    bool exact_lp = false;
    std::vector<ReportRow> rows; // ascending object
};

enum class ReportFormat { table, json, csv };

inline ReportRow analyze_object(const LinearCode& c, int object, bool exact_lp,
                                const Caps& caps = Caps{}) {
    BoundsReport b = theorem1_bounds(c, object, exact_lp, caps);
    ReportRow row;
    row.object = object;
    row.a = b.a;
    row.J = b.J;
    row.j_exact = b.j_exact;
    row.lower = b.lower;
    row.upper_refined = b.upper_refined;
    row.upper_loose = b.upper_loose;

    const bool systematic = c.systematic_map().count(object) > 0;
    if (systematic && b.d_dual && *b.d_dual >= 2) {
        auto da = design_allocation(c, object, caps);
        if (da) {
            row.design_status = "1-design";
            row.direct_column = da->direct_column;
            row.blocks = da->blocks.size();
            row.block_weight = da->block_weight;
            row.lambda_max = da->rate;
            row.lambda_source = "design";
        } else {
            row.design_status = "none";
        }
    } else {
        row.design_status = "n/a";
    }

    if (exact_lp) {
        internal_check(b.lp_exact.has_value(), "exact-lp analysis must carry the LP value");
        if (row.lambda_max)
            internal_check(*row.lambda_max == b.lp_exact->value,
                           "design-route rate must equal the exact optimum");
        row.lambda_max = b.lp_exact->value;
        row.lambda_source = "lp";
    }
    return row;
}

// Full analysis, optionally restricted to one object. Per-object work runs on
// a bounded worker pool; rows are assembled in object order afterwards, so the
// report is independent of scheduling.
inline AnalysisReport analyze(const LinearCode& c, std::optional<int> object, bool exact_lp,
                              const Caps& caps = Caps{}, int jobs = 1) {
    if (jobs < 1) throw UsageError("worker count must be at least 1");
    AnalysisReport rep;
    rep.version = kVersion;
    rep.n = c.n();
    rep.k = c.k();
    rep.d_min = c.min_distance(caps.dual_enum);
    if (c.k() < c.n()) rep.d_dual = c.dual_distance(caps.dual_enum);
    rep.cap_dual = caps.dual_enum;
    rep.cap_clique_nodes = caps.clique_nodes;
    rep.exact_lp = exact_lp;

    std::vector<int> objects;
    if (object) {
        if (*object < 1 || *object > c.k())
            throw UsageError("object index out of range: " + std::to_string(*object));
        objects.push_back(*object);
    } else {
        for (int i = 1; i <= c.k(); ++i) objects.push_back(i);
    }

    std::vector<std::optional<ReportRow>> slots(objects.size());
    std::vector<std::exception_ptr> errors(objects.size());
    const std::size_t nworkers =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), objects.size());
    if (nworkers <= 1) {
        for (std::size_t i = 0; i < objects.size(); ++i)
            slots[i] = analyze_object(c, objects[i], exact_lp, caps);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= objects.size()) return;
                try {
                    slots[i] = analyze_object(c, objects[i], exact_lp, caps);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    for (auto& s : slots) rep.rows.push_back(std::move(*s));
    return rep;
}

namespace detail {

inline std::string opt_rational(const std::optional<Rational>& r, const char* absent) {
    return r ? rational_str(*r) : std::string(absent);
}

inline std::string allocation_summary(const ReportRow& row) {
    if (!row.direct_column) return "-";
    return "{" + std::to_string(*row.direct_column) + "}=1 + " + std::to_string(*row.blocks) +
           " x " + rational_str(*row.block_weight);
}

} // namespace detail

inline std::string render_table(const AnalysisReport& rep) {
    std::ostringstream head;
    head << "srrlab " << rep.version << "\n";
    head << "code: n=" << rep.n << " k=" << rep.k << " d_min=" << rep.d_min << " d_dual=";
    if (rep.d_dual) head << *rep.d_dual; else head << "-";
    head << "\n";
    head << "caps: dual=" << rep.cap_dual << " clique-nodes=" << rep.cap_clique_nodes << "\n";
    head << "exact-lp: " << (rep.exact_lp ? "yes" : "no") << "\n\n";

    const std::vector<std::string> header = {"object", "a",          "J",
                                             "lower",  "upper_ref",  "upper_loose",
                                             "lambda_max", "design", "allocation"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rep.rows) {
        std::vector<std::string> r;
        r.push_back(std::to_string(row.object));
        r.push_back(std::to_string(row.a));
        r.push_back(std::to_string(row.J) + (row.j_exact ? "" : "+"));
        r.push_back(rational_str(row.lower));
        r.push_back(detail::opt_rational(row.upper_refined, "-"));
        r.push_back(detail::opt_rational(row.upper_loose, "-"));
        r.push_back(detail::opt_rational(row.lambda_max, "?"));
        r.push_back(row.design_status);
        r.push_back(detail::allocation_summary(row));
        cells.push_back(std::move(r));
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t j = 0; j < header.size(); ++j) {
        width[j] = header[j].size();
        for (const auto& r : cells) width[j] = std::max(width[j], r[j].size());
    }
    auto emit_row = [&](std::ostream& os, const std::vector<std::string>& r) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            os << r[j];
            if (j + 1 < r.size()) os << std::string(width[j] - r[j].size() + 2, ' ');
        }
        os << "\n";
    };
    emit_row(head, header);
    for (const auto& r : cells) emit_row(head, r);
    return head.str();
}

inline std::string render_csv(const AnalysisReport& rep) {
    std::ostringstream os;
    os << "object,a,J,J_exact,lower,upper_refined,upper_loose,lambda_max,lambda_source,"
          "design_status,direct_column,blocks,block_weight\n";
    for (const auto& row : rep.rows) {
        os << row.object << ',' << row.a << ',' << row.J << ','
           << (row.j_exact ? "true" : "false") << ',' << rational_str(row.lower) << ','
           << detail::opt_rational(row.upper_refined, "") << ','
           << detail::opt_rational(row.upper_loose, "") << ','
           << detail::opt_rational(row.lambda_max, "") << ',' << row.lambda_source << ','
           << row.design_status << ',';
        if (row.direct_column) os << *row.direct_column;
        os << ',';
        if (row.blocks) os << *row.blocks;
        os << ',';
        if (row.block_weight) os << rational_str(*row.block_weight);
        os << "\n";
    }
    return os.str();
}

inline std::string to_json(const AnalysisReport& rep) {
    using json = nlohmann::ordered_json;
    json j;
    j["tool"] = "srrlab";
    j["version"] = rep.version;
    j["code"] = {{"n", rep.n}, {"k", rep.k}, {"d_min", rep.d_min}};
    j["code"]["d_dual"] = rep.d_dual ? json(*rep.d_dual) : json(nullptr);
    j["caps"] = {{"dual", rep.cap_dual}, {"clique_nodes", rep.cap_clique_nodes}};
    j["exact_lp"] = rep.exact_lp;
    j["rows"] = json::array();
    for (const auto& row : rep.rows) {
        json r;
        r["object"] = row.object;
        r["a"] = row.a;
        r["J"] = row.J;
        r["J_exact"] = row.j_exact;
        r["lower"] = rational_str(row.lower);
        r["upper_refined"] = row.upper_refined ? json(rational_str(*row.upper_refined)) : json(nullptr);
        r["upper_loose"] = row.upper_loose ? json(rational_str(*row.upper_loose)) : json(nullptr);
        r["lambda_max"] = row.lambda_max ? json(rational_str(*row.lambda_max)) : json(nullptr);
        r["lambda_source"] = row.lambda_source.empty() ? json(nullptr) : json(row.lambda_source);
        r["design_status"] = row.design_status;
        if (row.direct_column) {
            json alloc;
            alloc["direct_column"] = *row.direct_column;
            alloc["blocks"] = *row.blocks;
            alloc["block_weight"] = rational_str(*row.block_weight);
            r["allocation"] = alloc;
        } else {
            r["allocation"] = nullptr;
        }
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

inline AnalysisReport from_json(const std::string& text) {
    using json = nlohmann::ordered_json;
    try {
        json j = json::parse(text);
        AnalysisReport rep;
        rep.version = j.at("version").get<std::string>();
        if (j.at("tool").get<std::string>() != "srrlab") throw ParseError("not an srrlab report");
        rep.n = j.at("code").at("n").get<int>();
        rep.k = j.at("code").at("k").get<int>();
        rep.d_min = j.at("code").at("d_min").get<int>();
        if (!j.at("code").at("d_dual").is_null()) rep.d_dual = j.at("code").at("d_dual").get<int>();
        rep.cap_dual = j.at("caps").at("dual").get<std::uint64_t>();
        rep.cap_clique_nodes = j.at("caps").at("clique_nodes").get<std::uint64_t>();
        rep.exact_lp = j.at("exact_lp").get<bool>();
        for (const auto& r : j.at("rows")) {
            ReportRow row;
            row.object = r.at("object").get<int>();
            row.a = r.at("a").get<int>();
            row.J = r.at("J").get<int>();
            row.j_exact = r.at("J_exact").get<bool>();
            row.lower = parse_rational(r.at("lower").get<std::string>());
            if (!r.at("upper_refined").is_null())
                row.upper_refined = parse_rational(r.at("upper_refined").get<std::string>());
            if (!r.at("upper_loose").is_null())
                row.upper_loose = parse_rational(r.at("upper_loose").get<std::string>());
            if (!r.at("lambda_max").is_null())
                row.lambda_max = parse_rational(r.at("lambda_max").get<std::string>());
            if (!r.at("lambda_source").is_null())
                row.lambda_source = r.at("lambda_source").get<std::string>();
            row.design_status = r.at("design_status").get<std::string>();
            if (!r.at("allocation").is_null()) {
                const auto& alloc = r.at("allocation");
                row.direct_column = alloc.at("direct_column").get<int>();
                row.blocks = alloc.at("blocks").get<std::uint64_t>();
                row.block_weight = parse_rational(alloc.at("block_weight").get<std::string>());
            }
            rep.rows.push_back(std::move(row));
        }
        return rep;
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad report JSON: ") + e.what());
    }
}

inline std::string render(const AnalysisReport& rep, ReportFormat format) {
    switch (format) {
        case ReportFormat::table: return render_table(rep);
        case ReportFormat::json: return to_json(rep);
        case ReportFormat::csv: return render_csv(rep);
    }
    throw InternalError("unreachable report format");
}

} // namespace srrlab
