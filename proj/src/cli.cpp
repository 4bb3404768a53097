#include "bernsum/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bernsum/distributions.hpp"
#include "bernsum/genfun.hpp"
#include "bernsum/oracle.hpp"
#include "bernsum/tail_moments.hpp"

namespace bernsum::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string format = "table";  // json | csv | table
    bool force_float = false;
    int digits = 12;
    double epsilon = 1e-15;
    long budget = kDefaultSubsetBudget;
    std::uint64_t seed = 12345;
    int kmax = 4;
    std::string kind = "raw";
    std::string method = "closed";  // closed | engine | tail
    std::string via = "direct";     // pmf: direct | frechet | pgf
    std::string gf = "fmgf";
    int order = 4;
    bool as_printed = false;
    bool with_mc = false;
    long samples = 100000;

    std::string spec_text;  // --spec JSON
    std::string pmf_file;   // tail input as {"x": "prob"} JSON object

    // per-distribution flags
    std::string dist;
    std::optional<int> n, bigN, g, r, base;
    std::optional<long> balls;
    std::optional<std::string> p, nu, lambda;
};

std::string render(const Scalar& v, const Config& cfg) {
    if (v.is_exact() && !cfg.force_float) return v.str();
    if (v.is_exact()) return Scalar::approx(v.to_double()).str(cfg.digits);
    return v.str(cfg.digits);
}

json spec_from_flags(const Config& cfg) {
    if (!cfg.spec_text.empty()) {
        json spec = json::parse(cfg.spec_text, nullptr, false);
        if (spec.is_discarded()) throw SpecError("--spec is not valid JSON");
        return spec;
    }
    if (cfg.dist.empty()) throw SpecError("provide --dist or --spec");
    json spec{{"dist", cfg.dist}};
    if (cfg.n) spec["n"] = *cfg.n;
    if (cfg.bigN) spec["N"] = *cfg.bigN;
    if (cfg.g) spec["g"] = *cfg.g;
    if (cfg.r) spec["r"] = *cfg.r;
    if (cfg.base) spec["base"] = *cfg.base;
    if (cfg.balls) spec["balls"] = *cfg.balls;
    if (cfg.lambda) spec["lambda"] = *cfg.lambda;
    if (cfg.nu) spec["nu"] = *cfg.nu;
    if (cfg.p) {
        std::string d = cfg.dist;
        std::replace(d.begin(), d.end(), '_', '-');
        if (d == "poisson-binomial") {
            json arr = json::array();
            std::stringstream ss(*cfg.p);
            std::string item;
            while (std::getline(ss, item, ',')) arr.push_back(item);
            spec["p"] = arr;
        } else {
            spec["p"] = *cfg.p;
        }
    }
    return spec;
}

// ------------------------------------------------------------- rendering

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void print_table(std::ostream& out) const {
        std::vector<size_t> w(header.size());
        for (size_t c = 0; c < header.size(); ++c) w[c] = header[c].size();
        for (const auto& row : rows)
            for (size_t c = 0; c < row.size(); ++c) w[c] = std::max(w[c], row[c].size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (size_t c = 0; c < cells.size(); ++c)
                out << std::left << std::setw(static_cast<int>(w[c]) + 2) << cells[c];
            out << "\n";
        };
        line(header);
        for (const auto& row : rows) line(row);
    }

    void print_csv(std::ostream& out) const {
        auto line = [&](const std::vector<std::string>& cells) {
            for (size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
            out << "\n";
        };
        line(header);
        for (const auto& row : rows) line(row);
    }
};

void emit(const Table& t, const json& as_json, const Config& cfg, std::ostream& out) {
    if (cfg.format == "json")
        out << as_json.dump(2) << "\n";
    else if (cfg.format == "csv")
        t.print_csv(out);
    else
        t.print_table(out);
}

// --------------------------------------------------------------- moments

MomentReport tail_report(const tail::CountDist& cd, MomentKind kind, int kmax, double epsilon) {
    MomentReport rep;
    rep.kind = kind;
    rep.kmax = kmax;
    rep.provenance = "tail";
    std::vector<Scalar> raws(kmax + 1);
    std::optional<double> residual;
    auto note = [&residual](const std::optional<double>& r) {
        if (r) residual = residual.value_or(0.0) + *r;
    };
    for (int k = 0; k <= kmax; ++k) {
        auto tv = tail::moment_from_tail(cd, k, epsilon);
        raws[k] = tv.value;
        note(tv.residual_bound);
    }
    switch (kind) {
        case MomentKind::Raw:
            rep.values = raws;
            break;
        case MomentKind::Central:
            for (int k = 0; k <= kmax; ++k) rep.values.push_back(central_from_raw(raws, k));
            rep.mu = raws.size() > 1 ? std::optional<Scalar>(raws[1]) : std::nullopt;
            break;
        case MomentKind::Factorial:
        case MomentKind::Choose:
            for (int k = 0; k <= kmax; ++k) {
                auto tv = tail::factorial_moment_from_tail(cd, k, epsilon);
                note(tv.residual_bound);
                rep.values.push_back(kind == MomentKind::Factorial
                                         ? tv.value
                                         : tv.value / Scalar(combinat::factorial(k)));
            }
            break;
        case MomentKind::ExpectedFactorial:
            throw SpecError("expected-factorial is not available through the tail route");
    }
    rep.truncation_bound = residual;
    return rep;
}

tail::CountDist count_dist_from_pmf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open pmf file '" + path + "'");
    json obj = json::parse(in, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
        throw SpecError("pmf file must be a JSON object of \"x\": \"prob\" pairs");
    std::map<long, Scalar> probs;
    long max_x = 0;
    for (const auto& [key, val] : obj.items()) {
        long x = std::stol(key);
        if (x < 0) throw SpecError("pmf file: negative support point " + key);
        probs[x] = val.is_string() ? Scalar::parse(val.get<std::string>())
                                   : Scalar::approx(val.get<double>());
        max_x = std::max(max_x, x);
    }
    return tail::tail_from_pmf(
        [probs](long x) {
            auto it = probs.find(x);
            return it == probs.end() ? Scalar(0) : it->second;
        },
        max_x);
}

int cmd_moments(const Config& cfg, std::ostream& out) {
    const MomentKind kind = moment_kind_from_string(cfg.kind);
    MomentReport rep;
    json spec;

    if (!cfg.pmf_file.empty()) {
        rep = tail_report(count_dist_from_pmf_file(cfg.pmf_file), kind, cfg.kmax, cfg.epsilon);
        spec = {{"pmf_file", cfg.pmf_file}};
    } else {
        spec = spec_from_flags(cfg);
        DistPtr dist = parse_dist(spec);
        if (cfg.method == "closed") {
            rep = closed_form_report(*dist, kind, cfg.kmax);
        } else if (cfg.method == "engine") {
            rep = engine_report(dist->as_joint_model().with_budget(cfg.budget), kind, cfg.kmax);
        } else if (cfg.method == "tail") {
            rep = tail_report(tail::count_dist_from(dist), kind, cfg.kmax, cfg.epsilon);
        } else {
            throw SpecError("unknown --method '" + cfg.method + "' (closed|engine|tail)");
        }
    }

    Table t;
    t.header = {"k", "value", "method"};
    for (int k = 0; k < static_cast<int>(rep.values.size()); ++k)
        t.rows.push_back({std::to_string(k), render(rep.values[k], cfg), rep.provenance});
    json j = rep.to_json();
    j["spec"] = spec;
    emit(t, j, cfg, out);
    return 0;
}

// ------------------------------------------------------------------- pmf

int cmd_pmf(const Config& cfg, std::ostream& out) {
    json spec = spec_from_flags(cfg);
    DistPtr dist = parse_dist(spec);
    if (!dist->finite_support())
        throw SpecError("pmf table needs a finite-support distribution");
    const long lo = dist->support_min(), hi = dist->support_max();

    std::vector<Scalar> probs;
    if (cfg.via == "direct") {
        for (long x = lo; x <= hi; ++x) probs.push_back(dist->pmf(x));
    } else if (cfg.via == "frechet") {
        std::vector<Scalar> facts;
        for (long j = 0; j <= hi; ++j)
            facts.push_back(dist->closed_form_moment(MomentKind::Factorial, static_cast<int>(j)));
        for (long x = lo; x <= hi; ++x)
            probs.push_back(genfun::pmf_from_factorial_moments(facts, x, static_cast<int>(hi)));
    } else if (cfg.via == "pgf") {
        std::vector<Scalar> facts;
        for (long j = 0; j <= hi; ++j)
            facts.push_back(dist->closed_form_moment(MomentKind::Factorial, static_cast<int>(j)));
        auto pgf = genfun::pgf_from_fmgf(genfun::fmgf_series(facts, static_cast<int>(hi)), true);
        for (long x = lo; x <= hi; ++x) probs.push_back(pgf.coeffs[x]);
    } else {
        throw SpecError("unknown --via '" + cfg.via + "' (direct|frechet|pgf)");
    }

    Table t;
    t.header = {"x", "prob", "via"};
    json values = json::object();
    for (long x = lo; x <= hi; ++x) {
        t.rows.push_back({std::to_string(x), render(probs[x - lo], cfg), cfg.via});
        values[std::to_string(x)] = probs[x - lo].str();
    }
    emit(t, json{{"spec", spec}, {"via", cfg.via}, {"pmf", values}}, cfg, out);
    return 0;
}

// -------------------------------------------------------------------- gf

int cmd_gf(const Config& cfg, std::ostream& out) {
    json spec = spec_from_flags(cfg);
    DistPtr dist = parse_dist(spec);
    const auto kind = genfun::series_kind_from_string(cfg.gf);

    genfun::SeriesPoly series;
    if (kind == genfun::SeriesKind::Mgf) {
        std::vector<Scalar> raws;
        for (int k = 0; k <= cfg.order; ++k) raws.push_back(dist->closed_form_moment(MomentKind::Raw, k));
        series = genfun::mgf_series(raws, cfg.order);
    } else if (kind == genfun::SeriesKind::Fmgf) {
        std::vector<Scalar> facts;
        for (int k = 0; k <= cfg.order; ++k)
            facts.push_back(dist->closed_form_moment(MomentKind::Factorial, k));
        series = genfun::fmgf_series(facts, cfg.order);
    } else {
        if (!dist->finite_support())
            throw TruncationUnsound("pgf needs a finite support (exact-degree fmgf)");
        const int deg = static_cast<int>(dist->support_max());
        std::vector<Scalar> facts;
        for (int k = 0; k <= deg; ++k)
            facts.push_back(dist->closed_form_moment(MomentKind::Factorial, k));
        auto pgf = genfun::pgf_from_fmgf(genfun::fmgf_series(facts, deg), true);
        pgf.coeffs.resize(std::min<size_t>(pgf.coeffs.size(), cfg.order + 1), Scalar(0));
        while (static_cast<int>(pgf.coeffs.size()) < cfg.order + 1) pgf.coeffs.push_back(Scalar(0));
        series = std::move(pgf);
    }

    Table t;
    t.header = {"k", "coeff"};
    for (int k = 0; k <= series.order(); ++k)
        t.rows.push_back({std::to_string(k), render(series.coeffs[k], cfg)});
    json j = series.to_json();
    j["spec"] = spec;
    emit(t, j, cfg, out);
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyRow {
    std::string kind;
    int k;
    std::vector<std::pair<std::string, std::string>> values;  // method -> rendered
    bool ok = true;
};

bool values_match(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a == b;
    return scalar_close(a, b, 1e-9);
}

int cmd_verify(const Config& cfg, std::ostream& out) {
    json spec = spec_from_flags(cfg);
    DistPtr dist = parse_dist(spec);
    const std::string name = dist->name();
    const int kmax = cfg.kmax;

    const std::vector<MomentKind> kinds{MomentKind::Raw, MomentKind::Central, MomentKind::Factorial};

    // closed forms are the reference column
    std::map<std::string, std::map<std::string, std::vector<Scalar>>> columns;
    for (auto kind : kinds) {
        auto rep = closed_form_report(*dist, kind, kmax);
        columns[to_string(kind)]["closed"] = rep.values;
    }

    if (dist->is_bernoulli_sum()) {
        JointModel model = dist->as_joint_model().with_budget(cfg.budget);
        for (auto kind : kinds)
            columns[to_string(kind)]["engine"] = engine_report(model, kind, kmax).values;
    }

    // independent oracle column
    std::optional<oracle::OracleResult> oracle_result;
    if (name == "binomial") {
        const int n = spec.at("n").get<int>();
        if (n <= 20) {
            std::vector<Scalar> p(n, Scalar::parse(dist->spec_json().at("p").get<std::string>()));
            oracle_result = oracle::enumerate_independent(p, kmax);
        }
    } else if (name == "poisson-binomial") {
        std::vector<Scalar> p;
        for (const auto& v : dist->spec_json().at("p")) p.push_back(Scalar::parse(v.get<std::string>()));
        if (p.size() <= 20) oracle_result = oracle::enumerate_independent(p, kmax);
    } else if (name == "matching") {
        const int n = dist->trial_count();
        oracle_result = n <= 8 ? oracle::enumerate_matching(n, kmax) : oracle::pmf_moments(*dist, kmax);
    } else if (name == "empty-urns") {
        oracle_result = oracle::enumerate_urns(spec.at("n").get<int>(), spec.at("balls").get<long>(), kmax);
    } else if (name == "hypergeometric") {
        const int N = spec.at("N").get<int>();
        oracle_result = N <= 24 ? oracle::enumerate_hypergeometric(N, spec.at("g").get<int>(),
                                                                   spec.at("n").get<int>(), kmax)
                                : oracle::pmf_moments(*dist, kmax);
    } else if (dist->finite_support()) {
        oracle_result = oracle::pmf_moments(*dist, kmax);
    }
    if (oracle_result)
        for (auto kind : kinds)
            columns[to_string(kind)]["oracle"] = oracle_result->of(kind);

    // tail + chakra columns
    bool tail_available = dist->finite_support() || name == "geometric" || name == "poisson";
    if (tail_available) {
        auto cd = tail::count_dist_from(dist);
        std::vector<Scalar> raws(kmax + 1), facts(kmax + 1), chakra(kmax + 1);
        for (int k = 0; k <= kmax; ++k) {
            raws[k] = tail::moment_from_tail(cd, k, cfg.epsilon).value;
            facts[k] = tail::factorial_moment_from_tail(cd, k, cfg.epsilon).value;
            chakra[k] = tail::moment_chakra(cd, k, cfg.epsilon).value;
        }
        columns["raw"]["tail"] = raws;
        columns["factorial"]["tail"] = facts;
        std::vector<Scalar> centrals(kmax + 1);
        for (int k = 0; k <= kmax; ++k) centrals[k] = central_from_raw(raws, k);
        columns["central"]["tail"] = centrals;
        columns["raw"]["chakra"] = chakra;
    }

    // empty urns match a hypergeometric exactly; show it
    if (name == "empty-urns") {
        const int n = spec.at("n").get<int>();
        const long balls = spec.at("balls").get<long>();
        if (balls >= 1) {
            auto h = make_hypergeometric(static_cast<int>(balls) + n - 1, n - 1, n);
            for (auto kind : kinds)
                columns[to_string(kind)]["hypergeom"] = closed_form_report(*h, kind, kmax).values;
        }
    }

    if (cfg.as_printed) {
        if (name != "soliton") throw SpecError("--as-printed applies to --dist soliton only");
        const int r = spec.at("r").get<int>();
        std::vector<Scalar> printed(kmax + 1);
        for (int k = 0; k <= kmax; ++k)
            printed[k] = k < 2 ? dist->closed_form_moment(MomentKind::Factorial, k)
                               : soliton_printed_factorial_moment(r, k);
        columns["factorial"]["printed"] = printed;
    }

    std::optional<oracle::OracleResult> mc;
    if (cfg.with_mc) mc = oracle::monte_carlo(*dist, kmax, cfg.samples, cfg.seed);

    // assemble rows; every column must match the closed reference
    bool all_ok = true;
    std::vector<VerifyRow> rows;
    for (auto kind : kinds) {
        const auto& methods = columns[to_string(kind)];
        const auto& reference = methods.at("closed");
        for (int k = 0; k <= kmax; ++k) {
            VerifyRow row{to_string(kind), k, {}, true};
            for (const auto& [method, vals] : methods) {
                row.values.emplace_back(method, render(vals[k], cfg));
                if (!values_match(vals[k], reference[k])) row.ok = false;
            }
            if (kind == MomentKind::Raw && mc) {
                const double ref = reference[k].to_double();
                const double est = mc->raw[k].to_double();
                const double se = mc->stderr_raw[k];
                row.values.emplace_back("monte_carlo", mc->raw[k].str(6));
                if (std::fabs(est - ref) > 4.0 * se + 1e-12) row.ok = false;
            }
            all_ok = all_ok && row.ok;
            rows.push_back(std::move(row));
        }
    }

    // stable column order across rows
    std::vector<std::string> method_names;
    for (const auto& [m, _] : columns["raw"]) method_names.push_back(m);
    if (columns["factorial"].count("printed")) method_names.push_back("printed");
    if (mc) method_names.push_back("monte_carlo");

    Table t;
    t.header = {"kind", "k"};
    for (const auto& m : method_names) t.header.push_back(m);
    t.header.push_back("status");
    json jrows = json::array();
    for (const auto& row : rows) {
        std::vector<std::string> cells{row.kind, std::to_string(row.k)};
        json jvals = json::object();
        for (const auto& m : method_names) {
            auto it = std::find_if(row.values.begin(), row.values.end(),
                                   [&m](const auto& pr) { return pr.first == m; });
            cells.push_back(it == row.values.end() ? "-" : it->second);
            if (it != row.values.end()) jvals[m] = it->second;
        }
        cells.push_back(row.ok ? "ok" : "MISMATCH");
        t.rows.push_back(cells);
        jrows.push_back({{"kind", row.kind}, {"k", row.k}, {"values", jvals}, {"ok", row.ok}});
    }
    emit(t, json{{"spec", spec}, {"rows", jrows}, {"ok", all_ok}}, cfg, out);
    return all_ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    if (const char* env = std::getenv("BERNSUM_BUDGET")) {
        try {
            cfg.budget = std::stol(env);
        } catch (...) {
            err << "warning: ignoring malformed BERNSUM_BUDGET\n";
        }
    }

    CLI::App app{"Exact moments, PMFs and generating functions of Bernoulli-sum random variables"};
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_option("--dist", cfg.dist,
                        "binomial | poisson-binomial | hypergeometric | cmp-binomial | empty-urns | "
                        "matching | poisson | geometric | soliton | benford");
        cmd->add_option("--spec", cfg.spec_text, "full distribution spec as JSON");
        cmd->add_option("--n", cfg.n, "trial/urn/pair count");
        cmd->add_option("--N", cfg.bigN, "population size (hypergeometric)");
        cmd->add_option("--g", cfg.g, "trait count (hypergeometric)");
        cmd->add_option("--balls", cfg.balls, "ball count (empty-urns)");
        cmd->add_option("--r", cfg.r, "soliton support bound");
        cmd->add_option("--base", cfg.base, "benford base");
        cmd->add_option("--p", cfg.p, "success probability; comma list for poisson-binomial");
        cmd->add_option("--nu", cfg.nu, "cmp-binomial dispersion");
        cmd->add_option("--lambda", cfg.lambda, "poisson rate");
        cmd->add_option("--format", cfg.format, "json | csv | table")->default_str("table");
        cmd->add_flag("--float", cfg.force_float, "render exact values as decimals");
        cmd->add_option("--digits", cfg.digits, "float rendering precision")->check(CLI::Range(1, 17));
        cmd->add_option("--epsilon", cfg.epsilon, "tail truncation epsilon")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--budget", cfg.budget, "subset enumeration budget");
        cmd->add_option("--seed", cfg.seed, "monte carlo seed");
    };

    auto* moments = app.add_subcommand("moments", "moment table for a distribution");
    add_common(moments);
    moments->add_option("--kmax", cfg.kmax, "highest moment order")->check(CLI::NonNegativeNumber);
    moments->add_option("--kind", cfg.kind, "raw | central | factorial | expected-factorial | choose");
    moments->add_option("--method", cfg.method, "closed | engine | tail");
    moments->add_option("--pmf-file", cfg.pmf_file, "JSON object of \"x\": \"prob\" pairs (tail route)");

    auto* pmf = app.add_subcommand("pmf", "probability mass table");
    add_common(pmf);
    pmf->add_option("--via", cfg.via, "direct | frechet | pgf");

    auto* gf = app.add_subcommand("gf", "generating-function coefficients");
    add_common(gf);
    gf->add_option("--gf", cfg.gf, "mgf | fmgf | pgf");
    gf->add_option("--order", cfg.order, "series order")->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand("verify", "closed form vs engine vs oracle comparison");
    add_common(verify);
    verify->add_option("--kmax", cfg.kmax, "highest moment order")->check(CLI::NonNegativeNumber);
    verify->add_flag("--as-printed", cfg.as_printed,
                     "add the printed (known-discrepant) soliton factorial-moment column");
    verify->add_flag("--mc", cfg.with_mc, "add a monte carlo column (4-sigma check)");
    verify->add_option("--samples", cfg.samples, "monte carlo sample count");

    std::vector<const char*> argv{"bernsum"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand("moments")) return cmd_moments(cfg, out);
        if (app.got_subcommand("pmf")) return cmd_pmf(cfg, out);
        if (app.got_subcommand("gf")) return cmd_gf(cfg, out);
        if (app.got_subcommand("verify")) return cmd_verify(cfg, out);
        err << "no subcommand\n";
        return 2;
    } catch (const SubsetExplosion& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const TruncationUnsound& e) {
        err << "truncation unsound: " << e.what() << "\n";
        return 3;
    } catch (const DivergenceSuspected& e) {
        err << "divergence suspected: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace bernsum::cli
