#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/stat.h>

#include "CLI11.hpp"
#include "stpete/clt.hpp"
#include "stpete/errors.hpp"
#include "stpete/exact.hpp"
#include "stpete/gamble.hpp"
#include "stpete/io.hpp"
#include "stpete/laurent.hpp"
#include "stpete/montecarlo.hpp"
#include "stpete/quadrature.hpp"
#include "stpete/recurrence.hpp"

namespace {

using namespace stpete;

// thrown when a search legitimately finds nothing; maps to exit code 4
struct NotFoundExit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GambleTable parse_table_spec(const std::string& spec) {
    if (spec.rfind("stpete:", 0) == 0) {
        std::string body = spec.substr(7);
        long k = 0, fee = 0;
        char extra;
        if (std::sscanf(body.c_str(), "%ld,%ld %c", &k, &fee, &extra) == 2 ||
            std::sscanf(body.c_str(), "%ld %c", &k, &extra) == 1)
            return st_pete_table(k, fee);
        throw std::invalid_argument("bad table spec '" + spec + "', want stpete:k[,fee]");
    }
    if (spec.rfind("gfamily:", 0) == 0) {
        long i = 0;
        char extra;
        if (std::sscanf(spec.c_str() + 8, "%ld %c", &i, &extra) == 1)
            return g_family_table(i);
        throw std::invalid_argument("bad table spec '" + spec + "', want gfamily:i");
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("table spec '" + spec +
                                         "' is not stpete:k[,fee], gfamily:i, or a readable JSON file");
    std::stringstream buf;
    buf << in.rdbuf();
    return table_from_json(buf.str());
}

std::string sanitized(const std::string& label) {
    std::string out;
    for (char c : label) out += (std::isalnum((unsigned char)c) ? c : '_');
    return out.empty() ? std::string("table") : out;
}

std::string fmt10(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

std::string fmtdev(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", std::fabs(v));
    return buf;
}

void ensure_dir(const std::string& dir) {
    struct stat st{};
    if (stat(dir.c_str(), &st) == 0) {
        if (!S_ISDIR(st.st_mode))
            throw std::invalid_argument("output path '" + dir + "' is not a directory");
        return;
    }
    if (mkdir(dir.c_str(), 0755) != 0)
        throw std::invalid_argument("cannot create output directory '" + dir + "'");
}

struct SweepOpts {
    std::string spec, method = "exact", out = ".", format = "csv";
    long nmax = 0, samples = 1000, max_order = 8, max_degree = 8;
    std::uint64_t seed = 12345;
    bool strict = true;
};

void run_sweep(const SweepOpts& o) {
    GambleTable m = parse_table_spec(o.spec);
    if (o.nmax < 1) throw std::invalid_argument("--nmax must be >= 1");

    std::string cmd = "stpete sweep " + o.spec + " --nmax " + std::to_string(o.nmax) +
                      " --method " + o.method + (o.strict ? " --strict" : " --no-strict");
    if (o.method == "mc")
        cmd += " --samples " + std::to_string(o.samples) + " --seed " + std::to_string(o.seed);
    if (o.method == "recurrence")
        cmd += " --max-order " + std::to_string(o.max_order) + " --max-degree " +
               std::to_string(o.max_degree);
    cmd += " --out " + o.out;
    if (o.format == "json") cmd += " --format json";

    SweepArtifact art;
    if (o.method == "exact") {
        art = artifact_from_series(prob_pos_sweep(m, o.nmax, o.strict), "exact", cmd);
    } else if (o.method == "clt") {
        std::vector<double> vals;
        vals.reserve(o.nmax);
        for (long n = 1; n <= o.nmax; ++n) vals.push_back(prob_pos_clt(m, n));
        art = artifact_from_values(m.label, "clt", cmd, o.strict, 1, vals);
    } else if (o.method == "mc") {
        std::vector<double> vals;
        vals.reserve(o.nmax);
        for (long n = 1; n <= o.nmax; ++n)
            vals.push_back(simulate(m, n, o.samples, o.seed + (std::uint64_t)n).win_fraction);
        art = artifact_from_values(m.label, "mc", cmd, o.strict, 1, vals);
    } else if (o.method == "recurrence") {
        long verify = 20;
        long required = (o.max_order + 1) * (o.max_degree + 1) + o.max_order + verify;
        if (o.nmax <= required) {
            art = artifact_from_series(prob_pos_sweep(m, o.nmax, o.strict), "recurrence", cmd);
        } else {
            ProbSeries base = prob_pos_sweep(m, required, o.strict);
            auto rec = guess_recurrence(base, o.max_order, o.max_degree, verify);
            if (rec) {
                art = artifact_from_series(extend(*rec, base, o.nmax), "recurrence", cmd);
            } else {
                std::cerr << "warning: no recurrence within (order <= " << o.max_order
                          << ", degree <= " << o.max_degree
                          << ") on " << required << " terms; computing the sweep exactly\n";
                art = artifact_from_series(prob_pos_sweep(m, o.nmax, o.strict), "recurrence", cmd);
            }
        }
    } else {
        throw std::invalid_argument("unknown method '" + o.method +
                                    "', want exact|clt|mc|recurrence");
    }

    ensure_dir(o.out);
    std::string base = o.out + "/" + sanitized(m.label) + "_" + o.method + "_" +
                       std::to_string(o.nmax);
    if (o.format == "json")
        write_atomic(base + ".json", sweep_json(art));
    else
        write_atomic(base + ".csv", sweep_csv(art));
    write_atomic(base + ".dat", sweep_dat(art));
    write_atomic(base + ".svg", sweep_svg(art));
    std::cout << "wrote " << base << (o.format == "json" ? ".json" : ".csv") << ", " << base
              << ".dat, " << base << ".svg\n";
}

struct SolveOpts {
    std::string spec, strategy = "auto", epsilon;
    long window = 1, horizon = 500;
    bool strict = true;
};

void run_solve(const SolveOpts& o) {
    GambleTable m = parse_table_spec(o.spec);
    Rat eps = parse_rat(o.epsilon);
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("--epsilon must lie in (0,1)");
    if (expected_value(m) <= 0)
        throw NotFoundExit("expected value is not positive; no repeat count makes this "
                           "gamble favorable, refuse to play");

    auto report_exact = [&](long horizon) -> bool {
        auto r = min_repeats(m, eps, o.strict, o.window, horizon);
        if (!r) return false;
        std::cout << "n = " << r->n << "\n" << r->certificate << "\n";
        return true;
    };

    if (o.strategy == "exact") {
        if (!report_exact(o.horizon))
            throw NotFoundExit("no n <= " + std::to_string(o.horizon) + " keeps the window [n, n+" +
                               std::to_string(o.window) + "] at probability >= " +
                               decimal_string(1 - eps, 10));
    } else if (o.strategy == "clt") {
        long n = min_repeats_clt(m, to_double(eps));
        std::cout << "n = " << n << " (normal approximation)\n"
                  << "prob_pos_clt(" << n << ") = " << fmt10(prob_pos_clt(m, n)) << "\n";
    } else if (o.strategy == "auto") {
        long n_clt = min_repeats_clt(m, to_double(eps));
        const long affordable = 500;
        if (n_clt <= affordable) {
            long horizon = std::min(o.horizon, n_clt + std::max(2 * o.window, 50L));
            if (report_exact(std::max(horizon, n_clt + o.window + 1))) return;
            std::cout << "exact search found nothing near the normal-approximation seed\n";
            throw NotFoundExit("n = " + std::to_string(n_clt) +
                               " (normal approximation, exact verification failed)");
        }
        std::cout << "n = " << n_clt
                  << " (normal approximation; exact verification skipped, n too large)\n"
                  << "prob_pos_clt(" << n_clt << ") = " << fmt10(prob_pos_clt(m, n_clt)) << "\n";
    } else {
        throw std::invalid_argument("unknown strategy '" + o.strategy + "', want exact|clt|auto");
    }
}

struct SimOpts {
    std::string spec, emit_totals;
    long repeats = 0, runs = 1000;
    std::uint64_t seed = 12345;
};

void run_simulate(const SimOpts& o) {
    GambleTable m = parse_table_spec(o.spec);
    if (o.emit_totals.empty()) {
        std::cout << sim_result_line(simulate(m, o.repeats, o.runs, o.seed)) << "\n";
        return;
    }
    Rng rng(o.seed);
    std::string csv = "# command: stpete simulate " + o.spec + " --repeats " +
                      std::to_string(o.repeats) + " --runs " + std::to_string(o.runs) +
                      " --seed " + std::to_string(o.seed) + " --emit-totals " + o.emit_totals +
                      "\nrun,total\n";
    long wins = 0;
    double sum = 0;
    for (long r = 0; r < o.runs; ++r) {
        long total = simulate_run(m, o.repeats, rng);
        if (total > 0) ++wins;
        sum += (double)total;
        csv += std::to_string(r + 1) + "," + std::to_string(total) + "\n";
    }
    write_atomic(o.emit_totals, csv);
    SimResult res{sum / (double)o.runs, (double)wins / (double)o.runs, o.runs, o.repeats};
    std::cout << sim_result_line(res) << "\n";
}

struct ApproxOpts {
    std::string spec, method = "clt";
    long repeats = 0;
    double radius = 0.0;
};

void run_approx(const ApproxOpts& o) {
    GambleTable m = parse_table_spec(o.spec);
    if (o.repeats < 1) throw std::invalid_argument("--repeats must be >= 1");
    if (o.method == "clt") {
        std::cout << fmt10(prob_pos_clt(m, o.repeats)) << "\n";
    } else if (o.method == "contour") {
        LaurentPoly a = unscaled(scaled_power(scaled_from(pgf(m)), (unsigned long)o.repeats));
        std::cout << fmt10(contour_positive_part(a, o.radius)) << "\n";
    } else {
        throw std::invalid_argument("unknown method '" + o.method + "', want clt|contour");
    }
}

struct RecOpts {
    std::string spec, out;
    long terms = 0, max_order = 8, max_degree = 8, verify_count = 20, extend_to = 0;
    bool strict = true;
};

void run_recurrence(const RecOpts& o) {
    GambleTable m = parse_table_spec(o.spec);
    long required = (o.max_order + 1) * (o.max_degree + 1) + o.max_order + o.verify_count;
    long terms = o.terms > 0 ? o.terms : required;
    ProbSeries base = prob_pos_sweep(m, terms, o.strict);
    auto rec = guess_recurrence(base, o.max_order, o.max_degree, o.verify_count);
    if (!rec)
        throw NotFoundExit("no recurrence within (order <= " + std::to_string(o.max_order) +
                           ", degree <= " + std::to_string(o.max_degree) + ") fits " +
                           std::to_string(terms) + " terms");
    std::string json = recurrence_to_json(*rec);
    if (o.out.empty())
        std::cout << json << "\n";
    else {
        write_atomic(o.out, json + "\n");
        std::cout << "order " << rec->order << ", degree " << rec->degree() << ", wrote "
                  << o.out << "\n";
    }
    if (o.extend_to > 0) {
        ProbSeries ext = extend(*rec, base, o.extend_to);
        std::cout << "a(" << o.extend_to << ") = " << decimal_string(ext.at(o.extend_to), 10)
                  << "\n";
    }
}

struct VerifyOpts {
    std::string spec;
    long repeats = 0, samples = 10000;
    std::uint64_t seed = 12345;
    double radius = 0.0;
};

void run_verify(const VerifyOpts& o) {
    GambleTable m = parse_table_spec(o.spec);
    if (o.repeats < 1) throw std::invalid_argument("--repeats must be >= 1");
    Rat exact = prob_pos(m, o.repeats, true);
    double ex = to_double(exact);
    std::cout << "exact       " << decimal_string(exact, 10) << "\n";

    LaurentPoly a = unscaled(scaled_power(scaled_from(pgf(m)), (unsigned long)o.repeats));
    double quad = contour_positive_part(a, o.radius);
    std::cout << "quadrature  " << fmt10(quad) << "   |dev| " << fmtdev(quad - ex) << "\n";

    if (variance(m) == 0) {
        std::cout << "clt         n/a (zero variance, the gamble is deterministic)\n";
    } else {
        double c = prob_pos_clt(m, o.repeats);
        std::cout << "clt         " << fmt10(c) << "   |dev| " << fmtdev(c - ex) << "\n";
    }

    SimResult sim = simulate(m, o.repeats, o.samples, o.seed);
    double se = std::sqrt(std::max(ex * (1 - ex), 1e-12) / (double)o.samples);
    std::cout << "montecarlo  " << fmt10(sim.win_fraction) << "   |dev| "
              << fmtdev(sim.win_fraction - ex) << "   (" << o.samples
              << " runs, binomial se " << fmtdev(se) << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and approximate analysis of repeated gambles"};
    app.require_subcommand(1);

    auto* t_cmd = app.add_subcommand("table", "print a gamble table");
    std::string t_spec, t_format = "plain";
    t_cmd->add_option("spec", t_spec, "stpete:k[,fee] | gfamily:i | JSON file")->required();
    t_cmd->add_option("--format", t_format, "plain|json")
        ->check(CLI::IsMember({"plain", "json"}));

    auto* s_cmd = app.add_subcommand("sweep", "probability-of-ending-ahead curve, files out");
    SweepOpts so;
    s_cmd->add_option("spec", so.spec, "table spec")->required();
    s_cmd->add_option("--nmax", so.nmax, "largest repeat count")->required();
    s_cmd->add_option("--method", so.method, "exact|clt|mc|recurrence");
    s_cmd->add_flag("--strict,!--no-strict", so.strict, "count > 0 (default) vs >= 0");
    s_cmd->add_option("--out", so.out, "output directory");
    s_cmd->add_option("--format", so.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    s_cmd->add_option("--samples", so.samples, "runs per point for --method mc");
    s_cmd->add_option("--seed", so.seed, "PRNG seed for --method mc");
    s_cmd->add_option("--max-order", so.max_order, "recurrence fit bound");
    s_cmd->add_option("--max-degree", so.max_degree, "recurrence fit bound");

    auto* so_cmd = app.add_subcommand("solve", "minimal repeats for a risk tolerance");
    SolveOpts vo;
    so_cmd->add_option("spec", vo.spec, "table spec")->required();
    so_cmd->add_option("--epsilon", vo.epsilon, "acceptable losing probability, exact rational or decimal")
        ->required();
    so_cmd->add_option("--strategy", vo.strategy, "exact|clt|auto");
    so_cmd->add_option("--window", vo.window, "indices n..n+window must all pass (exact)");
    so_cmd->add_option("--horizon", vo.horizon, "largest n searched (exact)");
    so_cmd->add_flag("--strict,!--no-strict", vo.strict, "count > 0 (default) vs >= 0");

    auto* m_cmd = app.add_subcommand("simulate", "seeded Monte Carlo runs");
    SimOpts mo;
    m_cmd->add_option("spec", mo.spec, "table spec")->required();
    m_cmd->add_option("--repeats", mo.repeats, "draws per run")->required();
    m_cmd->add_option("--runs", mo.runs, "number of runs");
    m_cmd->add_option("--seed", mo.seed, "PRNG seed");
    m_cmd->add_option("--emit-totals", mo.emit_totals, "also write per-run totals CSV here");

    auto* a_cmd = app.add_subcommand("approx", "approximate probability of ending ahead");
    ApproxOpts ao;
    a_cmd->add_option("spec", ao.spec, "table spec")->required();
    a_cmd->add_option("--repeats", ao.repeats, "repeat count")->required();
    a_cmd->add_option("--method", ao.method, "clt|contour");
    a_cmd->add_option("--radius", ao.radius, "contour radius > 1 (default: chosen automatically)");

    auto* r_cmd = app.add_subcommand("recurrence", "fit and print a verified linear recurrence");
    RecOpts ro;
    r_cmd->add_option("spec", ro.spec, "table spec")->required();
    r_cmd->add_option("--terms", ro.terms, "exact terms to fit on (default: minimum for the bounds)");
    r_cmd->add_option("--max-order", ro.max_order, "largest order tried");
    r_cmd->add_option("--max-degree", ro.max_degree, "largest coefficient degree tried");
    r_cmd->add_option("--verify-count", ro.verify_count, "held-out terms re-checked exactly");
    r_cmd->add_option("--extend", ro.extend_to, "also extend the series and print a(n)");
    r_cmd->add_option("--out", ro.out, "write the recurrence JSON here");
    r_cmd->add_flag("--strict,!--no-strict", ro.strict, "count > 0 (default) vs >= 0");

    auto* v_cmd = app.add_subcommand("verify", "cross-check all four methods at one n");
    VerifyOpts qo;
    v_cmd->add_option("spec", qo.spec, "table spec")->required();
    v_cmd->add_option("--repeats", qo.repeats, "repeat count")->required();
    v_cmd->add_option("--samples", qo.samples, "Monte Carlo runs");
    v_cmd->add_option("--seed", qo.seed, "PRNG seed");
    v_cmd->add_option("--radius", qo.radius, "contour radius > 1 (default: chosen automatically)");

    t_cmd->callback([&] {
        GambleTable m = parse_table_spec(t_spec);
        std::cout << (t_format == "json" ? table_to_json(m) : bracketed(m)) << "\n";
    });
    s_cmd->callback([&] { run_sweep(so); });
    so_cmd->callback([&] { run_solve(vo); });
    m_cmd->callback([&] { run_simulate(mo); });
    a_cmd->callback([&] { run_approx(ao); });
    r_cmd->callback([&] { run_recurrence(ro); });
    v_cmd->callback([&] { run_verify(qo); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const NotFoundExit& e) {
        std::cout << e.what() << "\n";
        return 4;
    } catch (const stpete::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
