#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stpete/clt.hpp"
#include "stpete/exact.hpp"
#include "stpete/gamble.hpp"
#include "stpete/laurent.hpp"
#include "stpete/montecarlo.hpp"
#include "stpete/quadrature.hpp"
#include "stpete/rational.hpp"
#include "stpete/recurrence.hpp"

namespace py = pybind11;
using namespace stpete;

namespace {

GambleTable table_from_entries(const std::vector<std::pair<long, std::string>>& entries,
                               const std::string& label) {
    std::vector<std::pair<long, Rat>> rows;
    rows.reserve(entries.size());
    for (const auto& [outcome, prob] : entries) rows.emplace_back(outcome, parse_rat(prob));
    return GambleTable(std::move(rows), label);
}

std::vector<std::pair<long, std::string>> entries_of(const GambleTable& m) {
    std::vector<std::pair<long, std::string>> out;
    out.reserve(m.entries.size());
    for (const auto& [outcome, prob] : m.entries) out.emplace_back(outcome, rat_str(prob));
    return out;
}

LaurentPoly pgf_power(const GambleTable& m, long n) {
    if (n < 1) throw std::invalid_argument("repeats must be >= 1");
    return unscaled(scaled_power(scaled_from(pgf(m)), (unsigned long)n));
}

std::vector<std::string> sweep_fractions(const GambleTable& m, long n_max, bool strict) {
    ProbSeries s = prob_pos_sweep(m, n_max, strict);
    std::vector<std::string> out;
    out.reserve(s.values.size());
    for (const Rat& q : s.values) out.push_back(rat_str(q));
    return out;
}

std::optional<std::pair<long, std::string>> min_repeats_py(const GambleTable& m,
                                                           const std::string& epsilon,
                                                           bool strict, long window,
                                                           long horizon) {
    auto r = min_repeats(m, parse_rat(epsilon), strict, window, horizon);
    if (!r) return std::nullopt;
    return std::make_pair(r->n, r->certificate);
}

std::optional<std::string> fit_recurrence(const GambleTable& m, long terms, long max_order,
                                          long max_degree, long verify_count, bool strict) {
    ProbSeries base = prob_pos_sweep(m, terms, strict);
    auto rec = guess_recurrence(base, max_order, max_degree, verify_count);
    if (!rec) return std::nullopt;
    return recurrence_to_json(*rec);
}

std::string extend_prob(const std::string& recurrence_json, const GambleTable& m, long terms,
                        long n_target, bool strict) {
    Recurrence rec = recurrence_from_json(recurrence_json);
    ProbSeries base = prob_pos_sweep(m, terms, strict);
    ProbSeries ext = extend(rec, base, n_target);
    return rat_str(ext.at(n_target));
}

}  // namespace

PYBIND11_MODULE(_stpete, mod) {
    mod.doc() = "exact and approximate analysis of repeated independent gambles";

    py::class_<GambleTable>(mod, "GambleTable")
        .def(py::init(&table_from_entries), py::arg("entries"), py::arg("label") = "")
        .def_readwrite("label", &GambleTable::label)
        .def_property_readonly("entries", &entries_of)
        .def("min_outcome", &GambleTable::min_outcome)
        .def("max_outcome", &GambleTable::max_outcome)
        .def("__len__", [](const GambleTable& m) { return m.entries.size(); })
        .def("__repr__", [](const GambleTable& m) { return bracketed(m); });

    py::class_<SimResult>(mod, "SimResult")
        .def_readonly("mean_payoff", &SimResult::mean_payoff)
        .def_readonly("win_fraction", &SimResult::win_fraction)
        .def_readonly("runs", &SimResult::runs)
        .def_readonly("repeats", &SimResult::repeats)
        .def("line", [](const SimResult& r) { return sim_result_line(r); })
        .def("__repr__", [](const SimResult& r) { return sim_result_line(r); });

    mod.def("st_pete_table", &st_pete_table, py::arg("k"), py::arg("fee") = 0,
            "k-round doubling gamble with entry fee; k+1 entries, the last two equal");
    mod.def("g_family_table", &g_family_table, py::arg("i"),
            "[[-1, (i-1)/i], [i, 1/i]]");
    mod.def("table_from_json", &table_from_json, py::arg("text"));
    mod.def("table_to_json", &table_to_json, py::arg("table"));
    mod.def("bracketed", &bracketed, py::arg("table"));

    mod.def("expected_value",
            [](const GambleTable& m) { return rat_str(expected_value(m)); }, py::arg("table"),
            "exact expected payoff of one draw, as a rational string");
    mod.def("variance", [](const GambleTable& m) { return rat_str(variance(m)); },
            py::arg("table"), "exact variance of one draw, as a rational string");
    mod.def("shot_win_probability",
            [](const GambleTable& m, bool strict) { return rat_str(shot_win_probability(m, strict)); },
            py::arg("table"), py::arg("strict") = true);

    mod.def("prob_pos",
            [](const GambleTable& m, long n, bool strict) { return rat_str(prob_pos(m, n, strict)); },
            py::arg("table"), py::arg("n"), py::arg("strict") = true,
            "exact P(total after n repeats > 0), as a rational string");
    mod.def("prob_pos_decimal",
            [](const GambleTable& m, long n, long places, bool strict) {
                return decimal_string(prob_pos(m, n, strict), places);
            },
            py::arg("table"), py::arg("n"), py::arg("places") = 10, py::arg("strict") = true,
            "exact probability rounded half-to-even to the given decimal places");
    mod.def("prob_pos_sweep", &sweep_fractions, py::arg("table"), py::arg("n_max"),
            py::arg("strict") = true, "exact probabilities for n = 1..n_max, as rational strings");
    mod.def("min_repeats", &min_repeats_py, py::arg("table"), py::arg("epsilon"),
            py::arg("strict") = true, py::arg("window") = 1, py::arg("horizon") = 500,
            "least n <= horizon with the whole window [n, n+window] at probability >= "
            "1-epsilon; returns (n, certificate) or None");

    mod.def("clt_params",
            [](const GambleTable& m) {
                CltParams p = clt_params(m);
                return std::make_pair(rat_str(p.mu), rat_str(p.sigma2));
            },
            py::arg("table"), "(mean, variance) of one draw, as rational strings");
    mod.def("erf", &stpete::erf, py::arg("x"));
    mod.def("prob_pos_clt", &prob_pos_clt, py::arg("table"), py::arg("n"),
            "normal approximation to P(total after n repeats > 0)");
    mod.def("min_repeats_clt", &min_repeats_clt, py::arg("table"), py::arg("epsilon"),
            "smallest n with the normal approximation at probability >= 1-epsilon");

    mod.def("contour_prob_pos",
            [](const GambleTable& m, long n, double radius) {
                return contour_positive_part(pgf_power(m, n), radius);
            },
            py::arg("table"), py::arg("n"), py::arg("radius") = 0.0,
            "trapezoid contour estimate of P(total after n repeats > 0); radius 0 picks one");

    mod.def("simulate", &simulate, py::arg("table"), py::arg("repeats"), py::arg("runs"),
            py::arg("seed"), "Monte Carlo runs, deterministic in the seed");

    mod.def("fit_recurrence", &fit_recurrence, py::arg("table"), py::arg("terms"),
            py::arg("max_order") = 8, py::arg("max_degree") = 8, py::arg("verify_count") = 20,
            py::arg("strict") = true,
            "fit the minimal polynomial-coefficient recurrence on an exact sweep of `terms` "
            "values; returns its JSON text or None");
    mod.def("extend_prob", &extend_prob, py::arg("recurrence_json"), py::arg("table"),
            py::arg("terms"), py::arg("n_target"), py::arg("strict") = true,
            "extend an exact sweep of `terms` values to n_target with a fitted recurrence "
            "and return the probability there, as a rational string");

    mod.def("decimal",
            [](const std::string& q, long places) { return decimal_string(parse_rat(q), places); },
            py::arg("q"), py::arg("places") = 10,
            "rational string to a half-to-even rounded decimal string");
}
