#include "stpete/gamble.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace stpete {

GambleTable::GambleTable(std::vector<std::pair<long, Rat>> e, std::string lbl)
    : entries(std::move(e)), label(std::move(lbl)) {
    if (entries.empty()) throw std::invalid_argument("gamble table needs at least one entry");
    Rat mass = 0;
    for (auto& [outcome, p] : entries) {
        (void)outcome;
        if (p <= 0 || p > 1) throw std::invalid_argument("probability out of (0,1]: " + rat_str(p));
        mass += p;
    }
    if (mass != 1) throw std::invalid_argument("probabilities sum to " + rat_str(mass) + ", not 1");
}

long GambleTable::min_outcome() const {
    long m = entries.front().first;
    for (auto& [o, p] : entries) m = std::min(m, o);
    return m;
}

long GambleTable::max_outcome() const {
    long m = entries.front().first;
    for (auto& [o, p] : entries) m = std::max(m, o);
    return m;
}

GambleTable st_pete_table(long k, long fee) {
    if (k < 1) throw std::invalid_argument("st_pete_table: k must be >= 1");
    if (k > 62) throw std::invalid_argument("st_pete_table: 2^k exceeds the outcome type");
    std::vector<std::pair<long, Rat>> e;
    long pow2 = 2;
    Rat p(1, 2);
    for (long i = 1; i <= k; ++i) {
        e.emplace_back(pow2 - fee, p);
        if (i < k) {
            pow2 *= 2;
            p /= 2;
        }
    }
    e.emplace_back(e.back());
    return GambleTable(std::move(e), "stpete:" + std::to_string(k) + "," + std::to_string(fee));
}

GambleTable g_family_table(long i) {
    if (i < 2) throw std::invalid_argument("g_family_table: i must be >= 2");
    std::vector<std::pair<long, Rat>> e{{-1, Rat(i - 1, i)}, {i, Rat(1, i)}};
    return GambleTable(std::move(e), "gfamily:" + std::to_string(i));
}

Rat expected_value(const GambleTable& m) {
    Rat s = 0;
    for (auto& [o, p] : m.entries) s += p * o;
    return s;
}

Rat variance(const GambleTable& m) {
    Rat mu = expected_value(m);
    Rat s = 0;
    for (auto& [o, p] : m.entries) {
        Rat d = Rat(o) - mu;
        s += p * d * d;
    }
    return s;
}

Rat shot_win_probability(const GambleTable& m, bool strict) {
    Rat s = 0;
    for (auto& [o, p] : m.entries)
        if (o > 0 || (!strict && o == 0)) s += p;
    return s;
}

GambleTable normalized(const GambleTable& m) {
    std::map<long, Rat> acc;
    for (auto& [o, p] : m.entries) acc[o] += p;
    std::vector<std::pair<long, Rat>> e(acc.begin(), acc.end());
    return GambleTable(std::move(e), m.label);
}

std::string bracketed(const GambleTable& m) {
    std::string out = "[";
    for (size_t i = 0; i < m.entries.size(); ++i) {
        if (i) out += ", ";
        out += "[" + std::to_string(m.entries[i].first) + ", " + rat_str(m.entries[i].second) + "]";
    }
    return out + "]";
}

std::string table_to_json(const GambleTable& m) {
    nlohmann::json j;
    j["label"] = m.label;
    j["entries"] = nlohmann::json::array();
    for (auto& [o, p] : m.entries) j["entries"].push_back({o, rat_str(p)});
    return j.dump(2);
}

GambleTable table_from_json(const std::string& text) {
    std::vector<std::pair<long, Rat>> e;
    std::string label;
    try {
        auto j = nlohmann::json::parse(text);
        // accept either {"entries": [[o,"p"],...], "label": ...} or a bare array
        const auto& arr = j.is_array() ? j : j.at("entries");
        for (const auto& item : arr) {
            long outcome = item.at(0).get<long>();
            Rat p = item.at(1).is_string() ? parse_rat(item.at(1).get<std::string>())
                                           : Rat(item.at(1).get<long>());
            e.emplace_back(outcome, p);
        }
        if (!j.is_array() && j.contains("label")) label = j["label"].get<std::string>();
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("bad table json: ") + ex.what());
    }
    return GambleTable(std::move(e), label);
}

}  // namespace stpete
