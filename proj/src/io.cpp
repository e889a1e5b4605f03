#include "stpete/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "json.hpp"

namespace stpete {

namespace {

std::string decimal_of_row(const SweepRow& r) {
    if (r.has_fraction) return decimal_string(r.fraction, 10);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10f", r.value);
    return buf;
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

SweepArtifact artifact_from_series(const ProbSeries& s, const std::string& method,
                                   const std::string& command) {
    SweepArtifact a;
    a.label = s.gamble.label;
    a.method = method;
    a.command = command;
    a.strict = s.strict;
    a.rows.reserve(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        SweepRow r;
        r.n = s.start + (long)i;
        r.has_fraction = true;
        r.fraction = s.values[i];
        r.value = to_double(s.values[i]);
        a.rows.push_back(std::move(r));
    }
    return a;
}

SweepArtifact artifact_from_values(const std::string& label, const std::string& method,
                                   const std::string& command, bool strict, long start,
                                   const std::vector<double>& values) {
    SweepArtifact a;
    a.label = label;
    a.method = method;
    a.command = command;
    a.strict = strict;
    a.rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        SweepRow r;
        r.n = start + (long)i;
        r.has_fraction = false;
        r.value = values[i];
        a.rows.push_back(r);
    }
    return a;
}

std::string sweep_csv(const SweepArtifact& a) {
    std::string out;
    out += "# command: " + a.command + "\n";
    out += "n,prob_fraction,prob_decimal\n";
    for (const SweepRow& r : a.rows) {
        out += std::to_string(r.n);
        out += ',';
        if (r.has_fraction) out += rat_str(r.fraction);
        out += ',';
        out += decimal_of_row(r);
        out += '\n';
    }
    return out;
}

std::string sweep_json(const SweepArtifact& a) {
    nlohmann::json j;
    j["command"] = a.command;
    j["label"] = a.label;
    j["method"] = a.method;
    j["strict"] = a.strict;
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& r : a.rows) {
        nlohmann::json row;
        row["n"] = r.n;
        row["prob_fraction"] = r.has_fraction ? rat_str(r.fraction) : "";
        row["prob_decimal"] = decimal_of_row(r);
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string sweep_dat(const SweepArtifact& a) {
    std::string out;
    out += "# command: " + a.command + "\n";
    out += "# n prob\n";
    for (const SweepRow& r : a.rows)
        out += std::to_string(r.n) + " " + decimal_of_row(r) + "\n";
    return out;
}

std::string sweep_svg(const SweepArtifact& a) {
    const double width = 860, height = 540;
    const double x0 = 70, x1 = 820, y0 = 480, y1 = 40;  // plot box, y grows upward
    long n_min = a.rows.empty() ? 0 : a.rows.front().n;
    long n_max = a.rows.empty() ? 1 : a.rows.back().n;
    if (n_max == n_min) n_max = n_min + 1;
    auto sx = [&](double n) { return x0 + (n - (double)n_min) / ((double)n_max - (double)n_min) * (x1 - x0); };
    auto sy = [&](double p) { return y0 + p * (y1 - y0); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt2(width) +
         " " + fmt2(height) + "\" font-family=\"sans-serif\" font-size=\"14\">\n";
    s += "<!-- command: " + a.command + " -->\n";
    s += "<rect width=\"" + fmt2(width) + "\" height=\"" + fmt2(height) +
         "\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"" + fmt2((x0 + x1) / 2) + "\" y=\"24\" text-anchor=\"middle\" fill=\"#111111\">" +
         a.label + " (" + a.method + (a.strict ? ", strict" : ", non-strict") + ")</text>\n";

    for (int i = 0; i <= 4; ++i) {
        double p = 0.25 * i;
        double y = sy(p);
        s += "<line x1=\"" + fmt2(x0) + "\" y1=\"" + fmt2(y) + "\" x2=\"" + fmt2(x1) +
             "\" y2=\"" + fmt2(y) + "\" stroke=\"#dddddd\"/>\n";
        s += "<text x=\"" + fmt2(x0 - 8) + "\" y=\"" + fmt2(y + 5) +
             "\" text-anchor=\"end\" fill=\"#333333\">" + fmt2(p) + "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        long n = n_min + (long)((double)i * ((double)n_max - (double)n_min) / 4.0);
        double x = sx((double)n);
        s += "<line x1=\"" + fmt2(x) + "\" y1=\"" + fmt2(y0) + "\" x2=\"" + fmt2(x) +
             "\" y2=\"" + fmt2(y0 + 6) + "\" stroke=\"#333333\"/>\n";
        s += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(y0 + 24) +
             "\" text-anchor=\"middle\" fill=\"#333333\">" + std::to_string(n) + "</text>\n";
    }
    s += "<line x1=\"" + fmt2(x0) + "\" y1=\"" + fmt2(y0) + "\" x2=\"" + fmt2(x1) +
         "\" y2=\"" + fmt2(y0) + "\" stroke=\"#333333\"/>\n";
    s += "<line x1=\"" + fmt2(x0) + "\" y1=\"" + fmt2(y0) + "\" x2=\"" + fmt2(x0) +
         "\" y2=\"" + fmt2(y1) + "\" stroke=\"#333333\"/>\n";
    s += "<text x=\"" + fmt2((x0 + x1) / 2) + "\" y=\"" + fmt2(height - 8) +
         "\" text-anchor=\"middle\" fill=\"#111111\">n (repeats)</text>\n";
    s += "<text x=\"20\" y=\"" + fmt2((y0 + y1) / 2) +
         "\" text-anchor=\"middle\" fill=\"#111111\" transform=\"rotate(-90 20 " +
         fmt2((y0 + y1) / 2) + ")\">probability</text>\n";

    s += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (const SweepRow& r : a.rows) {
        double v = r.value;
        if (v < 0) v = 0;
        if (v > 1) v = 1;
        s += fmt2(sx((double)r.n)) + "," + fmt2(sy(v)) + " ";
    }
    s += "\"/>\n</svg>\n";
    return s;
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + tmp + ": " + std::strerror(errno));
    bool ok = std::fwrite(content.data(), 1, content.size(), f) == content.size();
    ok = (std::fclose(f) == 0) && ok;
    if (!ok) {
        std::remove(tmp.c_str());
        throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename failed for " + path + ": " + std::strerror(errno));
    }
}

}  // namespace stpete
