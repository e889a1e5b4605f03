#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "stpete/exact.hpp"
#include "stpete/io.hpp"

using stpete::ProbSeries;
using stpete::Rat;
using stpete::SweepArtifact;
using stpete::artifact_from_series;
using stpete::artifact_from_values;
using stpete::g_family_table;
using stpete::prob_pos_sweep;

namespace {

SweepArtifact small_exact() {
    ProbSeries s = prob_pos_sweep(g_family_table(2), 3, true);
    return artifact_from_series(s, "exact", "stpete sweep gfamily:2 --nmax 3");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("csv carries the command, header, fraction, and decimal") {
    std::string csv = stpete::sweep_csv(small_exact());
    CHECK(csv ==
          "# command: stpete sweep gfamily:2 --nmax 3\n"
          "n,prob_fraction,prob_decimal\n"
          "1,1/2,0.5000000000\n"
          "2,3/4,0.7500000000\n"
          "3,1/2,0.5000000000\n");
}

TEST_CASE("approximate rows leave the fraction column empty") {
    SweepArtifact a = artifact_from_values("gfamily:2", "clt", "stpete sweep gfamily:2 --method clt --nmax 2",
                                           true, 1, {0.6305586598, 0.6816386123});
    std::string csv = stpete::sweep_csv(a);
    CHECK(csv ==
          "# command: stpete sweep gfamily:2 --method clt --nmax 2\n"
          "n,prob_fraction,prob_decimal\n"
          "1,,0.6305586598\n"
          "2,,0.6816386123\n");
}

TEST_CASE("json round trips through a parser") {
    std::string text = stpete::sweep_json(small_exact());
    auto j = nlohmann::json::parse(text);
    CHECK(j["label"] == "gfamily:2");
    CHECK(j["method"] == "exact");
    CHECK(j["strict"] == true);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["n"] == 1);
    CHECK(j["rows"][0]["prob_fraction"] == "1/2");
    CHECK(j["rows"][1]["prob_decimal"] == "0.7500000000");
    CHECK(text.back() == '\n');
}

TEST_CASE("dat is a gnuplot two column file") {
    std::string dat = stpete::sweep_dat(small_exact());
    CHECK(dat ==
          "# command: stpete sweep gfamily:2 --nmax 3\n"
          "# n prob\n"
          "1 0.5000000000\n"
          "2 0.7500000000\n"
          "3 0.5000000000\n");
}

TEST_CASE("svg is self contained and embeds the command") {
    SweepArtifact a = small_exact();
    std::string svg = stpete::sweep_svg(a);
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.find("<!-- command: stpete sweep gfamily:2 --nmax 3 -->") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("gfamily:2 (exact, strict)") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    // one coordinate pair per row
    size_t points = svg.find("points=\"");
    REQUIRE(points != std::string::npos);
    size_t end = svg.find('"', points + 8);
    std::string coords = svg.substr(points + 8, end - points - 8);
    size_t commas = 0;
    for (char ch : coords)
        if (ch == ',') ++commas;
    CHECK(commas == a.rows.size());
}

TEST_CASE("rendering the same artifact twice is byte identical") {
    SweepArtifact a = small_exact();
    CHECK(stpete::sweep_csv(a) == stpete::sweep_csv(a));
    CHECK(stpete::sweep_json(a) == stpete::sweep_json(a));
    CHECK(stpete::sweep_svg(a) == stpete::sweep_svg(a));
}

TEST_CASE("write_atomic places content and leaves no temp file") {
    std::string path = "io_test_artifact.csv";
    stpete::write_atomic(path, "hello\n");
    CHECK(slurp(path) == "hello\n");
    stpete::write_atomic(path, "replaced\n");
    CHECK(slurp(path) == "replaced\n");
    std::ifstream tmp(path + ".tmp");
    CHECK(!tmp.good());
    std::remove(path.c_str());
}

TEST_CASE("write_atomic reports unwritable destinations") {
    CHECK_THROWS_AS(stpete::write_atomic("no_such_dir/file.csv", "x"),
                    std::runtime_error);
}
