#pragma once

#include <string>
#include <vector>

#include "stpete/exact.hpp"

namespace stpete {

// one sweep point; exact methods carry the fraction, approximate ones only a double
struct SweepRow {
    long n = 0;
    bool has_fraction = false;
    Rat fraction;
    double value = 0.0;
};

// reproducible sweep output: the embedded command regenerates the files byte for byte
struct SweepArtifact {
    std::string label;    // gamble label
    std::string method;   // exact | clt | mc | recurrence
    std::string command;  // full regeneration command line
    bool strict = true;
    std::vector<SweepRow> rows;
};

SweepArtifact artifact_from_series(const ProbSeries& s, const std::string& method,
                                   const std::string& command);
SweepArtifact artifact_from_values(const std::string& label, const std::string& method,
                                   const std::string& command, bool strict, long start,
                                   const std::vector<double>& values);

// schema: "# command: ..." comment, then header n,prob_fraction,prob_decimal;
// prob_fraction is empty for approximate methods, prob_decimal has 10 places
std::string sweep_csv(const SweepArtifact& a);
std::string sweep_json(const SweepArtifact& a);
std::string sweep_dat(const SweepArtifact& a);  // gnuplot two-column file
std::string sweep_svg(const SweepArtifact& a);  // self-contained line chart

// writes via a temp file in the same directory plus rename
void write_atomic(const std::string& path, const std::string& content);

}  // namespace stpete
