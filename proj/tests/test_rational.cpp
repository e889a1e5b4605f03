#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "stpete/rational.hpp"

using stpete::Rat;
using stpete::decimal_string;
using stpete::parse_rat;
using stpete::rat_str;
using stpete::to_double;

TEST_CASE("parse_rat accepts fractions, integers, and exact decimals") {
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("-3/4") == Rat(-3, 4));
    CHECK(parse_rat("6/8") == Rat(3, 4));
    CHECK(parse_rat("7") == Rat(7));
    CHECK(parse_rat("-12") == Rat(-12));
    CHECK(parse_rat("0") == Rat(0));
    CHECK(parse_rat("0.25") == Rat(1, 4));
    CHECK(parse_rat("-0.1") == Rat(-1, 10));
    CHECK(parse_rat("2.5") == Rat(5, 2));
    CHECK(parse_rat("0.9088286275") == Rat("9088286275") / Rat("10000000000"));
}

TEST_CASE("parse_rat rejects malformed input") {
    CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1e5"), std::invalid_argument);
}

TEST_CASE("rat_str prints canonical form") {
    CHECK(rat_str(Rat(3, 4)) == "3/4");
    CHECK(rat_str(Rat(-3, 4)) == "-3/4");
    CHECK(rat_str(Rat(7)) == "7");
    CHECK(rat_str(Rat(0)) == "0");
    CHECK(rat_str(parse_rat("10/5")) == "2");
}

TEST_CASE("decimal_string rounds half to even") {
    CHECK(decimal_string(Rat(1, 2)) == "0.5000000000");
    CHECK(decimal_string(Rat(1, 3)) == "0.3333333333");
    CHECK(decimal_string(Rat(2, 3)) == "0.6666666667");
    CHECK(decimal_string(Rat(1)) == "1.0000000000");
    CHECK(decimal_string(Rat(0)) == "0.0000000000");

    // ties: 0.125 -> 0.12 (down to even), 0.375 -> 0.38 (up to even)
    CHECK(decimal_string(Rat(1, 8), 2) == "0.12");
    CHECK(decimal_string(Rat(3, 8), 2) == "0.38");
    CHECK(decimal_string(Rat(1, 4), 1) == "0.2");
    CHECK(decimal_string(Rat(3, 4), 1) == "0.8");

    // non-tie stays nearest
    CHECK(decimal_string(Rat(2, 3), 2) == "0.67");
    CHECK(decimal_string(Rat(1, 6), 2) == "0.17");
}

TEST_CASE("decimal_string handles negatives and carries") {
    CHECK(decimal_string(Rat(-1, 3), 4) == "-0.3333");
    CHECK(decimal_string(Rat(-1, 8), 2) == "-0.12");
    CHECK(decimal_string(Rat(999999, 1000000), 4) == "1.0000");
    CHECK(decimal_string(Rat(19999, 10000), 3) == "2.000");
}

TEST_CASE("to_double on simple values") {
    CHECK(to_double(Rat(1, 2)) == 0.5);
    CHECK(to_double(Rat(-3, 4)) == -0.75);
    CHECK(to_double(Rat(0)) == 0.0);
}
