#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "bowley/csv.hpp"

using namespace bowley;

TEST_CASE("fixed-point formatting", "[csv]") {
    CHECK(format_fixed(0.0) == "0.000000");
    CHECK(format_fixed(-0.0) == "0.000000");
    CHECK(format_fixed(-4e-9) == "0.000000");  // canonical zero, no "-0.000000"
    CHECK(format_fixed(2.5) == "2.500000");
    CHECK(format_fixed(-1.5) == "-1.500000");
    CHECK(format_fixed(0.8) == "0.800000");
    CHECK(format_fixed(1234.5678901) == "1234.567890");
    CHECK(format_fixed(std::nan("")) == "nan");
    CHECK(format_fixed(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_fixed(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_fixed(0.25, 2) == "0.25");
    CHECK(format_fixed(1e300).size() == 308);  // no truncation on huge stocks
}

TEST_CASE("accounts csv happy path", "[csv]") {
    std::istringstream in(
        "# a comment before the header\n"
        "period,C,Y,e,pi,W\n"
        "\n"
        "1958,1.250000,1.250000,1.000000,0.250000,5.000000\n"
        "# interleaved comment\n"
        "1959Q1, 2.5 , 2.5 , 2.0 , 0.5 , 10.0\n");
    const AccountsSeries series = read_accounts_csv(in);
    REQUIRE(series.records.size() == 2);
    CHECK(series.records[0].period.str() == "1958");
    CHECK(series.records[0].accounts.consumption == 1.25);
    CHECK(series.records[0].accounts.wealth == 5.0);
    CHECK(series.records[1].period.str() == "1959Q1");
    CHECK(series.records[1].accounts.earnings == 2.0);
}

TEST_CASE("accounts csv error reporting", "[csv]") {
    SECTION("missing header") {
        std::istringstream in("1958,1,1,1,0,1\n");
        CHECK_THROWS_AS(read_accounts_csv(in), ParseError);
    }
    SECTION("empty input") {
        std::istringstream in("");
        CHECK_THROWS_AS(read_accounts_csv(in), ParseError);
    }
    SECTION("wrong field count") {
        std::istringstream in("period,C,Y,e,pi,W\n1958,1,1,1,0\n");
        try {
            read_accounts_csv(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SECTION("bad number names the line") {
        std::istringstream in("period,C,Y,e,pi,W\n1958,1,1,1,0,1\n1959,1,x,1,0,1\n");
        try {
            read_accounts_csv(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SECTION("zero wealth is a validation error with the line") {
        std::istringstream in("period,C,Y,e,pi,W\n1958,1,1,1,0,0\n");
        try {
            read_accounts_csv(in);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("wealth") != std::string::npos);
        }
    }
    SECTION("negative flow is a validation error") {
        std::istringstream in("period,C,Y,e,pi,W\n1958,-1,1,1,0,1\n");
        CHECK_THROWS_AS(read_accounts_csv(in), ValidationError);
    }
    SECTION("duplicate period") {
        std::istringstream in("period,C,Y,e,pi,W\n1958,1,1,1,0,1\n1958,1,1,1,0,1\n");
        try {
            read_accounts_csv(in);
            FAIL("expected OrderError");
        } catch (const OrderError& e) {
            CHECK(e.line() == 3);
        }
    }
    SECTION("decreasing period") {
        std::istringstream in("period,C,Y,e,pi,W\n1959,1,1,1,0,1\n1958Q4,1,1,1,0,1\n");
        CHECK_THROWS_AS(read_accounts_csv(in), OrderError);
    }
    SECTION("bad period label") {
        std::istringstream in("period,C,Y,e,pi,W\nnope,1,1,1,0,1\n");
        CHECK_THROWS_AS(read_accounts_csv(in), ParseError);
    }
}

TEST_CASE("write then read is the identity on 6dp data", "[csv]") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    AccountsSeries series;
    for (int i = 0; i < 20; ++i) {
        const double y = unit(rng) * 100;
        series.records.push_back(
            {Period{1950 + i, (i % 5 == 0) ? 0 : 1 + (i % 4)},
             NationalAccounts(unit(rng) * 100, y, unit(rng) * y, unit(rng) * y,
                              1.0 + unit(rng) * 1000)});
    }

    std::ostringstream first;
    write_accounts_csv(first, series);

    std::istringstream back(first.str());
    const AccountsSeries reread = read_accounts_csv(back);
    std::ostringstream second;
    write_accounts_csv(second, reread);

    // quantizing once is a fixed point: the second emission is byte-identical
    CHECK(first.str() == second.str());
}

TEST_CASE("ratio csv layout", "[csv]") {
    std::vector<RatioRow> rows(1);
    rows[0].period = Period{1958, 0};
    rows[0].bowley = 0.69;
    rows[0].profit_ratio = 0.31;
    rows[0].omega = 0.25;
    rows[0].gamma = 0.25;
    rows[0].profit_rate = 0.0775;
    rows[0].c_minus_y = 0.0;
    rows[0].shares_defined = true;

    std::ostringstream out;
    write_ratio_csv(out, rows);
    CHECK(out.str() ==
          "period,beta,rho,omega,gamma,r,c_minus_y\n"
          "1958,0.690000,0.310000,0.250000,0.250000,0.077500,0.000000\n");
}

TEST_CASE("undefined shares emit nan cells", "[csv]") {
    std::vector<RatioRow> rows(1);
    rows[0].period = Period{1990, 0};
    rows[0].omega = 0.0;
    rows[0].gamma = 0.0;
    rows[0].profit_rate = 0.0;
    rows[0].c_minus_y = 0.0;
    rows[0].shares_defined = false;

    std::ostringstream out;
    write_ratio_csv(out, rows);
    CHECK(out.str().find(",nan,nan,") != std::string::npos);
}
