#include <chrono>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "dt4/cli/commands.hpp"

using namespace dt4;
using namespace dt4::cli;

TEST(Parse, Rationals)
{
    EXPECT_EQ(parse_rational("3/6"), mpq_class(1, 2));
    EXPECT_EQ(parse_rational("-4"), mpq_class(-4));
    EXPECT_THROW(parse_rational("abc"), Error);
    EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Parse, Divisors)
{
    EXPECT_TRUE(parse_divisor("").empty());
    const auto d = parse_divisor("H=2,E=-1,H=1");
    EXPECT_EQ(d.at("H"), 3);
    EXPECT_EQ(d.at("E"), -1);
    EXPECT_EQ(parse_divisor("1.F=1,2.H2=1").size(), 2u);
    EXPECT_THROW(parse_divisor("H"), Error);
    EXPECT_THROW(parse_divisor("H=x"), Error);
    EXPECT_THROW(parse_divisor("=1"), Error);
}

TEST(ZSeries, DifferenceVanishes)
{
    const auto r = cmd_zseries(10);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.body["typeI"]["difference_is_zero"].get<bool>());
    EXPECT_EQ(r.body["typeI"]["equation"], "eq:typeIformula");
    EXPECT_EQ(r.body["typeII_conjecture"]["equation"], "eq:typeIIgenfct");
    EXPECT_TRUE(r.body["typeI"]["difference"]["terms"].empty());
}

TEST(ZSeries, MinimalAndInvalidOrders)
{
    const auto r = cmd_zseries(0);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_FALSE(r.body["typeI"]["goettsche_side"]["terms"].empty());
    EXPECT_THROW(cmd_zseries(-5), Error);
}

TEST(ZSeries, Deterministic)
{
    EXPECT_EQ(cmd_zseries(6).body.dump(), cmd_zseries(6).body.dump());
}

TEST(Chamber, Examples)
{
    const auto in = cmd_chamber(0, 2, "1", "1", "10");
    EXPECT_EQ(in.exit_code, 0);
    EXPECT_TRUE(in.body["ample"].get<bool>());
    EXPECT_TRUE(in.body["in_stable_chamber"].get<bool>());
    EXPECT_EQ(in.body["wall_threshold"], "1/9");
    EXPECT_EQ(in.body["equation"], "eq:smallfchamber");

    const auto out = cmd_chamber(0, 2, "1", "1", "9");
    EXPECT_FALSE(out.body["in_stable_chamber"].get<bool>());

    const auto bad = cmd_chamber(0, 2, "1", "0", "1");
    EXPECT_FALSE(bad.body["ample"].get<bool>());
    EXPECT_TRUE(bad.body["in_stable_chamber"].is_null());
    EXPECT_NE(bad.exit_code, 0);

    const auto empty = cmd_chamber(0, 2, "-1", "1", "10");
    EXPECT_FALSE(empty.body["bogomolov_ok"].get<bool>());
    EXPECT_EQ(empty.body["bogomolov_message"], "moduli space is empty");
    EXPECT_NE(empty.exit_code, 0);
}

TEST(FixedLoci, Examples)
{
    const auto r = cmd_fixedloci(1, 2);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.body["typeII_components"].size(), 2u);
    EXPECT_EQ(r.body["equation"], "eq:typeIIK3");
    EXPECT_EQ(r.body["typeI"]["hilbert_points"], 1);

    const auto even = cmd_fixedloci(2, 3);
    EXPECT_EQ(even.exit_code, 0);
    EXPECT_TRUE(even.body["all_vanishing"].get<bool>());
    EXPECT_TRUE(even.body["even_m_series_is_zero"].get<bool>());

    const auto zero = cmd_fixedloci(1, 0);
    ASSERT_EQ(zero.body["typeII_components"].size(), 1u);
    EXPECT_EQ(zero.body["typeII_components"][0]["n1"], 0);
    EXPECT_EQ(zero.body["typeII_components"][0]["n2"], 0);
    EXPECT_EQ(zero.body["typeI"]["locus"], "empty");
}

TEST(Localize, BarePrefactor)
{
    Common c;
    LocalizeArgs a;
    a.surface = "P2";
    a.divisor = "H=1";
    const auto r = cmd_localize(a, c);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.body["localization_sum"], "1");
    EXPECT_EQ(r.body["value"], r.body["prefactor"]);
    EXPECT_EQ(r.body["equation"], "eq:product");
}

TEST(Localize, K3DeskCase)
{
    Common c;
    LocalizeArgs a;
    a.surface = "K3";
    const auto r = cmd_localize(a, c);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(EqScalar::parse(r.body["value"].get<std::string>()),
              EqScalar(1) / (4 * EqScalar::variable(var::s).pow(2)));
    EXPECT_EQ(EqScalar::parse(r.body["ratio_to_conjecture_leading_term"].get<std::string>()),
              EqScalar::variable(var::s).inverse());
    EXPECT_TRUE(r.body["ratio_is_monomial_in_s"].get<bool>());
}

TEST(Localize, DirectionIndependentAndAudited)
{
    const auto path = std::filesystem::temp_directory_path() / "dt4_audit_test.jsonl";
    Common c;
    c.audit_path = path.string();
    c.jobs = 2;
    LocalizeArgs a;
    a.surface = "P1xP1";
    a.divisor = "H1=1";
    a.n1 = 1;
    a.n2 = 1;
    const auto r = cmd_localize(a, c);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.body["direction_independent"].get<bool>());
    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_TRUE(j.contains("fixed_point"));
        EXPECT_TRUE(j.contains("term"));
        ++lines;
    }
    EXPECT_EQ(lines, 16u);
}

TEST(Localize, UnknownSurfaceIsAnError)
{
    Common c;
    LocalizeArgs a;
    a.surface = "Enriques";
    EXPECT_THROW(cmd_localize(a, c), Error);
}

TEST(Mochizuki, EmptySplitRange)
{
    Common c;
    MochizukiArgs a;
    a.beta1 = "H=1";
    a.beta2 = "H=1";
    a.n = 0;
    const auto r = cmd_mochizuki(a, c);
    EXPECT_EQ(r.body["A"], "0");
    EXPECT_EQ(r.body["equation"], "eq:A_term");
    EXPECT_EQ(r.exit_code, 0);
}

TEST(Fit, RankDeficientBatteryIsNamedError)
{
    Common c;
    FitArgs a;
    a.n1 = 2;
    a.n2 = 1;
    a.degree_bound = 3;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        cmd_fit(a, c);
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("deficient monomials"), std::string::npos);
    }
    // the rank check runs before any localized integral
    EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::seconds(5));
}

TEST(Fit, DegreeOne)
{
    Common c;
    FitArgs a;
    const auto r = cmd_fit(a, c);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.body["holdout"]["reproduced"].get<bool>());
    EXPECT_TRUE(r.body["K3_m_independent"].get<bool>());
    EXPECT_EQ(r.body["design_rank"], 5);
}
