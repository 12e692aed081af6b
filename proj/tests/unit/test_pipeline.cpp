#include <gtest/gtest.h>

#include "torsion_fano/catalog.hpp"
#include "torsion_fano/errors.hpp"
#include "torsion_fano/pipeline.hpp"

#include <json.hpp>

using namespace tfano;
using nlohmann::json;

namespace {

const Catalog& catalog() {
    static const Catalog cat = Catalog::load(TFANO_TEST_DATA_DIR);
    return cat;
}

const std::vector<std::string> kChecks = {"degree", "equations", "basket", "torsion-vanishing", "cover",
                                          "series", "augmentation", "generators", "fixed-locus"};

} // namespace

TEST(Verify, EveryRecordPassesEveryCheck) {
    for (const auto& r : catalog().records()) {
        const auto rep = verify_record(catalog(), r);
        ASSERT_EQ(rep.checks.size(), kChecks.size());
        for (std::size_t i = 0; i < kChecks.size(); ++i) {
            EXPECT_EQ(rep.checks[i].name, kChecks[i]);
            EXPECT_TRUE(rep.checks[i].passed) << r.name << " " << kChecks[i] << ": " << rep.checks[i].detail;
        }
        EXPECT_TRUE(rep.passed());
    }
}

TEST(Verify, QuotientDataAddsResidualPoints) {
    const auto x = quotient_data(catalog(), catalog().record("no1"));
    EXPECT_EQ(x.degree, Rational(1, 2));
    EXPECT_EQ(x.basket.size(), 13u);
    EXPECT_EQ(residual_part(x.basket).size(), 1u);
}

TEST(Verify, WrongEquationCharacterIsCaught) {
    QuotientRecord r = catalog().record("no1b");
    for (auto& c : r.equation_characters)
        if (c == GroupClass({0, 2})) c = GroupClass({0, 0});
    const auto rep = verify_record(catalog(), r);
    EXPECT_FALSE(rep.passed());
    EXPECT_FALSE(rep.find("series")->passed);
}

TEST(Verify, WrongDegreeIsCaught) {
    QuotientRecord r = catalog().record("ex3");
    r.degree = Rational(2);
    const auto rep = verify_record(catalog(), r);
    EXPECT_FALSE(rep.find("degree")->passed);
    EXPECT_FALSE(rep.find("torsion-vanishing")->passed);
    EXPECT_EQ(rep.find("nonsense"), nullptr);
}

TEST(Verify, WrongBasketIsCaught) {
    QuotientRecord r = catalog().record("ex3");
    r.torsion_basket = "Bt2,4.1";
    const auto rep = verify_record(catalog(), r);
    EXPECT_FALSE(rep.passed());
    EXPECT_FALSE(rep.find("fixed-locus")->passed);
}

TEST(Commands, EnumerateExitCodes) {
    const CommandOptions o;
    EXPECT_EQ(run_enumerate(catalog(), "Z2xZ4", std::nullopt, true, o).exit_code, kExitOk);
    EXPECT_EQ(run_enumerate(catalog(), "Z2xZ4", std::nullopt, false, o).exit_code, kExitOk);
    EXPECT_EQ(run_enumerate(catalog(), "Z2xQ", std::nullopt, true, o).exit_code, kExitInputError);
    EXPECT_EQ(run_enumerate(catalog(), "Z2xZ2", std::string(TFANO_TEST_FIXTURES) + "/table_without_b2_20.json", true, o).exit_code,
              kExitMismatch);
    EXPECT_EQ(run_enumerate(catalog(), "Z2xZ2", std::string(TFANO_TEST_FIXTURES) + "/table_box2_open.json", false, o).exit_code,
              kExitUndecidable);
    EXPECT_EQ(run_enumerate(catalog(), "Z2xZ2", std::string("/nope.json"), false, o).exit_code, kExitInputError);
}

TEST(Commands, EnumerateJsonShape) {
    CommandOptions o;
    o.json = true;
    const auto out = run_enumerate(catalog(), "Z2xZ2xZ2", std::nullopt, true, o);
    const auto j = json::parse(out.text);
    EXPECT_EQ(j["verdict"], "match");
    EXPECT_EQ(j["count"], 4);
    EXPECT_TRUE(j["violations"].empty());
    EXPECT_TRUE(j["undecidable"].empty());
    EXPECT_EQ(j["baskets"].size(), 4u);
}

TEST(Commands, HilbertTargets) {
    const CommandOptions o;
    const auto cover = run_hilbert(catalog(), "Y222", 3, false, o);
    EXPECT_EQ(cover.exit_code, kExitOk);
    EXPECT_NE(cover.text.find("1 + 7t + 25t^2 + 63t^3"), std::string::npos);

    const auto rec = run_hilbert(catalog(), "ex3", 9, true, o);
    EXPECT_EQ(rec.exit_code, kExitOk);
    EXPECT_NE(rec.text.find("closed form: (1 - 2t^2 + t^4 + e2^2(-t^2 + 2t^4 - t^6))"), std::string::npos) << rec.text;

    EXPECT_EQ(run_hilbert(catalog(), "Bt2,4.2:1", 8, false, o).exit_code, kExitOk);
    EXPECT_EQ(run_hilbert(catalog(), "Bt2,4.2:2", 8, false, o).exit_code, kExitInputError);
    EXPECT_EQ(run_hilbert(catalog(), "nothing", 8, false, o).exit_code, kExitInputError);
    EXPECT_EQ(run_hilbert(catalog(), "Y222", -1, false, o).exit_code, kExitInputError);
}

TEST(Commands, VerifyExitCodes) {
    CommandOptions o;
    EXPECT_EQ(run_verify(catalog(), "no1", 12, o).exit_code, kExitOk);
    EXPECT_EQ(run_verify(catalog(), "zzz", 12, o).exit_code, kExitInputError);
    o.json = true;
    const auto j = json::parse(run_verify(catalog(), "no1c", 10, o).text);
    EXPECT_EQ(j["verdict"], "pass");
    EXPECT_EQ(j["checks"].size(), kChecks.size());
}

TEST(Commands, ReproduceIsDeterministicAcrossThreadCounts) {
    CommandOptions one, four;
    four.threads = 4;
    const auto a = run_reproduce(catalog(), one);
    const auto b = run_reproduce(catalog(), four);
    EXPECT_EQ(a.exit_code, kExitOk);
    EXPECT_EQ(a.text, b.text);
    one.json = true;
    four.json = true;
    EXPECT_EQ(run_reproduce(catalog(), one).text, run_reproduce(catalog(), four).text);
}
