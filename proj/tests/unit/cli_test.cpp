#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "skg/bayes/inference.hpp"
#include "skg/bayes/network_json.hpp"
#include "skg/cli/cli.hpp"
#include "skg/compiler/compiler.hpp"

namespace skg::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result skg(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("skg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name), std::ios::binary) << text;
        return path(name);
    }

    fs::path dir_;
};

std::string fixture(const std::string& name) { return skg::testing::fixture_path(name).string(); }
std::string building() { return fixture("building.skg"); }
std::string glass_obs() { return fixture("obs/glass_at_mic1.csv"); }

TEST_F(CliTest, CheckValid) {
    const auto r = skg({"check", building()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "ok: 18 statements\n");
}

TEST_F(CliTest, CheckValidationError) {
    const auto f = write("bad.skg", "entity A {\n  prior: 1.5\n}\n");
    const auto r = skg({"check", f});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(f + ":2:10: error: probability out of range"), std::string::npos) << r.err;
}

TEST_F(CliTest, CheckTruncatedFile) {
    const auto f = write("cut.skg", "entity A { prior: 0.5 }\naction b { actor: A,");
    const auto r = skg({"check", f});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("expected"), std::string::npos);
}

TEST_F(CliTest, CheckMissingFile) { EXPECT_EQ(skg({"check", path("nope.skg")}).code, 1); }

TEST_F(CliTest, UsageErrorsAndHelp) {
    EXPECT_EQ(skg({}).code, 1);
    EXPECT_EQ(skg({"frobnicate"}).code, 1);
    EXPECT_EQ(skg({"infer", building()}).code, 1);
    EXPECT_EQ(skg({"--help"}).code, 0);
}

TEST_F(CliTest, CompileMatchesGolden) {
    const auto r = skg({"compile", building()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, skg::testing::read_file(fixture("golden/building.json")));
    EXPECT_EQ(skg({"compile", building(), "--out", path("bn.json")}).code, 0);
    EXPECT_EQ(skg::testing::read_file(path("bn.json")), r.out);
}

TEST_F(CliTest, CompileProfileChangesOnlyOverriddenRows) {
    const auto base = bayes::from_json(skg({"compile", building()}).out);
    const auto busy = bayes::from_json(skg({"compile", building(), "--profile", "busy_dining"}).out);
    ASSERT_EQ(base.size(), busy.size());
    std::vector<std::string> changed;
    for (std::size_t i = 0; i < base.size(); ++i) {
        ASSERT_EQ(base.node(i).id, busy.node(i).id);
        if (base.node(i).cpt != busy.node(i).cpt) changed.push_back(base.node(i).id);
    }
    EXPECT_EQ(changed, (std::vector<std::string>{"entity:Employee", "action:drop_tray@dining"}));
}

TEST_F(CliTest, CompileErrors) {
    EXPECT_EQ(skg({"compile", building(), "--profile", "weekend"}).code, 2);
    EXPECT_EQ(skg({"compile", building(), "--out", path("missing/dir/bn.json")}).code, 1);
}

TEST_F(CliTest, InferAlarmOnGlass) {
    const auto r = skg({"infer", building(), "--obs", glass_obs(), "--entity", "Attacker", "--json", path("r.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("alarm: yes"), std::string::npos) << r.out;
    const auto report = json::parse(skg::testing::read_file(path("r.json")));
    const auto& w = report["windows"][0];
    EXPECT_EQ(w["window_id"], "w0");
    EXPECT_TRUE(w["alarm"].get<bool>());
    EXPECT_GT(w["posteriors"]["Attacker"]["present"].get<double>(), 0.5);
    EXPECT_EQ(w["location"]["Attacker"]["break_window@window"].get<double>(), 1.0);
    EXPECT_EQ(report["threshold"].get<double>(), 0.5);

    // Posteriors are exactly the library's.
    const auto bn = compiler::compile(skg::testing::load_graph(building()));
    bayes::Evidence ev;
    ev.hard["sensor:mic1"] = "glass_sound";
    EXPECT_EQ(w["posteriors"]["Attacker"]["present"].get<double>(),
              bayes::ve_posterior(bn, ev, {"entity:Attacker"}).probs[1]);

    EXPECT_EQ(skg({"infer", building(), "--obs", glass_obs(), "--entity", "Attacker", "--alarm-exit"}).code, 3);
}

TEST_F(CliTest, InferBusyDiningNoAlarm) {
    const auto r = skg({"infer", building(), "--obs", glass_obs(), "--entity", "Attacker", "--profile", "busy_dining",
                        "--alarm-exit", "--json", "-"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("alarm: no"), std::string::npos);
    const auto report = json::parse(r.out.substr(r.out.find('{')));
    EXPECT_LT(report["windows"][0]["posteriors"]["Attacker"]["present"].get<double>(), 0.5);
    EXPECT_EQ(report["profile"], "busy_dining");
}

TEST_F(CliTest, InferEmptyObservationsGivesPriors) {
    const auto r = skg({"infer", building(), "--obs", fixture("obs/empty.csv"), "--entity", "Attacker", "--entity",
                        "Employee", "--json", path("r.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = json::parse(skg::testing::read_file(path("r.json")));
    ASSERT_EQ(report["windows"].size(), 1u);
    EXPECT_EQ(report["windows"][0]["window_id"], "prior");
    EXPECT_NEAR(report["windows"][0]["posteriors"]["Attacker"]["present"].get<double>(), 0.01, 1e-15);
    EXPECT_NEAR(report["windows"][0]["posteriors"]["Employee"]["present"].get<double>(), 0.1, 1e-15);
}

TEST_F(CliTest, InferWindowsAndDistributions) {
    const auto obs = write("obs.csv",
                           "sensor_id,window_id,observed_class\nmic1,w10,none\nmic1,w2,glass_sound\ncam1,w1,knife\n");
    const auto r = skg({"infer", fixture("integrated.skg"), "--obs", obs, "--entity", "Attacker", "--entity", "Employee",
                        "--json", path("r.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = json::parse(skg::testing::read_file(path("r.json")));
    std::vector<std::string> ids;
    for (const auto& w : report["windows"]) {
        ids.push_back(w["window_id"]);
        for (const auto& [e, p] : w["posteriors"].items()) {
            EXPECT_NEAR(p["absent"].get<double>() + p["present"].get<double>(), 1.0, 1e-9);
        }
        for (const auto& [e, loc] : w["location"].items()) {
            double sum = 0;
            for (const auto& [site, p] : loc.items()) sum += p.get<double>();
            if (!loc.empty()) {
                EXPECT_NEAR(sum, 1.0, 1e-9);
            }
        }
    }
    EXPECT_EQ(ids, (std::vector<std::string>{"w1", "w2", "w10"}));
}

TEST_F(CliTest, InferUnknownSensorOrClassNamesRow) {
    const auto bad_sensor = write("a.csv", "sensor_id,window_id,observed_class\nmic1,w0,none\ncam9,w0,knife\n");
    auto r = skg({"infer", building(), "--obs", bad_sensor, "--entity", "Attacker"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("cam9"), std::string::npos) << r.err;
    const auto bad_class = write("b.csv", "sensor_id,window_id,observed_class\nmic1,w0,thunder\n");
    r = skg({"infer", building(), "--obs", bad_class, "--entity", "Attacker"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
    const auto bad_csv = write("c.csv", "sensor,window\n");
    EXPECT_EQ(skg({"infer", building(), "--obs", bad_csv, "--entity", "Attacker"}).code, 1);
    EXPECT_EQ(skg({"infer", building(), "--obs", glass_obs(), "--entity", "Burglar"}).code, 2);
}

TEST_F(CliTest, ThresholdIsADecisionLayerOnly) {
    const auto low = skg({"infer", building(), "--obs", glass_obs(), "--entity", "Attacker", "--threshold", "0.1",
                          "--json", path("low.json")});
    const auto high = skg({"infer", building(), "--obs", glass_obs(), "--entity", "Attacker", "--threshold", "0.9",
                           "--json", path("high.json")});
    const auto a = json::parse(skg::testing::read_file(path("low.json")));
    const auto b = json::parse(skg::testing::read_file(path("high.json")));
    EXPECT_EQ(a["windows"][0]["posteriors"], b["windows"][0]["posteriors"]);
    EXPECT_TRUE(a["windows"][0]["alarm"].get<bool>());
    EXPECT_FALSE(b["windows"][0]["alarm"].get<bool>());
}

TEST_F(CliTest, VirtualEvidence) {
    const auto one_hot = write("v.json", R"({"mic1": [1, 0, 0]})");
    const auto r = skg({"infer", building(), "--obs", fixture("obs/empty.csv"), "--entity", "Attacker", "--virtual",
                        one_hot, "--json", path("v_out.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    skg({"infer", building(), "--obs", glass_obs(), "--entity", "Attacker", "--json", path("h_out.json")});
    const auto soft = json::parse(skg::testing::read_file(path("v_out.json")));
    const auto hard = json::parse(skg::testing::read_file(path("h_out.json")));
    EXPECT_NEAR(soft["windows"][0]["posteriors"]["Attacker"]["present"].get<double>(),
                hard["windows"][0]["posteriors"]["Attacker"]["present"].get<double>(), 1e-12);

    EXPECT_EQ(skg({"infer", building(), "--obs", glass_obs(), "--entity", "Attacker", "--virtual", one_hot}).code, 2);
    const auto wrong_len = write("w.json", R"({"mic1": [1, 0]})");
    EXPECT_EQ(skg({"infer", building(), "--obs", fixture("obs/empty.csv"), "--entity", "Attacker", "--virtual",
                   wrong_len}).code,
              2);
    const auto broken = write("x.json", "{");
    EXPECT_EQ(skg({"infer", building(), "--obs", fixture("obs/empty.csv"), "--entity", "Attacker", "--virtual",
                   broken}).code,
              1);
}

TEST_F(CliTest, ExplainRanksCauses) {
    auto r = skg({"explain", building(), "--obs", glass_obs(), "--json", path("e.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(skg::testing::read_file(path("e.json")));
    const auto& top = doc[0]["explanations"];
    ASSERT_EQ(top.size(), 3u);
    EXPECT_EQ(top[0]["assignment"]["entity:Attacker"], "present");
    EXPECT_EQ(top[0]["assignment"]["action:break_window@window"], "yes");
    EXPECT_GE(top[0]["probability"].get<double>(), top[1]["probability"].get<double>());

    r = skg({"explain", building(), "--obs", fixture("obs/empty.csv"), "--top", "100", "--json", path("e.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    doc = json::parse(skg::testing::read_file(path("e.json")));
    const auto& all = doc[0]["explanations"];
    EXPECT_EQ(all.size(), 16u);
    for (const auto& [node, state] : all[0]["assignment"].items()) {
        EXPECT_TRUE(state == "absent" || state == "no") << node;
    }
    double sum = 0;
    for (const auto& e : all) sum += e["probability"].get<double>();
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST_F(CliTest, ExplainTooManyCauses) {
    std::string text;
    for (int i = 0; i < 21; ++i) text += "entity E" + std::to_string(i) + " { prior: 0.1 }\n";
    const auto f = write("many.skg", text);
    const auto r = skg({"explain", f, "--obs", fixture("obs/empty.csv")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("21 cause nodes"), std::string::npos) << r.err;
}

TEST_F(CliTest, SimulateZeroTrials) {
    const auto r = skg({"simulate", building(), "--trials", "0", "--seed", "1", "--out-obs", path("o.csv"),
                        "--out-truth", path("t.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(skg::testing::read_file(path("o.csv")), "sensor_id,window_id,observed_class\n");
    EXPECT_EQ(skg::testing::read_file(path("t.csv")), "window_id,node_id,state\n");
}

TEST_F(CliTest, SimulateReproducible) {
    for (const char* name : {"a", "b"}) {
        const auto r = skg({"simulate", building(), "--trials", "200", "--seed", "77", "--out-obs",
                            path(std::string(name) + "_o.csv"), "--out-truth", path(std::string(name) + "_t.csv")});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(r.out, "simulated 200 windows: 200 observation rows\n");
    }
    EXPECT_EQ(skg::testing::read_file(path("a_o.csv")), skg::testing::read_file(path("b_o.csv")));
    EXPECT_EQ(skg::testing::read_file(path("a_t.csv")), skg::testing::read_file(path("b_t.csv")));
}

TEST_F(CliTest, SimulateAttackerFrequency) {
    ASSERT_EQ(skg({"simulate", building(), "--trials", "10000", "--seed", "1", "--out-obs", path("o.csv"),
                   "--out-truth", path("t.csv")})
                  .code,
              0);
    std::istringstream in(skg::testing::read_file(path("t.csv")));
    std::string line;
    int present = 0;
    while (std::getline(in, line)) present += line.find(",entity:Attacker,present") != std::string::npos;
    // 3 sigma around 100
    EXPECT_GE(present, 70);
    EXPECT_LE(present, 130);
}

TEST_F(CliTest, SimulatedObservationsFeedInfer) {
    ASSERT_EQ(skg({"simulate", fixture("integrated.skg"), "--trials", "5", "--seed", "3", "--out-obs", path("o.csv"),
                   "--out-truth", path("t.csv")})
                  .code,
              0);
    const auto r = skg({"infer", fixture("integrated.skg"), "--obs", path("o.csv"), "--entity", "Attacker"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(NaturalOrder, DigitRuns) {
    EXPECT_TRUE(natural_less("w2", "w10"));
    EXPECT_FALSE(natural_less("w10", "w2"));
    EXPECT_TRUE(natural_less("a", "b"));
    EXPECT_TRUE(natural_less("w", "w0"));
    EXPECT_TRUE(natural_less("w01", "w1") != natural_less("w1", "w01"));
    EXPECT_FALSE(natural_less("w1", "w1"));
}

}  // namespace
}  // namespace skg::cli
