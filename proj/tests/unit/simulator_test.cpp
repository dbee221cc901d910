#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "skg/bayes/inference.hpp"
#include "skg/compiler/compiler.hpp"
#include "skg/error.hpp"
#include "skg/sim/simulator.hpp"

namespace skg::sim {
namespace {

bayes::Node node(std::string id, std::vector<std::string> states, std::vector<std::string> parents,
                 std::vector<double> cpt) {
    bayes::Node n;
    n.id = std::move(id);
    n.role = bayes::role_from_id(n.id);
    n.states = std::move(states);
    n.parents = std::move(parents);
    n.cpt = std::move(cpt);
    return n;
}

model::KnowledgeGraph building() { return testing::load_graph(testing::fixture_path("building.skg")); }

std::string obs_csv(const Dataset& d) {
    std::ostringstream os;
    write_observations_csv(os, d.observations);
    return os.str();
}

std::string truth_csv(const Dataset& d) {
    std::ostringstream os;
    write_ground_truth_csv(os, d.truth);
    return os.str();
}

TEST(SplitMix64, ReferenceSequence) {
    SplitMix64 g(1234567);
    EXPECT_EQ(g.next(), 6457827717110365317ULL);
    EXPECT_EQ(g.next(), 3203168211198807973ULL);
    EXPECT_EQ(g.next(), 9817491932198370423ULL);
    EXPECT_EQ(g.next(), 4593380528125082431ULL);
    EXPECT_EQ(g.next(), 16408922859458223821ULL);
}

TEST(SplitMix64, UnitInterval) {
    SplitMix64 g(0);
    // (16294208416658607535 >> 11) * 2^-53
    EXPECT_EQ(g.next_unit(), static_cast<double>(16294208416658607535ULL >> 11) / 9007199254740992.0);
    for (int i = 0; i < 100000; ++i) {
        const double u = g.next_unit();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(AncestralSample, DeterministicNetwork) {
    const bayes::BayesianNetwork bn({node("A", {"no", "yes"}, {}, {0, 1}), node("B", {"x", "y", "z"}, {"A"}, {1, 0, 0, 0, 0, 1})});
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 0xFFFFFFFFFFFFFFFFULL}) {
        SplitMix64 rng(seed);
        EXPECT_EQ(ancestral_sample(bn, rng), (std::vector<std::size_t>{1, 2}));
    }
}

TEST(AncestralSample, SameSeedSameAssignment) {
    const auto bn = compiler::compile(building());
    SplitMix64 a(42);
    SplitMix64 b(42);
    for (int i = 0; i < 100; ++i) ASSERT_EQ(ancestral_sample(bn, a), ancestral_sample(bn, b));
}

TEST(AncestralSample, ZeroPriorNeverSampled) {
    const bayes::BayesianNetwork bn({node("entity:X", {"absent", "present"}, {}, {1, 0})});
    SplitMix64 rng(5);
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(ancestral_sample(bn, rng)[0], 0u);
}

TEST(SimulateDataset, ZeroTrials) {
    const auto d = simulate_dataset(building(), 0, 1);
    EXPECT_TRUE(d.observations.empty());
    EXPECT_TRUE(d.truth.empty());
    EXPECT_EQ(obs_csv(d), "sensor_id,window_id,observed_class\n");
    EXPECT_EQ(truth_csv(d), "window_id,node_id,state\n");
}

TEST(SimulateDataset, Shape) {
    const auto kg = testing::load_graph(testing::fixture_path("integrated.skg"));
    const auto d = simulate_dataset(kg, 3, 7);
    EXPECT_EQ(d.observations.size(), 3 * kg.sensors.size());
    ASSERT_EQ(d.truth.size(), 3u);
    EXPECT_EQ(d.observations.front().window_id, "w0");
    EXPECT_EQ(d.truth.back().window_id, "w2");
    const auto bn = compiler::compile(kg);
    EXPECT_EQ(d.truth[0].states.size(), bn.size() - kg.sensors.size());
}

TEST(SimulateDataset, AttackerFrequencyWithinBinomialBounds) {
    // n = 10000, p = 0.01: mean 100, sigma ~ 9.95
    const auto d = simulate_dataset(building(), 10000, 1);
    int present = 0;
    for (const auto& w : d.truth) {
        for (const auto& [id, state] : w.states) present += id == "entity:Attacker" && state == "present";
    }
    EXPECT_GE(present, 70);
    EXPECT_LE(present, 130);
}

TEST(SimulateNetwork, FairCoin) {
    const bayes::BayesianNetwork bn({node("entity:C", {"absent", "present"}, {}, {0.5, 0.5})});
    const auto d = simulate_network(bn, 10000, 3);
    double heads = 0;
    for (const auto& w : d.truth) heads += w.states[0].second == "present";
    EXPECT_GE(heads / 10000, 0.485);
    EXPECT_LE(heads / 10000, 0.515);
}

TEST(SimulateNetwork, WindowStreamsAreIndependentOfCount) {
    const auto bn = compiler::compile(building());
    const auto small = simulate_network(bn, 5, 11);
    const auto large = simulate_network(bn, 50, 11);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(small.truth[i], large.truth[i]);
    // Window w3 is drawn from SplitMix64(11 ^ 3).
    SplitMix64 rng(11 ^ 3);
    const auto x = ancestral_sample(bn, rng);
    for (std::size_t k = 0; k < large.truth[3].states.size(); ++k) {
        EXPECT_EQ(large.truth[3].states[k].second, bn.node(k).states[x[k]]);
    }
}

TEST(SimulateDataset, ByteIdenticalForFixedSeed) {
    const auto a = simulate_dataset(building(), 500, 123);
    const auto b = simulate_dataset(building(), 500, 123);
    EXPECT_EQ(obs_csv(a), obs_csv(b));
    EXPECT_EQ(truth_csv(a), truth_csv(b));
    EXPECT_NE(obs_csv(a), obs_csv(simulate_dataset(building(), 500, 124)));
}

TEST(SimulateDataset, ObservationsConsistentWithTruth) {
    const auto kg = testing::load_graph(testing::fixture_path("integrated.skg"));
    const auto bn = compiler::compile(kg);
    const auto d = simulate_network(bn, 300, 9);
    std::size_t row = 0;
    for (const auto& w : d.truth) {
        std::map<std::string, std::string> full(w.states.begin(), w.states.end());
        for (; row < d.observations.size() && d.observations[row].window_id == w.window_id; ++row) {
            full["sensor:" + d.observations[row].sensor_id] = d.observations[row].observed_class;
        }
        ASSERT_GT(bayes::joint_probability(bn, full), 0.0) << w.window_id;
    }
    EXPECT_EQ(row, d.observations.size());
}

TEST(Calibration, FixtureIsCalibrated) {
    const auto bn = compiler::compile(building());
    const auto d = simulate_network(bn, 10000, 2);
    const auto report = calibration_report(d, bn);
    EXPECT_EQ(report.windows, 10000u);
    EXPECT_EQ(report.flagged(), 0u);
    for (const auto& r : report.rows) {
        EXPECT_FALSE(std::isnan(r.z)) << r.node << "=" << r.state;
        EXPECT_LE(std::abs(r.z), 3.0) << r.node << "=" << r.state;
    }
}

TEST(Calibration, DeterministicNodeHasZeroScore) {
    const bayes::BayesianNetwork bn({node("entity:A", {"absent", "present"}, {}, {0, 1})});
    const auto report = calibration_report(simulate_network(bn, 100, 1), bn);
    for (const auto& r : report.rows) {
        EXPECT_EQ(r.z, 0.0);
        EXPECT_FALSE(r.flagged);
    }
}

TEST(Calibration, DetectsBiasedSampler) {
    const bayes::BayesianNetwork fair({node("entity:A", {"absent", "present"}, {}, {0.5, 0.5})});
    const bayes::BayesianNetwork biased({node("entity:A", {"absent", "present"}, {}, {0.3, 0.7})});
    EXPECT_GT(calibration_report(simulate_network(biased, 2000, 1), fair).flagged(), 0u);
}

TEST(Calibration, Errors) {
    const auto bn = compiler::compile(building());
    EXPECT_THROW(calibration_report(Dataset{}, bn), FormatError);
    const bayes::BayesianNetwork other({node("entity:Z", {"absent", "present"}, {}, {0.5, 0.5})});
    EXPECT_THROW(calibration_report(simulate_network(bn, 10, 1), other), FormatError);
}

TEST(ObservationCsv, RoundTrip) {
    const auto d = simulate_dataset(building(), 20, 4);
    std::istringstream in(obs_csv(d));
    EXPECT_EQ(read_observations_csv(in), d.observations);
}

TEST(ObservationCsv, CrLfAndBlankLines) {
    std::istringstream in("sensor_id,window_id,observed_class\r\n\r\nmic1,w0,none\r\n");
    std::vector<std::size_t> lines;
    const auto rows = read_observations_csv(in, &lines);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].observed_class, "none");
    EXPECT_EQ(lines, std::vector<std::size_t>{3});
}

TEST(ObservationCsv, Errors) {
    std::istringstream bad_header("sensor,window,class\n");
    EXPECT_THROW(read_observations_csv(bad_header), FormatError);
    std::istringstream short_row("sensor_id,window_id,observed_class\nmic1,w0\n");
    try {
        read_observations_csv(short_row);
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    std::istringstream empty_cell("sensor_id,window_id,observed_class\nmic1,,none\n");
    EXPECT_THROW(read_observations_csv(empty_cell), FormatError);
}

}  // namespace
}  // namespace skg::sim
