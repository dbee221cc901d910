#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "skg/bayes/network.hpp"
#include "skg/model.hpp"
#include "skg/sim/splitmix.hpp"

namespace skg::sim {

struct ObservationRecord {
    std::string sensor_id;
    std::string window_id;
    std::string observed_class;

    friend bool operator==(const ObservationRecord&, const ObservationRecord&) = default;
};

// Ground truth of one window: state of every entity, action and signal node,
// in network order.
struct GroundTruthRecord {
    std::string window_id;
    std::vector<std::pair<std::string, std::string>> states;  // (node id, state)

    friend bool operator==(const GroundTruthRecord&, const GroundTruthRecord&) = default;
};

struct Dataset {
    std::vector<ObservationRecord> observations;
    std::vector<GroundTruthRecord> truth;
};

// One state index per node, drawn in topological order. Each draw consumes
// exactly one generator output.
std::vector<std::size_t> ancestral_sample(const bayes::BayesianNetwork& bn, SplitMix64& rng);

// Window i uses its own stream SplitMix64(seed ^ i) and is named `w<i>`.
Dataset simulate_network(const bayes::BayesianNetwork& bn, std::size_t trials, std::uint64_t seed);

// Compiles `kg` and simulates it; compile errors propagate.
Dataset simulate_dataset(const model::KnowledgeGraph& kg, std::size_t trials, std::uint64_t seed);

struct CalibrationRow {
    std::string node;
    std::string state;
    double expected = 0.0;
    double empirical = 0.0;
    double z = 0.0;
    bool flagged = false;  // |z| > 3, or a mismatch on a deterministic state
};

struct CalibrationReport {
    std::size_t windows = 0;
    std::vector<CalibrationRow> rows;

    std::size_t flagged() const;
};

// Compares empirical state frequencies in `data` with exact marginals of
// `bn`. Throws FormatError for an empty dataset or records that do not match
// the network.
CalibrationReport calibration_report(const Dataset& data, const bayes::BayesianNetwork& bn);

// CSV: `sensor_id,window_id,observed_class` and `window_id,node_id,state`,
// UTF-8 with LF line endings.
void write_observations_csv(std::ostream& os, const std::vector<ObservationRecord>& records);
void write_ground_truth_csv(std::ostream& os, const std::vector<GroundTruthRecord>& records);

// Throws FormatError with the offending line number. When `lines` is given it
// receives the 1-based source line of each record.
std::vector<ObservationRecord> read_observations_csv(std::istream& is, std::vector<std::size_t>* lines = nullptr);

}  // namespace skg::sim
