#include "skg/sim/simulator.hpp"

#include <cmath>
#include <map>

#include "skg/bayes/inference.hpp"
#include "skg/compiler/compiler.hpp"
#include "skg/error.hpp"

namespace skg::sim {

std::vector<std::size_t> ancestral_sample(const bayes::BayesianNetwork& bn, SplitMix64& rng) {
    std::vector<std::size_t> assignment(bn.size(), 0);
    for (std::size_t i = 0; i < bn.size(); ++i) {
        const auto& cpt = bn.node(i).cpt;
        const std::size_t offset = bn.row_offset(i, assignment);
        const std::size_t card = bn.cardinality(i);
        const double u = rng.next_unit();
        double cumulative = 0.0;
        std::size_t chosen = card;
        std::size_t last_possible = 0;
        for (std::size_t s = 0; s < card; ++s) {
            const double p = cpt[offset + s];
            if (p > 0.0) last_possible = s;
            cumulative += p;
            if (chosen == card && p > 0.0 && u < cumulative) chosen = s;
        }
        // Rows summing to slightly under 1 can leave u uncovered.
        assignment[i] = chosen == card ? last_possible : chosen;
    }
    return assignment;
}

Dataset simulate_network(const bayes::BayesianNetwork& bn, std::size_t trials, std::uint64_t seed) {
    Dataset out;
    for (std::size_t w = 0; w < trials; ++w) {
        SplitMix64 rng(seed ^ static_cast<std::uint64_t>(w));
        const auto assignment = ancestral_sample(bn, rng);
        const std::string window = "w" + std::to_string(w);
        GroundTruthRecord truth{window, {}};
        for (std::size_t i = 0; i < bn.size(); ++i) {
            const auto& node = bn.node(i);
            const std::string& state = node.states[assignment[i]];
            if (node.role == bayes::NodeRole::SensorOutput) {
                out.observations.push_back({node.id.substr(std::string_view("sensor:").size()), window, state});
            } else {
                truth.states.emplace_back(node.id, state);
            }
        }
        out.truth.push_back(std::move(truth));
    }
    return out;
}

Dataset simulate_dataset(const model::KnowledgeGraph& kg, std::size_t trials, std::uint64_t seed) {
    return simulate_network(compiler::compile(kg), trials, seed);
}

std::size_t CalibrationReport::flagged() const {
    std::size_t n = 0;
    for (const auto& row : rows) n += row.flagged;
    return n;
}

CalibrationReport calibration_report(const Dataset& data, const bayes::BayesianNetwork& bn) {
    if (data.truth.empty()) throw FormatError("calibration needs at least one window");

    std::map<std::string, std::size_t> window_index;
    for (std::size_t w = 0; w < data.truth.size(); ++w) {
        if (!window_index.emplace(data.truth[w].window_id, w).second) {
            throw FormatError("duplicate ground-truth window '" + data.truth[w].window_id + "'");
        }
    }
    const std::size_t n = data.truth.size();
    // counts[node][state]
    std::vector<std::vector<std::size_t>> counts(bn.size());
    std::vector<std::vector<bool>> seen(bn.size(), std::vector<bool>(n, false));
    for (std::size_t i = 0; i < bn.size(); ++i) counts[i].assign(bn.cardinality(i), 0);

    auto record = [&](const std::string& node_id, const std::string& state, std::size_t w) {
        auto i = bn.index_of(node_id);
        if (!i) throw FormatError("record names node '" + node_id + "' which is not in the network");
        auto s = bn.state_index(*i, state);
        if (!s) throw FormatError("node '" + node_id + "' has no state '" + state + "'");
        if (seen[*i][w]) throw FormatError("node '" + node_id + "' recorded twice in one window");
        seen[*i][w] = true;
        ++counts[*i][*s];
    };
    for (std::size_t w = 0; w < n; ++w) {
        for (const auto& [node_id, state] : data.truth[w].states) record(node_id, state, w);
    }
    for (const auto& obs : data.observations) {
        auto it = window_index.find(obs.window_id);
        if (it == window_index.end()) throw FormatError("observation for unknown window '" + obs.window_id + "'");
        record("sensor:" + obs.sensor_id, obs.observed_class, it->second);
    }
    for (std::size_t i = 0; i < bn.size(); ++i) {
        for (std::size_t w = 0; w < n; ++w) {
            if (!seen[i][w]) {
                throw FormatError("window '" + data.truth[w].window_id + "' has no record for '" + bn.node(i).id + "'");
            }
        }
    }

    CalibrationReport report;
    report.windows = n;
    for (std::size_t i = 0; i < bn.size(); ++i) {
        const auto& node = bn.node(i);
        const auto exact = bayes::ve_posterior(bn, {}, {node.id}).probs;
        for (std::size_t s = 0; s < node.states.size(); ++s) {
            CalibrationRow row{node.id, node.states[s], exact[s], static_cast<double>(counts[i][s]) / n};
            const double p = exact[s];
            if (p <= 0.0 || p >= 1.0) {
                // Zero variance: only an exact match is consistent.
                row.z = 0.0;
                row.flagged = row.empirical != (p <= 0.0 ? 0.0 : 1.0);
            } else {
                row.z = (row.empirical - p) / std::sqrt(p * (1.0 - p) / n);
                row.flagged = std::abs(row.z) > 3.0;
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

}  // namespace skg::sim
