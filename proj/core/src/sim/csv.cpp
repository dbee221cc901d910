#include <istream>
#include <ostream>
#include <sstream>

#include "skg/error.hpp"
#include "skg/sim/simulator.hpp"

namespace skg::sim {
namespace {

constexpr std::string_view kObservationHeader = "sensor_id,window_id,observed_class";

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void write_observations_csv(std::ostream& os, const std::vector<ObservationRecord>& records) {
    os << kObservationHeader << '\n';
    for (const auto& r : records) os << r.sensor_id << ',' << r.window_id << ',' << r.observed_class << '\n';
}

void write_ground_truth_csv(std::ostream& os, const std::vector<GroundTruthRecord>& records) {
    os << "window_id,node_id,state\n";
    for (const auto& r : records) {
        for (const auto& [node, state] : r.states) os << r.window_id << ',' << node << ',' << state << '\n';
    }
}

std::vector<ObservationRecord> read_observations_csv(std::istream& is, std::vector<std::size_t>* lines) {
    std::vector<ObservationRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != kObservationHeader) {
                throw FormatError("line 1: expected header '" + std::string(kObservationHeader) + "'");
            }
            header = true;
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != 3 || cells[0].empty() || cells[1].empty() || cells[2].empty()) {
            throw FormatError("line " + std::to_string(line_no) + ": expected sensor_id,window_id,observed_class");
        }
        out.push_back({cells[0], cells[1], cells[2]});
        if (lines) lines->push_back(line_no);
    }
    return out;
}

}  // namespace skg::sim
