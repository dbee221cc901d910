#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "skg/bayes/inference.hpp"
#include "skg/bayes/network.hpp"
#include "skg/model.hpp"
#include "skg/sim/simulator.hpp"

namespace skg::cli {

enum ExitCode : int {
    kOk = 0,
    kIoOrSyntax = 1,
    kSemantic = 2,
    kAlarm = 3,
};

// Entry point behind the `skg` executable; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Hard evidence for one window.
struct WindowEvidence {
    std::string window_id;
    std::map<std::string, std::string> observed;  // sensor id -> class
};

// Groups observation rows by window, ordered by window id with digit runs
// compared numerically (w2 before w10). An empty record set yields a single
// window named "prior" with no evidence. Throws EvidenceError naming the row
// for unknown sensors or classes, or a sensor observed twice in one window.
std::vector<WindowEvidence> group_windows(const bayes::BayesianNetwork& bn,
                                          const std::vector<sim::ObservationRecord>& records,
                                          const std::vector<std::size_t>& lines = {});

bool natural_less(const std::string& a, const std::string& b);

// Sidecar `{"<sensor>": [likelihood per state], ...}`; throws FormatError on
// malformed JSON and EvidenceError on unknown sensors.
std::map<std::string, std::vector<double>> parse_virtual_evidence(const bayes::BayesianNetwork& bn,
                                                                  const std::string& text);

struct WindowReport {
    std::string window_id;
    std::map<std::string, std::string> observed;
    std::map<std::string, std::vector<double>> posteriors;          // entity -> [absent, present]
    std::map<std::string, std::map<std::string, double>> location;  // entity -> "action@place" -> p
    bool alarm = false;
};

struct PosteriorReport {
    std::vector<std::string> entities;
    double threshold = 0.5;
    std::optional<std::string> profile;
    std::vector<WindowReport> windows;

    bool any_alarm() const;
};

// Location distribution: P(yes) of each of the entity's action-site nodes,
// renormalized over those sites; empty when every site has probability 0.
PosteriorReport build_report(const model::KnowledgeGraph& kg, const bayes::BayesianNetwork& bn,
                             const std::vector<WindowEvidence>& windows,
                             const std::map<std::string, std::vector<double>>& virtual_evidence,
                             const std::vector<std::string>& entities, double threshold);

std::string report_json(const PosteriorReport& report);
void write_report_text(std::ostream& os, const PosteriorReport& report);

// Entity and action-site nodes, in network order.
std::vector<std::string> cause_nodes(const bayes::BayesianNetwork& bn);

}  // namespace skg::cli
