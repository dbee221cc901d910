#include <algorithm>
#include <cctype>
#include <iomanip>
#include <set>

#include <json.hpp>

#include "skg/cli/cli.hpp"
#include "skg/error.hpp"

namespace skg::cli {
namespace {

using nlohmann::ordered_json;

std::string row_label(const std::vector<std::size_t>& lines, std::size_t i) {
    if (i < lines.size()) return "line " + std::to_string(lines[i]);
    return "row " + std::to_string(i + 1);
}

// "action:<a>@<place>" -> "<a>@<place>"
std::string site_label(const std::string& node_id) {
    return node_id.substr(node_id.find(':') + 1);
}

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0;
    std::size_t j = 0;
    auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < a.size() && j < b.size()) {
        if (digit(a[i]) && digit(b[j])) {
            std::size_t i_end = i;
            std::size_t j_end = j;
            while (i_end < a.size() && digit(a[i_end])) ++i_end;
            while (j_end < b.size() && digit(b[j_end])) ++j_end;
            // Compare digit runs by value: strip leading zeros, then length, then text.
            std::size_t i_nz = i;
            std::size_t j_nz = j;
            while (i_nz + 1 < i_end && a[i_nz] == '0') ++i_nz;
            while (j_nz + 1 < j_end && b[j_nz] == '0') ++j_nz;
            const auto la = i_end - i_nz;
            const auto lb = j_end - j_nz;
            if (la != lb) return la < lb;
            const int cmp = a.compare(i_nz, la, b, j_nz, lb);
            if (cmp != 0) return cmp < 0;
            if (i_end - i != j_end - j) return i_end - i < j_end - j;
            i = i_end;
            j = j_end;
            continue;
        }
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
    }
    return a.size() - i < b.size() - j;
}

std::vector<WindowEvidence> group_windows(const bayes::BayesianNetwork& bn,
                                          const std::vector<sim::ObservationRecord>& records,
                                          const std::vector<std::size_t>& lines) {
    if (records.empty()) return {WindowEvidence{"prior", {}}};

    std::map<std::string, WindowEvidence> by_window;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const auto node = bn.index_of("sensor:" + r.sensor_id);
        if (!node) throw EvidenceError(row_label(lines, i) + ": unknown sensor '" + r.sensor_id + "'");
        if (!bn.state_index(*node, r.observed_class)) {
            throw EvidenceError(row_label(lines, i) + ": sensor '" + r.sensor_id + "' has no class '" +
                                r.observed_class + "'");
        }
        auto& w = by_window[r.window_id];
        w.window_id = r.window_id;
        const auto [it, inserted] = w.observed.emplace(r.sensor_id, r.observed_class);
        if (!inserted) {
            throw EvidenceError(row_label(lines, i) + ": sensor '" + r.sensor_id + "' observed twice in window '" +
                                r.window_id + "'");
        }
    }
    std::vector<WindowEvidence> out;
    for (auto& [id, w] : by_window) out.push_back(std::move(w));
    std::sort(out.begin(), out.end(),
              [](const WindowEvidence& a, const WindowEvidence& b) { return natural_less(a.window_id, b.window_id); });
    return out;
}

std::map<std::string, std::vector<double>> parse_virtual_evidence(const bayes::BayesianNetwork& bn,
                                                                  const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw FormatError(std::string("virtual evidence: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("virtual evidence: expected an object of sensor -> likelihood array");

    std::map<std::string, std::vector<double>> out;
    for (const auto& [sensor, weights] : doc.items()) {
        if (!weights.is_array()) throw FormatError("virtual evidence: '" + sensor + "' is not an array");
        std::vector<double> w;
        for (const auto& x : weights) {
            if (!x.is_number()) throw FormatError("virtual evidence: '" + sensor + "' has a non-numeric entry");
            w.push_back(x.get<double>());
        }
        const auto node = bn.index_of("sensor:" + sensor);
        if (!node) throw EvidenceError("virtual evidence: unknown sensor '" + sensor + "'");
        out["sensor:" + sensor] = std::move(w);
    }
    return out;
}

bool PosteriorReport::any_alarm() const {
    return std::any_of(windows.begin(), windows.end(), [](const WindowReport& w) { return w.alarm; });
}

std::vector<std::string> cause_nodes(const bayes::BayesianNetwork& bn) {
    std::vector<std::string> out;
    for (const auto& n : bn.nodes()) {
        if (n.role == bayes::NodeRole::EntityPresent || n.role == bayes::NodeRole::ActionOccurs) out.push_back(n.id);
    }
    return out;
}

PosteriorReport build_report(const model::KnowledgeGraph& kg, const bayes::BayesianNetwork& bn,
                             const std::vector<WindowEvidence>& windows,
                             const std::map<std::string, std::vector<double>>& virtual_evidence,
                             const std::vector<std::string>& entities, double threshold) {
    PosteriorReport report;
    report.entities = entities;
    report.threshold = threshold;

    // Action-site nodes per designated entity.
    std::map<std::string, std::vector<std::string>> sites;
    for (const auto& e : entities) {
        if (!kg.entities.count(e)) throw EvidenceError("unknown entity '" + e + "'");
        auto& list = sites[e];
        for (const auto& n : bn.nodes()) {
            if (n.role != bayes::NodeRole::ActionOccurs) continue;
            const auto label = site_label(n.id);
            const auto action = label.substr(0, label.find('@'));
            const auto it = kg.actions.find(action);
            if (it != kg.actions.end() && it->second.actor == e) list.push_back(n.id);
        }
    }

    for (const auto& w : windows) {
        bayes::Evidence evidence;
        for (const auto& [sensor, cls] : w.observed) evidence.hard["sensor:" + sensor] = cls;
        for (const auto& [node, weights] : virtual_evidence) {
            if (evidence.hard.count(node)) {
                throw EvidenceError("window '" + w.window_id + "': '" + node.substr(7) +
                                    "' has both an observation and virtual evidence");
            }
            evidence.likelihood[node] = weights;
        }

        WindowReport wr;
        wr.window_id = w.window_id;
        wr.observed = w.observed;
        try {
            double peak = 0.0;
            for (const auto& e : entities) {
                const auto post = bayes::ve_posterior(bn, evidence, {"entity:" + e});
                peak = std::max(peak, post.probs[1]);
                wr.posteriors[e] = post.probs;

                auto& loc = wr.location[e];
                double total = 0.0;
                for (const auto& site : sites[e]) {
                    const double p = bayes::ve_posterior(bn, evidence, {site}).probs[1];
                    loc[site_label(site)] = p;
                    total += p;
                }
                if (total > 0.0) {
                    for (auto& [_, p] : loc) p /= total;
                } else {
                    loc.clear();
                }
            }
            wr.alarm = peak > threshold;
        } catch (const ImpossibleEvidence& ex) {
            throw ImpossibleEvidence("window '" + w.window_id + "': " + ex.what());
        }
        report.windows.push_back(std::move(wr));
    }
    return report;
}

std::string report_json(const PosteriorReport& report) {
    ordered_json doc;
    doc["entities"] = report.entities;
    doc["threshold"] = report.threshold;
    doc["profile"] = report.profile ? ordered_json(*report.profile) : ordered_json(nullptr);
    doc["alarm"] = report.any_alarm();
    doc["windows"] = ordered_json::array();
    for (const auto& w : report.windows) {
        ordered_json jw;
        jw["window_id"] = w.window_id;
        jw["observed"] = ordered_json::object();
        for (const auto& [s, c] : w.observed) jw["observed"][s] = c;
        jw["posteriors"] = ordered_json::object();
        for (const auto& e : report.entities) {
            const auto& p = w.posteriors.at(e);
            jw["posteriors"][e] = {{"absent", p[0]}, {"present", p[1]}};
        }
        jw["location"] = ordered_json::object();
        for (const auto& e : report.entities) {
            ordered_json loc = ordered_json::object();
            for (const auto& [site, p] : w.location.at(e)) loc[site] = p;
            jw["location"][e] = std::move(loc);
        }
        jw["alarm"] = w.alarm;
        doc["windows"].push_back(std::move(jw));
    }
    return doc.dump(2) + "\n";
}

void write_report_text(std::ostream& os, const PosteriorReport& report) {
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << std::fixed << std::setprecision(6);
    for (const auto& w : report.windows) {
        os << "window " << w.window_id;
        if (w.observed.empty()) {
            os << " (no observations)";
        } else {
            const char* sep = ": ";
            for (const auto& [s, c] : w.observed) {
                os << sep << s << '=' << c;
                sep = ", ";
            }
        }
        os << '\n';
        for (const auto& e : report.entities) {
            os << "  P(" << e << " present) = " << w.posteriors.at(e)[1] << '\n';
            const auto& loc = w.location.at(e);
            if (!loc.empty()) {
                os << "  location of " << e << ':';
                for (const auto& [site, p] : loc) os << ' ' << site << '=' << p;
                os << '\n';
            }
        }
        os << "  alarm: " << (w.alarm ? "yes" : "no") << " (threshold " << report.threshold << ")\n";
    }
    os.flags(flags);
    os.precision(precision);
}

}  // namespace skg::cli
