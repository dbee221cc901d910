#include <cmath>
#include <set>

#include "skg/model.hpp"

namespace skg::model {
namespace {

constexpr double kSumSlack = 1e-12;

class Checker {
   public:
    explicit Checker(const KnowledgeGraph& kg) : kg_(kg) {}

    std::vector<Violation> run() {
        for (const auto& [id, kind] : kg_.kinds) check_kind(kind);
        for (const auto& [id, signal] : kg_.signals) check_signal(signal);
        for (const auto& [id, entity] : kg_.entities) probability("entity", id, "prior", entity.prior);
        for (const auto& [id, action] : kg_.actions) check_action(action);
        for (const auto& [key, emission] : kg_.emissions) check_emission(emission);
        for (const auto& [id, classifier] : kg_.classifiers) check_classifier(classifier);
        for (const auto& [id, sensor] : kg_.sensors) check_sensor(sensor);
        for (const auto& [id, place] : kg_.places) check_place(place);
        for (const auto& [id, wall] : kg_.walls) check_wall(wall);
        return std::move(out_);
    }

   private:
    void add(std::string kind, std::string id, std::string field, std::string message) {
        out_.push_back({std::move(kind), std::move(id), std::move(field), std::move(message)});
    }

    void probability(const char* kind, const std::string& id, const std::string& field, double p) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) add(kind, id, field, "probability out of range");
    }

    void finite_point(const char* kind, const std::string& id, const char* field, Point2D p) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) add(kind, id, field, "coordinates must be finite");
    }

    void check_kind(const SignalKindSpec& kind) {
        if (!std::isfinite(kind.ref_distance_m) || kind.ref_distance_m <= 0.0) {
            add("kind", kind.id, "ref_distance", "ref_distance must be > 0");
        }
        if (kind.id == "digital" && kind.falloff != Falloff::None) {
            add("kind", kind.id, "falloff", "digital signals must use falloff none");
        }
    }

    void check_signal(const SignalClass& signal) {
        if (signal.id == kNoneState) add("signal", signal.id, "", "'none' is reserved for the no-detection state");
        if (!kg_.kinds.count(signal.kind)) {
            add("signal", signal.id, "kind", "unknown kind '" + signal.kind + "'");
        }
        if (!signal.broader) return;
        auto parent = kg_.signals.find(*signal.broader);
        if (parent == kg_.signals.end()) {
            add("signal", signal.id, "broader", "unknown signal '" + *signal.broader + "'");
            return;
        }
        if (parent->second.kind != signal.kind) {
            add("signal", signal.id, "broader",
                "broader signal '" + *signal.broader + "' has a different kind");
        }
        // Walk the chain; a revisit of the start means a cycle through it.
        std::set<std::string> seen{signal.id};
        std::optional<std::string> current = signal.broader;
        while (current) {
            if (*current == signal.id) {
                add("signal", signal.id, "broader", "broader cycle");
                return;
            }
            if (!seen.insert(*current).second) return;  // cycle not through this node
            auto it = kg_.signals.find(*current);
            if (it == kg_.signals.end()) return;
            current = it->second.broader;
        }
    }

    void check_action(const Action& action) {
        if (!kg_.entities.count(action.actor)) {
            add("action", action.id, "actor", "unknown entity '" + action.actor + "'");
        }
        probability("action", action.id, "prob", action.prob);
        bool has_site = false;
        for (const auto& [pid, place] : kg_.places) has_site |= place.location_class == action.location_class;
        if (!has_site) {
            add("action", action.id, "at", "no place has location class '" + action.location_class + "'");
        }
        if (action.stimulus && !kg_.signals.count(*action.stimulus)) {
            add("action", action.id, "stimulus", "unknown signal '" + *action.stimulus + "'");
        }
    }

    void check_emission(const Emission& emission) {
        const std::string id = emission_target({emission.action, emission.signal});
        if (!kg_.actions.count(emission.action)) {
            add("emission", id, "", "unknown action '" + emission.action + "'");
        }
        if (!kg_.signals.count(emission.signal)) {
            add("emission", id, "signal", "unknown signal '" + emission.signal + "'");
        }
        probability("emission", id, "prob", emission.prob);
        if (!std::isfinite(emission.intensity) || emission.intensity < 0.0) {
            add("emission", id, "intensity", "intensity must be finite and >= 0");
        }
    }

    void check_classifier(const ClassifierModel& c) {
        if (!kg_.kinds.count(c.kind)) add("classifier", c.id, "kind", "unknown kind '" + c.kind + "'");
        if (c.classes.empty()) add("classifier", c.id, "classes", "classifier needs at least one class");
        std::set<std::string> vocab;
        for (const auto& cls : c.classes) {
            if (!vocab.insert(cls).second) {
                add("classifier", c.id, "classes", "duplicate class '" + cls + "'");
            }
            auto sig = kg_.signals.find(cls);
            if (sig == kg_.signals.end()) {
                add("classifier", c.id, "classes", "unknown signal '" + cls + "'");
            } else if (sig->second.kind != c.kind) {
                add("classifier", c.id, "classes",
                    "class '" + cls + "' has kind '" + sig->second.kind + "' but classifier observes '" +
                        c.kind + "'");
            }
        }
        for (const auto& [cls, curve] : c.curves) {
            const std::string where = "curve:" + cls;
            if (!vocab.count(cls)) add("classifier", c.id, where, "curve for class outside the vocabulary");
            if (!std::isfinite(curve.lo) || !std::isfinite(curve.hi) || !(curve.lo < curve.hi)) {
                add("classifier", c.id, where + ".hi", "curve requires lo < hi");
            }
            probability("classifier", c.id, where + ".p_max", curve.p_max);
        }
        for (const auto& [from, row] : c.confusion) {
            double total = 0.0;
            for (const auto& [to, fraction] : row) {
                const std::string where = "confusion:" + from + "->" + to;
                if (!vocab.count(from) || !vocab.count(to)) {
                    add("classifier", c.id, where, "confusion between classes outside the vocabulary");
                }
                if (from == to) add("classifier", c.id, where, "a class cannot be confused with itself");
                probability("classifier", c.id, where, fraction);
                total += fraction;
            }
            if (total > 1.0 + kSumSlack) {
                add("classifier", c.id, "confusion:" + from, "confusion fractions of '" + from + "' sum above 1");
            }
        }
        double total = 0.0;
        for (const auto& [cls, p] : c.false_alarm) {
            const std::string where = "false_alarm:" + cls;
            if (!vocab.count(cls)) add("classifier", c.id, where, "false alarm for class outside the vocabulary");
            probability("classifier", c.id, where, p);
            total += p;
        }
        if (total > 1.0 + kSumSlack) add("classifier", c.id, "false_alarm", "false alarm probabilities sum above 1");
    }

    void check_sensor(const Sensor& sensor) {
        finite_point("sensor", sensor.id, "position", sensor.position);
        if (!kg_.classifiers.count(sensor.classifier)) {
            add("sensor", sensor.id, "classifier", "unknown classifier '" + sensor.classifier + "'");
        }
    }

    void check_place(const Place& place) {
        finite_point("place", place.id, "position", place.position);
        if (!std::isfinite(place.weight) || place.weight <= 0.0) {
            add("place", place.id, "weight", "weight must be > 0");
        }
    }

    void check_wall(const WallSegment& wall) {
        finite_point("wall", wall.id, "from", wall.from);
        finite_point("wall", wall.id, "to", wall.to);
        if (wall.from == wall.to) add("wall", wall.id, "to", "wall endpoints must differ");
        if (!std::isfinite(wall.sound_attenuation_db) || wall.sound_attenuation_db < 0.0) {
            add("wall", wall.id, "sound_attenuation", "sound attenuation must be >= 0");
        }
    }

    const KnowledgeGraph& kg_;
    std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> check_invariants(const KnowledgeGraph& kg) { return Checker(kg).run(); }

}  // namespace skg::model
