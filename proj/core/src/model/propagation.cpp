#include "skg/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "skg/error.hpp"

namespace skg::model {

double received_strength(const SignalKindSpec& kind, double intensity, Point2D source,
                         Point2D sensor, std::span<const WallSegment> walls) {
    const double d =
        std::max(std::hypot(source.x - sensor.x, source.y - sensor.y), kind.ref_distance_m);
    switch (kind.falloff) {
        case Falloff::InverseSquareDb: {
            double level = intensity - 20.0 * std::log10(d / kind.ref_distance_m);
            for (const auto& wall : walls) {
                if (segment_crosses(source, sensor, wall)) level -= wall.sound_attenuation_db;
            }
            return level;
        }
        case Falloff::InverseLinear:
            if (kind.requires_line_of_sight && !line_of_sight(source, sensor, walls)) return 0.0;
            return intensity * kind.ref_distance_m / d;
        case Falloff::None:
            return intensity;
    }
    return intensity;
}

std::optional<std::string> resolve_classifier_class(const KnowledgeGraph& kg,
                                                    const std::string& signal,
                                                    const ClassifierModel& classifier) {
    std::set<std::string> seen;
    std::optional<std::string> current = signal;
    while (current && seen.insert(*current).second) {
        if (classifier.class_index(*current)) return current;
        auto it = kg.signals.find(*current);
        if (it == kg.signals.end()) break;
        current = it->second.broader;
    }
    return std::nullopt;
}

double detection_probability(const ClassifierModel& classifier, const std::string& cls,
                             double strength) {
    auto it = classifier.curves.find(cls);
    if (it == classifier.curves.end()) return 0.0;
    const DetectionCurve& curve = it->second;
    if (strength <= curve.lo) return 0.0;
    if (strength >= curve.hi) return curve.p_max;
    return curve.p_max * (strength - curve.lo) / (curve.hi - curve.lo);
}

std::vector<double> detection_distribution(const ClassifierModel& classifier,
                                           const std::string& resolved_class,
                                           double strength) {
    const auto index = classifier.class_index(resolved_class);
    if (!index) {
        throw ContractViolation("class '" + resolved_class + "' is not in the vocabulary of classifier '" +
                                classifier.id + "'");
    }
    std::vector<double> dist(classifier.classes.size() + 1, 0.0);
    const double p_detect = detection_probability(classifier, resolved_class, strength);

    double confused = 0.0;
    if (auto conf = classifier.confusion.find(resolved_class); conf != classifier.confusion.end()) {
        for (const auto& [other, fraction] : conf->second) {
            if (auto j = classifier.class_index(other)) {
                dist[*j] += p_detect * fraction;
                confused += fraction;
            }
        }
    }
    dist[*index] += p_detect * (1.0 - confused);
    dist.back() = 1.0 - p_detect;
    return dist;
}

std::vector<double> false_alarm_distribution(const ClassifierModel& classifier) {
    std::vector<double> dist(classifier.classes.size() + 1, 0.0);
    double total = 0.0;
    for (const auto& [cls, p] : classifier.false_alarm) {
        if (auto j = classifier.class_index(cls)) {
            dist[*j] = p;
            total += p;
        }
    }
    dist.back() = 1.0 - total;
    return dist;
}

}  // namespace skg::model
