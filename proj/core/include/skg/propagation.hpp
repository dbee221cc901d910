#pragma once

// Receiver and summarisation models: geometry of walls, distance falloff and
// the strength-dependent behaviour of on-device classifiers.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skg/model.hpp"

namespace skg::model {

// Closed-segment intersection between a-b and the wall; false when a == b.
bool segment_crosses(Point2D a, Point2D b, const WallSegment& wall);

// Ids of walls whose closed segment intersects the closed segment a-b, in the
// order the walls are given. Endpoint touches count; a == b yields nothing.
std::vector<std::string> wall_crossings(Point2D a, Point2D b,
                                        std::span<const WallSegment> walls);

// True iff no opaque wall lies on the segment a-b.
bool line_of_sight(Point2D a, Point2D b, std::span<const WallSegment> walls);

// Strength of a signal of the given kind at `sensor`, for a source of
// `intensity` at `source`. Distances are clamped to the kind's reference
// distance.
double received_strength(const SignalKindSpec& kind, double intensity, Point2D source,
                         Point2D sensor, std::span<const WallSegment> walls);

// Walks the broader chain of `signal` and returns the first class in the
// classifier's vocabulary.
std::optional<std::string> resolve_classifier_class(const KnowledgeGraph& kg,
                                                    const std::string& signal,
                                                    const ClassifierModel& classifier);

// Ramp value p_detect for `cls` at `strength` (0 when the class has no curve).
double detection_probability(const ClassifierModel& classifier, const std::string& cls,
                             double strength);

// Distribution over classifier.states() given a signal of `resolved_class`
// received at `strength`.
std::vector<double> detection_distribution(const ClassifierModel& classifier,
                                           const std::string& resolved_class,
                                           double strength);

// Distribution over classifier.states() with no signal present.
std::vector<double> false_alarm_distribution(const ClassifierModel& classifier);

}  // namespace skg::model
