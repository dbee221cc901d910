#pragma once

// Domain types of the signal ontology: entities produce actions, actions emit
// source signals, signals propagate to sensors and are summarised there by an
// on-device classifier.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace skg::model {

// Planar position in metres.
struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2D&, const Point2D&) = default;
};

// A wall or window. Opaque segments block line of sight; every crossed
// segment subtracts its sound attenuation from sound levels.
struct WallSegment {
    std::string id;
    Point2D from;
    Point2D to;
    double sound_attenuation_db = 0.0;
    bool opaque = true;

    friend bool operator==(const WallSegment&, const WallSegment&) = default;
};

enum class Falloff {
    InverseSquareDb,  // decibel level, -20*log10(d/ref)
    InverseLinear,    // magnitude * ref/d
    None,             // geometry independent (digital signals)
};

const char* to_string(Falloff falloff);
std::optional<Falloff> falloff_from_string(std::string_view text);

struct SignalKindSpec {
    std::string id;
    Falloff falloff = Falloff::InverseSquareDb;
    double ref_distance_m = 1.0;
    bool requires_line_of_sight = false;

    friend bool operator==(const SignalKindSpec&, const SignalKindSpec&) = default;
};

struct SignalClass {
    std::string id;
    std::string kind;
    std::optional<std::string> broader;

    friend bool operator==(const SignalClass&, const SignalClass&) = default;
};

struct Entity {
    std::string id;
    double prior = 0.0;

    friend bool operator==(const Entity&, const Entity&) = default;
};

// `prob` is P(action occurs | actor present) before the split over sites.
// An action with a stimulus only fires when that signal is emitted at the
// same site (relayed actions, e.g. a bystander tweeting).
struct Action {
    std::string id;
    std::string actor;
    double prob = 0.0;
    std::string location_class;
    std::optional<std::string> stimulus;

    friend bool operator==(const Action&, const Action&) = default;
};

// Intensity is dB at the reference distance for sound, object extent in
// metres for vision and 1.0 for digital signals.
struct Emission {
    std::string action;
    std::string signal;
    double prob = 0.0;
    double intensity = 0.0;

    friend bool operator==(const Emission&, const Emission&) = default;
};

// Piecewise-linear detection ramp: zero up to `lo`, `p_max` from `hi` on.
struct DetectionCurve {
    double lo = 0.0;
    double hi = 1.0;
    double p_max = 1.0;

    friend bool operator==(const DetectionCurve&, const DetectionCurve&) = default;
};

inline constexpr const char* kNoneState = "none";

struct ClassifierModel {
    std::string id;
    std::string kind;
    std::vector<std::string> classes;
    std::map<std::string, DetectionCurve> curves;
    // true class -> (reported class -> fraction of detections)
    std::map<std::string, std::map<std::string, double>> confusion;
    std::map<std::string, double> false_alarm;

    // classes followed by the terminal `none` state.
    std::vector<std::string> states() const;
    std::optional<std::size_t> class_index(std::string_view cls) const;

    friend bool operator==(const ClassifierModel&, const ClassifierModel&) = default;
};

struct Sensor {
    std::string id;
    Point2D position;
    std::string classifier;

    friend bool operator==(const Sensor&, const Sensor&) = default;
};

struct Place {
    std::string id;
    Point2D position;
    std::string location_class;
    double weight = 1.0;

    friend bool operator==(const Place&, const Place&) = default;
};

// Scalar value carried by a profile override. Booleans and enum values are
// identifiers (`true`, `inverse_linear`, ...).
using FieldValue = std::variant<double, std::string, Point2D>;

// `set <decl_kind>.<target>.<field>: <value>`. Emission targets are spelled
// `<action>-><signal>`.
struct Override {
    std::string decl_kind;
    std::string target;
    std::string field;
    FieldValue value;

    friend bool operator==(const Override&, const Override&) = default;
};

struct Profile {
    std::string id;
    std::vector<Override> overrides;

    friend bool operator==(const Profile&, const Profile&) = default;
};

using EmissionKey = std::pair<std::string, std::string>;  // (action, signal)

// Resolved aggregate. Every declaration kind is keyed by id, so iteration
// order is id order regardless of source order.
struct KnowledgeGraph {
    std::map<std::string, SignalKindSpec> kinds;
    std::map<std::string, SignalClass> signals;
    std::map<std::string, Entity> entities;
    std::map<std::string, Action> actions;
    std::map<EmissionKey, Emission> emissions;
    std::map<std::string, ClassifierModel> classifiers;
    std::map<std::string, Sensor> sensors;
    std::map<std::string, Place> places;
    std::map<std::string, WallSegment> walls;
    std::map<std::string, Profile> profiles;

    std::vector<WallSegment> wall_list() const;
    std::size_t declaration_count() const;

    const SignalKindSpec& kind_of(const SignalClass& signal) const;

    friend bool operator==(const KnowledgeGraph&, const KnowledgeGraph&) = default;
};

std::string emission_target(const EmissionKey& key);

// A broken invariant, addressed by declaration so that front ends can map it
// back to a source position. `field` may be empty (whole declaration) or a
// nested path such as `curve:glass.lo`.
struct Violation {
    std::string decl_kind;
    std::string id;
    std::string field;
    std::string message;
};

// Checks every cross-reference and numeric invariant of the graph. Profile
// paths are not checked here (see lang::apply_profile).
std::vector<Violation> check_invariants(const KnowledgeGraph& kg);

}  // namespace skg::model
