#include "skg/lang/profile.hpp"

#include <sstream>

#include "skg/error.hpp"

namespace skg::lang {
namespace {

using model::FieldValue;
using model::Override;

[[noreturn]] void fail(const Override& o, const std::string& what) {
    throw ValidationError("set " + o.decl_kind + "." + o.target + "." + o.field + ": " + what);
}

double as_number(const Override& o) {
    if (auto v = std::get_if<double>(&o.value)) return *v;
    fail(o, "expects a number");
}

std::string as_ident(const Override& o) {
    if (auto v = std::get_if<std::string>(&o.value)) return *v;
    fail(o, "expects an identifier");
}

bool as_bool(const Override& o) {
    if (auto v = std::get_if<std::string>(&o.value); v && (*v == "true" || *v == "false")) return *v == "true";
    fail(o, "expects true or false");
}

model::Point2D as_point(const Override& o) {
    if (auto v = std::get_if<model::Point2D>(&o.value)) return *v;
    fail(o, "expects a tuple (x, y)");
}

template <typename Map>
auto& find(Map& map, const typename Map::key_type& key, const Override& o) {
    auto it = map.find(key);
    if (it == map.end()) fail(o, "no " + o.decl_kind + " named '" + o.target + "'");
    return it->second;
}

[[noreturn]] void unknown_field(const Override& o) {
    fail(o, o.decl_kind + " has no overridable field '" + o.field + "'");
}

}  // namespace

void apply_override(model::KnowledgeGraph& kg, const Override& o) {
    const std::string& f = o.field;
    if (o.decl_kind == "entity") {
        auto& e = find(kg.entities, o.target, o);
        if (f == "prior") return void(e.prior = as_number(o));
        unknown_field(o);
    }
    if (o.decl_kind == "action") {
        auto& a = find(kg.actions, o.target, o);
        if (f == "prob") return void(a.prob = as_number(o));
        if (f == "actor") return void(a.actor = as_ident(o));
        if (f == "at") return void(a.location_class = as_ident(o));
        if (f == "stimulus") return void(a.stimulus = as_ident(o));
        unknown_field(o);
    }
    if (o.decl_kind == "emission") {
        const auto arrow = o.target.find("->");
        if (arrow == std::string::npos) fail(o, "emission targets are written <action>-><signal>");
        auto& e = find(kg.emissions, model::EmissionKey{o.target.substr(0, arrow), o.target.substr(arrow + 2)}, o);
        if (f == "prob") return void(e.prob = as_number(o));
        if (f == "intensity") return void(e.intensity = as_number(o));
        unknown_field(o);
    }
    if (o.decl_kind == "kind") {
        auto& k = find(kg.kinds, o.target, o);
        if (f == "falloff") {
            auto falloff = model::falloff_from_string(as_ident(o));
            if (!falloff) fail(o, "unknown falloff");
            return void(k.falloff = *falloff);
        }
        if (f == "ref_distance") return void(k.ref_distance_m = as_number(o));
        if (f == "line_of_sight") return void(k.requires_line_of_sight = as_bool(o));
        unknown_field(o);
    }
    if (o.decl_kind == "signal") {
        auto& s = find(kg.signals, o.target, o);
        if (f == "kind") return void(s.kind = as_ident(o));
        if (f == "broader") return void(s.broader = as_ident(o));
        unknown_field(o);
    }
    if (o.decl_kind == "sensor") {
        auto& s = find(kg.sensors, o.target, o);
        if (f == "position") return void(s.position = as_point(o));
        if (f == "classifier") return void(s.classifier = as_ident(o));
        unknown_field(o);
    }
    if (o.decl_kind == "place") {
        auto& p = find(kg.places, o.target, o);
        if (f == "position") return void(p.position = as_point(o));
        if (f == "class") return void(p.location_class = as_ident(o));
        if (f == "weight") return void(p.weight = as_number(o));
        unknown_field(o);
    }
    if (o.decl_kind == "wall") {
        auto& w = find(kg.walls, o.target, o);
        if (f == "from") return void(w.from = as_point(o));
        if (f == "to") return void(w.to = as_point(o));
        if (f == "sound_attenuation") return void(w.sound_attenuation_db = as_number(o));
        if (f == "opaque") return void(w.opaque = as_bool(o));
        unknown_field(o);
    }
    fail(o, "'" + o.decl_kind + "' declarations cannot be overridden");
}

model::KnowledgeGraph apply_profile(const model::KnowledgeGraph& kg, const std::string& profile) {
    auto it = kg.profiles.find(profile);
    if (it == kg.profiles.end()) throw ValidationError("unknown profile '" + profile + "'");
    model::KnowledgeGraph out = kg;
    for (const auto& o : it->second.overrides) apply_override(out, o);
    const auto violations = model::check_invariants(out);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "profile '" << profile << "' breaks invariants:";
        for (const auto& v : violations) {
            msg << "\n  " << v.decl_kind << " '" << v.id << "'";
            if (!v.field.empty()) msg << " field '" << v.field << "'";
            msg << ": " << v.message;
        }
        throw ValidationError(msg.str());
    }
    return out;
}

}  // namespace skg::lang
