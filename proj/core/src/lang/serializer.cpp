#include "skg/lang/serializer.hpp"

#include <charconv>
#include <sstream>

namespace skg::lang {
namespace {

std::string point(model::Point2D p) { return "(" + format_number(p.x) + ", " + format_number(p.y) + ")"; }

std::string value(const model::FieldValue& v) {
    if (auto d = std::get_if<double>(&v)) return format_number(*d);
    if (auto s = std::get_if<std::string>(&v)) return *s;
    return point(std::get<model::Point2D>(v));
}

const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string serialize(const model::KnowledgeGraph& kg) {
    std::ostringstream os;
    for (const auto& [id, k] : kg.kinds) {
        os << "kind " << id << " { falloff: " << model::to_string(k.falloff)
           << ", ref_distance: " << format_number(k.ref_distance_m)
           << ", line_of_sight: " << boolean(k.requires_line_of_sight) << " }\n";
    }
    for (const auto& [id, s] : kg.signals) {
        os << "signal " << id << " { kind: " << s.kind;
        if (s.broader) os << ", broader: " << *s.broader;
        os << " }\n";
    }
    for (const auto& [id, e] : kg.entities) {
        os << "entity " << id << " { prior: " << format_number(e.prior) << " }\n";
    }
    for (const auto& [id, a] : kg.actions) {
        os << "action " << id << " { actor: " << a.actor << ", prob: " << format_number(a.prob)
           << ", at: " << a.location_class;
        if (a.stimulus) os << ", stimulus: " << *a.stimulus;
        os << " }\n";
    }
    for (const auto& [key, e] : kg.emissions) {
        os << "emission " << key.first << " -> " << key.second << " { prob: " << format_number(e.prob)
           << ", intensity: " << format_number(e.intensity) << " }\n";
    }
    for (const auto& [id, c] : kg.classifiers) {
        os << "classifier " << id << " {\n  kind: " << c.kind << ",\n  classes: [";
        for (std::size_t i = 0; i < c.classes.size(); ++i) os << (i ? ", " : "") << c.classes[i];
        os << "],\n";
        for (const auto& [cls, curve] : c.curves) {
            os << "  curve " << cls << " { lo: " << format_number(curve.lo) << ", hi: " << format_number(curve.hi)
               << ", p_max: " << format_number(curve.p_max) << " }\n";
        }
        for (const auto& [from, row] : c.confusion) {
            for (const auto& [to, fraction] : row) {
                os << "  confusion " << from << " -> " << to << ": " << format_number(fraction) << "\n";
            }
        }
        for (const auto& [cls, p] : c.false_alarm) {
            os << "  false_alarm " << cls << ": " << format_number(p) << "\n";
        }
        os << "}\n";
    }
    for (const auto& [id, s] : kg.sensors) {
        os << "sensor " << id << " { position: " << point(s.position) << ", classifier: " << s.classifier
           << " }\n";
    }
    for (const auto& [id, p] : kg.places) {
        os << "place " << id << " { position: " << point(p.position) << ", class: " << p.location_class
           << ", weight: " << format_number(p.weight) << " }\n";
    }
    for (const auto& [id, w] : kg.walls) {
        os << "wall " << id << " { from: " << point(w.from) << ", to: " << point(w.to)
           << ", sound_attenuation: " << format_number(w.sound_attenuation_db) << ", opaque: " << boolean(w.opaque)
           << " }\n";
    }
    for (const auto& [id, p] : kg.profiles) {
        os << "profile " << id << " {\n";
        for (const auto& o : p.overrides) {
            os << "  set " << o.decl_kind << "." << o.target << "." << o.field << ": " << value(o.value) << "\n";
        }
        os << "}\n";
    }
    return os.str();
}

}  // namespace skg::lang
