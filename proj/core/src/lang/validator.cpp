#include "skg/lang/validator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "skg/error.hpp"
#include "skg/lang/profile.hpp"

namespace skg::lang {
namespace {

using model::KnowledgeGraph;

std::string loc_key(std::string_view kind, std::string_view id, std::string_view field) {
    std::string key;
    key.reserve(kind.size() + id.size() + field.size() + 2);
    key.append(kind).append("/").append(id).append("/").append(field);
    return key;
}

// Typed access to the fields of one statement (or sub-statement body).
class FieldReader {
   public:
    FieldReader(const std::vector<Field>& fields, SourceLoc owner, std::string owner_name,
                std::vector<Diagnostic>& diags)
        : owner_(owner), owner_name_(std::move(owner_name)), diags_(diags) {
        for (const auto& f : fields) {
            if (!by_key_.emplace(f.key, &f).second) error(f.loc, "duplicate field '" + f.key + "'");
        }
    }

    std::optional<double> number(const std::string& key, bool required) {
        const Field* f = take(key, required);
        if (!f) return std::nullopt;
        if (f->value.kind != Value::Kind::Number) return type_error(*f, "a number");
        return f->value.number;
    }

    std::optional<std::string> ident(const std::string& key, bool required) {
        const Field* f = take(key, required);
        if (!f) return std::nullopt;
        if (f->value.kind != Value::Kind::Ident) return type_error(*f, "an identifier");
        return f->value.ident;
    }

    std::optional<bool> boolean(const std::string& key, bool required) {
        const Field* f = take(key, required);
        if (!f) return std::nullopt;
        if (f->value.kind == Value::Kind::Ident && (f->value.ident == "true" || f->value.ident == "false")) {
            return f->value.ident == "true";
        }
        return type_error(*f, "true or false");
    }

    std::optional<model::Point2D> point(const std::string& key, bool required) {
        const Field* f = take(key, required);
        if (!f) return std::nullopt;
        if (f->value.kind != Value::Kind::Tuple) return type_error(*f, "a tuple (x, y)");
        return model::Point2D{f->value.first, f->value.second};
    }

    std::optional<std::vector<std::string>> ident_list(const std::string& key, bool required) {
        const Field* f = take(key, required);
        if (!f) return std::nullopt;
        if (f->value.kind != Value::Kind::List) return type_error(*f, "a list of identifiers");
        std::vector<std::string> out;
        for (const auto& item : f->value.items) {
            if (item.kind != Value::Kind::Ident) {
                error(item.loc, "field '" + key + "' expects a list of identifiers");
                return std::nullopt;
            }
            out.push_back(item.ident);
        }
        return out;
    }

    SourceLoc loc_of(const std::string& key) const {
        auto it = by_key_.find(key);
        return it == by_key_.end() ? owner_ : it->second->value.loc;
    }

    // Reports every field that no accessor asked for.
    void finish() {
        for (const auto& [key, f] : by_key_) {
            if (!used_.count(key)) error(f->loc, "unknown field '" + key + "' in " + owner_name_);
        }
    }

   private:
    const Field* take(const std::string& key, bool required) {
        used_.insert(key);
        auto it = by_key_.find(key);
        if (it == by_key_.end()) {
            if (required) error(owner_, "missing field '" + key + "' in " + owner_name_);
            return nullptr;
        }
        return it->second;
    }

    std::nullopt_t type_error(const Field& f, const char* expected) {
        error(f.value.loc, "field '" + f.key + "' expects " + expected + ", found " + to_string(f.value.kind));
        return std::nullopt;
    }

    void error(SourceLoc loc, std::string message) {
        diags_.push_back({Severity::Error, std::move(message), loc});
    }

    std::map<std::string, const Field*> by_key_;
    std::set<std::string> used_;
    SourceLoc owner_;
    std::string owner_name_;
    std::vector<Diagnostic>& diags_;
};

class Builder {
   public:
    explicit Builder(const Document& doc) : doc_(doc) {}

    ValidationResult run() {
        for (const auto& st : doc_.statements) {
            const std::size_t before = diags_.size();
            duplicate_ = false;
            statement(st);
            // A duplicate never reaches the graph, so the first declaration is
            // still checked.
            if (diags_.size() != before && !duplicate_) {
                broken_.insert(loc_key(st.kind, st.arrow_head ? st.id + "->" + *st.arrow_head : st.id, ""));
            }
        }
        // Declarations that already failed to build would only repeat noise.
        for (const auto& v : model::check_invariants(kg_)) {
            if (broken_.count(loc_key(v.decl_kind, v.id, ""))) continue;
            error(locate(v.decl_kind, v.id, v.field), v.message);
        }
        if (diags_.empty()) check_profiles();
        if (!diags_.empty()) {
            std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
                return std::tie(a.loc.line, a.loc.column) < std::tie(b.loc.line, b.loc.column);
            });
            return {std::nullopt, std::move(diags_)};
        }
        return {std::move(kg_), {}};
    }

   private:
    void error(SourceLoc loc, std::string message) {
        diags_.push_back({Severity::Error, std::move(message), loc});
    }

    void remember(std::string_view kind, std::string_view id, std::string_view field, SourceLoc loc) {
        locs_.emplace(loc_key(kind, id, field), loc);
    }

    SourceLoc locate(const std::string& kind, const std::string& id, const std::string& field) const {
        if (auto it = locs_.find(loc_key(kind, id, field)); it != locs_.end()) return it->second;
        // `curve:x.lo` falls back to `curve:x`.
        if (auto dot = field.rfind('.'); dot != std::string::npos) {
            if (auto it = locs_.find(loc_key(kind, id, field.substr(0, dot))); it != locs_.end()) return it->second;
        }
        if (auto it = locs_.find(loc_key(kind, id, "")); it != locs_.end()) return it->second;
        return {1, 1};
    }

    template <typename Map>
    bool claim(Map& map, const typename Map::key_type& key, const Statement& st) {
        if (map.count(key)) {
            error(st.id_loc, "duplicate " + st.kind + " '" + st.id + "'");
            duplicate_ = true;
            return false;
        }
        return true;
    }

    void reject_subs(const Statement& st) {
        for (const auto& sub : st.subs) error(sub.loc, "'" + sub.keyword + "' is not allowed in " + st.kind);
    }

    void statement(const Statement& st) {
        if (st.arrow_head && st.kind != "emission") error(st.head_loc, "'->' is only allowed on emission");
        const std::string name = st.kind + " '" + st.id + "'";
        FieldReader r(st.fields, st.loc, name, diags_);
        if (st.kind != "emission") {
            remember(st.kind, st.id, "", st.id_loc);
            for (const auto& f : st.fields) remember(st.kind, st.id, f.key, f.value.loc);
        }

        if (st.kind == "kind") {
            model::SignalKindSpec k;
            k.id = st.id;
            if (auto v = r.ident("falloff", true)) {
                if (auto f = model::falloff_from_string(*v)) {
                    k.falloff = *f;
                } else {
                    error(r.loc_of("falloff"), "unknown falloff '" + *v + "' (expected inverse_square_db, inverse_linear or none)");
                }
            }
            k.ref_distance_m = r.number("ref_distance", false).value_or(1.0);
            k.requires_line_of_sight = r.boolean("line_of_sight", false).value_or(false);
            reject_subs(st);
            if (claim(kg_.kinds, st.id, st)) kg_.kinds.emplace(st.id, std::move(k));
        } else if (st.kind == "signal") {
            model::SignalClass s;
            s.id = st.id;
            s.kind = r.ident("kind", true).value_or("");
            s.broader = r.ident("broader", false);
            reject_subs(st);
            if (claim(kg_.signals, st.id, st)) kg_.signals.emplace(st.id, std::move(s));
        } else if (st.kind == "entity") {
            model::Entity e{st.id, r.number("prior", true).value_or(0.0)};
            reject_subs(st);
            if (claim(kg_.entities, st.id, st)) kg_.entities.emplace(st.id, std::move(e));
        } else if (st.kind == "action") {
            model::Action a;
            a.id = st.id;
            a.actor = r.ident("actor", true).value_or("");
            a.prob = r.number("prob", true).value_or(0.0);
            a.location_class = r.ident("at", true).value_or("");
            a.stimulus = r.ident("stimulus", false);
            reject_subs(st);
            if (claim(kg_.actions, st.id, st)) kg_.actions.emplace(st.id, std::move(a));
        } else if (st.kind == "emission") {
            emission(st, r);
        } else if (st.kind == "classifier") {
            classifier(st, r);
        } else if (st.kind == "sensor") {
            model::Sensor s;
            s.id = st.id;
            s.position = r.point("position", true).value_or(model::Point2D{});
            s.classifier = r.ident("classifier", true).value_or("");
            reject_subs(st);
            if (claim(kg_.sensors, st.id, st)) kg_.sensors.emplace(st.id, std::move(s));
        } else if (st.kind == "place") {
            model::Place p;
            p.id = st.id;
            p.position = r.point("position", true).value_or(model::Point2D{});
            p.location_class = r.ident("class", true).value_or("");
            p.weight = r.number("weight", false).value_or(1.0);
            reject_subs(st);
            if (claim(kg_.places, st.id, st)) kg_.places.emplace(st.id, std::move(p));
        } else if (st.kind == "wall") {
            model::WallSegment w;
            w.id = st.id;
            w.from = r.point("from", true).value_or(model::Point2D{});
            w.to = r.point("to", true).value_or(model::Point2D{});
            w.sound_attenuation_db = r.number("sound_attenuation", false).value_or(0.0);
            w.opaque = r.boolean("opaque", false).value_or(true);
            reject_subs(st);
            if (claim(kg_.walls, st.id, st)) kg_.walls.emplace(st.id, std::move(w));
        } else if (st.kind == "profile") {
            profile(st);
        }
        r.finish();
    }

    void emission(const Statement& st, FieldReader& r) {
        if (!st.arrow_head) {
            error(st.id_loc, "emission requires '-> <signal>' after the action");
            return;
        }
        const model::EmissionKey key{st.id, *st.arrow_head};
        const std::string target = model::emission_target(key);
        remember("emission", target, "", st.id_loc);
        remember("emission", target, "signal", st.head_loc);
        for (const auto& f : st.fields) remember("emission", target, f.key, f.value.loc);
        model::Emission e;
        e.action = st.id;
        e.signal = *st.arrow_head;
        e.prob = r.number("prob", true).value_or(0.0);
        e.intensity = r.number("intensity", true).value_or(0.0);
        reject_subs(st);
        if (kg_.emissions.count(key)) {
            error(st.id_loc, "duplicate emission '" + target + "'");
            duplicate_ = true;
            return;
        }
        kg_.emissions.emplace(key, std::move(e));
    }

    std::optional<double> sub_number(const SubStatement& sub, const std::string& block_key) {
        if (sub.inline_value) {
            if (sub.inline_value->kind != Value::Kind::Number) {
                error(sub.inline_value->loc, "'" + sub.keyword + "' expects a number");
                return std::nullopt;
            }
            return sub.inline_value->number;
        }
        FieldReader r(sub.fields, sub.loc, sub.keyword, diags_);
        auto v = r.number(block_key, true);
        r.finish();
        return v;
    }

    void classifier(const Statement& st, FieldReader& r) {
        model::ClassifierModel c;
        c.id = st.id;
        c.kind = r.ident("kind", true).value_or("");
        c.classes = r.ident_list("classes", true).value_or(std::vector<std::string>{});
        for (const auto& sub : st.subs) {
            if (sub.keyword == "curve") {
                const std::string where = "curve:" + sub.heads[0];
                remember("classifier", st.id, where, sub.loc);
                if (sub.inline_value) {
                    error(sub.loc, "curve requires a block { lo, hi, p_max }");
                    continue;
                }
                FieldReader cr(sub.fields, sub.loc, "curve '" + sub.heads[0] + "'", diags_);
                model::DetectionCurve curve;
                curve.lo = cr.number("lo", true).value_or(0.0);
                curve.hi = cr.number("hi", true).value_or(1.0);
                curve.p_max = cr.number("p_max", true).value_or(1.0);
                for (const char* key : {"lo", "hi", "p_max"}) {
                    remember("classifier", st.id, where + "." + key, cr.loc_of(key));
                }
                cr.finish();
                if (!c.curves.emplace(sub.heads[0], curve).second) {
                    error(sub.loc, "duplicate curve for '" + sub.heads[0] + "'");
                }
            } else if (sub.keyword == "confusion") {
                const std::string& from = sub.heads[0];
                const std::string& to = sub.heads[1];
                remember("classifier", st.id, "confusion:" + from, sub.loc);
                remember("classifier", st.id, "confusion:" + from + "->" + to,
                         sub.inline_value ? sub.inline_value->loc : sub.loc);
                auto v = sub_number(sub, "fraction");
                if (!v) continue;
                if (!c.confusion[from].emplace(to, *v).second) {
                    error(sub.loc, "duplicate confusion '" + from + " -> " + to + "'");
                }
            } else if (sub.keyword == "false_alarm") {
                const std::string& cls = sub.heads[0];
                remember("classifier", st.id, "false_alarm", sub.loc);
                remember("classifier", st.id, "false_alarm:" + cls,
                         sub.inline_value ? sub.inline_value->loc : sub.loc);
                auto v = sub_number(sub, "prob");
                if (!v) continue;
                if (!c.false_alarm.emplace(cls, *v).second) {
                    error(sub.loc, "duplicate false_alarm for '" + cls + "'");
                }
            } else {
                error(sub.loc, "'" + sub.keyword + "' is not allowed in classifier");
            }
        }
        if (claim(kg_.classifiers, st.id, st)) kg_.classifiers.emplace(st.id, std::move(c));
    }

    void profile(const Statement& st) {
        model::Profile p;
        p.id = st.id;
        std::vector<SourceLoc> locs;
        for (const auto& sub : st.subs) {
            if (sub.keyword != "set") {
                error(sub.loc, "'" + sub.keyword + "' is not allowed in profile");
                continue;
            }
            if (!sub.inline_value) {
                error(sub.loc, "set requires ': <value>'");
                continue;
            }
            const Value& v = *sub.inline_value;
            model::Override o{sub.heads[0], sub.heads[1], sub.heads[2], 0.0};
            switch (v.kind) {
                case Value::Kind::Number:
                    o.value = v.number;
                    break;
                case Value::Kind::Ident:
                    o.value = v.ident;
                    break;
                case Value::Kind::Tuple:
                    o.value = model::Point2D{v.first, v.second};
                    break;
                case Value::Kind::List:
                    error(v.loc, "lists cannot be overridden");
                    continue;
            }
            p.overrides.push_back(std::move(o));
            locs.push_back(sub.loc);
        }
        if (claim(kg_.profiles, st.id, st)) {
            override_locs_[st.id] = std::move(locs);
            profile_locs_[st.id] = st.id_loc;
            kg_.profiles.emplace(st.id, std::move(p));
        }
    }

    // Every override must resolve against the base graph and the overridden
    // graph must still satisfy the invariants.
    void check_profiles() {
        for (const auto& [id, profile] : kg_.profiles) {
            KnowledgeGraph copy = kg_;
            bool resolved = true;
            for (std::size_t i = 0; i < profile.overrides.size(); ++i) {
                try {
                    apply_override(copy, profile.overrides[i]);
                } catch (const ValidationError& e) {
                    error(override_locs_[id][i], e.what());
                    resolved = false;
                }
            }
            if (!resolved) continue;
            for (const auto& v : model::check_invariants(copy)) {
                std::string subject = v.decl_kind + " '" + v.id + "'";
                if (!v.field.empty()) subject += " field '" + v.field + "'";
                error(profile_overriding(id, v), "profile '" + id + "' breaks " + subject + ": " + v.message);
            }
        }
    }

    // Location of the override that touched the offending declaration, or the
    // profile itself.
    SourceLoc profile_overriding(const std::string& profile, const model::Violation& v) {
        const auto& overrides = kg_.profiles.at(profile).overrides;
        for (std::size_t i = overrides.size(); i-- > 0;) {
            if (overrides[i].decl_kind == v.decl_kind && overrides[i].target == v.id) {
                return override_locs_[profile][i];
            }
        }
        return profile_locs_[profile];
    }

    const Document& doc_;
    KnowledgeGraph kg_;
    std::vector<Diagnostic> diags_;
    std::map<std::string, SourceLoc> locs_;
    std::map<std::string, std::vector<SourceLoc>> override_locs_;
    std::map<std::string, SourceLoc> profile_locs_;
    std::set<std::string> broken_;
    bool duplicate_ = false;
};

}  // namespace

ValidationResult validate(const Document& doc) { return Builder(doc).run(); }

}  // namespace skg::lang
