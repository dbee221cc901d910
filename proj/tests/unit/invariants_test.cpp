#include <algorithm>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "skg/model.hpp"

namespace skg::model {
namespace {

KnowledgeGraph building() { return testing::load_graph(testing::fixture_path("building.skg")); }

bool has(const std::vector<Violation>& vs, const std::string& message_part) {
    return std::any_of(vs.begin(), vs.end(),
                       [&](const Violation& v) { return v.message.find(message_part) != std::string::npos; });
}

TEST(Invariants, ShippedFixturesAreClean) {
    for (const char* name : {"building.skg", "social.skg", "integrated.skg"}) {
        EXPECT_TRUE(check_invariants(testing::load_graph(testing::fixture_path(name))).empty()) << name;
    }
}

TEST(Invariants, PriorOutOfRange) {
    auto kg = building();
    kg.entities["Attacker"].prior = 1.5;
    const auto vs = check_invariants(kg);
    ASSERT_EQ(vs.size(), 1u);
    EXPECT_EQ(vs[0].decl_kind, "entity");
    EXPECT_EQ(vs[0].id, "Attacker");
    EXPECT_EQ(vs[0].field, "prior");
    EXPECT_EQ(vs[0].message, "probability out of range");
}

TEST(Invariants, BroaderCycle) {
    auto kg = building();
    kg.signals["glass_sound"].broader = "sound_breaking_glass";
    EXPECT_TRUE(has(check_invariants(kg), "broader cycle"));
}

TEST(Invariants, BroaderKindMismatch) {
    auto kg = building();
    kg.kinds["vision"] = {"vision", Falloff::InverseLinear, 1.0, true};
    kg.signals["glint"] = {"glint", "vision", "glass_sound"};
    EXPECT_TRUE(has(check_invariants(kg), "different kind"));
}

TEST(Invariants, DanglingReferences) {
    auto kg = building();
    kg.actions["break_window"].actor = "Ghost";
    kg.actions["drop_tray"].stimulus = "thunder";
    kg.sensors["mic1"].classifier = "nope";
    const auto vs = check_invariants(kg);
    EXPECT_TRUE(has(vs, "unknown entity 'Ghost'"));
    EXPECT_TRUE(has(vs, "unknown signal 'thunder'"));
    EXPECT_TRUE(has(vs, "unknown classifier 'nope'"));
}

TEST(Invariants, ActionWithoutPlace) {
    auto kg = building();
    kg.actions["drop_tray"].location_class = "kitchen";
    EXPECT_TRUE(has(check_invariants(kg), "no place has location class 'kitchen'"));
}

TEST(Invariants, CurveOrdering) {
    auto kg = building();
    kg.classifiers["yamnet"].curves["glass_sound"] = {60.0, 30.0, 0.9};
    const auto vs = check_invariants(kg);
    ASSERT_TRUE(has(vs, "curve requires lo < hi"));
    EXPECT_EQ(vs[0].field, "curve:glass_sound.hi");
}

TEST(Invariants, FalseAlarmAndConfusionSums) {
    auto kg = building();
    kg.classifiers["yamnet"].false_alarm["glass_sound"] = 0.6;
    kg.classifiers["yamnet"].false_alarm["speech"] = 0.6;
    kg.classifiers["yamnet"].confusion["glass_sound"]["speech"] = 1.2;
    const auto vs = check_invariants(kg);
    EXPECT_TRUE(has(vs, "false alarm probabilities sum above 1"));
    EXPECT_TRUE(has(vs, "confusion fractions of 'glass_sound' sum above 1"));
}

TEST(Invariants, ClassifierKindMustMatchClasses) {
    auto kg = building();
    kg.kinds["vision"] = {"vision", Falloff::InverseLinear, 1.0, true};
    kg.classifiers["yamnet"].kind = "vision";
    EXPECT_TRUE(has(check_invariants(kg), "but classifier observes 'vision'"));
}

TEST(Invariants, DigitalKindFalloff) {
    auto kg = building();
    kg.kinds["digital"] = {"digital", Falloff::InverseLinear, 1.0, false};
    EXPECT_TRUE(has(check_invariants(kg), "digital signals must use falloff none"));
}

TEST(Invariants, ReportsEveryViolation) {
    auto kg = building();
    kg.entities["Attacker"].prior = -0.1;
    kg.entities["Employee"].prior = 2.0;
    kg.places["dining"].weight = 0.0;
    kg.walls["dining_wall"].sound_attenuation_db = -3.0;
    EXPECT_EQ(check_invariants(kg).size(), 4u);
}

TEST(Invariants, DeclarationCount) {
    EXPECT_EQ(building().declaration_count(), 18u);
}

}  // namespace
}  // namespace skg::model
