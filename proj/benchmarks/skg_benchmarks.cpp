#include <fstream>
#include <sstream>
#include <string>

#include <benchmark/benchmark.h>

#include "skg/bayes/inference.hpp"
#include "skg/compiler/compiler.hpp"
#include "skg/lang/loader.hpp"
#include "skg/sim/simulator.hpp"

namespace {

std::string fixture_text(const std::string& name) {
    std::ifstream in(std::string(SKG_FIXTURE_DIR) + "/" + name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

skg::model::KnowledgeGraph fixture_graph(const std::string& name) {
    auto loaded = skg::lang::load_source(fixture_text(name));
    return std::move(*loaded.graph);
}

const char* fixture_name(std::int64_t i) {
    static const char* names[] = {"building.skg", "social.skg", "integrated.skg"};
    return names[i];
}

void BM_Load(benchmark::State& state) {
    const auto text = fixture_text(fixture_name(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(skg::lang::load_source(text));
    state.SetLabel(fixture_name(state.range(0)));
}
BENCHMARK(BM_Load)->DenseRange(0, 2);

void BM_Compile(benchmark::State& state) {
    const auto kg = fixture_graph(fixture_name(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(skg::compiler::compile(kg));
    state.SetLabel(fixture_name(state.range(0)));
}
BENCHMARK(BM_Compile)->DenseRange(0, 2);

skg::bayes::Evidence glass_at_mic1() {
    skg::bayes::Evidence e;
    e.hard["sensor:mic1"] = "glass_sound";
    return e;
}

void BM_VariableElimination(benchmark::State& state) {
    const auto bn = skg::compiler::compile(fixture_graph(state.range(0) == 0 ? "building.skg" : "integrated.skg"));
    const auto evidence = glass_at_mic1();
    for (auto _ : state) benchmark::DoNotOptimize(skg::bayes::ve_posterior(bn, evidence, {"entity:Attacker"}));
    state.SetLabel(state.range(0) == 0 ? "building.skg" : "integrated.skg");
}
BENCHMARK(BM_VariableElimination)->DenseRange(0, 1);

void BM_Enumeration(benchmark::State& state) {
    const auto bn = skg::compiler::compile(fixture_graph("building.skg"));
    const auto evidence = glass_at_mic1();
    for (auto _ : state) benchmark::DoNotOptimize(skg::bayes::enumerate_posterior(bn, evidence, {"entity:Attacker"}));
}
BENCHMARK(BM_Enumeration);

void BM_Simulate(benchmark::State& state) {
    const auto kg = fixture_graph("integrated.skg");
    for (auto _ : state) benchmark::DoNotOptimize(skg::sim::simulate_dataset(kg, 1000, 42));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Simulate);

}  // namespace

BENCHMARK_MAIN();
