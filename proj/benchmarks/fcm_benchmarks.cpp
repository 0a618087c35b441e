#include "fcm/compiler.hpp"
#include "fcm/engine.hpp"
#include "fcm/explorer.hpp"
#include "fcm/model_io.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>

namespace {

fcm::CaseModel fixture(const char* name)
{
    return fcm::load_case_model(std::filesystem::path(FCM_MODELS_DIR) / name);
}

void BM_CompileMini(benchmark::State& state)
{
    auto model = fixture("conference-mini.json");
    for (auto _ : state)
        benchmark::DoNotOptimize(fcm::compile(model));
}
BENCHMARK(BM_CompileMini);

void BM_ParseMini(benchmark::State& state)
{
    auto text = fcm::serialize_case_model(fixture("conference-mini.json"));
    for (auto _ : state)
        benchmark::DoNotOptimize(fcm::parse_case_model(text));
}
BENCHMARK(BM_ParseMini);

// Enabled bindings on the markings of a random run through the mini net.
void BM_EnabledBindingsMini(benchmark::State& state)
{
    auto net = fcm::compile(fixture("conference-mini.json")).net;
    std::vector<fcm::cpn::Marking> markings{fcm::cpn::initial_marking(net)};
    std::size_t pick = 0;
    while (markings.size() < 40) {
        auto en = fcm::cpn::enabled_bindings(net, markings.back());
        if (en.empty())
            break;
        const auto& eb = en[pick++ % en.size()];
        markings.push_back(fcm::cpn::fire(net, markings.back(), eb.transition, eb.binding));
    }
    for (auto _ : state)
        for (const auto& m : markings)
            benchmark::DoNotOptimize(fcm::cpn::enabled_bindings(net, m));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * markings.size()));
}
BENCHMARK(BM_EnabledBindingsMini);

void BM_ExploreMicro(benchmark::State& state)
{
    auto net = fcm::compile(fixture("conference-micro.json")).net;
    std::size_t states = 0;
    for (auto _ : state)
        states = fcm::explore(net).statesVisited;
    state.counters["states"] = static_cast<double>(states);
}
BENCHMARK(BM_ExploreMicro)->Unit(benchmark::kMillisecond);

void BM_ExploreMiniBounded(benchmark::State& state)
{
    auto net = fcm::compile(fixture("conference-mini.json")).net;
    for (auto _ : state)
        benchmark::DoNotOptimize(fcm::explore(net, {static_cast<std::size_t>(state.range(0))}));
}
BENCHMARK(BM_ExploreMiniBounded)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
