#include <benchmark/benchmark.h>

#include "docforge/ingest.hpp"
#include "docforge/relations.hpp"
#include "docforge/sitegen.hpp"
#include "generators.hpp"

namespace {

using namespace docforge;

void BM_RenderSite(benchmark::State& state) {
  const auto fixture = testing::vec_like_fixture(5);
  const auto relations = build_relation_index(fixture.graph);
  for (auto _ : state) benchmark::DoNotOptimize(render_site(fixture.graph, relations, {}));
}
BENCHMARK(BM_RenderSite);

void BM_SearchIndex(benchmark::State& state) {
  testing::Rng rng(17);
  const auto graph = testing::signature_corpus(rng, 500);
  const auto relations = build_relation_index(graph);
  for (auto _ : state) benchmark::DoNotOptimize(emit_search_index(graph, relations));
}
BENCHMARK(BM_SearchIndex);

void BM_IngestRoundTrip(benchmark::State& state) {
  testing::Rng rng(19);
  const auto text = emit_api_document(testing::signature_corpus(rng, 500));
  for (auto _ : state) benchmark::DoNotOptimize(load_api_document(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_IngestRoundTrip);

}  // namespace
