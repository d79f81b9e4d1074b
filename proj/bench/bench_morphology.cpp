/*
 *   Copyright 2026 The dmnn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "dmnn/dataset.hpp"
#include "dmnn/morphology.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

namespace {

using namespace dmnn;

BinaryImage noisy(int side)
{
	Rng rng = derive_rng(7, 0);
	BinaryImage x(side, side);
	for (int y = 0; y < side; ++y)
		for (int c = 0; c < side; ++c)
			x.set({c, y}, uniform_unit(rng) < 0.4);
	return x;
}

Interval sample_interval()
{
	Window const w = Window::centered_square(3);
	return Interval(PixelSet{{0, 0}, {1, 0}}, set_difference(w.support(), PixelSet{{-1, -1}}), w);
}

// Arg 0: side length. Arg 1: thread count (bit-parallel kernels only).

void BM_erode_reference(benchmark::State& st)
{
	BinaryImage const x = noisy(static_cast<int>(st.range(0)));
	StructElem const b = PixelSet::centered_square(3);
	for (auto _ : st)
		benchmark::DoNotOptimize(reference::erode(x, b));
	st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(x.pixel_count()));
}

void BM_erode(benchmark::State& st)
{
	BinaryImage const x = noisy(static_cast<int>(st.range(0)));
	StructElem const b = PixelSet::centered_square(3);
	omp_set_num_threads(static_cast<int>(st.range(1)));
	for (auto _ : st)
		benchmark::DoNotOptimize(erode(x, b));
	st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(x.pixel_count()));
}

void BM_asf_reference(benchmark::State& st)
{
	BinaryImage const x = noisy(static_cast<int>(st.range(0)));
	StructElem const b = PixelSet::centered_square(3);
	for (auto _ : st)
		benchmark::DoNotOptimize(reference::asf_layer(x, b));
	st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(x.pixel_count()));
}

void BM_asf(benchmark::State& st)
{
	BinaryImage const x = noisy(static_cast<int>(st.range(0)));
	StructElem const b = PixelSet::centered_square(3);
	omp_set_num_threads(static_cast<int>(st.range(1)));
	for (auto _ : st)
		benchmark::DoNotOptimize(asf_layer(x, b));
	st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(x.pixel_count()));
}

void BM_supgen_reference(benchmark::State& st)
{
	BinaryImage const x = noisy(static_cast<int>(st.range(0)));
	Interval const i = sample_interval();
	for (auto _ : st)
		benchmark::DoNotOptimize(reference::sup_generating(x, i));
	st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(x.pixel_count()));
}

void BM_supgen(benchmark::State& st)
{
	BinaryImage const x = noisy(static_cast<int>(st.range(0)));
	Interval const i = sample_interval();
	omp_set_num_threads(static_cast<int>(st.range(1)));
	for (auto _ : st)
		benchmark::DoNotOptimize(sup_generating(x, i));
	st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(x.pixel_count()));
}

void thread_args(benchmark::internal::Benchmark* b)
{
	int const max_threads = omp_get_max_threads();
	for (int side : {256, 2048})
		for (int t = 1; t <= max_threads; t *= 2)
			b->Args({side, t});
}

} // namespace

BENCHMARK(BM_erode_reference)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_erode)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_asf_reference)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_asf)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_supgen_reference)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_supgen)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
