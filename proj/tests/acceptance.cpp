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
// Acceptance gate: one line per criterion. AC8 is reported but never fails
// the run (it compares stochastic outcomes across batch sizes).

#include "support/random_graphs.hpp"

#include "dmnn/cli.hpp"
#include "dmnn/dataset.hpp"
#include "dmnn/morphology.hpp"
#include "dmnn/training.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace dmnn;
namespace fs = std::filesystem;

namespace {

struct Outcome {
	bool pass = false;
	std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t)
{
	return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(char const* f, auto... args)
{
	char buf[512];
	std::snprintf(buf, sizeof buf, f, args...);
	return buf;
}

// ------------------------------------------------------------------ AC1

Outcome ac1()
{
	auto const t0 = Clock::now();
	Rng rng = derive_rng(2026, 1);
	int agree = 0, oracle_agree = 0;
	std::size_t largest = 0, vertices = 0;
	for (int i = 0; i < 200; ++i) {
		// Spread the windows evenly over 1..9 points.
		std::size_t const size = 1 + static_cast<std::size_t>(i % 9);
		Mcg const g = oracle::random_graph(rng, size, size);
		vertices += g.size();
		BooleanFn const k = kernel_by_enumeration(g);
		agree += basis_of(g) == maximal_intervals(k);
		// The tiled enumeration itself, against one-subset-per-frame evaluation.
		oracle::Kernel const slow = oracle::kernel_on_big_frame(g, k.window());
		bool same = true;
		for (Mask m = 0; m < k.table_size(); ++m)
			same = same && slow[m] == k.at(m);
		oracle_agree += same;
		largest = std::max(largest, k.window().size());
	}
	double const s = seconds_since(t0);
	return {agree == 200 && oracle_agree == 200 && s < 120,
	        fmt("%d/200 bases equal, %d/200 kernels match the slow oracle, |W| from 1 to %zu, %zu vertices, %.1f s",
	            agree, oracle_agree, largest, vertices, s)};
}

// ------------------------------------------------------------------ AC2

Outcome ac2()
{
	Rng rng = derive_rng(2026, 2);
	int ok = 0, total = 0;
	for (int i = 0; i < 50; ++i) {
		Window const w = i < 25 ? Window(PixelSet::box(0, 0, 2, 2)) : Window::centered_square(3);
		BooleanFn f(w);
		for (Mask m = 0; m < f.table_size(); ++m)
			f.set(m, rng() & 1u);
		Mcg const g = build_supgen_from_basis(maximal_intervals(f));
		bool all = true;
		for (int j = 0; j < 20; ++j) {
			BinaryImage const x = oracle::random_image(16, 16, uniform_unit(rng), rng);
			all = all && evaluate(g, x) == apply_boolean_fn(x, f);
		}
		ok += all;
		++total;
	}
	return {ok == total, fmt("%d/%d functions reproduced exactly on 20 images each", ok, total)};
}

// ------------------------------------------------------------------ AC3

bool equal_on(BinaryImage const& a, BinaryImage const& b, PixelSet const& reads)
{
	for (int y = 0; y < a.height(); ++y)
		for (int x = 0; x < a.width(); ++x)
			if (oracle::inside(a, {x, y}, reads) && a.get({x, y}) != b.get({x, y}))
				return false;
	return true;
}

Outcome ac3()
{
	Rng rng = derive_rng(2026, 3);
	PixelSet const pool = PixelSet::centered_square(3);
	int adj = 0, dual = 0, idem = 0, ext = 0;
	for (int t = 0; t < 1000; ++t) {
		BinaryImage const x = oracle::random_image(16, 16, uniform_unit(rng), rng);
		BinaryImage const y = oracle::random_image(16, 16, uniform_unit(rng), rng);
		PixelSet const b = oracle::random_subset(pool, rng);
		PixelSet const reads = set_union(b, b.transposed());

		BinaryImage const xi = x & erode(BinaryImage::full(16, 16), reads);
		adj += (dilate(xi, b).is_subset_of(y)) != xi.is_subset_of(erode(y, b));
		dual += !equal_on(complement(erode(x, b)), dilate(complement(x), b.transposed()), reads);
		idem += !(open(open(x, b), b) == open(x, b)) || !(close(close(x, b), b) == close(x, b));
		ext += !open(x, b).is_subset_of(x) || !equal_on(x & close(x, b), x, b);
	}
	return {adj + dual + idem + ext == 0,
	        fmt("violations in 1000 trials each: adjunction %d, duality %d, idempotence %d, (anti-)extensivity %d",
	            adj, dual, idem, ext)};
}

// ------------------------------------------------------------------ AC4

/// { h : A ⊆ (X - h) ∩ W ⊆ B }.
bool lambda_at(BinaryImage const& x, Interval const& i, Point h)
{
	std::vector<Point> seen;
	for (Point w : i.window().support())
		if (oracle::at(x, h + w))
			seen.push_back(w);
	PixelSet const s(std::move(seen));
	return i.left().is_subset_of(s) && s.is_subset_of(i.right());
}

/// { h : (X - h) ∩ A^t ≠ ∅  or  ((X - h) ∩ W^t) ∪ B^t ≠ W^t }.
bool mu_at(BinaryImage const& x, Interval const& i, Point h)
{
	PixelSet const wt = i.window().support().transposed();
	std::vector<Point> seen;
	for (Point w : wt)
		if (oracle::at(x, h + w))
			seen.push_back(w);
	PixelSet const s(std::move(seen));
	return !set_intersection(s, i.left().transposed()).empty() || set_union(s, i.right().transposed()) != wt;
}

Outcome ac4()
{
	Window const w(PixelSet::box(0, 0, 2, 2));
	PixelSet const reads = set_union(w.support(), w.support().transposed());
	Rng rng = derive_rng(2026, 4);
	long cases = 0, bad_fused = 0, bad_composed = 0;
	for (Mask b = 0; b < 16; ++b)
		for (Mask a = b;; a = (a - 1) & b) {
			Interval const i(w.set_of(a), w.set_of(b), w);
			PixelSet const miss = set_difference(w.support(), i.right()).transposed();
			for (int hy = 0; hy < 6; ++hy)
				for (int hx = 0; hx < 6; ++hx) {
					Point const h{hx, hy};
					BinaryImage const probe(6, 6);
					if (!oracle::inside(probe, h, reads))
						continue;
					for (Mask pattern = 0; pattern < 16; ++pattern)
						for (int side = 0; side < 2; ++side) {
							// side 0 fixes h + W (what λ reads), side 1 fixes h - W (what μ reads).
							BinaryImage x = oracle::random_image(6, 6, 0.5, rng);
							for (std::size_t k = 0; k < 4; ++k) {
								Point const p = w.support()[k];
								x.set(side == 0 ? h + p : h - p, (pattern >> k) & 1u);
							}
							BinaryImage const lam = sup_generating(x, i);
							BinaryImage const lam2 = erode(x, i.left()) & complement(dilate(x, miss));
							BinaryImage const mu = inf_generating(x, i);
							BinaryImage const mu2 = dilate(x, i.left()) | complement(erode(x, miss));
							for (int y = 0; y < 6; ++y)
								for (int c = 0; c < 6; ++c) {
									Point const q{c, y};
									if (!oracle::inside(x, q, reads))
										continue;
									++cases;
									bool const l = lambda_at(x, i, q), m = mu_at(x, i, q);
									bad_fused += (lam.get(q) != l) + (mu.get(q) != m);
									bad_composed += (lam2.get(q) != l) + (mu2.get(q) != m);
								}
						}
				}
			if (a == 0)
				break;
		}
	return {bad_fused + bad_composed == 0,
	        fmt("81 intervals x 16 interior pixels x 16 window patterns x 2 read sides: %ld pixel checks, "
	            "%ld fused and %ld erosion/dilation mismatches",
	            cases, bad_fused, bad_composed)};
}

// ------------------------------------------------------------------ AC5

Outcome ac5()
{
	ArchitectureSpec const asf2{{{LayerKind::Asf, 1, 3}, {LayerKind::Asf, 1, 3}}};
	std::size_t const n_asf = param_neighbors(asf2, identity_params(asf2)).size();
	std::size_t const n_full = interval_neighbors(Interval::full(Window::centered_square(3))).size();

	std::size_t checked = 0, wrong = 0;
	for (int n = 0; n <= 4; ++n) {
		std::vector<Point> pts;
		for (int k = 0; k < n; ++k)
			pts.push_back({k % 2, k / 2});
		Window const w{PixelSet(pts)};
		for (Mask b = 0; b <= w.full_mask(); ++b)
			for (Mask a = b;; a = (a - 1) & b) {
				Interval const i(w.set_of(a), w.set_of(b), w);
				std::size_t brute = 0;
				for (Mask b2 = 0; b2 <= w.full_mask(); ++b2)
					for (Mask a2 = b2;; a2 = (a2 - 1) & b2) {
						brute += std::popcount(a ^ a2) + std::popcount(b ^ b2) == 1;
						if (a2 == 0)
							break;
					}
				std::size_t const formula = i.left().size() + 2 * i.width() + (w.size() - i.right().size());
				wrong += formula != brute || interval_neighbors(i).size() != brute;
				++checked;
				if (a == 0)
					break;
			}
	}
	return {n_asf == 18 && n_full == 18 && wrong == 0,
	        fmt("ASF pair over W3: %zu neighbors, [0,W3]: %zu, formula vs enumeration: %zu/%zu intervals agree", n_asf,
	            n_full, checked - wrong, checked)};
}

// ------------------------------------------------------------------ AC6

Outcome ac6()
{
	int const saved = omp_get_max_threads();
	omp_set_num_threads(1);
	ArchitectureSpec const a{{{LayerKind::Erosion, 1, 3}}};
	PixelSet const truth{{-1, 0}, origin, {1, 1}};
	Rng rng = derive_rng(2026, 6);
	std::vector<SamplePair> sample;
	for (int i = 0; i < 10; ++i) {
		BinaryImage x = oracle::random_image(32, 32, 0.7, rng);
		BinaryImage y = oracle::erode(x, truth);
		sample.push_back({std::move(x), std::move(y)});
	}

	// Exhaustive oracle over the 512-point lattice, with oracle erosions.
	Window const w = Window::centered_square(3);
	std::size_t zeros = 0;
	for (Mask m = 0; m <= w.full_mask(); ++m) {
		bool perfect = true;
		for (auto const& p : sample)
			perfect = perfect && oracle::erode(p.input, w.set_of(m)) == p.target;
		zeros += perfect;
	}

	TrainConfig cfg;
	cfg.algorithm = Algorithm::Lda;
	cfg.epochs = 10;
	cfg.loss = LossKind::Absolute;
	cfg.seed = 6;
	auto const t0 = Clock::now();
	TrainReport const r = lda_train(a, identity_params(a), sample, cfg);
	double const s = seconds_since(t0);
	omp_set_num_threads(saved);

	PixelSet const found = std::get<PixelSet>(r.best_params.layers[0][0]);
	bool confirmed = true;
	for (auto const& p : sample)
		confirmed = confirmed && oracle::erode(p.input, found) == p.target;
	return {zeros >= 1 && r.best_loss == 0 && confirmed && r.epoch_of_best <= 10 && s < 30,
	        fmt("lattice has %zu zero-loss point(s); LDA loss %s at epoch %zu, oracle confirms: %s, %.2f s on 1 thread",
	            zeros, to_string(r.best_loss).c_str(), r.epoch_of_best, confirmed ? "yes" : "no", s)};
}

// ------------------------------------------------------------- AC7, AC8

struct Replication {
	double val[3] = {0, 0, 0}; // b = 1, 5, 10
};

std::vector<Replication> g_reps;
double g_rep_seconds = 0;

void run_replications()
{
	if (!g_reps.empty())
		return;
	auto const t0 = Clock::now();
	ArchitectureSpec const a = architecture_from_name("asf3-8sg3-8sg3");
	std::size_t const batches[3] = {1, 5, 10};
	for (std::uint64_t r = 0; r < 10; ++r) {
		CorpusSpec train_spec;
		train_spec.seed = 1000 + r;
		CorpusSpec val_spec;
		val_spec.seed = 2000 + r;
		auto const train_set = gen_corpus(train_spec);
		auto const val_set = gen_corpus(val_spec);
		Rng init_rng = derive_rng(r, 0);
		ParamVector const init = init_params(a, init_rng);
		Replication rep;
		for (int k = 0; k < 3; ++k) {
			TrainConfig cfg;
			cfg.algorithm = Algorithm::Slda;
			cfg.epochs = 300;
			cfg.batch_size = batches[k];
			cfg.neighbors = 16;
			cfg.loss = LossKind::Iou;
			cfg.seed = r;
			TrainReport const rep_k = slda_train(a, init, train_set, cfg);
			rep.val[k] = to_double(mean_loss(a, rep_k.best_params, val_set, LossKind::Iou));
		}
		g_reps.push_back(rep);
	}
	g_rep_seconds = seconds_since(t0);
}

Outcome ac7()
{
	run_replications();
	int good = 0;
	double lo = 1, hi = 0, sum = 0;
	for (auto const& r : g_reps) {
		good += r.val[1] <= 0.15;
		lo = std::min(lo, r.val[1]);
		hi = std::max(hi, r.val[1]);
		sum += r.val[1];
	}
	// The budget covers all 30 runs shared with AC8.
	return {good >= 7 && g_rep_seconds <= 1800,
	        fmt("b=5: %d/10 replications with validation IoU loss <= 0.15 (min %.4f, mean %.4f, max %.4f); "
	            "30 runs in %.1f s",
	            good, lo, sum / 10, hi, g_rep_seconds)};
}

Outcome ac8()
{
	run_replications();
	double best[3] = {1, 1, 1};
	for (auto const& r : g_reps)
		for (int k = 0; k < 3; ++k)
			best[k] = std::min(best[k], r.val[k]);
	return {best[1] <= best[2],
	        fmt("min validation loss over 10 replications: b=1 %.4f, b=5 %.4f, b=10 %.4f", best[0], best[1], best[2])};
}

// ------------------------------------------------------------------ AC9

std::string slurp(fs::path const& p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

int cli(std::vector<std::string> args)
{
	args.insert(args.begin(), "dmnn");
	std::vector<char const*> argv;
	for (auto const& s : args)
		argv.push_back(s.c_str());
	std::ostringstream out, err;
	return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome ac9()
{
	fs::path const dir = fs::temp_directory_path() / "dmnn_acceptance_ac9";
	fs::remove_all(dir);
	fs::create_directories(dir);
	if (cli({"synth", "--out", (dir / "train").string(), "--count", "6", "--seed", "1"}) != exit_ok ||
	    cli({"synth", "--out", (dir / "val").string(), "--count", "4", "--seed", "2"}) != exit_ok)
		return {false, "corpus generation failed"};
	int identical = 0, runs = 0;
	for (std::string alg : {"lda", "slda"}) {
		std::ofstream(dir / "config.json")
		    << R"({"architecture": "asf3-2sg3-2ig3", "train": {"algorithm": ")" << alg
		    << R"(", "epochs": 4, "batch_size": 2, "neighbors": 8, "loss": "iou", "seed": 42},
		         "data": {"train_dir": "train", "val_dir": "val"}, "output_dir": "out"})";
		std::string ref_report, ref_params;
		for (std::string threads : {"1", "2", "4", "8"}) {
			fs::path const out = dir / (alg + "_" + threads);
			if (cli({"train", "--config", (dir / "config.json").string(), "--threads", threads, "--out", out.string()}) !=
			    exit_ok)
				return {false, "train failed"};
			std::string const report = slurp(out / "report.json");
			std::string const params = slurp(out / "params.json");
			if (ref_report.empty()) {
				ref_report = report;
				ref_params = params;
			}
			identical += report == ref_report && params == ref_params;
			++runs;
		}
	}
	fs::remove_all(dir);
	return {identical == runs, fmt("%d/%d runs (lda and slda at 1, 2, 4 and 8 threads) byte-identical to the first",
	                               identical, runs)};
}

// ------------------------------------------------------------------ AC10

Outcome ac10()
{
	Rng rng = derive_rng(2026, 10);
	char const* const archs[] = {"ero3", "dil3", "asf3", "sg3", "2sg3", "open3-2ig3", "asf3-comp-2sg3", "close3-ero1"};
	int ok = 0;
	for (int run = 0; run < 100; ++run) {
		ArchitectureSpec const a = architecture_from_name(archs[uniform_below(rng, std::size(archs))]);
		std::size_t const n = 2 + uniform_below(rng, 4);
		std::vector<SamplePair> sample;
		for (std::size_t i = 0; i < n; ++i) {
			BinaryImage x = oracle::random_image(12, 12, 0.5, rng);
			BinaryImage y = oracle::random_image(12, 12, 0.3, rng);
			sample.push_back({std::move(x), std::move(y)});
		}
		TrainConfig cfg;
		cfg.algorithm = rng() & 1u ? Algorithm::Lda : Algorithm::Slda;
		cfg.epochs = 1 + uniform_below(rng, 8);
		cfg.batch_size = 1 + uniform_below(rng, n);
		cfg.neighbors = 1 + uniform_below(rng, 20);
		cfg.loss = rng() & 1u ? LossKind::Iou : LossKind::Absolute;
		cfg.seed = rng();
		Rng init_rng = derive_rng(cfg.seed, 0);
		TrainReport const r = train(a, init_params(a, init_rng), sample, cfg);

		bool good = r.log.size() == cfg.epochs;
		Rational low = r.initial_loss;
		for (std::size_t e = 0; e < r.log.size(); ++e) {
			low = std::min(low, r.log[e].current);
			good = good && r.log[e].best == low;
			good = good && (e == 0 || r.log[e].best <= r.log[e - 1].best);
		}
		good = good && r.best_loss == low && mean_loss(a, r.best_params, sample, cfg.loss) == r.best_loss;
		ok += good;
	}
	return {ok == 100, fmt("%d/100 runs: best loss non-increasing, equal to the minimum of the initial and logged "
	                       "losses, and reproduced by the returned parameters",
	                       ok)};
}

} // namespace

int main()
{
	struct Criterion {
		char const* id;
		char const* title;
		std::function<Outcome()> check;
		bool gate;
	};
	std::vector<Criterion> const criteria{
	    {"AC1", "basis engine equals kernel oracle on 200 random graphs", ac1, true},
	    {"AC2", "canonical sup-decomposition reproduces random Boolean functions", ac2, true},
	    {"AC3", "morphology law suite", ac3, true},
	    {"AC4", "sup/inf-generating formulas match set-builder definitions", ac4, true},
	    {"AC5", "neighborhood counts", ac5, true},
	    {"AC6", "LDA reaches zero loss on a realizable erosion", ac6, true},
	    {"AC7", "desk-scale SLDA rerun of asf3-8sg3-8sg3", ac7, true},
	    {"AC8", "batch-size ordering (reported, not gating)", ac8, false},
	    {"AC9", "determinism across thread counts", ac9, true},
	    {"AC10", "best-loss bookkeeping on 100 tiny runs", ac10, true},
	};
	int failed = 0;
	for (auto const& c : criteria) {
		auto const t0 = Clock::now();
		Outcome o;
		try {
			o = c.check();
		} catch (std::exception const& e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		char const* verdict = o.pass ? "PASS" : (c.gate ? "FAIL" : "VIOLATED (reported only)");
		std::cout << c.id << ' ' << verdict << "  " << c.title << ": " << o.detail << " [" << fmt("%.1f", seconds_since(t0))
		          << " s]" << std::endl;
		failed += !o.pass && c.gate;
	}
	std::cout << (failed == 0 ? "acceptance: all gating criteria pass" : fmt("acceptance: %d criteria fail", failed))
	          << std::endl;
	return failed == 0 ? 0 : 1;
}
