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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/random_graphs.hpp"

#include "dmnn/errors.hpp"
#include "dmnn/mcg.hpp"
#include "dmnn/morphology.hpp"
#include "dmnn/text_grid.hpp"

#include <algorithm>

using namespace dmnn;

namespace {

Window const w3 = Window::centered_square(3);
PixelSet const cross{{0, -1}, {-1, 0}, {0, 0}, {1, 0}, {0, 1}};

/// Input -> v -> Output.
GraphSpec chain(std::vector<Vertex> const& ops)
{
	GraphSpec g;
	std::size_t prev = g.add(Vertex::input());
	for (auto const& v : ops) {
		std::size_t const cur = g.add(v);
		g.connect(prev, cur);
		prev = cur;
	}
	g.connect(prev, g.add(Vertex::output()));
	return g;
}

bool has_axiom(std::vector<Violation> const& v, std::string const& axiom)
{
	return std::any_of(v.begin(), v.end(), [&](Violation const& x) { return x.axiom == axiom; });
}

/// Input -> SupGen(i) for each interval -> Sup -> Output.
GraphSpec supgen_fan(std::vector<Interval> const& is)
{
	GraphSpec g;
	std::size_t const in = g.add(Vertex::input());
	std::size_t const sup = g.add(Vertex::sup());
	for (auto const& i : is) {
		std::size_t const v = g.add(Vertex::sup_gen(i));
		g.connect(in, v);
		g.connect(v, sup);
	}
	g.connect(sup, g.add(Vertex::output()));
	return g;
}

IntervalCollection oracle_basis(Mcg const& g)
{
	Window const w = window_of(g);
	oracle::Kernel const k = oracle::kernel_on_big_frame(g, w);
	return IntervalCollection(w, oracle::maximal_intervals(k, static_cast<int>(w.size())));
}

} // namespace

TEST_CASE("validate: accepted shapes")
{
	CHECK(validate(chain({Vertex::erosion(cross)})).empty());
	Interval const i1 = Interval::upper(PixelSet{origin}, w3);
	Interval const i2(PixelSet{{1, 0}}, PixelSet{{1, 0}, origin}, w3);
	CHECK(validate(supgen_fan({i1, i2, Interval::full(w3)})).empty());
	CHECK(validate(chain({Vertex::asf(cross)})).empty());
	CHECK(validate(chain({Vertex::opening(cross), Vertex::closing(cross)})).empty());
	CHECK(validate(chain({Vertex::asf(cross), Vertex::sup_gen(i1)})).empty());
}

TEST_CASE("validate: single-axiom mutations are rejected")
{
	GraphSpec cyc = chain({Vertex::erosion(cross), Vertex::dilation(cross)});
	cyc.connect(2, 1);
	CHECK(has_axiom(validate(cyc), "A1"));

	GraphSpec two = chain({});
	CHECK(has_axiom(validate(two), "A1"));

	GraphSpec extra_source = chain({Vertex::erosion(cross)});
	std::size_t const s = extra_source.add(Vertex::dilation(cross));
	std::size_t const j = extra_source.add(Vertex::sup());
	extra_source.edges = {{0, 1}, {1, j}, {s, j}, {j, 2}};
	CHECK(has_axiom(validate(extra_source), "A2"));

	GraphSpec wrong_source = chain({Vertex::erosion(cross)});
	wrong_source.vertices[0] = Vertex::complement();
	CHECK(has_axiom(validate(wrong_source), "A2"));

	GraphSpec dead_end = chain({Vertex::erosion(cross)});
	std::size_t const d = dead_end.add(Vertex::dilation(cross));
	dead_end.connect(0, d);
	CHECK(has_axiom(validate(dead_end), "A3"));

	GraphSpec fan_in = supgen_fan({Interval::full(w3), Interval::full(w3)});
	fan_in.connect(3, 2);
	CHECK(has_axiom(validate(fan_in), "A4"));

	GraphSpec thin_sup = chain({Vertex::sup()});
	CHECK(has_axiom(validate(thin_sup), "A5"));

	GraphSpec bad_edge = chain({Vertex::erosion(cross)});
	bad_edge.connect(0, 17);
	CHECK(has_axiom(validate(bad_edge), "edge"));
	GraphSpec dup = chain({Vertex::erosion(cross)});
	dup.connect(0, 1);
	CHECK(has_axiom(validate(dup), "edge"));

	auto const report = format_violations(validate(thin_sup));
	CHECK(report.find("A5") != std::string::npos);
	CHECK_THROWS_AS(Mcg::from(thin_sup), GraphError);
}

TEST_CASE("evaluate: examples")
{
	Rng rng = derive_rng(1, 0);
	BinaryImage const x = oracle::random_image(16, 16, 0.5, rng);
	CHECK(evaluate(Mcg::from(chain({Vertex::erosion(cross)})), x) == erode(x, cross));

	Interval const i1(PixelSet{origin}, PixelSet{origin, {1, 0}, {0, 1}}, w3);
	Interval const i2(PixelSet{{-1, -1}}, set_difference(w3.support(), PixelSet{origin}), w3);
	Interval const i3(cross, w3.support(), w3);
	CHECK(evaluate(Mcg::from(supgen_fan({i1, i2, i3})), x) ==
	      (sup_generating(x, i1) | sup_generating(x, i2) | sup_generating(x, i3)));

	// Three encodings of one ASF layer.
	for (int trial = 0; trial < 20; ++trial) {
		BinaryImage const y = oracle::random_image(16, 16, 0.5, rng);
		PixelSet const b = oracle::random_subset(w3.support(), rng);
		Window const base(w3);
		auto const a = evaluate(Mcg::from(chain({Vertex::asf(b, base)})), y);
		auto const oc = evaluate(Mcg::from(chain({Vertex::opening(b, base), Vertex::closing(b, base)})), y);
		auto const edde = evaluate(Mcg::from(chain({Vertex::erosion(b, base), Vertex::dilation(b, base),
		                                           Vertex::dilation(b, base), Vertex::erosion(b, base)})),
		                           y);
		CHECK(a == oc);
		CHECK(a == edde);
	}
}

TEST_CASE("evaluate: level-parallel evaluation matches a serial fold")
{
	Rng rng = derive_rng(2, 0);
	for (int trial = 0; trial < 50; ++trial) {
		Mcg const g = Mcg::from(oracle::random_graph_spec(rng, 6));
		BinaryImage const x = oracle::random_image(40, 20, 0.5, rng);
		std::vector<BinaryImage> out(g.size());
		for (std::size_t v : g.order()) {
			std::vector<BinaryImage const*> in;
			for (std::size_t u : g.inputs(v))
				in.push_back(&out[u]);
			out[v] = g.vertex(v).kind == VertexKind::Input ? x : apply_vertex(g.vertex(v), in);
		}
		CHECK(evaluate(g, x) == out[g.output_vertex()]);
	}
}

TEST_CASE("window_of: examples")
{
	auto const one = Mcg::from(chain({Vertex::erosion(cross, w3)}));
	CHECK(window_of(one) == w3);
	auto const two = Mcg::from(chain({Vertex::erosion(cross, w3), Vertex::sup_gen(Interval::full(w3))}));
	CHECK(window_of(two) == Window::centered_square(5));

	GraphSpec g;
	std::size_t const in = g.add(Vertex::input());
	std::size_t const a = g.add(Vertex::dilation(PixelSet{origin}, w3));
	std::size_t const b = g.add(Vertex::erosion(PixelSet{origin}, Window::centered_square(5)));
	std::size_t const s = g.add(Vertex::sup());
	std::size_t const o = g.add(Vertex::output());
	g.edges = {{in, a}, {in, b}, {a, s}, {b, s}, {s, o}};
	CHECK(window_of(Mcg::from(g)) == Window::centered_square(5));

	CHECK(window_of(Mcg::from(chain({Vertex::complement()}))) == Window(PixelSet{origin}));
	// The transpose appears for dilations.
	PixelSet const right{origin, {1, 0}};
	CHECK(window_of(Mcg::from(chain({Vertex::dilation(right)}))) == Window(right.transposed()));
}

TEST_CASE("kernel_by_enumeration: examples")
{
	Window const o(PixelSet{origin});
	auto const id = kernel_by_enumeration(Mcg::from(chain({Vertex::sup_gen(Interval::upper(PixelSet{origin}, o))})));
	CHECK(id.window() == o);
	CHECK_FALSE(id.at(0));
	CHECK(id.at(1));

	PixelSet const a{origin, {1, 0}, {1, 1}};
	auto const ero = kernel_by_enumeration(Mcg::from(chain({Vertex::erosion(a, w3)})));
	for (Mask m = 0; m < ero.table_size(); ++m)
		CHECK(ero.at(m) == a.is_subset_of(ero.window().set_of(m)));

	auto const comp = kernel_by_enumeration(Mcg::from(chain({Vertex::complement()})));
	CHECK(comp.at(0));
	CHECK_FALSE(comp.at(1));

	CHECK_THROWS_AS(kernel_by_enumeration(Mcg::from(chain({Vertex::asf(cross, Window::centered_square(5))}))),
	                WindowCapExceeded);
}

TEST_CASE("basis_of: examples")
{
	PixelSet const a{origin, {1, 0}, {1, 1}};
	auto const ero = basis_of(Mcg::from(chain({Vertex::erosion(a, w3)})));
	CHECK(ero == IntervalCollection::from_intervals(w3, {Interval::upper(a, w3)}));

	auto const id = basis_of(Mcg::from(chain({Vertex::sup_gen(Interval::upper(PixelSet{origin}, w3))})));
	CHECK(id == IntervalCollection::from_intervals(w3, {Interval::upper(PixelSet{origin}, w3)}));

	Interval const i(PixelSet{origin}, PixelSet{origin, {1, 0}, {0, 1}}, w3);
	auto const plain = basis_of(Mcg::from(chain({Vertex::sup_gen(i)})));
	auto const negated = basis_of(Mcg::from(chain({Vertex::sup_gen(i), Vertex::complement()})));
	CHECK(negated == collection_complement(plain));
}

TEST_CASE("basis_of agrees with the kernel oracle on random graphs")
{
	Rng rng = derive_rng(3, 0);
	for (int trial = 0; trial < 60; ++trial) {
		std::size_t const size = 1 + static_cast<std::size_t>(trial % 9);
		Mcg const g = oracle::random_graph(rng, size, size);
		IntervalCollection const b = basis_of(g);
		CHECK(b == oracle_basis(g));
		CHECK(b == maximal_intervals(kernel_by_enumeration(g)));
	}
}

TEST_CASE("evaluate is translation covariant on interior pixels")
{
	Rng rng = derive_rng(4, 0);
	for (int trial = 0; trial < 30; ++trial) {
		Mcg const g = oracle::random_graph(rng);
		int const r = oracle::reach(g);
		BinaryImage const x = oracle::random_image(40, 40, 0.5, rng);
		Point const h{static_cast<int>(uniform_below(rng, 5)) - 2, static_cast<int>(uniform_below(rng, 5)) - 2};
		BinaryImage const lhs = evaluate(g, translate(x, h));
		BinaryImage const rhs = translate(evaluate(g, x), h);
		int const m = r + 3;
		for (int y = m; y < 40 - m; ++y)
			for (int c = m; c < 40 - m; ++c)
				CHECK(lhs.get({c, y}) == rhs.get({c, y}));
	}
}

TEST_CASE("build_supgen_from_basis")
{
	auto const id = IntervalCollection::from_intervals(w3, {Interval::upper(PixelSet{origin}, w3)});
	Rng rng = derive_rng(5, 0);
	BinaryImage const x = oracle::random_image(16, 16, 0.5, rng);
	CHECK(evaluate(build_supgen_from_basis(id), x) == x);
	CHECK(evaluate(build_supgen_from_basis(IntervalCollection::top(w3)), x) == BinaryImage::full(16, 16));
	CHECK(evaluate(build_supgen_from_basis(IntervalCollection::bottom(w3)), x).empty());

	Window const box(PixelSet::box(0, 0, 2, 2));
	for (std::size_t t = 0; t < 65536; t += 97) {
		BooleanFn f(box);
		for (Mask m = 0; m < 16; ++m)
			f.set(m, (t >> m) & 1u);
		Mcg const g = build_supgen_from_basis(maximal_intervals(f));
		CHECK(validate(g.spec()).empty());
		oracle::Kernel const k = oracle::kernel_on_big_frame(g, box);
		for (Mask m = 0; m < 16; ++m)
			CHECK(k[m] == f.at(m));
	}

	for (int trial = 0; trial < 20; ++trial) {
		Mcg const g = oracle::random_graph(rng);
		Mcg const rebuilt = build_supgen_from_basis(basis_of(g));
		BinaryImage const y = oracle::random_image(24, 24, 0.5, rng);
		int const m = oracle::reach(g) + 2;
		BinaryImage const a = evaluate(g, y);
		BinaryImage const b = evaluate(rebuilt, y);
		for (int yy = m; yy < 24 - m; ++yy)
			for (int c = m; c < 24 - m; ++c)
				CHECK(a.get({c, yy}) == b.get({c, yy}));
	}
}

TEST_CASE("graph files round-trip and report errors")
{
	Rng rng = derive_rng(6, 0);
	for (int trial = 0; trial < 30; ++trial) {
		GraphSpec const g = oracle::random_graph_spec(rng, 6);
		CHECK(graph_from_json(graph_to_json(g)) == g);
	}
	CHECK_THROWS_AS(graph_from_json(""), ParseError);
	CHECK_THROWS_AS(graph_from_json(R"({"vertices": [{"id": 0, "kind": "bogus"}], "edges": []})"), ParseError);
	std::string const bad_interval = R"({"vertices": [
	    {"id": 0, "kind": "input"},
	    {"id": 1, "kind": "supgen", "params": {"A": ["1"], "B": ["o"]}},
	    {"id": 2, "kind": "output"}], "edges": [[0, 1], [1, 2]]})";
	CHECK_THROWS_AS(graph_from_json(bad_interval), ParseError);
	try {
		graph_from_json(bad_interval);
	} catch (ParseError const& e) {
		CHECK(std::string(e.what()).find("/vertices/1") != std::string::npos);
	}
}
