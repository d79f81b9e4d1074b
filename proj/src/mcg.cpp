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
#include "dmnn/mcg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

namespace dmnn {

namespace {

constexpr std::array<std::pair<VertexKind, std::string_view>, 13> kind_names{{
	{VertexKind::Input, "input"},
	{VertexKind::Output, "output"},
	{VertexKind::Sup, "sup"},
	{VertexKind::Inf, "inf"},
	{VertexKind::Erosion, "erosion"},
	{VertexKind::Dilation, "dilation"},
	{VertexKind::Opening, "opening"},
	{VertexKind::Closing, "closing"},
	{VertexKind::Asf, "asf"},
	{VertexKind::SupGen, "supgen"},
	{VertexKind::InfGen, "infgen"},
	{VertexKind::Complement, "complement"},
	{VertexKind::ConstEmpty, "empty"},
}};

} // namespace

std::string_view to_string(VertexKind k)
{
	for (auto const& [kind, name] : kind_names)
		if (kind == k)
			return name;
	return "?";
}

VertexKind vertex_kind_from_string(std::string_view s)
{
	for (auto const& [kind, name] : kind_names)
		if (name == s)
			return kind;
	throw ParseError("unknown vertex kind \"" + std::string(s) + "\"");
}

bool is_operator(VertexKind k)
{
	switch (k) {
	case VertexKind::Input:
	case VertexKind::Sup:
	case VertexKind::Inf:
		return false;
	default:
		return true;
	}
}

bool takes_struct_elem(VertexKind k)
{
	switch (k) {
	case VertexKind::Erosion:
	case VertexKind::Dilation:
	case VertexKind::Opening:
	case VertexKind::Closing:
	case VertexKind::Asf:
		return true;
	default:
		return false;
	}
}

Vertex Vertex::morph(VertexKind kind, StructElem se, std::optional<Window> base)
{
	if (!takes_struct_elem(kind))
		throw DomainError("vertex kind " + std::string(to_string(kind)) + " takes no structuring element");
	Window w = base ? std::move(*base) : Window(se);
	if (!w.contains(se))
		throw DomainError("structuring element is not contained in the vertex window");
	return {kind, std::move(se), {}, std::move(w)};
}

Vertex Vertex::sup_gen(Interval i)
{
	Window w = i.window();
	return {VertexKind::SupGen, {}, std::move(i), std::move(w)};
}

Vertex Vertex::inf_gen(Interval i)
{
	Window w = i.window();
	return {VertexKind::InfGen, {}, std::move(i), std::move(w)};
}

// ------------------------------------------------------------ validation

std::vector<Violation> validate(GraphSpec const& g)
{
	std::vector<Violation> out;
	std::size_t const n = g.vertices.size();

	if (n <= 2)
		out.push_back({"A1", {}, "graph has " + std::to_string(n) + " vertices; more than 2 are required"});

	std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
	std::vector<std::vector<std::size_t>> succ(n);
	std::set<Edge> seen;
	for (auto const& e : g.edges) {
		auto const [a, b] = e;
		if (a >= n || b >= n) {
			out.push_back({"edge", {}, "edge [" + std::to_string(a) + ", " + std::to_string(b) +
			                                "] references a missing vertex"});
			continue;
		}
		if (!seen.insert(e).second) {
			out.push_back({"edge", {a, b}, "duplicate edge"});
			continue;
		}
		++outdeg[a];
		++indeg[b];
		succ[a].push_back(b);
	}

	// Kahn's algorithm; whatever is left lies on or behind a cycle.
	{
		std::vector<std::size_t> deg = indeg, queue;
		for (std::size_t v = 0; v < n; ++v)
			if (deg[v] == 0)
				queue.push_back(v);
		std::size_t done = 0;
		while (!queue.empty()) {
			std::size_t const v = queue.back();
			queue.pop_back();
			++done;
			for (std::size_t w : succ[v])
				if (--deg[w] == 0)
					queue.push_back(w);
		}
		if (done < n) {
			std::vector<std::size_t> stuck;
			for (std::size_t v = 0; v < n; ++v)
				if (deg[v] > 0)
					stuck.push_back(v);
			out.push_back({"A1", stuck, "graph contains a cycle"});
		}
	}

	std::vector<std::size_t> sources, sinks, inputs, outputs;
	for (std::size_t v = 0; v < n; ++v) {
		if (indeg[v] == 0)
			sources.push_back(v);
		if (outdeg[v] == 0)
			sinks.push_back(v);
		if (g.vertices[v].kind == VertexKind::Input)
			inputs.push_back(v);
		if (g.vertices[v].kind == VertexKind::Output)
			outputs.push_back(v);
	}

	if (sources.size() != 1)
		out.push_back({"A2", sources, "expected exactly one vertex without incoming edges, found " +
		                                  std::to_string(sources.size())});
	if (inputs.size() != 1)
		out.push_back({"A2", inputs, "expected exactly one input vertex, found " + std::to_string(inputs.size())});
	for (std::size_t v : sources)
		if (g.vertices[v].kind != VertexKind::Input)
			out.push_back({"A2", {v}, "vertex without incoming edges is not the input vertex"});
	for (std::size_t v : inputs)
		if (indeg[v] != 0)
			out.push_back({"A2", {v}, "input vertex has incoming edges"});

	if (sinks.size() != 1)
		out.push_back({"A3", sinks, "expected exactly one vertex without outgoing edges, found " +
		                                std::to_string(sinks.size())});
	if (outputs.size() != 1)
		out.push_back({"A3", outputs, "expected exactly one output vertex, found " + std::to_string(outputs.size())});
	for (std::size_t v : sinks)
		if (g.vertices[v].kind != VertexKind::Output)
			out.push_back({"A3", {v}, "vertex has no outgoing edges but is not the output vertex"});
	for (std::size_t v : outputs)
		if (outdeg[v] != 0)
			out.push_back({"A3", {v}, "output vertex has outgoing edges"});

	for (std::size_t v = 0; v < n; ++v) {
		VertexKind const k = g.vertices[v].kind;
		if (is_operator(k) && indeg[v] != 1)
			out.push_back({"A4", {v}, std::string(to_string(k)) + " vertex has " + std::to_string(indeg[v]) +
			                              " inputs; exactly 1 is required"});
		if ((k == VertexKind::Sup || k == VertexKind::Inf) && indeg[v] < 2)
			out.push_back({"A5", {v}, std::string(to_string(k)) + " vertex has " + std::to_string(indeg[v]) +
			                              " inputs; at least 2 are required"});
	}
	return out;
}

std::string format_violations(std::vector<Violation> const& v)
{
	std::ostringstream os;
	for (auto const& x : v) {
		os << x.axiom << ": " << x.message;
		if (!x.vertices.empty()) {
			os << " (vertices";
			for (std::size_t i : x.vertices)
				os << ' ' << i;
			os << ')';
		}
		os << '\n';
	}
	return os.str();
}

Mcg Mcg::from(GraphSpec spec)
{
	auto const violations = validate(spec);
	if (!violations.empty())
		throw GraphError("invalid graph:\n" + format_violations(violations));

	Mcg g;
	std::size_t const n = spec.vertices.size();
	g.m_inputs.resize(n);
	std::vector<std::vector<std::size_t>> succ(n);
	for (auto [a, b] : spec.edges) {
		g.m_inputs[b].push_back(a);
		succ[a].push_back(b);
	}
	for (auto& in : g.m_inputs)
		std::sort(in.begin(), in.end());
	for (std::size_t v = 0; v < n; ++v) {
		if (spec.vertices[v].kind == VertexKind::Input)
			g.m_input = v;
		if (spec.vertices[v].kind == VertexKind::Output)
			g.m_output = v;
	}

	// Longest-path levels in topological order.
	std::vector<std::size_t> level(n, 0), deg(n), order;
	for (std::size_t v = 0; v < n; ++v)
		deg[v] = g.m_inputs[v].size();
	order.push_back(g.m_input);
	for (std::size_t i = 0; i < order.size(); ++i)
		for (std::size_t w : succ[order[i]]) {
			level[w] = std::max(level[w], level[order[i]] + 1);
			if (--deg[w] == 0)
				order.push_back(w);
		}
	std::size_t const depth = *std::max_element(level.begin(), level.end());
	g.m_levels.resize(depth + 1);
	for (std::size_t v = 0; v < n; ++v)
		g.m_levels[level[v]].push_back(v);
	for (auto const& l : g.m_levels)
		g.m_order.insert(g.m_order.end(), l.begin(), l.end());
	g.m_spec = std::move(spec);
	return g;
}

// ------------------------------------------------------------ evaluation

BinaryImage apply_vertex(Vertex const& v, std::span<BinaryImage const* const> in)
{
	if (in.empty())
		throw GraphError("vertex has no inputs");
	BinaryImage const& x = *in.front();
	switch (v.kind) {
	case VertexKind::Input:
	case VertexKind::Output:
		return x;
	case VertexKind::Sup: {
		BinaryImage acc = x;
		for (std::size_t i = 1; i < in.size(); ++i)
			acc |= *in[i];
		return acc;
	}
	case VertexKind::Inf: {
		BinaryImage acc = x;
		for (std::size_t i = 1; i < in.size(); ++i)
			acc &= *in[i];
		return acc;
	}
	case VertexKind::Erosion:
		return erode(x, v.se);
	case VertexKind::Dilation:
		return dilate(x, v.se);
	case VertexKind::Opening:
		return open(x, v.se);
	case VertexKind::Closing:
		return close(x, v.se);
	case VertexKind::Asf:
		return asf_layer(x, v.se);
	case VertexKind::SupGen:
		return sup_generating(x, *v.interval);
	case VertexKind::InfGen:
		return inf_generating(x, *v.interval);
	case VertexKind::Complement:
		return complement(x);
	case VertexKind::ConstEmpty:
		return BinaryImage(x.width(), x.height());
	}
	throw GraphError("unknown vertex kind");
}

std::vector<BinaryImage> evaluate_all(Mcg const& g, BinaryImage const& x)
{
	std::vector<BinaryImage> out(g.size());
	out[g.input_vertex()] = x;
	auto const& levels = g.levels();
	for (std::size_t l = 1; l < levels.size(); ++l) {
		auto const& level = levels[l];
		auto const count = static_cast<std::ptrdiff_t>(level.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
		for (std::ptrdiff_t i = 0; i < count; ++i) {
			std::size_t const v = level[static_cast<std::size_t>(i)];
			std::vector<BinaryImage const*> in;
			for (std::size_t u : g.inputs(v))
				in.push_back(&out[u]);
			out[v] = apply_vertex(g.vertex(v), in);
		}
	}
	return out;
}

BinaryImage evaluate(Mcg const& g, BinaryImage const& x)
{
	return std::move(evaluate_all(g, x)[g.output_vertex()]);
}

// ------------------------------------------------------------ windows

namespace {

Window singleton_origin()
{
	return Window(PixelSet{origin});
}

// Successive read offsets of a vertex operator; their Minkowski sum is the
// operator window. Empty for the identity-like kinds.
std::vector<Window> read_chain(Vertex const& v)
{
	Window const& b = v.base;
	switch (v.kind) {
	case VertexKind::Erosion:
	case VertexKind::SupGen:
		return {b};
	case VertexKind::Dilation:
	case VertexKind::InfGen:
		return {b.transposed()};
	case VertexKind::Opening: // δ_B reads ε_B's output at -b, which reads at +a
		return {b.transposed(), b};
	case VertexKind::Closing:
		return {b, b.transposed()};
	case VertexKind::Asf: // close(open(x))
		return {b, b.transposed(), b.transposed(), b};
	default:
		return {};
	}
}

} // namespace

Window operator_window(Vertex const& v)
{
	Window w = singleton_origin();
	for (auto const& step : read_chain(v))
		w = w + step;
	return w;
}

std::vector<Window> vertex_windows(Mcg const& g)
{
	std::vector<Window> w(g.size());
	for (std::size_t v : g.order()) {
		Vertex const& vx = g.vertex(v);
		auto const in = g.inputs(v);
		if (vx.kind == VertexKind::Input) {
			w[v] = singleton_origin();
		} else if (vx.kind == VertexKind::Sup || vx.kind == VertexKind::Inf) {
			PixelSet u;
			for (std::size_t i : in)
				u = set_union(u, w[i].support());
			w[v] = Window(std::move(u));
		} else {
			w[v] = w[in.front()] + operator_window(vx);
		}
	}
	return w;
}

Window window_of(Mcg const& g)
{
	return vertex_windows(g)[g.output_vertex()];
}

// ------------------------------------------------------------ kernel oracle

namespace {

// Region that must lie inside the frame so that evaluating the graph
// at the origin sees no clipping: every position at which some vertex
// output (or an operator's intermediate image) is consulted.
PixelSet demand_region(Mcg const& g, Window const& wg)
{
	std::vector<PixelSet> demand(g.size());
	demand[g.output_vertex()] = PixelSet{origin};
	PixelSet region = set_union(wg.support(), PixelSet{origin});
	auto const& order = g.order();
	for (auto it = order.rbegin(); it != order.rend(); ++it) {
		std::size_t const v = *it;
		PixelSet const& d = demand[v];
		region = set_union(region, d);
		PixelSet reach = d;
		for (auto const& step : read_chain(g.vertex(v))) {
			reach = minkowski_sum(reach, step.support());
			region = set_union(region, reach);
		}
		for (std::size_t u : g.inputs(v))
			demand[u] = set_union(demand[u], reach);
	}
	return region;
}

} // namespace

BooleanFn kernel_by_enumeration(Mcg const& g, std::size_t cap)
{
	Window const w = window_of(g);
	BooleanFn f(w, cap);
	auto const [lo, hi] = demand_region(g, w).bounds();
	int const bw = hi.x - lo.x + 1;
	int const bh = hi.y - lo.y + 1;

	// Many placements are evaluated at once, tiled in disjoint boxes; each
	// box holds the whole demand region of its own placement.
	std::size_t const total = f.table_size();
	std::size_t const box = static_cast<std::size_t>(bw) * static_cast<std::size_t>(bh);
	std::size_t const per_batch = std::clamp<std::size_t>((std::size_t{1} << 22) / box, 1, total);
	int const cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(per_batch))));
	auto const support = w.support().points();

	for (std::size_t first = 0; first < total; first += per_batch) {
		std::size_t const count = std::min(per_batch, total - first);
		int const rows = static_cast<int>((count + static_cast<std::size_t>(cols) - 1) / static_cast<std::size_t>(cols));
		BinaryImage x(cols * bw, rows * bh);
		auto anchor = [&](std::size_t j) {
			int const c = static_cast<int>(j % static_cast<std::size_t>(cols));
			int const r = static_cast<int>(j / static_cast<std::size_t>(cols));
			return Point{c * bw - lo.x, r * bh - lo.y};
		};
		for (std::size_t j = 0; j < count; ++j) {
			Mask const m = first + j;
			for (std::size_t i = 0; i < support.size(); ++i)
				if ((m >> i) & 1u)
					x.set(anchor(j) + support[i], true);
		}
		BinaryImage const y = evaluate(g, x);
		for (std::size_t j = 0; j < count; ++j)
			f.set(first + j, y.get(anchor(j)));
	}
	return f;
}

// ------------------------------------------------------------ constructor

Mcg build_supgen_from_basis(IntervalCollection const& b)
{
	GraphSpec g;
	std::size_t const in = g.add(Vertex::input());
	std::vector<std::size_t> ops;
	if (b.empty()) {
		ops.push_back(g.add(Vertex::const_empty()));
		g.connect(in, ops.back());
	}
	for (auto const& i : b.intervals()) {
		ops.push_back(g.add(Vertex::sup_gen(i)));
		g.connect(in, ops.back());
	}
	std::size_t last = ops.front();
	if (ops.size() > 1) {
		last = g.add(Vertex::sup());
		for (std::size_t v : ops)
			g.connect(v, last);
	}
	std::size_t const out = g.add(Vertex::output());
	g.connect(last, out);
	return Mcg::from(std::move(g));
}

} // namespace dmnn
