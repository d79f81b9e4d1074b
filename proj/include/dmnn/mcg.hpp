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
#pragma once

#include "dmnn/errors.hpp"
#include "dmnn/image.hpp"
#include "dmnn/lattice.hpp"
#include "dmnn/morphology.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dmnn {

/// Raised when an unvalidated or malformed graph is used.
class GraphError : public Error {
public:
	using Error::Error;
};

enum class VertexKind {
	Input,
	Output,
	Sup,
	Inf,
	Erosion,
	Dilation,
	Opening,
	Closing,
	Asf,
	SupGen,
	InfGen,
	Complement,
	ConstEmpty,
};

std::string_view to_string(VertexKind k);
/// Inverse of to_string; throws ParseError on unknown names.
VertexKind vertex_kind_from_string(std::string_view s);

/// True for kinds that apply a one-input set operator (Output included,
/// since it computes the identity).
bool is_operator(VertexKind k);
/// Erosion, Dilation, Opening, Closing and Asf: parameterized by a set.
bool takes_struct_elem(VertexKind k);

/// A vertex and the parameters of the operator it computes.
///
/// `base` is the window the parameter lives in: it contains the structuring
/// element, or equals the interval window. Windows of the graph are
/// propagated from these, so a larger base yields a larger (still valid)
/// window.
struct Vertex {
	VertexKind kind = VertexKind::Input;
	StructElem se;
	std::optional<Interval> interval;
	Window base;

	static Vertex input() { return {VertexKind::Input, {}, {}, {}}; }
	static Vertex output() { return {VertexKind::Output, {}, {}, {}}; }
	static Vertex sup() { return {VertexKind::Sup, {}, {}, {}}; }
	static Vertex inf() { return {VertexKind::Inf, {}, {}, {}}; }
	static Vertex complement() { return {VertexKind::Complement, {}, {}, {}}; }
	static Vertex const_empty() { return {VertexKind::ConstEmpty, {}, {}, {}}; }
	/// Set-parameterized operator; `base` defaults to the structuring element.
	/// Throws DomainError when se is not inside base.
	static Vertex morph(VertexKind kind, StructElem se, std::optional<Window> base = std::nullopt);
	static Vertex erosion(StructElem se, std::optional<Window> base = std::nullopt) { return morph(VertexKind::Erosion, std::move(se), std::move(base)); }
	static Vertex dilation(StructElem se, std::optional<Window> base = std::nullopt) { return morph(VertexKind::Dilation, std::move(se), std::move(base)); }
	static Vertex opening(StructElem se, std::optional<Window> base = std::nullopt) { return morph(VertexKind::Opening, std::move(se), std::move(base)); }
	static Vertex closing(StructElem se, std::optional<Window> base = std::nullopt) { return morph(VertexKind::Closing, std::move(se), std::move(base)); }
	static Vertex asf(StructElem se, std::optional<Window> base = std::nullopt) { return morph(VertexKind::Asf, std::move(se), std::move(base)); }
	static Vertex sup_gen(Interval i);
	static Vertex inf_gen(Interval i);

	friend bool operator==(Vertex const&, Vertex const&) = default;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Unvalidated graph description.
struct GraphSpec {
	std::vector<Vertex> vertices;
	std::vector<Edge> edges;

	std::size_t add(Vertex v)
	{
		vertices.push_back(std::move(v));
		return vertices.size() - 1;
	}
	void connect(std::size_t from, std::size_t to) { edges.emplace_back(from, to); }

	friend bool operator==(GraphSpec const&, GraphSpec const&) = default;
};

struct Violation {
	std::string axiom; // "A1".."A5", or "edge" for malformed edge entries
	std::vector<std::size_t> vertices;
	std::string message;
};

/// Structural check of the graph axioms: acyclic with more than two
/// vertices (A1); a unique source, of kind Input (A2); a unique sink, of kind
/// Output, and out-degree >= 1 elsewhere (A3); in-degree 1 for operator
/// vertices (A4); in-degree >= 2 for Sup/Inf (A5). Never throws.
std::vector<Violation> validate(GraphSpec const& g);

std::string format_violations(std::vector<Violation> const& v);

/// A graph that passed validate(). Only obtainable through Mcg::from, so
/// every evaluation entry point works on validated graphs.
class Mcg {
public:
	/// Throws GraphError listing every violation.
	static Mcg from(GraphSpec spec);

	GraphSpec const& spec() const { return m_spec; }
	std::size_t size() const { return m_spec.vertices.size(); }
	Vertex const& vertex(std::size_t v) const { return m_spec.vertices[v]; }
	/// Predecessors of v in ascending index order.
	std::span<std::size_t const> inputs(std::size_t v) const { return m_inputs[v]; }
	std::size_t input_vertex() const { return m_input; }
	std::size_t output_vertex() const { return m_output; }
	/// Vertices grouped by longest distance from the input; each level only
	/// depends on earlier ones.
	std::vector<std::vector<std::size_t>> const& levels() const { return m_levels; }
	/// Topological order (levels concatenated).
	std::vector<std::size_t> const& order() const { return m_order; }

private:
	Mcg() = default;

	GraphSpec m_spec;
	std::vector<std::vector<std::size_t>> m_inputs;
	std::vector<std::vector<std::size_t>> m_levels;
	std::vector<std::size_t> m_order;
	std::size_t m_input = 0;
	std::size_t m_output = 0;
};

/// Applies the operator of a single vertex to its input images (one for
/// operator vertices, two or more for Sup/Inf, folded in the given order).
BinaryImage apply_vertex(Vertex const& v, std::span<BinaryImage const* const> inputs);

/// Output of every vertex. Vertices of one level run concurrently; Sup/Inf
/// fold their inputs in ascending vertex order.
std::vector<BinaryImage> evaluate_all(Mcg const& g, BinaryImage const& x);
/// ψ_G(X).
BinaryImage evaluate(Mcg const& g, BinaryImage const& x);

/// Window through which the operator of one vertex reads its input.
Window operator_window(Vertex const& v);
/// Window of every vertex's output as a function of the graph input.
std::vector<Window> vertex_windows(Mcg const& g);
/// A window within which ψ_G is locally defined (not necessarily minimal).
Window window_of(Mcg const& g);

/// Characteristic function of ψ_G on window_of(g), obtained by evaluating
/// the graph on every subset of the window. Throws WindowCapExceeded.
BooleanFn kernel_by_enumeration(Mcg const& g, std::size_t cap = default_table_cap);

/// Basis of ψ_G on window_of(g), propagated vertex by vertex through the
/// lattice operations. Throws WindowCapExceeded when any intermediate
/// window exceeds the cap.
IntervalCollection basis_of(Mcg const& g, std::size_t cap = default_table_cap);

/// Basis of ε_A ∘ ψ (resp. δ_B ∘ ψ) from the basis of ψ, expressed on
/// `target`, which must contain W ⊕ A (resp. W ⊕ B^t).
IntervalCollection erosion_basis(IntervalCollection const& b, StructElem const& a,
                                 Window const& target, std::size_t cap = default_table_cap);
IntervalCollection dilation_basis(IntervalCollection const& b, StructElem const& se,
                                  Window const& target, std::size_t cap = default_table_cap);

/// Input -> one SupGen vertex per interval -> Sup (omitted for a single
/// interval) -> Output. An empty basis yields Input -> ConstEmpty -> Output.
Mcg build_supgen_from_basis(IntervalCollection const& b);

// Graph description files (JSON):
//   {"vertices": [{"id": 0, "kind": "input"},
//                 {"id": 1, "kind": "erosion", "params": {"se": [...grid rows...]}},
//                 {"id": 2, "kind": "supgen", "params": {"A": [...], "B": [...]}},
//                 {"id": 3, "kind": "output"}],
//    "edges": [[0, 1], [1, 2], [2, 3]]}
// Grids follow the text_grid conventions: a structuring element is drawn
// over the vertex window ('0' cells belong to the window only), and both
// interval grids are drawn over the interval window.
GraphSpec graph_from_json(std::string const& text);
std::string graph_to_json(GraphSpec const& g);

} // namespace dmnn
