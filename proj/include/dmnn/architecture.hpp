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

#include "dmnn/mcg.hpp"
#include "dmnn/random.hpp"

#include <string>
#include <variant>
#include <vector>

namespace dmnn {

enum class LayerKind {
	SupGenSup, // supremum of k sup-generating operators
	InfGenInf, // infimum of k inf-generating operators
	Asf,
	Erosion,
	Dilation,
	Opening,
	Closing,
	Complement,
};

std::string_view to_string(LayerKind k);

struct LayerSpec {
	LayerKind kind = LayerKind::Erosion;
	int k = 1; // operator vertices of a combiner layer
	int d = 3; // window side; the window is the centered d x d square

	bool is_combiner() const { return kind == LayerKind::SupGenSup || kind == LayerKind::InfGenInf; }
	bool takes_set() const { return !is_combiner() && kind != LayerKind::Complement; }
	/// Number of parameter coordinates of the layer.
	std::size_t coordinates() const;
	Window window() const { return Window::centered_square(d); }

	friend bool operator==(LayerSpec const&, LayerSpec const&) = default;
};

/// Sequential composition of layers; the first one reads the input.
struct ArchitectureSpec {
	std::vector<LayerSpec> layers;

	/// Compact name, e.g. "asf3-8sg3-8sg3".
	std::string name() const;

	friend bool operator==(ArchitectureSpec const&, ArchitectureSpec const&) = default;
};

/// Throws ConfigError for non-positive k, even or non-positive d, or an
/// empty layer list.
void check_architecture(ArchitectureSpec const& a);

/// {"layers": [{"kind": "asf", "d": 3}, {"kind": "supgen", "k": 8, "d": 3}]}
/// Kinds: asf, supgen, infgen, erosion, dilation, opening, closing,
/// complement.
ArchitectureSpec architecture_from_json(std::string const& text);
std::string architecture_to_json(ArchitectureSpec const& a);
/// Parses names such as "asf3-8sg3-8sg3": asf<d>, <k>sg<d>, <k>ig<d>,
/// ero<d>, dil<d>, open<d>, close<d>, comp; separated by '-' or '_'.
ArchitectureSpec architecture_from_name(std::string const& name);

/// A parameter coordinate: a structuring element or an interval.
using Coord = std::variant<PixelSet, Interval>;

/// One point of the parameter lattice: the coordinates of each layer.
struct ParamVector {
	std::vector<std::vector<Coord>> layers;

	friend bool operator==(ParamVector const&, ParamVector const&) = default;
};

/// Throws ConfigError (naming the layer) when params do not fit the
/// architecture: wrong layer or coordinate count, wrong coordinate type,
/// or a coordinate outside the layer window.
void check_params(ArchitectureSpec const& a, ParamVector const& p);

/// The graph realized by the parameters: layers chained, combiner layers
/// fanning out into k operator vertices joined by Sup/Inf (none when k = 1).
Mcg compile(ArchitectureSpec const& a, ParamVector const& p);
/// Index, in compile()'s graph, of the vertex holding each layer's output.
std::vector<std::size_t> layer_output_vertices(ArchitectureSpec const& a);

/// Output of one layer applied to x.
BinaryImage apply_layer(LayerSpec const& l, std::vector<Coord> const& coords, BinaryImage const& x);
/// Same result as evaluate(compile(a, p), x), without building the graph.
BinaryImage apply_params(ArchitectureSpec const& a, ParamVector const& p, BinaryImage const& x);

/// A distance-one move: replaces coordinate `coord` of layer `layer` by
/// its `index`-th neighbor (set_neighbors / interval_neighbors order).
struct Move {
	std::size_t layer = 0;
	std::size_t coord = 0;
	std::size_t index = 0;

	friend auto operator<=>(Move const&, Move const&) = default;
};

std::size_t coord_neighbor_count(Coord const& c, Window const& w);
Coord coord_neighbor(Coord const& c, Window const& w, std::size_t index);

/// |N(C)|: sum of the per-coordinate neighborhood sizes.
std::size_t neighbor_count(ArchitectureSpec const& a, ParamVector const& p);
/// Every move, ordered by layer, coordinate and neighbor index.
std::vector<Move> all_moves(ArchitectureSpec const& a, ParamVector const& p);
ParamVector apply_move(ArchitectureSpec const& a, ParamVector const& p, Move const& m);
/// N(C) in the order of all_moves.
std::vector<ParamVector> param_neighbors(ArchitectureSpec const& a, ParamVector const& p);

/// n distinct moves drawn uniformly without replacement, in draw order.
/// When n >= |N(C)| the whole neighborhood is returned in canonical order
/// and the generator is left untouched.
std::vector<Move> sample_moves(ArchitectureSpec const& a, ParamVector const& p, std::size_t n, Rng& rng);
std::vector<ParamVector> sample_neighbors(ArchitectureSpec const& a, ParamVector const& p, std::size_t n,
                                          Rng& rng);

/// Parameters of the identity: sets {o}, intervals [{o}, W_d].
ParamVector identity_params(ArchitectureSpec const& a);
/// identity_params followed by `perturbation` uniformly chosen distance-one
/// moves on every coordinate.
ParamVector init_params(ArchitectureSpec const& a, Rng& rng, std::size_t perturbation = 2);

// Parameter files: a JSON envelope holding the architecture and, per layer,
// its structuring element or intervals as grids over the layer window.
std::string params_to_json(ArchitectureSpec const& a, ParamVector const& p);
/// Throws ParseError with layer diagnostics (including "invalid interval"
/// for A not inside B) or ConfigError when the shapes disagree with `a`.
ParamVector params_from_json(ArchitectureSpec const& a, std::string const& text);
/// Reads the architecture stored in a parameter file.
ArchitectureSpec architecture_of_params(std::string const& text);

} // namespace dmnn
