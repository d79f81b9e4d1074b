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
#include "dmnn/architecture.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace dmnn {

using nlohmann::json;

namespace {

struct KindInfo {
	LayerKind kind;
	std::string_view json_name;
	std::string_view short_name;
	VertexKind vertex;
};

constexpr KindInfo kind_table[] = {
	{LayerKind::SupGenSup, "supgen", "sg", VertexKind::SupGen},
	{LayerKind::InfGenInf, "infgen", "ig", VertexKind::InfGen},
	{LayerKind::Asf, "asf", "asf", VertexKind::Asf},
	{LayerKind::Erosion, "erosion", "ero", VertexKind::Erosion},
	{LayerKind::Dilation, "dilation", "dil", VertexKind::Dilation},
	{LayerKind::Opening, "opening", "open", VertexKind::Opening},
	{LayerKind::Closing, "closing", "close", VertexKind::Closing},
	{LayerKind::Complement, "complement", "comp", VertexKind::Complement},
};

KindInfo const& info(LayerKind k)
{
	for (auto const& i : kind_table)
		if (i.kind == k)
			return i;
	throw ConfigError("unknown layer kind");
}

std::string layer_label(std::size_t l)
{
	return "layer " + std::to_string(l);
}

} // namespace

std::string_view to_string(LayerKind k)
{
	return info(k).json_name;
}

std::size_t LayerSpec::coordinates() const
{
	if (is_combiner())
		return static_cast<std::size_t>(k);
	return takes_set() ? 1 : 0;
}

std::string ArchitectureSpec::name() const
{
	std::string out;
	for (auto const& l : layers) {
		if (!out.empty())
			out += '-';
		if (l.kind == LayerKind::Complement) {
			out += "comp";
			continue;
		}
		if (l.is_combiner())
			out += std::to_string(l.k);
		out += info(l.kind).short_name;
		out += std::to_string(l.d);
	}
	return out;
}

void check_architecture(ArchitectureSpec const& a)
{
	if (a.layers.empty())
		throw ConfigError("architecture has no layers");
	for (std::size_t i = 0; i < a.layers.size(); ++i) {
		auto const& l = a.layers[i];
		if (l.k < 1)
			throw ConfigError(layer_label(i) + ": k must be at least 1");
		if (l.d < 1 || l.d % 2 == 0)
			throw ConfigError(layer_label(i) + ": d must be odd and positive");
	}
}

ArchitectureSpec architecture_from_json(std::string const& text)
{
	json doc;
	try {
		doc = json::parse(text);
	} catch (json::parse_error const& e) {
		throw ConfigError(std::string("architecture: ") + e.what());
	}
	if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array())
		throw ConfigError("architecture /layers: missing or not an array");
	ArchitectureSpec a;
	for (std::size_t i = 0; i < doc["layers"].size(); ++i) {
		auto const& jl = doc["layers"][i];
		std::string const path = "architecture /layers/" + std::to_string(i);
		if (!jl.is_object() || !jl.contains("kind") || !jl["kind"].is_string())
			throw ConfigError(path + "/kind: missing or not a string");
		std::string const kind = jl["kind"].get<std::string>();
		LayerSpec l;
		bool found = false;
		for (auto const& k : kind_table)
			if (k.json_name == kind) {
				l.kind = k.kind;
				found = true;
			}
		if (!found)
			throw ConfigError(path + "/kind: unknown layer kind \"" + kind + "\"");
		for (char const* key : {"k", "d"})
			if (jl.contains(key) && !jl[key].is_number_integer())
				throw ConfigError(path + "/" + key + ": expected an integer");
		l.k = jl.value("k", 1);
		l.d = jl.value("d", l.kind == LayerKind::Complement ? 1 : 3);
		a.layers.push_back(l);
	}
	check_architecture(a);
	return a;
}

std::string architecture_to_json(ArchitectureSpec const& a)
{
	json layers = json::array();
	for (auto const& l : a.layers) {
		json jl{{"kind", std::string(info(l.kind).json_name)}};
		if (l.is_combiner())
			jl["k"] = l.k;
		if (l.kind != LayerKind::Complement)
			jl["d"] = l.d;
		layers.push_back(std::move(jl));
	}
	return json{{"layers", layers}}.dump();
}

ArchitectureSpec architecture_from_name(std::string const& name)
{
	ArchitectureSpec a;
	std::string token;
	auto bad = [&](std::string const& why) {
		return ConfigError("architecture name \"" + name + "\": " + why);
	};
	std::string normalized = name;
	for (char& c : normalized)
		if (c == '_')
			c = '-';
	std::istringstream parts(normalized);
	while (std::getline(parts, token, '-')) {
		if (token.empty())
			throw bad("empty layer token");
		for (char& c : token)
			c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
		if (token == "comp") {
			a.layers.push_back({LayerKind::Complement, 1, 1});
			continue;
		}
		std::size_t p = 0;
		while (p < token.size() && std::isdigit(static_cast<unsigned char>(token[p])))
			++p;
		std::string const count = token.substr(0, p);
		std::size_t q = p;
		while (q < token.size() && std::isalpha(static_cast<unsigned char>(token[q])))
			++q;
		std::string const word = token.substr(p, q - p);
		std::string const side = token.substr(q);
		if (side.empty() || side.find_first_not_of("0123456789") != std::string::npos)
			throw bad("layer \"" + token + "\" needs a window side, e.g. asf3");
		LayerSpec l;
		bool found = false;
		for (auto const& k : kind_table)
			if (k.short_name == word) {
				l.kind = k.kind;
				found = true;
			}
		if (!found || l.kind == LayerKind::Complement)
			throw bad("unknown layer \"" + token + "\"");
		if (!count.empty() && !l.is_combiner())
			throw bad("only sg/ig layers take a count");
		l.k = count.empty() ? 1 : std::stoi(count);
		l.d = std::stoi(side);
		a.layers.push_back(l);
	}
	check_architecture(a);
	return a;
}

// ------------------------------------------------------------ parameters

void check_params(ArchitectureSpec const& a, ParamVector const& p)
{
	if (p.layers.size() != a.layers.size())
		throw ConfigError("parameters have " + std::to_string(p.layers.size()) + " layers, architecture has " +
		                  std::to_string(a.layers.size()));
	for (std::size_t i = 0; i < a.layers.size(); ++i) {
		auto const& l = a.layers[i];
		auto const& coords = p.layers[i];
		if (coords.size() != l.coordinates())
			throw ConfigError(layer_label(i) + ": expected " + std::to_string(l.coordinates()) +
			                  " parameters, got " + std::to_string(coords.size()));
		Window const w = l.window();
		for (auto const& c : coords) {
			if (l.is_combiner()) {
				auto const* iv = std::get_if<Interval>(&c);
				if (!iv)
					throw ConfigError(layer_label(i) + ": expected intervals");
				if (!(iv->window() == w))
					throw ConfigError(layer_label(i) + ": interval window differs from the layer window");
			} else {
				auto const* s = std::get_if<PixelSet>(&c);
				if (!s)
					throw ConfigError(layer_label(i) + ": expected a structuring element");
				if (!w.contains(*s))
					throw ConfigError(layer_label(i) + ": structuring element exceeds the layer window");
			}
		}
	}
}

std::vector<std::size_t> layer_output_vertices(ArchitectureSpec const& a)
{
	std::vector<std::size_t> out;
	std::size_t next = 1; // vertex 0 is the input
	for (auto const& l : a.layers) {
		if (l.is_combiner()) {
			next += static_cast<std::size_t>(l.k);
			if (l.k > 1)
				++next;
		} else {
			++next;
		}
		out.push_back(next - 1);
	}
	return out;
}

Mcg compile(ArchitectureSpec const& a, ParamVector const& p)
{
	check_architecture(a);
	check_params(a, p);
	GraphSpec g;
	std::size_t prev = g.add(Vertex::input());
	for (std::size_t i = 0; i < a.layers.size(); ++i) {
		auto const& l = a.layers[i];
		auto const& coords = p.layers[i];
		std::size_t v;
		if (l.is_combiner()) {
			std::vector<std::size_t> ops;
			for (auto const& c : coords) {
				Interval const& iv = std::get<Interval>(c);
				ops.push_back(g.add(l.kind == LayerKind::SupGenSup ? Vertex::sup_gen(iv) : Vertex::inf_gen(iv)));
				g.connect(prev, ops.back());
			}
			v = ops.front();
			if (ops.size() > 1) {
				v = g.add(l.kind == LayerKind::SupGenSup ? Vertex::sup() : Vertex::inf());
				for (std::size_t o : ops)
					g.connect(o, v);
			}
		} else if (l.kind == LayerKind::Complement) {
			v = g.add(Vertex::complement());
			g.connect(prev, v);
		} else {
			v = g.add(Vertex::morph(info(l.kind).vertex, std::get<PixelSet>(coords.front()), l.window()));
			g.connect(prev, v);
		}
		prev = v;
	}
	std::size_t const out = g.add(Vertex::output());
	g.connect(prev, out);
	return Mcg::from(std::move(g));
}

BinaryImage apply_layer(LayerSpec const& l, std::vector<Coord> const& coords, BinaryImage const& x)
{
	switch (l.kind) {
	case LayerKind::SupGenSup:
	case LayerKind::InfGenInf: {
		bool const sup = l.kind == LayerKind::SupGenSup;
		BinaryImage acc;
		for (std::size_t c = 0; c < coords.size(); ++c) {
			Interval const& iv = std::get<Interval>(coords[c]);
			BinaryImage y = sup ? sup_generating(x, iv) : inf_generating(x, iv);
			if (c == 0)
				acc = std::move(y);
			else if (sup)
				acc |= y;
			else
				acc &= y;
		}
		return acc;
	}
	case LayerKind::Asf:
		return asf_layer(x, std::get<PixelSet>(coords.front()));
	case LayerKind::Erosion:
		return erode(x, std::get<PixelSet>(coords.front()));
	case LayerKind::Dilation:
		return dilate(x, std::get<PixelSet>(coords.front()));
	case LayerKind::Opening:
		return open(x, std::get<PixelSet>(coords.front()));
	case LayerKind::Closing:
		return close(x, std::get<PixelSet>(coords.front()));
	case LayerKind::Complement:
		return complement(x);
	}
	throw ConfigError("unknown layer kind");
}

BinaryImage apply_params(ArchitectureSpec const& a, ParamVector const& p, BinaryImage const& x)
{
	BinaryImage y = x;
	for (std::size_t i = 0; i < a.layers.size(); ++i)
		y = apply_layer(a.layers[i], p.layers[i], y);
	return y;
}

// ------------------------------------------------------------ neighborhoods

std::size_t coord_neighbor_count(Coord const& c, Window const& w)
{
	if (auto const* iv = std::get_if<Interval>(&c))
		return interval_neighbor_count(*iv);
	return w.size();
}

Coord coord_neighbor(Coord const& c, Window const& w, std::size_t index)
{
	if (auto const* iv = std::get_if<Interval>(&c)) {
		// Same order as interval_neighbors, without building the whole list.
		PixelSet const& a = iv->left();
		PixelSet const& b = iv->right();
		PixelSet const free = set_difference(b, a);
		PixelSet const outside = set_difference(iv->window().support(), b);
		if (index < a.size())
			return Interval(a.without(a[index]), b, iv->window());
		index -= a.size();
		if (index < free.size())
			return Interval(a.with(free[index]), b, iv->window());
		index -= free.size();
		if (index < free.size())
			return Interval(a, b.without(free[index]), iv->window());
		index -= free.size();
		if (index < outside.size())
			return Interval(a, b.with(outside[index]), iv->window());
		throw DomainError("neighbor index out of range");
	}
	PixelSet const& s = std::get<PixelSet>(c);
	if (index >= w.size())
		throw DomainError("neighbor index out of range");
	Point const q = w.support()[index];
	return s.contains(q) ? s.without(q) : s.with(q);
}

std::size_t neighbor_count(ArchitectureSpec const& a, ParamVector const& p)
{
	std::size_t n = 0;
	for (std::size_t l = 0; l < a.layers.size(); ++l) {
		Window const w = a.layers[l].window();
		for (auto const& c : p.layers[l])
			n += coord_neighbor_count(c, w);
	}
	return n;
}

std::vector<Move> all_moves(ArchitectureSpec const& a, ParamVector const& p)
{
	std::vector<Move> out;
	for (std::size_t l = 0; l < a.layers.size(); ++l) {
		Window const w = a.layers[l].window();
		for (std::size_t c = 0; c < p.layers[l].size(); ++c) {
			std::size_t const n = coord_neighbor_count(p.layers[l][c], w);
			for (std::size_t i = 0; i < n; ++i)
				out.push_back({l, c, i});
		}
	}
	return out;
}

ParamVector apply_move(ArchitectureSpec const& a, ParamVector const& p, Move const& m)
{
	ParamVector q = p;
	q.layers.at(m.layer).at(m.coord) = coord_neighbor(p.layers[m.layer][m.coord], a.layers[m.layer].window(), m.index);
	return q;
}

std::vector<ParamVector> param_neighbors(ArchitectureSpec const& a, ParamVector const& p)
{
	std::vector<ParamVector> out;
	for (auto const& m : all_moves(a, p))
		out.push_back(apply_move(a, p, m));
	return out;
}

std::vector<Move> sample_moves(ArchitectureSpec const& a, ParamVector const& p, std::size_t n, Rng& rng)
{
	std::vector<Move> moves = all_moves(a, p);
	if (n >= moves.size())
		return moves;
	// Partial Fisher-Yates: the first n slots end up a uniform sample.
	for (std::size_t i = 0; i < n; ++i)
		std::swap(moves[i], moves[i + uniform_below(rng, moves.size() - i)]);
	moves.resize(n);
	return moves;
}

std::vector<ParamVector> sample_neighbors(ArchitectureSpec const& a, ParamVector const& p, std::size_t n,
                                          Rng& rng)
{
	std::vector<ParamVector> out;
	for (auto const& m : sample_moves(a, p, n, rng))
		out.push_back(apply_move(a, p, m));
	return out;
}

ParamVector identity_params(ArchitectureSpec const& a)
{
	check_architecture(a);
	ParamVector p;
	for (auto const& l : a.layers) {
		std::vector<Coord> coords;
		for (std::size_t c = 0; c < l.coordinates(); ++c) {
			if (l.is_combiner())
				coords.emplace_back(Interval::upper(PixelSet{origin}, l.window()));
			else
				coords.emplace_back(PixelSet{origin});
		}
		p.layers.push_back(std::move(coords));
	}
	return p;
}

ParamVector init_params(ArchitectureSpec const& a, Rng& rng, std::size_t perturbation)
{
	ParamVector p = identity_params(a);
	for (std::size_t l = 0; l < a.layers.size(); ++l) {
		Window const w = a.layers[l].window();
		for (auto& c : p.layers[l])
			for (std::size_t s = 0; s < perturbation; ++s) {
				std::size_t const n = coord_neighbor_count(c, w);
				if (n == 0)
					break;
				c = coord_neighbor(c, w, uniform_below(rng, n));
			}
	}
	return p;
}

} // namespace dmnn
