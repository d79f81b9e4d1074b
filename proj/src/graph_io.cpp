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
#include "dmnn/text_grid.hpp"

#include <json.hpp>

#include <map>

namespace dmnn {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::string const& path, std::string const& what)
{
	throw ParseError("graph " + path + ": " + what);
}

std::vector<std::string> grid_rows(json const& j, std::string const& path)
{
	if (!j.is_array())
		fail(path, "expected an array of grid rows");
	std::vector<std::string> rows;
	for (auto const& r : j) {
		if (!r.is_string())
			fail(path, "grid rows must be strings");
		rows.push_back(r.get<std::string>());
	}
	return rows;
}

ParsedGrid grid_at(json const& params, char const* key, std::string const& path)
{
	std::string const p = path + "/" + key;
	if (!params.contains(key))
		fail(p, "missing");
	try {
		return parse_grid(grid_rows(params.at(key), p));
	} catch (ParseError const& e) {
		fail(p, e.what());
	}
}

json grid_json(std::vector<std::string> const& rows)
{
	return json(rows);
}

} // namespace

GraphSpec graph_from_json(std::string const& text)
{
	json doc;
	try {
		doc = json::parse(text);
	} catch (json::parse_error const& e) {
		throw ParseError(std::string("graph: ") + e.what());
	}
	if (!doc.is_object())
		fail("/", "expected an object");
	if (!doc.contains("vertices") || !doc["vertices"].is_array())
		fail("/vertices", "missing or not an array");
	if (!doc.contains("edges") || !doc["edges"].is_array())
		fail("/edges", "missing or not an array");

	GraphSpec g;
	std::map<long long, std::size_t> index_of;
	auto const& vertices = doc["vertices"];
	for (std::size_t i = 0; i < vertices.size(); ++i) {
		std::string const path = "/vertices/" + std::to_string(i);
		auto const& jv = vertices[i];
		if (!jv.is_object())
			fail(path, "expected an object");
		long long id = static_cast<long long>(i);
		if (jv.contains("id")) {
			if (!jv["id"].is_number_integer())
				fail(path + "/id", "expected an integer");
			id = jv["id"].get<long long>();
		}
		if (!index_of.emplace(id, i).second)
			fail(path + "/id", "duplicate id " + std::to_string(id));
		if (!jv.contains("kind") || !jv["kind"].is_string())
			fail(path + "/kind", "missing or not a string");
		VertexKind kind;
		try {
			kind = vertex_kind_from_string(jv["kind"].get<std::string>());
		} catch (ParseError const& e) {
			fail(path + "/kind", e.what());
		}
		json const params = jv.value("params", json::object());
		std::string const ppath = path + "/params";
		try {
			if (takes_struct_elem(kind)) {
				ParsedGrid se = grid_at(params, "se", ppath);
				g.add(Vertex::morph(kind, std::move(se.members), Window(std::move(se.in_window))));
			} else if (kind == VertexKind::SupGen || kind == VertexKind::InfGen) {
				ParsedGrid a = grid_at(params, "A", ppath);
				ParsedGrid b = grid_at(params, "B", ppath);
				if (!(a.in_window == b.in_window))
					fail(ppath, "grids A and B are drawn over different windows");
				Interval i(std::move(a.members), std::move(b.members), Window(std::move(a.in_window)));
				g.add(kind == VertexKind::SupGen ? Vertex::sup_gen(std::move(i)) : Vertex::inf_gen(std::move(i)));
			} else {
				g.add(Vertex{kind, {}, {}, {}});
			}
		} catch (InvalidInterval const& e) {
			fail(ppath, e.what());
		} catch (DomainError const& e) {
			fail(ppath, e.what());
		}
	}

	auto const& edges = doc["edges"];
	for (std::size_t i = 0; i < edges.size(); ++i) {
		std::string const path = "/edges/" + std::to_string(i);
		auto const& je = edges[i];
		if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() || !je[1].is_number_integer())
			fail(path, "expected [from, to]");
		auto lookup = [&](json const& id) {
			auto it = index_of.find(id.get<long long>());
			if (it == index_of.end())
				fail(path, "unknown vertex id " + id.dump());
			return it->second;
		};
		g.connect(lookup(je[0]), lookup(je[1]));
	}
	return g;
}

std::string graph_to_json(GraphSpec const& g)
{
	json vertices = json::array();
	for (std::size_t i = 0; i < g.vertices.size(); ++i) {
		Vertex const& v = g.vertices[i];
		json jv{{"id", i}, {"kind", std::string(to_string(v.kind))}};
		if (takes_struct_elem(v.kind)) {
			jv["params"] = {{"se", grid_json(set_to_grid(v.se, v.base))}};
		} else if (v.interval) {
			jv["params"] = {{"A", grid_json(set_to_grid(v.interval->left(), v.interval->window()))},
			                {"B", grid_json(set_to_grid(v.interval->right(), v.interval->window()))}};
		}
		vertices.push_back(std::move(jv));
	}
	json edges = json::array();
	for (auto [a, b] : g.edges)
		edges.push_back({a, b});
	return json{{"vertices", vertices}, {"edges", edges}}.dump(2) + "\n";
}

} // namespace dmnn
