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
#include "dmnn/text_grid.hpp"

#include <json.hpp>

namespace dmnn {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::string const& where, std::string const& what)
{
	throw ParseError("params " + where + ": " + what);
}

json parse_document(std::string const& text)
{
	if (text.find_first_not_of(" \t\r\n") == std::string::npos)
		fail("file", "empty document");
	try {
		return json::parse(text);
	} catch (json::parse_error const& e) {
		fail("file", e.what());
	}
}

std::vector<std::string> rows_at(json const& j, std::string const& where)
{
	if (!j.is_array())
		fail(where, "expected an array of grid rows");
	std::vector<std::string> rows;
	for (auto const& r : j) {
		if (!r.is_string())
			fail(where, "grid rows must be strings");
		rows.push_back(r.get<std::string>());
	}
	return rows;
}

PixelSet set_at(json const& j, char const* key, Window const& w, std::string const& where)
{
	if (!j.contains(key))
		fail(where + "/" + key, "missing");
	try {
		return parse_set_grid(rows_at(j[key], where + "/" + key), w);
	} catch (ParseError const& e) {
		fail(where + "/" + key, e.what());
	}
}

} // namespace

std::string params_to_json(ArchitectureSpec const& a, ParamVector const& p)
{
	check_params(a, p);
	json layers = json::array();
	for (std::size_t i = 0; i < a.layers.size(); ++i) {
		auto const& l = a.layers[i];
		Window const w = l.window();
		json jl{{"index", i}, {"kind", std::string(to_string(l.kind))}};
		if (l.is_combiner())
			jl["k"] = l.k;
		if (l.kind != LayerKind::Complement)
			jl["d"] = l.d;
		if (l.is_combiner()) {
			json intervals = json::array();
			for (auto const& c : p.layers[i]) {
				Interval const& iv = std::get<Interval>(c);
				intervals.push_back({{"A", set_to_grid(iv.left(), w)}, {"B", set_to_grid(iv.right(), w)}});
			}
			jl["intervals"] = std::move(intervals);
		} else if (l.takes_set()) {
			jl["se"] = set_to_grid(std::get<PixelSet>(p.layers[i].front()), w);
		}
		layers.push_back(std::move(jl));
	}
	json doc{{"architecture", json::parse(architecture_to_json(a))}, {"layers", layers}};
	return doc.dump(2) + "\n";
}

ArchitectureSpec architecture_of_params(std::string const& text)
{
	json const doc = parse_document(text);
	if (!doc.is_object() || !doc.contains("architecture"))
		fail("/architecture", "missing");
	return architecture_from_json(doc["architecture"].dump());
}

ParamVector params_from_json(ArchitectureSpec const& a, std::string const& text)
{
	json const doc = parse_document(text);
	if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array())
		fail("/layers", "missing or not an array");
	auto const& jl = doc["layers"];
	if (jl.size() != a.layers.size())
		throw ConfigError("params /layers: file has " + std::to_string(jl.size()) + " layers, architecture has " +
		                  std::to_string(a.layers.size()));

	ParamVector p;
	for (std::size_t i = 0; i < a.layers.size(); ++i) {
		auto const& l = a.layers[i];
		auto const& entry = jl[i];
		std::string const where = "/layers/" + std::to_string(i);
		if (!entry.is_object())
			fail(where, "expected an object");
		if (entry.contains("index") && entry["index"] != i)
			fail(where + "/index", "expected " + std::to_string(i));
		if (entry.contains("kind") && entry["kind"] != std::string(to_string(l.kind)))
			throw ConfigError("params " + where + "/kind: layer " + std::to_string(i) + " is " +
			                  std::string(to_string(l.kind)) + " in the architecture");
		Window const w = l.window();
		std::vector<Coord> coords;
		if (l.is_combiner()) {
			if (!entry.contains("intervals") || !entry["intervals"].is_array())
				fail(where + "/intervals", "missing or not an array");
			auto const& ji = entry["intervals"];
			if (ji.size() != static_cast<std::size_t>(l.k))
				throw ConfigError("params " + where + "/intervals: layer " + std::to_string(i) + " expects " +
				                  std::to_string(l.k) + " intervals, got " + std::to_string(ji.size()));
			for (std::size_t c = 0; c < ji.size(); ++c) {
				std::string const iw = where + "/intervals/" + std::to_string(c);
				PixelSet left = set_at(ji[c], "A", w, iw);
				PixelSet right = set_at(ji[c], "B", w, iw);
				try {
					coords.emplace_back(Interval(std::move(left), std::move(right), w));
				} catch (InvalidInterval const& e) {
					fail(iw, e.what());
				}
			}
		} else if (l.takes_set()) {
			coords.emplace_back(set_at(entry, "se", w, where));
		}
		p.layers.push_back(std::move(coords));
	}
	return p;
}

} // namespace dmnn
