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

#include <json.hpp>

#include <array>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dmnn {

namespace fs = std::filesystem;
using nlohmann::json;

// ------------------------------------------------------------ PBM

namespace {

class PbmReader {
public:
	explicit PbmReader(std::string const& bytes) : m_bytes(bytes) {}

	[[noreturn]] void fail(std::string const& what) const
	{
		throw DataError("pbm: " + what + " at byte " + std::to_string(m_pos));
	}

	void skip_space()
	{
		while (m_pos < m_bytes.size()) {
			char const c = m_bytes[m_pos];
			if (c == '#') {
				while (m_pos < m_bytes.size() && m_bytes[m_pos] != '\n')
					++m_pos;
			} else if (std::isspace(static_cast<unsigned char>(c))) {
				++m_pos;
			} else {
				break;
			}
		}
	}

	int read_int(char const* what)
	{
		skip_space();
		std::size_t const start = m_pos;
		long long v = 0;
		while (m_pos < m_bytes.size() && std::isdigit(static_cast<unsigned char>(m_bytes[m_pos]))) {
			v = v * 10 + (m_bytes[m_pos] - '0');
			if (v > (1 << 24))
				fail(std::string(what) + " too large");
			++m_pos;
		}
		if (m_pos == start)
			fail(std::string("expected ") + what);
		return static_cast<int>(v);
	}

	BinaryImage read()
	{
		if (m_bytes.size() < 2 || m_bytes[0] != 'P' || (m_bytes[1] != '1' && m_bytes[1] != '4'))
			fail("missing P1/P4 magic number");
		bool const binary = m_bytes[1] == '4';
		m_pos = 2;
		int const w = read_int("width");
		int const h = read_int("height");
		if (w <= 0 || h <= 0)
			fail("image dimensions must be positive");
		BinaryImage img(w, h);
		if (binary) {
			if (m_pos >= m_bytes.size() || !std::isspace(static_cast<unsigned char>(m_bytes[m_pos])))
				fail("expected whitespace after the header");
			++m_pos;
			std::size_t const row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
			for (int y = 0; y < h; ++y)
				for (std::size_t b = 0; b < row_bytes; ++b) {
					if (m_pos >= m_bytes.size())
						fail("truncated raster");
					auto const byte = static_cast<unsigned char>(m_bytes[m_pos++]);
					for (int bit = 0; bit < 8; ++bit) {
						int const x = static_cast<int>(b * 8) + bit;
						if (x < w && ((byte >> (7 - bit)) & 1u))
							img.set({x, y}, true);
					}
				}
		} else {
			for (int y = 0; y < h; ++y)
				for (int x = 0; x < w; ++x) {
					skip_space();
					if (m_pos >= m_bytes.size())
						fail("truncated raster");
					char const c = m_bytes[m_pos];
					if (c != '0' && c != '1')
						fail("unexpected character in raster");
					img.set({x, y}, c == '1');
					++m_pos;
				}
		}
		return img;
	}

private:
	std::string const& m_bytes;
	std::size_t m_pos = 0;
};

} // namespace

BinaryImage parse_pbm(std::string const& bytes)
{
	return PbmReader(bytes).read();
}

std::string format_pbm(BinaryImage const& img, bool binary)
{
	std::ostringstream out;
	out << (binary ? "P4\n" : "P1\n") << img.width() << ' ' << img.height() << '\n';
	for (int y = 0; y < img.height(); ++y) {
		if (binary) {
			for (int x0 = 0; x0 < img.width(); x0 += 8) {
				unsigned char byte = 0;
				for (int bit = 0; bit < 8; ++bit)
					if (img.get({x0 + bit, y}))
						byte = static_cast<unsigned char>(byte | (0x80u >> bit));
				out.put(static_cast<char>(byte));
			}
		} else {
			for (int x = 0; x < img.width(); ++x)
				out << (x ? " " : "") << (img.get({x, y}) ? '1' : '0');
			out << '\n';
		}
	}
	return out.str();
}

BinaryImage read_pbm(fs::path const& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw DataError("cannot open " + path.string());
	std::ostringstream buf;
	buf << in.rdbuf();
	try {
		return parse_pbm(buf.str());
	} catch (DataError const& e) {
		throw DataError(path.string() + ": " + e.what());
	}
}

void write_pbm(BinaryImage const& img, fs::path const& path, bool binary)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw DataError("cannot write " + path.string());
	out << format_pbm(img, binary);
	if (!out)
		throw DataError("write failed for " + path.string());
}

// ------------------------------------------------------------ targets, noise

StructElem cross()
{
	return PixelSet{{0, -1}, {-1, 0}, origin, {1, 0}, {0, 1}};
}

BinaryImage boundary_target(BinaryImage const& x, StructElem const& se)
{
	return x & complement(erode(x, se));
}

BinaryImage add_noise(BinaryImage const& x, double rate, Rng& rng)
{
	if (!(rate >= 0.0 && rate < 0.5))
		throw DomainError("noise rate must lie in [0, 0.5)");
	BinaryImage out = x;
	if (rate == 0.0)
		return out;
	for (int y = 0; y < x.height(); ++y)
		for (int c = 0; c < x.width(); ++c)
			if (uniform_unit(rng) < rate)
				out.set({c, y}, !x.get({c, y}));
	return out;
}

// ------------------------------------------------------------ shapes

std::string_view to_string(ShapeKind k)
{
	return k == ShapeKind::Blobs ? "blobs" : "digits";
}

ShapeKind shape_from_string(std::string_view s)
{
	if (s == "blobs")
		return ShapeKind::Blobs;
	if (s == "digits" || s == "digits-font")
		return ShapeKind::Digits;
	throw ConfigError("unknown shape kind \"" + std::string(s) + "\" (expected blobs or digits)");
}

void check_corpus_spec(CorpusSpec const& spec)
{
	if (spec.count == 0)
		throw ConfigError("corpus count must be positive");
	if (spec.width <= 0 || spec.height <= 0)
		throw ConfigError("corpus frame must be non-empty");
	if (!(spec.noise_rate >= 0.0 && spec.noise_rate < 0.5))
		throw ConfigError("noise rate must lie in [0, 0.5)");
}

namespace {

// 5x7 glyphs, one string per row, '#' = ink.
constexpr std::array<std::array<char const*, 7>, 10> font{{
	{" ### ", "#   #", "#  ##", "# # #", "##  #", "#   #", " ### "},
	{"  #  ", " ##  ", "  #  ", "  #  ", "  #  ", "  #  ", " ### "},
	{" ### ", "#   #", "    #", "   # ", "  #  ", " #   ", "#####"},
	{"#####", "   # ", "  #  ", "   # ", "    #", "#   #", " ### "},
	{"   # ", "  ## ", " # # ", "#  # ", "#####", "   # ", "   # "},
	{"#####", "#    ", "#### ", "    #", "    #", "#   #", " ### "},
	{"  ## ", " #   ", "#    ", "#### ", "#   #", "#   #", " ### "},
	{"#####", "    #", "   # ", "  #  ", " #   ", " #   ", " #   "},
	{" ### ", "#   #", "#   #", " ### ", "#   #", "#   #", " ### "},
	{" ### ", "#   #", "#   #", " ####", "    #", "   # ", " ##  "},
}};

int random_between(Rng& rng, int lo, int hi) // inclusive
{
	return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

BinaryImage render_digit(int width, int height, std::size_t index, Rng& rng)
{
	BinaryImage img(width, height);
	int const s = std::max(1, std::min(width / 9, height / 9));
	int const gw = 5 * s, gh = 7 * s;
	int const x0 = random_between(rng, 0, std::max(0, width - gw));
	int const y0 = random_between(rng, 0, std::max(0, height - gh));
	auto const& glyph = font[index % 10];
	for (int r = 0; r < 7; ++r)
		for (int c = 0; c < 5; ++c)
			if (glyph[static_cast<std::size_t>(r)][c] == '#')
				for (int dy = 0; dy < s; ++dy)
					for (int dx = 0; dx < s; ++dx) {
						Point const p{x0 + c * s + dx, y0 + r * s + dy};
						if (img.in_frame(p))
							img.set(p, true);
					}
	return img;
}

BinaryImage render_blobs(int width, int height, Rng& rng)
{
	BinaryImage img(width, height);
	int const m = std::min(width, height);
	int const shapes = random_between(rng, 2, 4);
	for (int k = 0; k < shapes; ++k) {
		bool const disc = uniform_below(rng, 2) == 1;
		if (disc) {
			int const r = random_between(rng, std::max(2, m / 10), std::max(2, m / 5));
			int const cx = random_between(rng, 0, width - 1);
			int const cy = random_between(rng, 0, height - 1);
			for (int y = cy - r; y <= cy + r; ++y)
				for (int x = cx - r; x <= cx + r; ++x)
					if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r && img.in_frame({x, y}))
						img.set({x, y}, true);
		} else {
			int const w = random_between(rng, std::max(3, m / 8), std::max(3, m / 3));
			int const h = random_between(rng, std::max(3, m / 8), std::max(3, m / 3));
			int const x0 = random_between(rng, 0, std::max(0, width - w));
			int const y0 = random_between(rng, 0, std::max(0, height - h));
			for (int y = y0; y < y0 + h; ++y)
				for (int x = x0; x < x0 + w; ++x)
					if (img.in_frame({x, y}))
						img.set({x, y}, true);
		}
	}
	return img;
}

} // namespace

BinaryImage render_shape(ShapeKind kind, int width, int height, std::size_t index, Rng& rng)
{
	return kind == ShapeKind::Digits ? render_digit(width, height, index, rng) : render_blobs(width, height, rng);
}

std::uint64_t pair_seed(std::uint64_t corpus_seed, std::size_t i)
{
	return derive_rng(corpus_seed, i)();
}

SamplePair generate_pair(CorpusSpec const& spec, std::size_t i)
{
	check_corpus_spec(spec);
	std::uint64_t const seed = pair_seed(spec.seed, i);
	Rng shape_rng = derive_rng(seed, 0);
	Rng noise_rng = derive_rng(seed, 1);
	BinaryImage const clean = render_shape(spec.shape, spec.width, spec.height, i, shape_rng);
	return {add_noise(clean, spec.noise_rate, noise_rng), boundary_target(clean)};
}

std::vector<SamplePair> gen_corpus(CorpusSpec const& spec)
{
	check_corpus_spec(spec);
	std::vector<SamplePair> out;
	for (std::size_t i = 0; i < spec.count; ++i)
		out.push_back(generate_pair(spec, i));
	return out;
}

namespace {

std::string numbered(char const* stem, std::size_t i)
{
	std::ostringstream s;
	s << stem << '_' << std::setw(3) << std::setfill('0') << i << ".pbm";
	return s.str();
}

} // namespace

std::vector<SamplePair> write_corpus(CorpusSpec const& spec, fs::path const& dir)
{
	std::vector<SamplePair> pairs = gen_corpus(spec);
	std::error_code ec;
	fs::create_directories(dir, ec);
	if (ec)
		throw DataError("cannot create " + dir.string() + ": " + ec.message());
	json files = json::array();
	for (std::size_t i = 0; i < pairs.size(); ++i) {
		std::string const in = numbered("input", i), tg = numbered("target", i);
		write_pbm(pairs[i].input, dir / in);
		write_pbm(pairs[i].target, dir / tg);
		files.push_back({{"input", in}, {"target", tg}, {"seed", pair_seed(spec.seed, i)}});
	}
	json const manifest{{"spec",
	                     {{"count", spec.count},
	                      {"width", spec.width},
	                      {"height", spec.height},
	                      {"noise_rate", spec.noise_rate},
	                      {"shape_kind", std::string(to_string(spec.shape))},
	                      {"seed", spec.seed}}},
	                    {"files", files}};
	std::ofstream out(dir / "manifest.json");
	out << manifest.dump(2) << '\n';
	if (!out)
		throw DataError("cannot write " + (dir / "manifest.json").string());
	return pairs;
}

std::vector<SamplePair> load_corpus(fs::path const& dir)
{
	fs::path const mpath = dir / "manifest.json";
	std::ifstream in(mpath);
	if (!in)
		throw DataError("no manifest.json in " + dir.string());
	json manifest;
	try {
		manifest = json::parse(in);
	} catch (json::parse_error const& e) {
		throw DataError(mpath.string() + ": " + e.what());
	}
	if (!manifest.contains("files") || !manifest["files"].is_array())
		throw DataError(mpath.string() + ": /files missing or not an array");
	std::vector<SamplePair> pairs;
	for (std::size_t i = 0; i < manifest["files"].size(); ++i) {
		auto const& f = manifest["files"][i];
		if (!f.is_object() || !f.contains("input") || !f.contains("target") || !f["input"].is_string() ||
		    !f["target"].is_string())
			throw DataError(mpath.string() + ": /files/" + std::to_string(i) + " needs input and target");
		SamplePair p{read_pbm(dir / f["input"].get<std::string>()), read_pbm(dir / f["target"].get<std::string>())};
		if (!p.input.same_frame(p.target))
			throw DataError(mpath.string() + ": /files/" + std::to_string(i) + " input and target frames differ");
		pairs.push_back(std::move(p));
	}
	if (pairs.empty())
		throw DataError(mpath.string() + ": corpus is empty");
	return pairs;
}

} // namespace dmnn
