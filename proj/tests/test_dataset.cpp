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

#include "support/oracles.hpp"

#include "dmnn/dataset.hpp"
#include "dmnn/errors.hpp"
#include "dmnn/morphology.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace dmnn;
namespace fs = std::filesystem;

namespace {

fs::path scratch(std::string const& name)
{
	fs::path const p = fs::temp_directory_path() / ("dmnn_test_dataset_" + name);
	fs::remove_all(p);
	return p;
}

} // namespace

TEST_CASE("PBM round-trips")
{
	Rng rng = derive_rng(1, 0);
	BinaryImage const x = oracle::random_image(56, 56, 0.5, rng);
	CHECK(parse_pbm(format_pbm(x, true)) == x);
	CHECK(parse_pbm(format_pbm(x, false)) == x);
	BinaryImage const odd = oracle::random_image(13, 5, 0.5, rng);
	CHECK(parse_pbm(format_pbm(odd, true)) == odd);

	fs::path const dir = scratch("pbm");
	fs::create_directories(dir);
	write_pbm(x, dir / "x.pbm");
	CHECK(read_pbm(dir / "x.pbm") == x);
	fs::remove_all(dir);
}

TEST_CASE("PBM parsing")
{
	CHECK(parse_pbm("P1\n2 2\n1 0\n0 1\n") == BinaryImage::from_points(2, 2, {{0, 0}, {1, 1}}));
	CHECK(parse_pbm("P1 # comment\n2 1\n10") == BinaryImage::from_points(2, 1, {{0, 0}}));
	CHECK_THROWS_AS(parse_pbm(""), DataError);
	CHECK_THROWS_AS(parse_pbm("P2\n2 2\n"), DataError);
	CHECK_THROWS_AS(parse_pbm("P1\n0 2\n"), DataError);
	CHECK_THROWS_AS(parse_pbm("P1\n2 2\n1 0 1\n"), DataError);
	CHECK_THROWS_AS(parse_pbm("P1\n2 2\n1 0 2 1\n"), DataError);
	try {
		parse_pbm("P4\n16 2\n\xff\xff\x0f");
		FAIL("truncated file accepted");
	} catch (DataError const& e) {
		CHECK(std::string(e.what()).find("byte") != std::string::npos);
	}
	CHECK_THROWS_AS(read_pbm("/nonexistent/x.pbm"), DataError);
}

TEST_CASE("boundary_target")
{
	CHECK(boundary_target(BinaryImage(6, 6)).empty());
	CHECK(boundary_target(BinaryImage::from_points(6, 6, {{2, 3}})) == BinaryImage::from_points(6, 6, {{2, 3}}));
	BinaryImage const block = BinaryImage::from_points(8, 8, PixelSet::box(2, 2, 4, 4));
	BinaryImage const ring = boundary_target(block);
	CHECK(ring.count() == 12);
	CHECK(ring == (block ^ BinaryImage::from_points(8, 8, PixelSet::box(3, 3, 2, 2))));
}

TEST_CASE("add_noise")
{
	Rng rng = derive_rng(2, 0);
	BinaryImage const x = oracle::random_image(40, 30, 0.3, rng);
	Rng r0 = derive_rng(3, 0);
	CHECK(add_noise(x, 0.0, r0) == x);

	BinaryImage const big(400, 250);
	Rng r1 = derive_rng(4, 0), r2 = derive_rng(4, 0);
	double const rate = 0.05;
	BinaryImage const n1 = add_noise(big, rate, r1);
	CHECK(n1 == add_noise(big, rate, r2));
	double const n = static_cast<double>(big.pixel_count());
	double const sigma = std::sqrt(n * rate * (1 - rate));
	CHECK(std::abs(static_cast<double>(n1.count()) - n * rate) < 3 * sigma);

	CHECK_THROWS_AS(add_noise(x, 0.5, r1), DomainError);
	CHECK_THROWS_AS(add_noise(x, -0.1, r1), DomainError);
}

TEST_CASE("shapes and pairs")
{
	for (ShapeKind k : {ShapeKind::Blobs, ShapeKind::Digits}) {
		CHECK(shape_from_string(to_string(k)) == k);
		for (std::size_t i = 0; i < 10; ++i) {
			Rng rng = derive_rng(i, 0);
			BinaryImage const s = render_shape(k, 56, 56, i, rng);
			CHECK(s.count() > 20);
			CHECK(s.count() < s.pixel_count() / 2);
		}
	}
	CHECK(shape_from_string("digits-font") == ShapeKind::Digits);
	CHECK_THROWS_AS(shape_from_string("faces"), ConfigError);

	CorpusSpec spec;
	spec.seed = 17;
	SamplePair const a = generate_pair(spec, 3);
	SamplePair const b = generate_pair(spec, 3);
	CHECK(a.input == b.input);
	CHECK(a.target == b.target);
	CHECK_FALSE(generate_pair(spec, 4).input == a.input);

	spec.noise_rate = 0;
	for (auto const& p : gen_corpus(spec)) {
		CHECK(p.input.same_frame(p.target));
		CHECK(boundary_target(p.input) == p.target);
	}
}

TEST_CASE("targets carry no noise")
{
	CorpusSpec clean;
	clean.noise_rate = 0;
	clean.seed = 5;
	CorpusSpec noisy = clean;
	noisy.noise_rate = 0.2;
	auto const c = gen_corpus(clean);
	auto const n = gen_corpus(noisy);
	REQUIRE(c.size() == n.size());
	for (std::size_t i = 0; i < c.size(); ++i) {
		CHECK(c[i].target == n[i].target);
		CHECK_FALSE(c[i].input == n[i].input);
	}
}

TEST_CASE("corpus on disk")
{
	fs::path const dir = scratch("corpus");
	CorpusSpec spec;
	spec.count = 10;
	spec.seed = 8;
	auto const written = write_corpus(spec, dir);
	CHECK(written.size() == 10);
	std::size_t pbm = 0;
	for (auto const& e : fs::directory_iterator(dir))
		pbm += e.path().extension() == ".pbm";
	CHECK(pbm == 20);

	std::ifstream in(dir / "manifest.json");
	auto const manifest = nlohmann::json::parse(in);
	REQUIRE(manifest["files"].size() == 10);
	for (std::size_t i = 0; i < 10; ++i)
		CHECK(manifest["files"][i]["seed"].get<std::uint64_t>() == pair_seed(8, i));

	auto const loaded = load_corpus(dir);
	REQUIRE(loaded.size() == 10);
	for (std::size_t i = 0; i < 10; ++i) {
		CHECK(loaded[i].input == written[i].input);
		CHECK(loaded[i].target == written[i].target);
	}

	fs::remove(dir / "target_004.pbm");
	CHECK_THROWS_AS(load_corpus(dir), DataError);
	fs::remove_all(dir);
	CHECK_THROWS_AS(load_corpus(dir), DataError);

	CorpusSpec bad;
	bad.count = 0;
	CHECK_THROWS_AS(check_corpus_spec(bad), ConfigError);
	bad = {};
	bad.noise_rate = 0.5;
	CHECK_THROWS_AS(check_corpus_spec(bad), ConfigError);
}
