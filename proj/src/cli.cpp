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
#include "dmnn/cli.hpp"

#include "dmnn/dataset.hpp"
#include "dmnn/text_grid.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace dmnn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(fs::path const& p, bool config)
{
	std::ifstream in(p, std::ios::binary);
	if (!in) {
		std::string const msg = "cannot read " + p.string();
		if (config)
			throw ConfigError(msg);
		throw DataError(msg);
	}
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

void write_text(fs::path const& p, std::string const& text)
{
	std::ofstream out(p, std::ios::binary);
	out << text;
	if (!out)
		throw DataError("cannot write " + p.string());
}

void ensure_dir(fs::path const& dir)
{
	std::error_code ec;
	fs::create_directories(dir, ec);
	if (ec)
		throw DataError("cannot create " + dir.string() + ": " + ec.message());
}

/// A file holding the JSON layer list, or a compact name like asf3-8sg3.
ArchitectureSpec load_architecture(std::string const& arg)
{
	std::error_code ec;
	if (fs::is_regular_file(arg, ec))
		return architecture_from_json(read_text(arg, true));
	return architecture_from_name(arg);
}

ArchitectureSpec architecture_from_value(json const& j, std::string const& pointer)
{
	try {
		if (j.is_string())
			return architecture_from_name(j.get<std::string>());
		return architecture_from_json(j.dump());
	} catch (ConfigError const& e) {
		throw ConfigError("config " + pointer + ": " + e.what());
	}
}

struct LoadedParams {
	ArchitectureSpec arch;
	ParamVector params;
};

/// Reads a parameter file; `arch_arg`, when given, must agree with the
/// architecture stored in the file.
LoadedParams load_params(fs::path const& path, std::string const& arch_arg)
{
	std::string const text = read_text(path, false);
	std::optional<ArchitectureSpec> stored;
	try {
		stored = architecture_of_params(text);
	} catch (ParseError const&) {
		if (arch_arg.empty())
			throw;
	}
	ArchitectureSpec arch;
	if (!arch_arg.empty()) {
		arch = load_architecture(arch_arg);
		if (stored && !(*stored == arch))
			throw ConfigError("architecture " + arch.name() + " does not match the parameter file (" +
			                  stored->name() + ")");
	} else {
		arch = *stored;
	}
	return {arch, params_from_json(arch, text)};
}

void set_threads(int threads)
{
	if (threads > 0)
		omp_set_num_threads(threads);
}

// ------------------------------------------------------------ train config

struct Experiment {
	ArchitectureSpec arch;
	TrainConfig train;
	std::size_t perturbation = 2;
	fs::path train_dir;
	std::optional<fs::path> val_dir;
	fs::path output_dir;
};

template <class T>
T field(json const& obj, char const* key, std::string const& pointer, T fallback)
{
	if (!obj.contains(key))
		return fallback;
	try {
		return obj.at(key).get<T>();
	} catch (json::exception const&) {
		throw ConfigError("config " + pointer + "/" + key + ": wrong type");
	}
}

Experiment load_experiment(fs::path const& path)
{
	json doc;
	try {
		doc = json::parse(read_text(path, true));
	} catch (json::parse_error const& e) {
		throw ConfigError("config " + path.string() + ": " + e.what());
	}
	if (!doc.is_object())
		throw ConfigError("config /: expected an object");
	fs::path const base = path.parent_path();
	auto resolve = [&](std::string const& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

	Experiment e;
	if (!doc.contains("architecture"))
		throw ConfigError("config /architecture: missing");
	e.arch = architecture_from_value(doc["architecture"], "/architecture");

	json const t = doc.value("train", json::object());
	if (!t.is_object())
		throw ConfigError("config /train: expected an object");
	try {
		e.train.algorithm = algorithm_from_string(field<std::string>(t, "algorithm", "/train", "slda"));
	} catch (ConfigError const& err) {
		throw ConfigError(std::string("config /train/algorithm: ") + err.what());
	}
	try {
		e.train.loss = loss_from_string(field<std::string>(t, "loss", "/train", "iou"));
	} catch (ConfigError const& err) {
		throw ConfigError(std::string("config /train/loss: ") + err.what());
	}
	auto positive = [&](char const* key, long long fallback) {
		long long const v = field<long long>(t, key, "/train", fallback);
		if (v < 1)
			throw ConfigError(std::string("config /train/") + key + ": must be at least 1");
		return static_cast<std::size_t>(v);
	};
	e.train.epochs = positive("epochs", 1);
	e.train.batch_size = positive("batch_size", 1);
	e.train.neighbors = positive("neighbors", 1);
	e.train.seed = field<std::uint64_t>(t, "seed", "/train", 0);
	long long const pert = field<long long>(t, "perturbation", "/train", 2);
	if (pert < 0)
		throw ConfigError("config /train/perturbation: must be non-negative");
	e.perturbation = static_cast<std::size_t>(pert);

	json const d = doc.value("data", json::object());
	if (!d.is_object() || !d.contains("train_dir"))
		throw ConfigError("config /data/train_dir: missing");
	e.train_dir = resolve(field<std::string>(d, "train_dir", "/data", ""));
	if (d.contains("val_dir"))
		e.val_dir = resolve(field<std::string>(d, "val_dir", "/data", ""));
	e.output_dir = resolve(field<std::string>(doc, "output_dir", "", "out"));
	return e;
}

std::string number(double v)
{
	std::ostringstream s;
	s << std::setprecision(12) << v;
	return s.str();
}

// ------------------------------------------------------------ commands

struct Options {
	int threads = 0;
	std::optional<std::uint64_t> seed;
	std::string config;
	std::string out;
	std::string arch;
	std::string params;
	std::string graph;
	std::string input;
	std::string output;
	std::string data;
	std::string loss = "iou";
	std::size_t cap = default_table_cap;
	CorpusSpec corpus;
	std::string shape = "digits";
};

int cmd_synth(Options const& o, std::ostream& out)
{
	CorpusSpec spec = o.corpus;
	if (!o.config.empty()) {
		json doc;
		try {
			doc = json::parse(read_text(o.config, true));
		} catch (json::parse_error const& e) {
			throw ConfigError("config: " + std::string(e.what()));
		}
		spec.count = field<std::size_t>(doc, "count", "", spec.count);
		spec.width = field<int>(doc, "width", "", spec.width);
		spec.height = field<int>(doc, "height", "", spec.height);
		spec.noise_rate = field<double>(doc, "noise_rate", "", spec.noise_rate);
		spec.seed = field<std::uint64_t>(doc, "seed", "", spec.seed);
		spec.shape = shape_from_string(field<std::string>(doc, "shape_kind", "", std::string(to_string(spec.shape))));
	} else {
		spec.shape = shape_from_string(o.shape);
	}
	if (o.seed)
		spec.seed = *o.seed;
	check_corpus_spec(spec);
	auto const pairs = write_corpus(spec, o.out);
	out << "wrote " << pairs.size() << " pairs to " << o.out << '\n';
	return exit_ok;
}

int cmd_train(Options const& o, std::ostream& out)
{
	Experiment e = load_experiment(o.config);
	if (o.seed)
		e.train.seed = *o.seed;
	if (!o.out.empty())
		e.output_dir = o.out;

	auto const sample = load_corpus(e.train_dir);
	std::optional<std::vector<SamplePair>> val;
	if (e.val_dir)
		val = load_corpus(*e.val_dir);
	check_config(e.train, sample.size());

	Rng init_rng = derive_rng(e.train.seed, 0);
	ParamVector const init = init_params(e.arch, init_rng, e.perturbation);

	ensure_dir(e.output_dir);
	std::ofstream csv(e.output_dir / "metrics.csv");
	if (!csv)
		throw DataError("cannot write " + (e.output_dir / "metrics.csv").string());
	csv << "epoch,current_loss,best_loss,time_ms\n" << std::flush;

	auto const start = std::chrono::steady_clock::now();
	TrainReport const r = train(e.arch, init, sample, e.train, [&](EpochLog const& row) {
		csv << row.epoch << ',' << number(to_double(row.current)) << ',' << number(to_double(row.best)) << ','
		    << number(row.time_ms) << '\n'
		    << std::flush;
	});
	std::optional<Rational> val_loss;
	if (val)
		val_loss = mean_loss(e.arch, r.best_params, *val, e.train.loss);
	std::chrono::duration<double, std::milli> const wall = std::chrono::steady_clock::now() - start;

	write_text(e.output_dir / "params.json", params_to_json(e.arch, r.best_params));

	json report{
		{"architecture", e.arch.name()},
		{"algorithm", std::string(to_string(e.train.algorithm))},
		{"loss", std::string(to_string(e.train.loss))},
		{"seed", e.train.seed},
		{"epochs", e.train.epochs},
		{"batch_size", e.train.batch_size},
		{"neighbors", e.train.neighbors},
		{"initial_loss", to_double(r.initial_loss)},
		{"train_loss", to_double(r.best_loss)},
		{"train_loss_exact", to_string(r.best_loss)},
		{"val_loss", val_loss ? json(to_double(*val_loss)) : json(nullptr)},
		{"val_loss_exact", val_loss ? json(to_string(*val_loss)) : json(nullptr)},
		{"epochs_to_min", r.epoch_of_best},
		{"moves", r.moves},
		{"periodic_epochs", r.periodic_epochs},
	};
	write_text(e.output_dir / "report.json", report.dump(2) + "\n");
	write_text(e.output_dir / "timing.json", json{{"wall_ms", wall.count()}}.dump(2) + "\n");

	out << "train_loss " << number(to_double(r.best_loss));
	if (val_loss)
		out << "  val_loss " << number(to_double(*val_loss));
	out << "  epochs_to_min " << r.epoch_of_best << "\nwrote " << e.output_dir.string() << '\n';
	return exit_ok;
}

int cmd_apply(Options const& o, std::ostream& out)
{
	auto const [arch, params] = load_params(o.params, o.arch);
	BinaryImage const x = read_pbm(o.input);
	write_pbm(evaluate(compile(arch, params), x), o.output);
	out << "wrote " << o.output << '\n';
	return exit_ok;
}

int cmd_eval(Options const& o, std::ostream& out)
{
	auto const [arch, params] = load_params(o.params, o.arch);
	LossKind const loss = loss_from_string(o.loss);
	auto const sample = load_corpus(o.data);
	Rational const l = mean_loss(arch, params, sample, loss);
	out << std::string(to_string(loss)) << ' ' << number(to_double(l)) << '\n';
	if (!o.out.empty())
		write_text(o.out, json{{"loss", to_double(l)},
		                       {"loss_exact", to_string(l)},
		                       {"kind", std::string(to_string(loss))},
		                       {"pairs", sample.size()}}
		                          .dump(2) +
		                      "\n");
	return exit_ok;
}

Mcg graph_from_options(Options const& o)
{
	if (!o.graph.empty())
		return Mcg::from(graph_from_json(read_text(o.graph, false)));
	if (o.params.empty())
		throw ConfigError("one of --graph or --params is required");
	auto const [arch, params] = load_params(o.params, o.arch);
	return compile(arch, params);
}

int cmd_basis(Options const& o, std::ostream& out)
{
	Mcg const g = graph_from_options(o);
	Window const w = window_of(g);
	if (w.size() > o.cap)
		throw WindowCapExceeded(w.size(), o.cap);
	std::string const text = format_collection(basis_of(g, o.cap));
	out << text;
	if (!o.out.empty())
		write_text(o.out, text);
	return exit_ok;
}

int cmd_trace(Options const& o, std::ostream& out)
{
	auto const [arch, params] = load_params(o.params, o.arch);
	BinaryImage const x = read_pbm(o.input);
	auto const outputs = evaluate_all(compile(arch, params), x);
	auto const vertices = layer_output_vertices(arch);
	ensure_dir(o.out);
	for (std::size_t l = 0; l < vertices.size(); ++l) {
		std::ostringstream name;
		name << "layer_" << std::setw(2) << std::setfill('0') << (l + 1) << '_' << to_string(arch.layers[l].kind)
		     << ".pbm";
		write_pbm(outputs[vertices[l]], fs::path(o.out) / name.str());
	}
	out << "wrote " << vertices.size() << " layer images to " << o.out << '\n';
	return exit_ok;
}

int cmd_validate(Options const& o, std::ostream& out)
{
	GraphSpec spec;
	if (!o.graph.empty()) {
		spec = graph_from_json(read_text(o.graph, false));
	} else {
		if (o.params.empty())
			throw ConfigError("one of --graph or --params is required");
		auto const [arch, params] = load_params(o.params, o.arch);
		spec = compile(arch, params).spec();
	}
	auto const v = validate(spec);
	if (v.empty()) {
		out << "ok: " << spec.vertices.size() << " vertices, " << spec.edges.size() << " edges\n";
		return exit_ok;
	}
	out << format_violations(v);
	return exit_data;
}

} // namespace

int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Morphological computational graphs and lattice descent training", "dmnn"};
	app.require_subcommand(1);
	Options o;

	auto add_threads = [&](CLI::App* c) {
		c->add_option("--threads", o.threads, "Worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
	};
	auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "Seed (overrides the config)"); };

	auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus of noisy shapes and boundary targets");
	synth->add_option("--out", o.out, "Output directory")->required();
	synth->add_option("--config", o.config, "JSON corpus spec (count, width, height, noise_rate, shape_kind, seed)");
	synth->add_option("--count", o.corpus.count, "Number of pairs");
	synth->add_option("--width", o.corpus.width, "Frame width");
	synth->add_option("--height", o.corpus.height, "Frame height");
	synth->add_option("--noise", o.corpus.noise_rate, "Pixel flip probability");
	synth->add_option("--shape", o.shape, "blobs or digits");
	add_seed(synth);
	add_threads(synth);

	auto* train_cmd = app.add_subcommand("train", "Train an architecture with LDA or SLDA");
	train_cmd->add_option("--config", o.config, "Experiment config (JSON)")->required();
	train_cmd->add_option("--out", o.out, "Output directory (overrides the config)");
	add_seed(train_cmd);
	add_threads(train_cmd);

	auto add_model = [&](CLI::App* c, bool params_required) {
		auto* p = c->add_option("--params", o.params, "Parameter file");
		if (params_required)
			p->required();
		c->add_option("--arch", o.arch, "Architecture file or name (default: the one in the parameter file)");
	};

	auto* apply = app.add_subcommand("apply", "Apply trained parameters to an image");
	add_model(apply, true);
	apply->add_option("--input", o.input, "Input PBM")->required();
	apply->add_option("--output,--out", o.output, "Output PBM")->required();
	add_threads(apply);

	auto* eval = app.add_subcommand("eval", "Mean loss of parameters on a corpus");
	add_model(eval, true);
	eval->add_option("--data", o.data, "Corpus directory")->required();
	eval->add_option("--loss", o.loss, "absolute or iou");
	eval->add_option("--out", o.out, "Write the result as JSON");
	add_threads(eval);

	auto* basis = app.add_subcommand("basis", "Print the window and basis of a graph or trained network");
	add_model(basis, false);
	basis->add_option("--graph", o.graph, "Graph file (JSON)");
	basis->add_option("--cap", o.cap, "Largest window size to expand");
	basis->add_option("--out", o.out, "Also write the dump to this file");

	auto* trace = app.add_subcommand("trace", "Write the output of every layer");
	add_model(trace, true);
	trace->add_option("--input", o.input, "Input PBM")->required();
	trace->add_option("--out", o.out, "Output directory")->required();
	add_threads(trace);

	auto* val = app.add_subcommand("validate", "Check a graph against the graph axioms");
	add_model(val, false);
	val->add_option("--graph", o.graph, "Graph file (JSON)");

	try {
		app.parse(argc, argv);
	} catch (CLI::ParseError const& e) {
		int const code = app.exit(e, out, err);
		return code == 0 ? exit_ok : exit_usage;
	}

	try {
		set_threads(o.threads);
		if (synth->parsed())
			return cmd_synth(o, out);
		if (train_cmd->parsed())
			return cmd_train(o, out);
		if (apply->parsed())
			return cmd_apply(o, out);
		if (eval->parsed())
			return cmd_eval(o, out);
		if (basis->parsed())
			return cmd_basis(o, out);
		if (trace->parsed())
			return cmd_trace(o, out);
		if (val->parsed())
			return cmd_validate(o, out);
	} catch (WindowCapExceeded const& e) {
		err << "error: " << e.what() << '\n';
		return exit_budget;
	} catch (ConfigError const& e) {
		err << "error: " << e.what() << '\n';
		return exit_usage;
	} catch (Error const& e) {
		err << "error: " << e.what() << '\n';
		return exit_data;
	}
	return exit_usage;
}

int run_cli(int argc, char const* const* argv)
{
	return run_cli(argc, argv, std::cout, std::cerr);
}

} // namespace dmnn
