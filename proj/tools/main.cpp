#include "sgt/crossratio.h"
#include "sgt/freegroup.h"
#include "sgt/groupring.h"
#include "sgt/magnusfox.h"
#include "sgt/multlattice.h"
#include "sgt/reconstruct.h"
#include "sgt/sweep.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using namespace sgt;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

std::string read_input(const std::string &path)
{
	if (path == "-") {
		return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
	}
	std::ifstream in(path);
	if (!in)
		throw ParseError("input: cannot open " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

// Inline JSON, or @path to read it from a file.
std::string json_argument(const std::string &arg)
{
	return !arg.empty() && arg[0] == '@' ? read_input(arg.substr(1)) : arg;
}

std::vector<std::int64_t> parse_shape(const std::string &text)
{
	std::vector<std::int64_t> out;
	std::stringstream ss(text);
	std::string part;
	while (std::getline(ss, part, ',')) {
		std::size_t used = 0;
		long long v = 0;
		try {
			v = std::stoll(part, &used);
		} catch (const std::exception &) {
			used = 0;
		}
		if (used == 0 || used != part.size())
			throw ParseError("--shape: expected comma-separated integers, got \"" + text + "\"");
		out.push_back(v);
	}
	if (out.empty())
		throw ParseError("--shape: empty");
	return out;
}

std::map<std::string, std::int64_t> parse_sweep_params(const std::vector<std::string> &extras)
{
	std::map<std::string, std::int64_t> params;
	for (std::size_t i = 0; i < extras.size(); ++i) {
		const std::string &key = extras[i];
		if (key.rfind("--", 0) != 0 || key.size() == 2)
			throw ParseError("verify: unexpected argument \"" + key + "\"");
		std::string name = key.substr(2), value;
		if (const auto eq = name.find('='); eq != std::string::npos) {
			value = name.substr(eq + 1);
			name.resize(eq);
		} else {
			if (i + 1 == extras.size())
				throw ParseError("verify: --" + name + " needs a value");
			value = extras[++i];
		}
		std::size_t used = 0;
		long long v = 0;
		try {
			v = std::stoll(value, &used);
		} catch (const std::exception &) {
			used = 0;
		}
		if (used == 0 || used != value.size())
			throw ParseError("verify: --" + name + " expects an integer, got \"" + value + "\"");
		params[name] = v;
	}
	return params;
}

struct Options {
	bool json = false;
	std::string alphabet{kDefaultAlphabet};

	std::string property;

	std::string field = "Q";
	std::size_t size = 5;
	std::uint64_t seed = 1;
	std::int64_t twist = 0;

	std::string input = "-";

	std::string word;
	int rank = 2;

	std::int64_t M = 2;
	std::string shape;
	std::string elem;

	std::int64_t n = 2;
	std::string a, b;

	std::vector<std::string> points;

	std::int64_t p = 2, x = 1, y = 1, bound = 6;

	std::string points_json;
	std::string star_field;
};

int run_verify(const Options &o, const std::vector<std::string> &extras)
{
	const SweepSummary s = run_sweep({o.property, parse_sweep_params(extras)});
	std::cout << (o.json ? to_json(s) : to_string(s)) << "\n";
	return s.ok() ? kOk : kViolation;
}

int run_generate(const Options &o)
{
	const Scenario s = generate_scenario(parse_field_desc(o.field), o.size, o.seed, o.twist);
	std::cout << scenario_to_json(s) << "\n";
	return kOk;
}

int run_reconstruct(const Options &o)
{
	const Scenario s = scenario_from_json(read_input(o.input));
	std::optional<ReconstructionResult> res;
	try {
		res = reconstruct(s);
	} catch (const ReconstructionError &e) {
		if (o.json)
			std::cout << json{{"rejected", true}, {"reason", e.what()}}.dump(2) << "\n";
		else
			std::cout << "rejected: " << e.what() << "\n";
		return kViolation;
	}
	const ReconstructionResult &r = *res;
	if (o.json) {
		std::cout << result_to_json(r) << "\n";
	} else {
		std::cout << "w1 = " << r.w1 << "\nw2 = " << r.w2 << "\nf = " << to_string(r.f) << "\n";
		if (r.rho_ambiguity)
			std::cout << "ambiguity: rho pair, f is determined up to the order-3 symmetry\n";
	}
	return kOk;
}

int run_fox(const Options &o)
{
	const Word w = parse_word(o.word, o.alphabet);
	const auto grad = fox_gradient(w, o.rank);
	const bool ok = fundamental_identity_check(w, o.rank);
	if (o.json) {
		json j;
		j["word"] = to_string(w, o.alphabet);
		j["derivatives"] = json::array();
		for (const auto &d : grad)
			j["derivatives"].push_back(to_string(d, o.alphabet));
		j["identity"] = ok;
		std::cout << j.dump(2) << "\n";
	} else {
		for (std::size_t i = 0; i < grad.size(); ++i)
			std::cout << "d/d" << o.alphabet[i] << " = " << to_string(grad[i], o.alphabet) << "\n";
		std::cout << "identity: " << (ok ? "true" : "false") << "\n";
	}
	return ok ? kOk : kViolation;
}

int run_annihilator(const Options &o)
{
	const AbelianShape shape(parse_shape(o.shape));
	const GroupRingElem a = parse_group_ring_elem(o.elem, shape, o.M);
	const auto basis = annihilator_basis(a);
	if (o.json) {
		json j = json::array();
		for (const auto &e : basis)
			j.push_back(to_string(e));
		std::cout << json{{"basis", j}}.dump(2) << "\n";
	} else {
		std::cout << basis.size() << " generators\n";
		for (const auto &e : basis)
			std::cout << to_string(e) << "\n";
	}
	return kOk;
}

int run_kummer(const Options &o)
{
	const FieldDesc f = parse_field_desc(o.field);
	const bool eq = kummer_equal({o.n, parse_field_elem(o.a, f)}, {o.n, parse_field_elem(o.b, f)});
	if (o.json)
		std::cout << json{{"equal", eq}}.dump(2) << "\n";
	else
		std::cout << (eq ? "equal" : "distinct") << "\n";
	return kOk;
}

int run_crossratio(const Options &o)
{
	const FieldDesc f = parse_field_desc(o.field);
	if (o.points.size() != 4)
		throw ParseError("crossratio: expected 4 points, got " + std::to_string(o.points.size()));
	std::vector<ProjPoint> pts;
	for (const auto &t : o.points)
		pts.push_back(parse_proj_point(t, f));
	const FieldElem lam = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
	if (o.json)
		std::cout << json{{"lambda", to_string(lam)}}.dump(2) << "\n";
	else
		std::cout << to_string(lam) << "\n";
	return kOk;
}

int run_lemma235(const Options &o)
{
	const auto sols = lemma235_solve(o.p, o.x, o.y, o.bound);
	if (o.json) {
		json j = json::array();
		for (const auto &[X, Y] : sols)
			j.push_back({X, Y});
		std::cout << json{{"solutions", j}}.dump(2) << "\n";
	} else {
		for (const auto &[X, Y] : sols)
			std::cout << "(" << X << ", " << Y << ")\n";
	}
	return kOk;
}

int run_star_check(const Options &o)
{
	std::optional<FieldDesc> f;
	if (!o.star_field.empty())
		f = parse_field_desc(o.star_field);
	const bool ok = condition_star_check(cusp_set_from_json(json_argument(o.points_json), f));
	if (o.json)
		std::cout << json{{"holds", ok}}.dump(2) << "\n";
	else
		std::cout << (ok ? "holds" : "fails") << "\n";
	return ok ? kOk : kViolation;
}

} // namespace

int main(int argc, char **argv)
{
	Options o;
	CLI::App app{"Exact tools for Frobenius twists, Fox calculus and cusp-set reconstruction"};
	app.require_subcommand(1);
	app.add_flag("--json", o.json, "Machine-readable output");
	app.add_option("--alphabet", o.alphabet, "Generator letters, in order")->capture_default_str();

	auto *verify = app.add_subcommand("verify", "Run a property sweep; remaining --name value pairs set the box");
	verify->add_option("property", o.property)->required();
	verify->allow_extras();
	verify->footer("Properties: " + [] {
		std::string s;
		for (const auto &p : sweep_properties())
			s += (s.empty() ? "" : ", ") + p;
		return s;
	}());

	auto *generate = app.add_subcommand("generate", "Print a random honest scenario as JSON");
	generate->add_option("--field", o.field)->capture_default_str();
	generate->add_option("--size", o.size)->capture_default_str();
	generate->add_option("--seed", o.seed)->capture_default_str();
	generate->add_option("--twist", o.twist)->capture_default_str();

	auto *recon = app.add_subcommand("reconstruct", "Recover (w1, w2, f) from a scenario");
	recon->add_option("--input", o.input, "Scenario JSON file, - for stdin")->capture_default_str();

	auto *fox = app.add_subcommand("fox", "Abelianized Fox derivatives of a word");
	fox->add_option("--word", o.word)->required();
	fox->add_option("--rank", o.rank)->capture_default_str();

	auto *gr = app.add_subcommand("groupring", "Group ring computations");
	auto *ann = gr->add_subcommand("annihilator", "Generators of the annihilator of an element");
	gr->require_subcommand(1);
	ann->add_option("--M", o.M)->required();
	ann->add_option("--shape", o.shape)->required();
	ann->add_option("--elem", o.elem)->required();

	auto *kummer = app.add_subcommand("kummer", "Compare Kummer classes of a and b");
	kummer->add_option("--n", o.n)->required();
	kummer->add_option("--a", o.a)->required();
	kummer->add_option("--b", o.b)->required();
	kummer->add_option("--field", o.field)->capture_default_str();

	auto *cr = app.add_subcommand("crossratio", "Cross-ratio of four points");
	cr->add_option("--field", o.field)->capture_default_str();
	cr->add_option("points", o.points, "Four points (field elements or inf)")->required()->expected(4);

	auto *l235 = app.add_subcommand("lemma235", "All (X2, Y2) with the same product of p-power defects");
	l235->add_option("--p", o.p)->required();
	l235->add_option("--x", o.x)->required();
	l235->add_option("--y", o.y)->required();
	l235->add_option("--bound", o.bound)->capture_default_str();

	auto *star = app.add_subcommand("star-check", "Check that every 4-subset has a non-constant cross-ratio");
	star->add_option("--points", o.points_json, "JSON point array or {field, points}; @file reads a file")->required();
	star->add_option("--field", o.star_field);

	for (CLI::App *sub : {verify, generate, recon, fox, ann, kummer, cr, l235, star})
		sub->add_flag("--json", o.json, "Machine-readable output");
	fox->add_option("--alphabet", o.alphabet, "Generator letters, in order");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return kUsage;
	}

	try {
		if (verify->parsed())
			return run_verify(o, verify->remaining());
		if (generate->parsed())
			return run_generate(o);
		if (recon->parsed())
			return run_reconstruct(o);
		if (fox->parsed())
			return run_fox(o);
		if (ann->parsed())
			return run_annihilator(o);
		if (kummer->parsed())
			return run_kummer(o);
		if (cr->parsed())
			return run_crossratio(o);
		if (l235->parsed())
			return run_lemma235(o);
		if (star->parsed())
			return run_star_check(o);
	} catch (const ParseError &e) {
		std::cerr << "error: " << e.what() << "\n";
		return kUsage;
	} catch (const DomainError &e) {
		std::cerr << "error: " << e.what() << "\n";
		return kUsage;
	} catch (const MismatchError &e) {
		std::cerr << "error: " << e.what() << "\n";
		return kUsage;
	}
	return kUsage;
}
