// isosym: defect operators, class verdicts, spectra and randomized suites for
// commuting tuples of complex matrices.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isosym/classify.hpp"
#include "isosym/construct.hpp"
#include "isosym/defect.hpp"
#include "isosym/errors.hpp"
#include "isosym/harness.hpp"
#include "isosym/matrix.hpp"
#include "isosym/parallel.hpp"
#include "isosym/spectra.hpp"
#include "isosym/tuple_io.hpp"

namespace fs = std::filesystem;
using namespace isosym;

namespace {

enum Exit { ok = 0, fails = 1, invalid = 2, numerical = 3 };

struct Globals {
    double tol = default_tau;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

struct Outcome {
    Json results;
    int code = ok;
    std::string digest;
};

// A non-finite double written by nlohmann becomes null; keep that explicit.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json verdict_json(const ClassVerdict& v) {
    return {{"property", std::string(to_string(v.property))},
            {"orders", v.orders},
            {"holds", v.holds},
            {"indeterminate", v.indeterminate},
            {"defect_norm", number(v.defect_norm)},
            {"tolerance", number(v.tolerance)}};
}

Json pair_json(const OrderPair& p) { return Json::array({p.first, p.second}); }

Json tolerances(const Globals& g) {
    return {{"tau", g.tol},
            {"tol_comm", default_tol_comm},
            {"tol_rank", default_tol_rank},
            {"tol_eig", default_tol_eig},
            {"tol_spectrum", default_tol_spectrum},
            {"tol_classify", default_tol_classify},
            {"cluster_tol", cluster_tol}};
}

struct Loaded {
    TupleFile file;
    std::string digest;
};

Loaded load(const std::string& path) {
    const auto text = read_text(path);
    return {parse_tuple(text), fnv1a_hex(text)};
}

// ---- text rendering ------------------------------------------------------

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
    const bool leaf_array = j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) {
                                return e.is_primitive() || (e.is_array() && e.size() == 2 && e[0].is_number());
                            });
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            flatten(value, prefix.empty() ? key : prefix + "." + key, os);
        }
    } else if (j.is_array() && !leaf_array) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
        }
    } else {
        os << prefix << ": " << j.dump() << "\n";
    }
}

void emit(const Globals& g, const Json& report) {
    std::ostringstream os;
    if (g.format == "text") {
        flatten(report, "", os);
    } else {
        os << report.dump(2) << "\n";
    }
    if (g.out.empty()) {
        std::cout << os.str();
    } else {
        write_text(g.out, os.str());
    }
}

// ---- commands ------------------------------------------------------------

struct CheckArgs {
    std::string file;
    unsigned m = 1;
    unsigned n = 1;
};

Outcome cmd_check(const Globals& g, const CheckArgs& a) {
    const auto in = load(a.file);
    const auto& r = in.file.tuple;
    const auto iso = is_isosymmetric(r, a.m, a.n, g.tol);
    Outcome out;
    out.digest = in.digest;
    out.results = {{"d", r.d()},
                   {"dim", r.dim()},
                   {"commutation_residual", number(r.commutation_residual())},
                   {"isometric", verdict_json(is_m_isometric(r, a.m, g.tol))},
                   {"symmetric", verdict_json(is_n_symmetric(r, a.n, g.tol))},
                   {"isosymmetric", verdict_json(iso)}};
    out.code = iso.holds ? ok : fails;
    return out;
}

struct DefectArgs {
    std::string file;
    std::string kind = "Lambda";
    std::optional<unsigned> l;
    std::optional<unsigned> m;
    std::optional<unsigned> n;
};

Outcome cmd_defect(const Globals& g, const DefectArgs& a) {
    const auto in = load(a.file);
    const auto& r = in.file.tuple;
    DefectReport rep;
    double magnitude = 0.0;
    if (a.kind == "Lambda") {
        if (!a.m || !a.n) {
            throw InvalidParams("defect: --kind Lambda needs --m and --n");
        }
        rep = defect_Lambda(r, *a.m, *a.n, g.tol);
        magnitude = defect_magnitude(r, *a.m, *a.n);
    } else {
        if (!a.l) {
            throw InvalidParams("defect: --kind " + a.kind + " needs --l");
        }
        // S_l is Lambda_{0,l} and M_l is Lambda_{l,0}.
        if (a.kind == "S") {
            rep = defect_S(r, *a.l, g.tol);
            magnitude = defect_magnitude(r, 0, *a.l);
        } else {
            rep = defect_M(r, *a.l, g.tol);
            magnitude = defect_magnitude(r, *a.l, 0);
        }
    }
    Outcome out;
    out.digest = in.digest;
    out.results = {{"kind", std::string(to_string(rep.kind))},
                   {"orders", rep.orders},
                   {"matrix", matrix_to_json(rep.matrix)},
                   {"norm", number(rep.norm)},
                   {"tolerance", number(rep.tolerance_used)},
                   {"is_zero", rep.is_zero},
                   {"magnitude", number(magnitude)}};
    if (rep.kind == DefectKind::Lambda) {
        out.results["forms_gap"] = number(rep.forms_gap);
    }
    return out;
}

struct MinimalArgs {
    std::string file;
    unsigned m_max = 4;
    unsigned n_max = 4;
};

Outcome cmd_minimal(const Globals& g, const MinimalArgs& a) {
    const auto in = load(a.file);
    const auto res = minimal_orders(in.file.tuple, a.m_max, a.n_max, g.tol);
    Json stair = Json::array();
    for (const auto& p : res.staircase) {
        stair.push_back(pair_json(p));
    }
    Outcome out;
    out.digest = in.digest;
    out.results = {{"staircase", stair},
                   {"search_bounds", pair_json(res.search_bounds)},
                   {"exhausted", res.exhausted},
                   {"evaluations", res.evaluations}};
    out.code = res.exhausted ? ok : fails;
    return out;
}

struct SpectrumArgs {
    std::string file;
    std::optional<unsigned> m;
    std::optional<unsigned> n;
};

Outcome cmd_spectrum(const Globals& g, const SpectrumArgs& a) {
    if (a.m.has_value() != a.n.has_value()) {
        throw InvalidParams("spectrum: give both --m and --n or neither");
    }
    const auto in = load(a.file);
    const auto& r = in.file.tuple;
    const auto spectrum = joint_point_spectrum(r, default_tol_spectrum);

    Outcome out;
    out.digest = in.digest;
    Json pairs = Json::array();
    for (const auto& p : spectrum) {
        Json basis = Json::array();
        for (const auto& v : p.basis) {
            basis.push_back(vector_to_json(v));
        }
        pairs.push_back({{"mu", vector_to_json(p.mu)}, {"residual", number(p.residual)}, {"basis", basis}});
    }
    out.results["eigenpairs"] = pairs;

    bool hypothesis = true;
    bool compliant = true;
    if (a.m) {
        const auto v = is_isosymmetric(r, *a.m, *a.n, g.tol);
        hypothesis = v.holds;
        out.results["hypothesis"] = verdict_json(v);
        Json cls = Json::array();
        for (const auto& c : classify_points(spectrum, default_tol_classify)) {
            compliant = compliant && c.compliant;
            cls.push_back({{"mu", vector_to_json(c.mu)},
                           {"sphere_gap", number(c.sphere_gap)},
                           {"imag_sum", number(c.imag_sum)},
                           {"on_sphere", c.on_sphere},
                           {"real_sum", c.real_sum},
                           {"compliant", c.compliant}});
        }
        out.results["classifications"] = cls;
    }

    Json orth = Json::array();
    for (const auto& c : check_orthogonality(spectrum, default_tol_spectrum)) {
        compliant = compliant && c.compliant;
        orth.push_back({{"pair", Json::array({c.first, c.second})},
                        {"gate_product", number(c.gate_product)},
                        {"gate_sum", number(c.gate_sum)},
                        {"gram_norm", number(c.gram_norm)},
                        {"status", std::string(gate_status(c))},
                        {"compliant", c.compliant}});
    }
    out.results["orthogonality"] = orth;

    const auto zc = zero_coordinate_report(r, spectrum, default_tol_spectrum);
    compliant = compliant && zc.consistent;
    Json points = Json::array();
    for (const auto& p : zc.points) {
        points.push_back({{"mu", vector_to_json(p.mu)},
                          {"product", scalar_to_json(p.product)},
                          {"sum", scalar_to_json(p.sum)},
                          {"sum_gap", number(p.sum_gap)},
                          {"consistent", p.consistent},
                          {"unit_gap", number(p.unit_gap)},
                          {"unit_factor_singular", p.unit_factor_singular}});
    }
    out.results["zero_coordinate"] = {
        {"reading", std::string(zc.reading)}, {"consistent", zc.consistent}, {"points", points}};

    // The spectral properties are only claimed for isosymmetric tuples.
    out.results["asserted"] = a.m.has_value() && hypothesis;
    if (a.m) {
        out.code = hypothesis && compliant ? ok : fails;
    }
    return out;
}

struct ConstructArgs {
    std::string kind;
    std::string base;
    std::vector<double> beta;
    std::vector<std::string> mu;
    unsigned q = 1;
    std::string left;
    std::string right;
    std::size_t d = 2;
    std::size_t dim = 4;
    bool mix = false;
    std::optional<unsigned> m;
    std::optional<unsigned> n;
};

Scalar parse_scalar(const std::string& text) {
    const auto comma = text.find(',');
    try {
        std::size_t used = 0;
        const double re = std::stod(text.substr(0, comma), &used);
        if (used != (comma == std::string::npos ? text.size() : comma)) {
            throw InvalidParams("bad number");
        }
        double im = 0.0;
        if (comma != std::string::npos) {
            const auto tail = text.substr(comma + 1);
            im = std::stod(tail, &used);
            if (used != tail.size()) {
                throw InvalidParams("bad number");
            }
        }
        return {re, im};
    } catch (const std::exception&) {
        throw InvalidParams("construct: --mu entry \"" + text + "\" is not re or re,im");
    }
}

// Orders the perturbation theorem predicts for R + Q, R (m,n)-isosymmetric and
// Q q-nilpotent.
OrderPair shifted_orders(OrderPair base, unsigned q) { return {base.first + 2 * q - 2, base.second + 2 * q - 1}; }

Json predicted_staircase(const MultiOperator& base, unsigned q, double tol) {
    Json out = Json::array();
    for (const auto& p : minimal_orders(base, 3, 3, tol).staircase) {
        out.push_back(pair_json(shifted_orders(p, q)));
    }
    return out;
}

Outcome cmd_construct(const Globals& g, const ConstructArgs& a) {
    const OrderPair base_orders{a.m.value_or(1), a.n.value_or(1)};
    TupleFile file;
    Json meta = {{"name", a.kind}, {"seed", g.seed}};
    std::string digest_input = a.kind;

    if (a.kind == "example22") {
        file.tuple = example_2_2_pair();
        meta["construction"] = "E21 and the identity on C^3";
        meta["predicted_orders"] = pair_json({1, 1});
    } else if (a.kind == "scaled") {
        if (a.base.empty() || a.beta.empty()) {
            throw InvalidParams("construct scaled: needs --base and --beta");
        }
        const auto base = load(a.base);
        if (base.file.tuple.d() != 1) {
            throw InvalidParams("construct scaled: --base must hold a single matrix");
        }
        file.tuple = scaled_tuple({base.file.tuple[0], a.beta});
        digest_input += base.digest;
        meta["construction"] = "beta_j times the base operator";
        meta["predicted_staircase"] = Json::array();
        for (const auto& p : minimal_orders(base.file.tuple, 3, 3, g.tol).staircase) {
            meta["predicted_staircase"].push_back(pair_json(p));
        }
        if (a.m && a.n) {
            meta["predicted_orders"] = pair_json(base_orders);
        }
    } else if (a.kind == "jordan") {
        if (a.mu.empty()) {
            throw InvalidParams("construct jordan: needs --mu");
        }
        Vector mu;
        for (const auto& s : a.mu) {
            mu.push_back(parse_scalar(s));
        }
        MultiOperator base = MultiOperator::identity(mu.size(), 1);
        if (!a.base.empty()) {
            const auto loaded = load(a.base);
            base = loaded.file.tuple;
            digest_input += loaded.digest;
        }
        file.tuple = jordan_augment({base, mu, a.q});
        meta["construction"] = "block bidiagonal: base on the diagonal, mu_k I above it, q = " + std::to_string(a.q);
        meta["predicted_orders"] = pair_json(shifted_orders(base_orders, a.q));
        meta["predicted_staircase"] = predicted_staircase(base, a.q, g.tol);
    } else if (a.kind == "tensor") {
        if (a.left.empty() || a.right.empty()) {
            throw InvalidParams("construct tensor: needs --left and --right");
        }
        const auto left = load(a.left);
        const auto right = load(a.right);
        digest_input += left.digest + right.digest;
        file.tuple = tensor_sum(left.file.tuple, right.file.tuple);
        meta["construction"] = "kron(R_k, I) + kron(I, Q_k)";
        if (const auto q = nilpotency_order(right.file.tuple, g.tol)) {
            meta["nilpotency_order"] = *q;
            meta["predicted_orders"] = pair_json(shifted_orders(base_orders, *q));
            meta["predicted_staircase"] = predicted_staircase(left.file.tuple, *q, g.tol);
        }
    } else if (a.kind == "nilpotent") {
        file.tuple = nilpotent_tuple(a.d, a.dim, a.q, g.seed, a.mix);
        meta["construction"] = "polynomials without constant term in one shift of index q = " + std::to_string(a.q);
        meta["predicted_orders"] = pair_json({0, 2 * a.q});
    } else if (a.kind == "random") {
        file.tuple = random_commuting_tuple(a.d, a.dim, g.seed, a.mix);
        meta["construction"] = "polynomials in one random matrix";
    } else {
        throw InvalidParams("construct: unknown kind " + a.kind);
    }
    file.metadata = meta;

    Outcome out;
    const auto text = tuple_to_json(file).dump(2) + "\n";
    out.digest = fnv1a_hex(digest_input + std::to_string(g.seed));
    out.results = {{"kind", a.kind}, {"d", file.tuple.d()}, {"dim", file.tuple.dim()}, {"metadata", meta}};
    if (g.out.empty()) {
        out.results["tuple"] = tuple_to_json(file);
    } else {
        write_text(g.out, text);
        out.results["file"] = g.out;
    }
    return out;
}

struct VerifyArgs {
    std::string suite = "all";
    unsigned trials = default_trials;
    unsigned d_max = 3;
    unsigned dim_max = 8;
    unsigned m_max = 3;
    unsigned n_max = 3;
    std::string dump_dir = "counterexamples";
};

Outcome cmd_verify(const Globals& g, const VerifyArgs& a) {
    std::vector<Suite> suites;
    if (a.suite == "all") {
        suites = all_suites();
    } else {
        suites.push_back(suite_from_string(a.suite));
    }
    Outcome out;
    Json reports = Json::array();
    bool passed = true;
    for (auto s : suites) {
        SuiteConfig cfg;
        cfg.suite = s;
        cfg.trials = a.trials;
        cfg.seed = g.seed;
        cfg.d_max = a.d_max;
        cfg.dim_max = a.dim_max;
        cfg.m_max = a.m_max;
        cfg.n_max = a.n_max;
        cfg.tol = g.tol;
        cfg.out_dir = fs::path(a.dump_dir);
        validate(cfg);
        const auto rep = run_suite(cfg);
        passed = passed && rep.all_passed();
        reports.push_back(report_to_json(rep));
    }
    out.results = {{"passed", passed}, {"threads", effective_threads()}, {"suites", reports}};
    out.digest = fnv1a_hex(a.suite + std::to_string(a.trials) + std::to_string(g.seed));
    out.code = passed ? ok : fails;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Defect operators, class verdicts and joint spectra of commuting matrix tuples"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ISOSYM_VERSION));

    Globals g;
    app.add_option("--tol", g.tol, "Zero tolerance tau for defect verdicts")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for constructions and suites");
    app.add_option("--out", g.out, "Write the report (construct: the tuple) to this file");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));

    CheckArgs check;
    auto* c_check = app.add_subcommand("check", "Class verdicts for given orders")->fallthrough();
    c_check->add_option("file", check.file, "Tuple JSON")->required();
    c_check->add_option("--m", check.m, "Isometric order")->check(CLI::PositiveNumber);
    c_check->add_option("--n", check.n, "Symmetric order")->check(CLI::PositiveNumber);

    DefectArgs defect;
    auto* c_defect = app.add_subcommand("defect", "One defect operator")->fallthrough();
    c_defect->add_option("file", defect.file, "Tuple JSON")->required();
    c_defect->add_option("--kind", defect.kind, "S, M or Lambda")->check(CLI::IsMember({"S", "M", "Lambda"}));
    c_defect->add_option("--l", defect.l, "Order for S and M");
    c_defect->add_option("--m", defect.m, "Isometric order for Lambda");
    c_defect->add_option("--n", defect.n, "Symmetric order for Lambda");

    MinimalArgs minimal;
    auto* c_minimal = app.add_subcommand("minimal", "Minimal isosymmetry orders")->fallthrough();
    c_minimal->add_option("file", minimal.file, "Tuple JSON")->required();
    c_minimal->add_option("--m-max", minimal.m_max)->check(CLI::Range(0u, max_lattice_order));
    c_minimal->add_option("--n-max", minimal.n_max)->check(CLI::Range(0u, max_lattice_order));

    SpectrumArgs spectrum;
    auto* c_spectrum = app.add_subcommand("spectrum", "Joint point spectrum and its checks")->fallthrough();
    c_spectrum->add_option("file", spectrum.file, "Tuple JSON")->required();
    c_spectrum->add_option("--m", spectrum.m, "Isometric order of the hypothesis");
    c_spectrum->add_option("--n", spectrum.n, "Symmetric order of the hypothesis");

    ConstructArgs construct;
    auto* c_construct = app.add_subcommand("construct", "Build an example tuple")->fallthrough();
    c_construct->add_option("kind", construct.kind)
        ->required()
        ->check(CLI::IsMember({"example22", "scaled", "jordan", "tensor", "nilpotent", "random"}));
    c_construct->add_option("--base", construct.base, "Base tuple JSON (scaled, jordan)");
    c_construct->add_option("--beta", construct.beta, "Weights, sum of squares 1 (scaled)")->delimiter(',');
    c_construct->add_option("--mu", construct.mu, "Shift weights, each re or re,im (jordan)");
    c_construct->add_option("--q", construct.q, "Nilpotency order")->check(CLI::PositiveNumber);
    c_construct->add_option("--left", construct.left, "R tuple JSON (tensor)");
    c_construct->add_option("--right", construct.right, "Q tuple JSON (tensor)");
    c_construct->add_option("--d", construct.d, "Tuple length")->check(CLI::PositiveNumber);
    c_construct->add_option("--dim", construct.dim, "Dimension")->check(CLI::Range(std::size_t{1}, max_random_dim));
    c_construct->add_flag("--mix", construct.mix, "Conjugate by a random unitary");
    c_construct->add_option("--m", construct.m, "Base isometric order for the prediction");
    c_construct->add_option("--n", construct.n, "Base symmetric order for the prediction");

    VerifyArgs verify;
    auto* c_verify = app.add_subcommand("verify", "Randomized verification suites")->fallthrough();
    c_verify->add_option("--suite", verify.suite, "Suite name or all");
    c_verify->add_option("--trials", verify.trials)->check(CLI::PositiveNumber);
    c_verify->add_option("--d-max", verify.d_max)->check(CLI::PositiveNumber);
    c_verify->add_option("--dim-max", verify.dim_max)->check(CLI::Range(1u, unsigned(max_suite_dim)));
    c_verify->add_option("--m-max", verify.m_max)->check(CLI::PositiveNumber);
    c_verify->add_option("--n-max", verify.n_max)->check(CLI::PositiveNumber);
    c_verify->add_option("--dump-dir", verify.dump_dir, "Counterexample files go here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : invalid;
    }

    const auto* sub = app.get_subcommands().front();
    try {
        // Fail on a malformed ISOSYM_THREADS before doing any work.
        requested_threads();
        Outcome out;
        if (sub == c_check) {
            out = cmd_check(g, check);
        } else if (sub == c_defect) {
            out = cmd_defect(g, defect);
        } else if (sub == c_minimal) {
            out = cmd_minimal(g, minimal);
        } else if (sub == c_spectrum) {
            out = cmd_spectrum(g, spectrum);
        } else if (sub == c_construct) {
            out = cmd_construct(g, construct);
        } else {
            out = cmd_verify(g, verify);
        }
        std::vector<std::string> args(argv + 1, argv + argc);
        Json report = {{"command", {{"name", sub->get_name()}, {"argv", args}}},
                       {"inputs_digest", out.digest},
                       {"tool_version", ISOSYM_VERSION},
                       {"tolerances", tolerances(g)},
                       {"exit_code", out.code},
                       {"results", out.results}};
        // construct writes the tuple to --out, so its report goes to stdout.
        Globals emit_to = g;
        if (sub == c_construct) {
            emit_to.out.clear();
        }
        emit(emit_to, report);
        return out.code;
    } catch (const InputError& e) {
        std::cerr << "isosym: invalid input: " << e.what() << "\n";
        return invalid;
    } catch (const IoError& e) {
        std::cerr << "isosym: " << e.what() << "\n";
        return invalid;
    } catch (const NumericalError& e) {
        std::cerr << "isosym: numerical failure: " << e.what() << "\n";
        return numerical;
    }
}
