#include "qhfib/errors.hpp"
#include "qhfib/expression.hpp"
#include "qhfib/fixture.hpp"
#include "qhfib/validator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace qhfib;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailures = 1;
constexpr int kInputError = 2;
constexpr int kIncomplete = 3;

const char* const kDefaultCutoff = "4";

struct Options {
    std::string fixture;
    std::string other;
    std::string a;
    std::string b;
    std::string sigma;
    std::string cutoff;
    std::string kappa;
    std::string suite = "all";
    std::string mode = "vertical";
    std::string out;
    bool json = false;
};

Rational cutoff_of(const Options& o) {
    Rational c = parse_rational(kDefaultCutoff);
    if (!o.cutoff.empty()) c = parse_rational(o.cutoff);
    else if (const char* env = std::getenv("QHFIB_CUTOFF"); env && *env) c = parse_rational(env);
    if (c < 0) throw CutoffTooSmall("cutoff must be nonnegative, got " + to_string(c));
    return c;
}

const FibrationModel& require_fibration(const FixtureDocument& doc) {
    if (!doc.fibration) throw ParseError("fixture has no fibration section");
    return *doc.fibration;
}

json class_json(const ManifoldModel& m, const QHClass& q) {
    json terms = json::array();
    for (const auto& [key, v] : q.terms()) {
        json coeffs;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) coeffs[m.basis[i].label] = to_string(v[i]);
        json exponent = json::array();
        for (const auto& x : m.h2.representative(key)) exponent.push_back(to_string(x));
        terms.push_back({{"exponent", exponent}, {"coefficients", coeffs}});
    }
    return {{"value", format_class(m, q)}, {"terms", terms}};
}

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.json) std::cout << j.dump(2) << "\n";
    else std::cout << text << "\n";
}

int cmd_product(const Options& o) {
    const FixtureDocument doc = load_fixture(o.fixture);
    const ManifoldModel& m = doc.manifold.model;
    const Rational cutoff = cutoff_of(o);
    const QHClass a = parse_class(m, o.a);
    const QHClass b = parse_class(m, o.b);
    const QHClass r = quantum_product(doc.manifold, a, b, cutoff).truncated(cutoff);
    emit(o, {{"a", format_class(m, a)}, {"b", format_class(m, b)}, {"cutoff", to_string(cutoff)}, {"product", class_json(m, r)}},
         format_class(m, r));
    return kOk;
}

int cmd_psi(const Options& o) {
    const FixtureDocument doc = load_fixture(o.fixture);
    const FibrationModel& f = require_fibration(doc);
    const ManifoldModel& m = f.fiber.model;
    const Rational cutoff = cutoff_of(o);
    const SeidelData s = seidel_data(f);
    const SectionClass sigma = o.sigma.empty() ? sigma_phi(s) : SectionClass{m.h2.key(m.h2.parse_coords(o.sigma))};
    const QHClass a = parse_class(m, o.a);
    const QHClass r = psi(s, sigma, a, cutoff).truncated(cutoff);
    emit(o,
         {{"a", format_class(m, a)},
          {"section", s.format(sigma)},
          {"u", to_string(s.u(sigma))},
          {"c", to_string(s.c(sigma))},
          {"cutoff", to_string(cutoff)},
          {"psi", class_json(m, r)}},
         format_class(m, r));
    return kOk;
}

int cmd_rho(const Options& o) {
    const FixtureDocument doc = load_fixture(o.fixture);
    const FibrationModel& f = require_fibration(doc);
    const ManifoldModel& m = f.fiber.model;
    const Rational cutoff = cutoff_of(o);
    const SeidelData s = seidel_data(f);
    const SectionClass sigma = sigma_phi(s);
    const QHClass r = rho(s, cutoff).truncated(cutoff);
    const RhoShape shape = rho_shape_check(m, r);
    emit(o,
         {{"section", s.format(sigma)},
          {"cutoff", to_string(cutoff)},
          {"rho", class_json(m, r)},
          {"shape", shape_name(shape.kind)}},
         format_class(m, r));
    return kOk;
}

int cmd_invariants(const Options& o) {
    const FixtureDocument doc = load_fixture(o.fixture);
    const FibrationModel& f = require_fibration(doc);
    const Rational ic = invariant_Ic(f);
    const Vec iu = invariant_Iu(f);
    const long N = f.fiber.model.N;
    json ik = json::object();
    std::string text = "Ic = " + to_string(ic) + " mod " + std::to_string(N) + "\nIu = " + format_Iu(f, iu);
    for (int k = 0; k <= f.fiber.model.n + 1; ++k) {
        const Rational v = invariant_Ik(f, k);
        ik[std::to_string(k)] = to_string(v);
        text += "\nI" + std::to_string(k) + " = " + to_string(v);
    }
    json iu_coords = json::array();
    for (const auto& x : iu) iu_coords.push_back(to_string(x));
    emit(o,
         {{"Ic", to_string(ic)},
          {"N", std::to_string(N)},
          {"Iu", format_Iu(f, iu)},
          {"Iu_coordinates", iu_coords},
          {"Ik", ik}},
         text);
    return kOk;
}

int cmd_split(const Options& o) {
    const FixtureDocument doc = load_fixture(o.fixture);
    const FibrationModel& f = require_fibration(doc);
    SplitMode mode;
    if (o.mode == "vertical") mode = SplitMode::vertical;
    else if (o.mode == "horizontal-unit") mode = SplitMode::horizontal_unit;
    else if (o.mode == "monomial-rho") mode = SplitMode::monomial_rho;
    else throw ParseError("unknown split mode '" + o.mode + "'");
    const Rational cutoff = cutoff_of(o);
    try {
        const RingSplitResult r = ring_split_check(f, cutoff, mode);
        const auto labels = f.total.labels();
        json sa = json::object();
        std::string text = std::string("splits: ") + (r.splits ? "true" : "false") + " (" + r.mode + ")";
        for (std::size_t i = 0; i < f.fiber.model.dim(); ++i) {
            const std::string image = format_vec(labels, r.s_A.column(i));
            sa[f.fiber.model.basis[i].label] = image;
            text += "\ns_A(" + f.fiber.model.basis[i].label + ") = " + image;
        }
        if (!r.report.ok()) text += "\n" + r.report.to_text();
        emit(o,
             {{"splits", r.splits},
              {"mode", r.mode},
              {"mu", to_string(r.mu)},
              {"section", f.fiber.model.h2.format(r.sigma_A.offset)},
              {"s_A", sa},
              {"report", r.report.to_json()}},
             text);
        return r.splits ? kOk : kFailures;
    } catch (const HypothesisFailed& e) {
        json entries = e.entries();
        emit(o, {{"splits", false}, {"hypothesis_failed", e.what()}, {"entries", entries}},
             std::string("hypothesis failed: ") + e.what());
        return kFailures;
    }
}

int cmd_nonsqueeze(const Options& o) {
    const FixtureDocument doc = load_fixture(o.fixture);
    const FibrationModel& f = require_fibration(doc);
    const Rational kappa = parse_rational(o.kappa);
    const NonsqueezingResult r = nonsqueezing_bound(f, kappa, cutoff_of(o));
    json bound = r.bound ? json(to_string(*r.bound)) : json(nullptr);
    const std::string text = r.bound ? "bound: " + to_string(*r.bound) : "bound: none (" + r.reason + ")";
    emit(o, {{"bound", bound}, {"invariant", to_string(r.invariant)}, {"reason", r.reason}}, text);
    return kOk;
}

int cmd_verify(const Options& o) {
    const FixtureDocument doc = load_fixture(o.fixture);
    const Rational cutoff = cutoff_of(o);
    const VerificationReport report = doc.fibration ? run_suite(*doc.fibration, o.suite, cutoff)
                                                    : run_suite(doc.manifold, o.suite, cutoff);
    emit(o, report.to_json(), report.to_text());
    return report.ok() ? kOk : kFailures;
}

int cmd_compose(const Options& o) {
    const FixtureDocument first = load_fixture(o.fixture);
    const FixtureDocument second = load_fixture(o.other.empty() ? o.fixture : o.other);
    const Rational cutoff = cutoff_of(o);
    const SeidelData phi = seidel_data(require_fibration(first));
    const SeidelData psi_data = seidel_data(require_fibration(second));
    const CompositionResult result = compose(phi, psi_data, cutoff);
    const ManifoldModel& m = phi.fiber.model;
    const QHClass r = rho(result.composite, cutoff).truncated(cutoff);
    const SectionClass sigma = sigma_phi(result.composite);
    std::string text = "rho = " + format_class(m, r) + "\nsection: " + result.composite.format(sigma);
    if (!result.report.ok()) text += "\n" + result.report.to_text();
    emit(o,
         {{"rho", class_json(m, r)},
          {"section", result.composite.format(sigma)},
          {"u_ref", to_string(result.composite.u_ref)},
          {"c_ref", to_string(result.composite.c_ref)},
          {"report", result.report.to_json()}},
         text);
    return result.report.ok() ? kOk : kFailures;
}

int cmd_product_bundle(const Options& o) {
    const FixtureDocument doc = load_fixture(o.fixture);
    FixtureDocument out;
    out.manifold = doc.manifold;
    out.fibration = product_fixture(doc.manifold);
    const std::string text = dump_fixture(out);
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(o.out);
        if (!file) throw ParseError("cannot write '" + o.out + "'");
        file << text;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum homology of Hamiltonian fibrations over the sphere"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool with_cutoff) {
        sub->add_option("--fixture", o.fixture, "fixture JSON file")->required();
        if (with_cutoff) sub->add_option("--cutoff", o.cutoff, "energy cutoff p/q (default: $QHFIB_CUTOFF or 4)");
        sub->add_flag("--json", o.json, "emit JSON with exact p/q values");
    };

    auto* product = app.add_subcommand("product", "quantum product of two classes of the fiber");
    common(product, true);
    product->add_option("--a", o.a, "class expression")->required();
    product->add_option("--b", o.b, "class expression")->required();

    auto* psi_cmd = app.add_subcommand("psi", "Seidel operation on a fiber class");
    common(psi_cmd, true);
    psi_cmd->add_option("--a", o.a, "class expression")->required();
    psi_cmd->add_option("--sigma", o.sigma, "section offset as an H2 expression (default: normalized section)");

    auto* rho_cmd = app.add_subcommand("rho", "Seidel element of the fibration");
    common(rho_cmd, true);

    auto* inv = app.add_subcommand("invariants", "characteristic invariants Ic, Iu and Ik");
    common(inv, false);

    auto* split = app.add_subcommand("split", "ring splitting check");
    common(split, true);
    split->add_option("--mode", o.mode, "vertical, horizontal-unit or monomial-rho");

    auto* nonsq = app.add_subcommand("nonsqueeze", "area bound from the section invariant");
    common(nonsq, true);
    nonsq->add_option("--kappa", o.kappa, "area of the base")->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    common(verify, true);
    verify->add_option("--suite", o.suite, "suite name")->check(CLI::IsMember(suite_names()));

    auto* comp = app.add_subcommand("compose", "compose two fibrations over the same fiber");
    common(comp, true);
    comp->add_option("--with", o.other, "second fixture (default: the first)");

    auto* bundle = app.add_subcommand("product-bundle", "write the trivial fibration over a fiber fixture");
    common(bundle, false);
    bundle->add_option("--out", o.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*product) return cmd_product(o);
        if (*psi_cmd) return cmd_psi(o);
        if (*rho_cmd) return cmd_rho(o);
        if (*inv) return cmd_invariants(o);
        if (*split) return cmd_split(o);
        if (*nonsq) return cmd_nonsqueeze(o);
        if (*verify) return cmd_verify(o);
        if (*comp) return cmd_compose(o);
        if (*bundle) return cmd_product_bundle(o);
    } catch (const TableIncomplete& e) {
        std::cerr << "table incomplete: " << e.what() << "\n";
        return kIncomplete;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
