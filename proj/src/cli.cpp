#include "circlekit/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "circlekit/archimedean.hpp"
#include "circlekit/counting.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/experiment.hpp"
#include "circlekit/expsums.hpp"
#include "circlekit/io.hpp"
#include "circlekit/local.hpp"
#include "circlekit/parallel.hpp"
#include "circlekit/thinset.hpp"
#include "circlekit/verify.hpp"

namespace circlekit::cli {

namespace {

Json complex_json(std::complex<double> z)
{
    return Json{{"re", format_double(z.real())}, {"im", format_double(z.imag())}};
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream file(path);
    if (!file) throw SchemaError("cannot write " + path);
    return file;
}

struct Options {
    std::uint64_t budget = Budget::kDefaultPoints;
    unsigned threads = 1;

    std::string form_path;
    std::string P_path;
    std::string config_path;
    std::string out_path;
    std::string summary_path;
    std::string suite = "all";
    std::string method = "auto";

    int d = 2;
    int n = 2;
    std::int64_t X_int = 0;
    double X = 0;
    double A = 0;
    std::int64_t A_int = 0;
    std::optional<double> w;
    std::optional<double> zeta;
    int grid = kDefaultQuadraturePoints;
    unsigned depth = kDefaultHenselDepth;
    std::uint64_t p = 0;
    unsigned r = 1;
    double b_real = 0;
    std::int64_t b = 1;
    std::uint64_t q = 1;
    std::int64_t a = 0;
    double alpha = 0;
    double B = 1;
    int steps = 0;
    std::int64_t W = 1;
    std::optional<std::size_t> limit;
    bool companion = false;

    Budget make_budget() const { return Budget{budget}; }
};

using Handler = std::function<void(std::ostream&, std::ostream&)>;

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"circle-kit: circle-method quantities for families of integer forms", "circle-kit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--budget", o.budget, "maximum number of enumerated points")->check(CLI::PositiveNumber);
    app.add_option("--threads", o.threads, "worker threads (results do not depend on this)");

    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto command = [&](const std::string& name, const std::string& help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, std::move(h));
        return sub;
    };
    auto emit = [](std::ostream& os, const Json& j) { os << j.dump() << '\n'; };

    // basis
    auto* basis = command("basis", "list the monomial basis in lexicographic order", [&](std::ostream& os, std::ostream&) {
        const auto B = build_basis(o.d, o.n);
        Json exps = Json::array();
        for (const auto& e : B->exponents()) exps.push_back(e);
        emit(os, Json{{"d", o.d}, {"n", o.n}, {"N", B->size()}, {"exponents", exps}});
    });
    basis->add_option("--d", o.d, "degree")->required();
    basis->add_option("--n", o.n, "variables")->required();

    // count
    auto* count = command("count", "integer zeros in [1, X]^n", [&](std::ostream& os, std::ostream&) {
        const Form f = parse_form_file(o.form_path);
        CountMethod m = o.method == "brute" ? CountMethod::BruteForce
                        : o.method == "mitm" ? CountMethod::MeetInTheMiddle
                                             : CountMethod::Automatic;
        const auto c = count_solutions(f, o.X_int, o.make_budget(), m);
        emit(os, Json{{"X", c.X}, {"count", c.count}});
    });
    count->add_option("--form", o.form_path, "form JSON file")->required();
    count->add_option("--X", o.X_int, "box side")->required();
    count->add_option("--method", o.method, "auto, brute or mitm")->check(CLI::IsMember({"auto", "brute", "mitm"}));

    // sigma
    auto* sig = command("sigma", "local density sigma(a; p^r)", [&](std::ostream& os, std::ostream&) {
        const Form f = parse_form_file(o.form_path);
        const auto pp = PrimePower::make(o.p, o.r);
        const auto Q = pp.value();
        const auto s = sigma(f, Q, o.make_budget());
        emit(os, Json{{"p", o.p}, {"r", o.r}, {"Q", Q}, {"sigma", rational_json(s)}});
    });
    sig->add_option("--form", o.form_path, "form JSON file")->required();
    sig->add_option("--p", o.p, "prime")->required();
    sig->add_option("--r", o.r, "exponent")->required();

    // series
    auto* series = command("series", "truncated singular series S*", [&](std::ostream& os, std::ostream&) {
        const Form f = parse_form_file(o.form_path);
        const auto W = build_W(o.X, o.w);
        const auto profile = singular_series(f, W, o.make_budget());
        Json factors = Json::array();
        for (const auto& fac : profile.factors)
            factors.push_back(Json{{"p", fac.pp.p}, {"r", fac.pp.r}, {"sigma", rational_json(fac.sigma)}});
        emit(os, Json{{"w", format_double(W.w)},
                      {"W", integer_json(W.W)},
                      {"degenerate", W.degenerate},
                      {"factors", factors},
                      {"Sstar", rational_json(profile.product)}});
    });
    series->add_option("--form", o.form_path, "form JSON file")->required();
    series->add_option("--X", o.X, "box side (w = log X)")->required();
    series->add_option("--w", o.w, "override w");

    // local
    auto* local = command("local", "real and p-adic solubility for p <= w", [&](std::ostream& os, std::ostream&) {
        const Form f = parse_form_file(o.form_path);
        const auto W = build_W(o.X, o.w);
        const auto real = real_soluble(f);
        Json padic = Json::array();
        bool insoluble = real.verdict == Verdict::Insoluble;
        bool soluble = real.verdict == Verdict::Soluble;
        for (const auto& pp : W.factors) {
            const auto cert = padic_soluble(f, pp.p, o.depth, o.make_budget());
            insoluble = insoluble || cert.verdict == Verdict::Insoluble;
            soluble = soluble && cert.verdict == Verdict::Soluble;
            padic.push_back(certificate_json(cert));
        }
        const LocalStatus status = insoluble ? LocalStatus::Insoluble
                                   : soluble ? LocalStatus::Soluble
                                             : LocalStatus::Undetermined;
        emit(os, Json{{"w", format_double(W.w)},
                      {"real", certificate_json(real)},
                      {"padic", padic},
                      {"locally_soluble", to_string(status)}});
    });
    local->add_option("--form", o.form_path, "form JSON file")->required();
    local->add_option("--X", o.X, "box side (w = log X)")->required();
    local->add_option("--w", o.w, "override w");
    local->add_option("--depth", o.depth, "maximum lifting level")->check(CLI::PositiveNumber);

    // integral
    auto* integral = command("integral", "truncated singular integral J*", [&](std::ostream& os, std::ostream& es) {
        const Form f = parse_form_file(o.form_path);
        QuadratureSpec quad;
        quad.M = o.grid;
        quad.budget = o.make_budget();
        const double w = o.w ? *o.w : std::log(o.X);
        if (o.companion) {
            const auto J = singular_integral_w(f, o.A, o.X, w, quad);
            emit(os, Json{{"w", format_double(w)},
                          {"value", complex_json(J.value)},
                          {"refined", complex_json(J.refined)},
                          {"gap", format_double(J.gap)},
                          {"beta_nodes", J.beta_nodes},
                          {"M", o.grid}});
            return;
        }
        const auto fejer = o.zeta ? FejerParams::from_zeta(*o.zeta, w) : FejerParams::from_w(w);
        if (fejer.large_zeta()) es << "warning: zeta >= 1 lies outside the asymptotic regime\n";
        const auto J = singular_integral(f, o.A, o.X, fejer, quad);
        emit(os, Json{{"zeta", format_double(fejer.zeta)},
                      {"value", format_double(J.value)},
                      {"refined", format_double(J.refined)},
                      {"gap", format_double(J.gap)},
                      {"extrapolated", format_double(J.extrapolated)},
                      {"M", o.grid},
                      {"monte_carlo", J.monte_carlo}});
    });
    integral->add_option("--form", o.form_path, "form JSON file")->required();
    integral->add_option("--A", o.A, "coefficient height")->required();
    integral->add_option("--X", o.X, "box side")->required();
    integral->add_option("--zeta", o.zeta, "Fejer width (default w^-5)");
    integral->add_option("--w", o.w, "override w = log X");
    integral->add_option("--grid", o.grid, "midpoint nodes per axis");
    integral->add_flag("--companion", o.companion, "compute J(w) instead of J*");

    // tau
    auto* tau_cmd = command("tau", "sublevel measure tau(a; b)", [&](std::ostream& os, std::ostream&) {
        const Form f = parse_form_file(o.form_path);
        QuadratureSpec quad;
        quad.M = o.grid;
        quad.budget = o.make_budget();
        const auto t = tau(f, o.b_real, quad);
        emit(os, Json{{"b", format_double(o.b_real)},
                      {"value", format_double(t.value)},
                      {"refined", format_double(t.refined)},
                      {"gap", format_double(t.gap)},
                      {"full", t.full},
                      {"monte_carlo", t.monte_carlo}});
    });
    tau_cmd->add_option("--form", o.form_path, "form JSON file")->required();
    tau_cmd->add_option("--b", o.b_real, "scale b > 0")->required();
    tau_cmd->add_option("--grid", o.grid, "midpoint nodes per axis");

    // gauss
    auto* gauss = command("gauss", "Gauss sum S(q, a)", [&](std::ostream& os, std::ostream&) {
        const auto s = gauss_sum(o.q, o.a, o.d);
        emit(os, Json{{"q", o.q}, {"a", o.a}, {"d", o.d}, {"value", complex_json(s)}, {"abs", format_double(std::abs(s))}});
    });
    gauss->add_option("--q", o.q, "modulus")->required()->check(CLI::PositiveNumber);
    gauss->add_option("--a", o.a, "numerator")->required();
    gauss->add_option("--d", o.d, "degree")->required();

    // weyl
    auto* weyl = command("weyl", "Weyl sum over 1 <= x <= X", [&](std::ostream& os, std::ostream&) {
        const auto s = weyl_sum(o.alpha, o.b, o.X_int, o.d);
        emit(os, Json{{"alpha", format_double(o.alpha)}, {"b", o.b}, {"X", o.X_int}, {"d", o.d},
                      {"value", complex_json(s)}, {"abs", format_double(std::abs(s))}});
    });
    weyl->add_option("--alpha", o.alpha, "frequency")->required();
    weyl->add_option("--b", o.b, "coefficient")->required();
    weyl->add_option("--X", o.X_int, "length")->required();
    weyl->add_option("--d", o.d, "degree")->required();

    // tarr
    auto* tarr = command("tarr", "mean square T(alpha) over |b| <= A", [&](std::ostream& os, std::ostream&) {
        emit(os, Json{{"alpha", format_double(o.alpha)}, {"A", o.A_int}, {"X", o.X_int}, {"d", o.d},
                      {"T", format_double(t_alpha(o.alpha, o.A_int, o.X_int, o.d))}});
    });
    tarr->add_option("--alpha", o.alpha, "frequency")->required();
    tarr->add_option("--A", o.A_int, "coefficient height")->required();
    tarr->add_option("--X", o.X_int, "length")->required();
    tarr->add_option("--d", o.d, "degree")->required();

    // arc-locate
    auto* locate = command("arc-locate", "find the major arc containing alpha", [&](std::ostream& os, std::ostream&) {
        ArcParams params{o.A, o.X, o.d, o.B};
        const auto hit = major_arc_locate(o.alpha, params);
        Json j{{"alpha", format_double(o.alpha)}, {"radius", format_double(params.radius())}, {"found", hit.has_value()}};
        if (hit) {
            j["q"] = hit->q;
            j["a"] = hit->a;
            j["delta"] = format_double(hit->delta);
        }
        emit(os, j);
    });
    locate->add_option("--alpha", o.alpha, "point of the circle")->required();
    locate->add_option("--A", o.A, "coefficient height")->required();
    locate->add_option("--X", o.X, "box side")->required();
    locate->add_option("--d", o.d, "degree")->required();
    locate->add_option("--B", o.B, "arc parameter")->required();

    // arc-error
    auto* arc_error = command("arc-error", "Weyl sum minus its major-arc model", [&](std::ostream& os, std::ostream&) {
        const auto r = major_arc_approximation(o.alpha, o.b, static_cast<std::int64_t>(o.q), o.a, o.X_int, o.d, o.steps);
        const double q2 = static_cast<double>(o.q) * static_cast<double>(o.q);
        emit(os, Json{{"alpha", format_double(o.alpha)},
                      {"q", o.q},
                      {"a", o.a},
                      {"b", o.b},
                      {"X", o.X_int},
                      {"d", o.d},
                      {"error", format_double(r.error)},
                      {"error_over_q2", format_double(r.error / q2)},
                      {"weyl", complex_json(r.weyl)},
                      {"approx", complex_json(r.approx)},
                      {"beta", format_double(r.beta)},
                      {"q_reduced", r.q_reduced},
                      {"b_reduced", r.b_reduced},
                      {"v_error_estimate", format_double(r.v_error_estimate)}});
    });
    arc_error->add_option("--alpha", o.alpha, "point of the circle")->required();
    arc_error->add_option("--b", o.b, "coefficient")->required();
    arc_error->add_option("--q", o.q, "denominator")->required()->check(CLI::PositiveNumber);
    arc_error->add_option("--a", o.a, "numerator")->required();
    arc_error->add_option("--X", o.X_int, "length")->required();
    arc_error->add_option("--d", o.d, "degree")->required();
    arc_error->add_option("--steps", o.steps, "quadrature nodes for v(beta) (0 = automatic)");

    // thinset
    auto* thin = command("thinset", "members of the thin set P(a) = 0, |a| <= A", [&](std::ostream& os, std::ostream&) {
        const auto P = parse_constraint_file(o.P_path);
        const auto set = enumerate_thin_set(P, o.A_int, o.limit, o.make_budget());
        if (o.out_path.empty()) {
            for (const auto& m : set.members) emit(os, vector_json(m));
            return;
        }
        auto file = open_output(o.out_path);
        for (const auto& m : set.members) file << vector_json(m).dump() << '\n';
        emit(os, Json{{"A", o.A_int}, {"size", set.members.size()}, {"truncated", set.truncated}, {"trivial", set.trivial()}});
    });
    thin->add_option("--P", o.P_path, "constraint form JSON file")->required();
    thin->add_option("--A", o.A_int, "height")->required();
    thin->add_option("--limit", o.limit, "keep the first L members");
    thin->add_option("--out", o.out_path, "write members as JSON lines");

    // pairs
    auto* pairs = command("pairs", "pairs of thin-set members congruent mod W", [&](std::ostream& os, std::ostream&) {
        const auto P = parse_constraint_file(o.P_path);
        const auto pc = congruent_pair_count(P, o.A_int, o.W, o.make_budget());
        emit(os, Json{{"A", o.A_int},
                      {"W", o.W},
                      {"count", integer_json(pc.count)},
                      {"members", pc.members},
                      {"classes", pc.classes},
                      {"reference_scale", format_double(pc.reference_scale)}});
    });
    pairs->add_option("--P", o.P_path, "constraint form JSON file")->required();
    pairs->add_option("--A", o.A_int, "height")->required();
    pairs->add_option("--W", o.W, "modulus")->required();

    // experiment
    auto* experiment = command("experiment", "run the desk-scale experiment", [&](std::ostream& os, std::ostream& es) {
        auto config = config_from_json(read_json_file(o.config_path));
        config.budget = o.make_budget();
        const auto result = run_experiment(config);
        if (o.out_path.empty()) {
            write_csv(os, result.records);
        } else {
            auto file = open_output(o.out_path);
            write_csv(file, result.records);
        }
        const auto summary = summary_json(result.summary).dump(2);
        if (!o.summary_path.empty()) open_output(o.summary_path) << summary << '\n';
        else (o.out_path.empty() ? es : os) << summary << '\n';
    });
    experiment->add_option("--config", o.config_path, "experiment configuration JSON")->required();
    experiment->add_option("--out", o.out_path, "CSV output path (default: standard output)");
    experiment->add_option("--summary", o.summary_path, "summary JSON path");

    // verify
    bool failed = false;
    auto* verify = command("verify", "run acceptance suites", [&](std::ostream& os, std::ostream&) {
        for (const auto& r : run_suite(o.suite)) {
            os << format_result(r) << '\n';
            failed = failed || !r.passed;
        }
    });
    verify->add_option("suite", o.suite, "suite name or all")->check(CLI::IsMember([] {
        auto names = suite_names();
        names.push_back("all");
        return names;
    }()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.back()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.back()->help());
        return kExitConfig;
    }

    set_thread_count(o.threads);
    try {
        for (auto& [sub, handler] : commands) {
            if (!sub->parsed()) continue;
            handler(out, err);
            return failed ? kExitFailedChecks : kExitOk;
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << '\n';
        return kExitBudget;
    } catch (const NumericalInconsistency& e) {
        err << "numerical inconsistency: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

} // namespace circlekit::cli
