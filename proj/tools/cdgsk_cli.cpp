#include "cdgsk/bloch.hpp"
#include "cdgsk/errors.hpp"
#include "cdgsk/evolve.hpp"
#include "cdgsk/profile.hpp"
#include "cdgsk/reduced.hpp"
#include "cdgsk/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace cdgsk;

namespace {

struct ProfileConfig {
    double a = 0.01;
    double k = 1.0;
    int N = kDefaultProfileOrder;
    std::string sweep;
    bool log_spacing = false;
    bool fit = false;
};

struct SpectrumConfig {
    double a = 0.02;
    double k = 1.0;
    int N = kDefaultBlochOrder;
    int grid = 401;
    std::optional<double> xi;
    double tol = kDefaultStabilityTol;
};

struct ReducedConfig {
    double a = 0.02;
    double k = 1.0;
    double xi = 0.05;
    int N = kDefaultReducedOrder;
    int nodes = kDefaultContourNodes;
    bool check_appendix = false;
};

struct EvolveConfig {
    double a = 0.02;
    double k = 1.0;
    int N = kDefaultEvolveOrder;
    double T = 50.0;
    double dt = kDefaultEvolveStep;
    std::uint64_t seed = 7;
    double epsilon = 1e-5;
    double sample = 0.1;
    bool dt_study = false;
    double dt0 = 8e-4;
    double study_T = 0.4;
};

struct Selectors {
    bool json = false, csv = false, svg = false;
    // Nothing selected means JSON and CSV.
    bool want_json() const { return json || (!csv && !svg); }
    bool want_csv() const { return csv || (!json && !svg); }
};

class Output {
public:
    Output(fs::path dir, Selectors sel, std::string hash) : dir_(std::move(dir)), sel_(sel), hash_(std::move(hash))
    {
        fs::create_directories(dir_);
    }
    const std::string& hash() const { return hash_; }
    const Selectors& selectors() const { return sel_; }

    void json(const std::string& name, Json j) const
    {
        if (!sel_.want_json()) return;
        Json out{{"manifest_hash", hash_}};
        out.update(j);
        write(name, dump(out));
    }
    void csv(const std::string& name, const CsvTable& t) const
    {
        if (sel_.want_csv()) write(name, t.str());
    }
    void svg(const std::string& name, const std::string& body) const
    {
        if (sel_.svg) write(name, body);
    }
    void write(const std::string& name, const std::string& body) const
    {
        const fs::path p = dir_ / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
        f << body;
        if (!f) throw std::runtime_error("write failed: " + p.string());
    }

private:
    fs::path dir_;
    Selectors sel_;
    std::string hash_;
};

int worker_count()
{
    if (const char* env = std::getenv("CDGSK_WORKERS"); env && *env) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (*end != '\0' || n < 1 || n > 1024) throw ValidationError("CDGSK_WORKERS must be an integer in [1, 1024]");
        return int(n);
    }
    return int(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<double> parse_sweep(const std::string& spec, bool log_spacing)
{
    double lo = 0, hi = 0;
    int count = 0;
    char c1 = 0, c2 = 0, extra = 0;
    if (std::sscanf(spec.c_str(), "%lf%c%lf%c%d%c", &lo, &c1, &hi, &c2, &count, &extra) != 5 || c1 != ':' || c2 != ':')
        throw ValidationError("--sweep expects lo:hi:count, got '" + spec + "'");
    if (count < 1 || hi < lo || (count > 1 && hi == lo)) throw ValidationError("--sweep needs lo < hi and count >= 1");
    if (log_spacing && lo <= 0) throw ValidationError("--log-spacing needs lo > 0");
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : double(i) / (count - 1);
        out.push_back(log_spacing ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
    return out;
}

Json slope_or_null(const std::vector<double>& x, const std::vector<double>& y)
{
    for (double v : y)
        if (!(v > 0)) return nullptr;
    return loglog_slope(x, y);
}

// ---------------------------------------------------------------- profile

Json profile_config_json(const ProfileConfig& c)
{
    return {{"a", c.a}, {"k", c.k}, {"N", c.N}, {"sweep", c.sweep}, {"log_spacing", c.log_spacing}, {"fit", c.fit}};
}

Json run_profile(const ProfileConfig& c, const Output& out)
{
    NewtonOptions opts;
    opts.truncation = c.N;

    const NewtonResult main = continue_branch(c.a, c.k, opts);
    Json pj = to_json(main.profile, main.residual_norm);
    pj["iterations"] = main.iterations;
    pj["tail_ratio"] = main.tail_ratio;
    out.json("profile.json", pj);

    const std::vector<double> as = c.sweep.empty() ? std::vector<double>{c.a} : parse_sweep(c.sweep, c.log_spacing);
    CsvTable table({"a", "c", "c_asymptotic", "sup_error", "residual_norm", "iterations"}, out.hash());
    std::vector<SpeedSample> samples;
    std::vector<double> abs_a, errors;
    for (double a : as) {
        const NewtonResult r = continue_branch(a, c.k, opts);
        const WaveProfile asym = asymptotic_profile(a, c.k, 3, c.N);
        const double err = sup_norm(r.profile.w - asym.w);
        table.row({a, r.profile.c, asym.c, err, r.residual_norm, double(r.iterations)});
        samples.push_back({a, r.profile.c});
        abs_a.push_back(std::abs(a));
        errors.push_back(err);
    }
    out.csv("profile_errors.csv", table);

    Json summary{{"a", main.profile.a}, {"k", c.k}, {"c", main.profile.c}, {"residual_norm", main.residual_norm}};
    if (as.size() >= 2) summary["error_slope"] = slope_or_null(abs_a, errors);
    if (c.fit) {
        const SpeedFit fit = fit_speed_coefficients(samples, c.k);
        summary["fit"] = to_json(fit);
        summary["c2_fit"] = fit.c2;
        out.json("profile_fit.json", {{"k", c.k}, {"samples", samples.size()}, {"fit", to_json(fit)}});
    }
    return summary;
}

// ---------------------------------------------------------------- spectrum

Json spectrum_config_json(const SpectrumConfig& c)
{
    Json j{{"a", c.a}, {"k", c.k}, {"N", c.N}, {"grid", c.grid}, {"xi", nullptr}, {"tol", c.tol}};
    if (c.xi) j["xi"] = *c.xi;
    return j;
}

Json run_spectrum(const SpectrumConfig& c, const Output& out, int workers)
{
    if (c.N < 1) throw ValidationError("N must be positive");
    std::vector<double> grid;
    if (c.xi) {
        require_floquet_exponent(*c.xi);
        grid = {*c.xi};
    } else {
        grid = floquet_grid(c.grid);
    }
    const WaveProfile p = stability_profile(c.a, c.k, std::min(c.N, kDefaultProfileOrder));
    const StabilityReport rep = scan(p, grid, c.N, c.tol, workers);

    double quad = 0.0;
    if (c.xi) {
        const SpectrumSlice mirror = eigenvalues(assemble(p, -*c.xi, c.N));
        quad = quadfold_mismatch(rep.slices.front(), mirror);
    } else {
        const std::size_t n = rep.slices.size();
        for (std::size_t i = 0; i < n; ++i) quad = std::max(quad, quadfold_mismatch(rep.slices[i], rep.slices[n - 1 - i]));
    }
    std::optional<double> coperiodic;
    for (const auto& s : rep.slices)
        if (s.xi == 0.0) {
            double m = -std::numeric_limits<double>::infinity();
            for (const Complex& z : s.eigenvalues) m = std::max(m, z.real());
            coperiodic = m;
        }

    Json j = to_json(rep);
    j["a"] = p.a;
    j["k"] = p.k;
    j["c"] = p.c;
    j["quadfold_mismatch"] = quad;
    j["coperiodic_max_re"] = nullptr;
    if (coperiodic) {
        j["coperiodic_max_re"] = *coperiodic;
        j["coperiodic_verdict"] = to_string(classify(*coperiodic, c.tol));
    }
    out.json("stability.json", j);
    out.csv("spectrum.csv", spectrum_table(rep, out.hash()));
    out.svg("spectrum.svg", spectrum_svg(rep, out.hash()));
    return j;
}

// ---------------------------------------------------------------- reduced

Json reduced_config_json(const ReducedConfig& c)
{
    return {{"a", c.a}, {"k", c.k}, {"xi", c.xi}, {"N", c.N}, {"nodes", c.nodes}, {"check_appendix", c.check_appendix}};
}

Json run_reduced(const ReducedConfig& c, const Output& out)
{
    require_floquet_exponent(c.xi);
    auto model_at = [&](double a, double xi) {
        return reduced_matrix(stability_profile(a, c.k, std::min(c.N, kDefaultProfileOrder)), xi, c.N, c.nodes);
    };
    const ReducedModel m = model_at(c.a, c.xi);

    CsvTable table({"s", "a", "xi", "error_B", "eigenvalue_error", "projector_deviation"}, out.hash());
    Json rows = Json::array();
    std::vector<double> ss, eB, eL, dev;
    for (double s : {1.0, 0.5, 0.25, 0.125}) {
        const ReducedModel r = s == 1.0 ? m : model_at(s * c.a, s * c.xi);
        const double eig = root_set_distance(r.interior, cubic_roots(r.cubic_closed));
        table.row({s, r.a, r.xi, r.error_closed, eig, r.projector_deviation});
        rows.push_back({{"s", s}, {"error_B", r.error_closed}, {"eigenvalue_error", eig},
                        {"projector_deviation", r.projector_deviation}});
        ss.push_back(s);
        eB.push_back(r.error_closed);
        eL.push_back(eig);
        dev.push_back(r.projector_deviation);
    }
    out.csv("reduced_regression.csv", table);

    Json j{{"model", to_json(m)},
           {"regression", std::move(rows)},
           {"slopes",
            {{"error_B", slope_or_null(ss, eB)},
             {"eigenvalue_error", slope_or_null(ss, eL)},
             {"projector_deviation", slope_or_null(ss, dev)}}}};
    if (c.a > 0 && c.xi > 0) j["discriminant"] = to_json(discriminant(c.a, c.xi, c.k));

    if (c.check_appendix) {
        const AppendixReport app = appendix_derivative_checks(c.k);
        Json coeffs = Json::array();
        for (const auto& cc : basis_coefficient_checks(c.k))
            coeffs.push_back({{"basis", cc.basis}, {"order", cc.order}, {"error", cc.error},
                              {"magnitude", cc.magnitude}, {"listed", cc.listed}});
        j["appendix"] = to_json(app);
        j["basis_coefficients"] = std::move(coeffs);
    }
    out.json("reduced.json", j);
    return j;
}

// ---------------------------------------------------------------- evolve

Json evolve_config_json(const EvolveConfig& c)
{
    return {{"a", c.a},        {"k", c.k},          {"N", c.N},           {"T", c.T},
            {"dt", c.dt},      {"seed", c.seed},    {"epsilon", c.epsilon}, {"sample_interval", c.sample},
            {"dt_study", c.dt_study}, {"dt0", c.dt0}, {"study_T", c.study_T}};
}

Json run_evolve(const EvolveConfig& c, const Output& out)
{
    const WaveProfile p = stability_profile(c.a, c.k, std::min(c.N, kDefaultProfileOrder));
    GrowthOptions o;
    o.seed = c.seed;
    o.epsilon = c.epsilon;
    o.T = c.T;
    o.dt = c.dt;
    o.N = c.N;
    o.sample_interval = c.sample;

    if (c.dt_study) {
        const auto rows = dt_study(p, o, c.dt0, c.study_T);
        CsvTable table({"dt", "error", "ratio"}, out.hash());
        Json jr = Json::array();
        for (const auto& r : rows) {
            table.row({r.dt, r.error, r.ratio.value_or(std::nan(""))});
            jr.push_back({{"dt", r.dt}, {"error", r.error}, {"ratio", r.ratio ? Json(*r.ratio) : Json(nullptr)}});
        }
        out.csv("dt_study.csv", table);
        Json j{{"a", p.a}, {"k", p.k}, {"c", p.c}, {"T", c.study_T}, {"rows", std::move(jr)}};
        out.json("dt_study.json", j);
        return j;
    }

    const GrowthRecord g = perturbation_growth(p, o);
    out.csv("growth.csv", growth_table(g, out.hash()));
    Json j = to_json(g);
    j["a"] = p.a;
    j["k"] = p.k;
    j["c"] = p.c;
    j["seed"] = c.seed;
    j["dt"] = c.dt;
    j["N"] = c.N;
    j["T"] = c.T;
    j["epsilon"] = c.epsilon;
    out.json("evolve.json", j);
    return j;
}

// ---------------------------------------------------------------- driver

Json manifest(const std::string& command, Json config)
{
    return {{"artifact", "cdgsk"}, {"version", artifact_version()}, {"command", command}, {"config", std::move(config)}};
}

Output open_output(const fs::path& dir, const Selectors& sel, const Json& man)
{
    const std::string hash = manifest_hash(man);
    Output out(dir, sel, hash);
    Json m = man;
    m["manifest_hash"] = hash;
    out.write("manifest.json", dump(m));
    return out;
}

int fail(int code, const std::string& kind, const std::string& message)
{
    std::cerr << Json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
    return code;
}

void print_summary(const std::string& command, const Json& j) { std::cout << command << ": " << j.dump() << "\n"; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Periodic traveling waves of u_t + u_xxxxx + 15(u u_xx + u^3)_x = 0: profiles, Bloch spectra, "
                 "reduced model, time evolution."};
    app.set_version_flag("--version", artifact_version());
    app.set_config("--config", "", "TOML or INI file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = ".";
    Selectors sel;
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_flag("--json", sel.json, "Write JSON reports");
    app.add_flag("--csv", sel.csv, "Write CSV tables");
    app.add_flag("--svg", sel.svg, "Write the SVG spectrum plot");

    ProfileConfig pc;
    auto* prof = app.add_subcommand("profile", "Solve for a wave profile; optional amplitude sweep and speed fit");
    prof->add_option("--a", pc.a, "Amplitude (cos z coefficient)")->capture_default_str();
    prof->add_option("--k", pc.k, "Wavenumber")->capture_default_str();
    prof->add_option("--N", pc.N, "Fourier truncation")->capture_default_str();
    prof->add_option("--sweep", pc.sweep, "Amplitude sweep lo:hi:count");
    prof->add_flag("--log-spacing", pc.log_spacing, "Geometric spacing for --sweep");
    prof->add_flag("--fit", pc.fit, "Fit c(a) = c0 + c2 a^2 + c4 a^4 over the sweep");

    SpectrumConfig sc;
    auto* spec = app.add_subcommand("spectrum", "Bloch spectrum scan and stability verdict");
    spec->add_option("--a", sc.a, "Amplitude")->capture_default_str();
    spec->add_option("--k", sc.k, "Wavenumber")->capture_default_str();
    spec->add_option("--N", sc.N, "Fourier truncation")->capture_default_str();
    spec->add_option("--grid", sc.grid, "Odd number of Floquet exponents on [-1/2, 1/2]")->capture_default_str();
    spec->add_option("--xi", sc.xi, "Single Floquet exponent instead of a grid");
    spec->add_option("--tol", sc.tol, "Stability tolerance on max Re")->capture_default_str();

    ReducedConfig rc;
    auto* red = app.add_subcommand("reduced", "Three-dimensional reduced model near the origin");
    red->add_option("--a", rc.a, "Amplitude")->capture_default_str();
    red->add_option("--k", rc.k, "Wavenumber")->capture_default_str();
    red->add_option("--xi", rc.xi, "Floquet exponent")->capture_default_str();
    red->add_option("--N", rc.N, "Fourier truncation")->capture_default_str();
    red->add_option("--nodes", rc.nodes, "Initial contour nodes")->capture_default_str();
    red->add_flag("--check-appendix", rc.check_appendix, "Finite-difference checks of the operator expansion");

    EvolveConfig ec;
    auto* evo = app.add_subcommand("evolve", "Time evolution of a perturbed wave");
    evo->add_option("--a", ec.a, "Amplitude")->capture_default_str();
    evo->add_option("--k", ec.k, "Wavenumber")->capture_default_str();
    evo->add_option("--N", ec.N, "Fourier truncation")->capture_default_str();
    evo->add_option("--T", ec.T, "Final time")->capture_default_str();
    evo->add_option("--dt", ec.dt, "Time step")->capture_default_str();
    evo->add_option("--seed", ec.seed, "Perturbation seed")->capture_default_str();
    evo->add_option("--epsilon", ec.epsilon, "Perturbation size")->capture_default_str();
    evo->add_option("--sample", ec.sample, "Sampling interval of d(t)")->capture_default_str();
    evo->add_flag("--dt-study", ec.dt_study, "Time-step convergence study instead of a growth run");
    evo->add_option("--dt0", ec.dt0, "Coarsest step of the dt study")->capture_default_str();
    evo->add_option("--study-T", ec.study_T, "Final time of the dt study")->capture_default_str();

    double all_a = 0.02, all_k = 1.0;
    auto* all = app.add_subcommand("all", "profile, spectrum, reduced and evolve with shared a and k");
    all->add_option("--a", all_a, "Amplitude")->capture_default_str();
    all->add_option("--k", all_k, "Wavenumber")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail(2, "ValidationError", e.what());
    }

    try {
        if (*prof) {
            const Output out = open_output(out_dir, sel, manifest("profile", profile_config_json(pc)));
            print_summary("profile", run_profile(pc, out));
        } else if (*spec) {
            const int workers = worker_count();
            const Output out = open_output(out_dir, sel, manifest("spectrum", spectrum_config_json(sc)));
            print_summary("spectrum", run_spectrum(sc, out, workers));
        } else if (*red) {
            const Output out = open_output(out_dir, sel, manifest("reduced", reduced_config_json(rc)));
            print_summary("reduced", run_reduced(rc, out));
        } else if (*evo) {
            const Output out = open_output(out_dir, sel, manifest("evolve", evolve_config_json(ec)));
            print_summary("evolve", run_evolve(ec, out));
        } else if (*all) {
            const int workers = worker_count();
            ProfileConfig p;
            p.a = all_a;
            p.k = all_k;
            SpectrumConfig s;
            s.a = all_a;
            s.k = all_k;
            ReducedConfig r;
            r.a = all_a;
            r.k = all_k;
            EvolveConfig e;
            e.a = all_a;
            e.k = all_k;
            const Json cfg{{"profile", profile_config_json(p)},
                           {"spectrum", spectrum_config_json(s)},
                           {"reduced", reduced_config_json(r)},
                           {"evolve", evolve_config_json(e)}};
            const Output out = open_output(out_dir, sel, manifest("all", cfg));
            const Json pj = run_profile(p, out);
            const Json sj = run_spectrum(s, out, workers);
            const Json rj = run_reduced(r, out);
            const Json ej = run_evolve(e, out);
            print_summary("profile", pj);
            print_summary("spectrum", {{"verdict", sj["verdict"]}, {"max_re", sj["max_re"]}});
            print_summary("reduced", {{"error_B", rj["model"]["error_B"]}, {"slopes", rj["slopes"]}});
            print_summary("evolve", {{"growth_factor", ej["growth_factor"]}});
        }
    } catch (const ValidationError& e) {
        return fail(2, "ValidationError", e.what());
    } catch (const NumericalError& e) {
        return fail(3, e.kind(), e.what());
    } catch (const std::exception& e) {
        return fail(1, "Error", e.what());
    }
    return 0;
}
