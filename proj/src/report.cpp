#include "cdgsk/report.hpp"

#include "cdgsk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#ifndef CDGSK_VERSION
#define CDGSK_VERSION "0.0.0"
#endif

namespace cdgsk {

std::string artifact_version() { return CDGSK_VERSION; }

Json to_json(const FourierSeries& f)
{
    Json re = Json::array(), im = Json::array();
    for (int n = -f.order(); n <= f.order(); ++n) {
        re.push_back(f[n].real());
        im.push_back(f[n].imag());
    }
    return Json{{"N", f.order()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

FourierSeries series_from_json(const Json& j)
{
    try {
        const int N = j.at("N").get<int>();
        const auto re = j.at("re").get<std::vector<double>>();
        const auto im = j.at("im").get<std::vector<double>>();
        if (N < 0 || re.size() != std::size_t(2 * N + 1) || im.size() != re.size())
            throw ValidationError("series JSON: re/im must have 2N+1 entries");
        std::vector<Complex> c(re.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = {re[i], im[i]};

        double scale = 0.0, asym = 0.0;
        for (int n = 0; n <= N; ++n) {
            scale = std::max(scale, std::abs(c[N + n]));
            asym = std::max(asym, std::abs(c[N - n] - std::conj(c[N + n])));
        }
        const bool real = asym <= 1e-12 * std::max(1.0, scale);
        return FourierSeries::from_coefficients(std::move(c), real);
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("series JSON: ") + e.what());
    }
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Eigen::Matrix3cd& m)
{
    Json re = Json::array(), im = Json::array();
    for (int i = 0; i < 3; ++i) {
        Json r = Json::array(), s = Json::array();
        for (int j = 0; j < 3; ++j) {
            r.push_back(m(i, j).real());
            s.push_back(m(i, j).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(s));
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

namespace {

template <class Range>
Json complex_list(const Range& zs)
{
    Json out = Json::array();
    for (const Complex& z : zs) out.push_back(to_json(z));
    return out;
}

} // namespace

Json to_json(const WaveProfile& p, double residual_norm)
{
    return Json{{"a", p.a}, {"k", p.k}, {"c", p.c}, {"series", to_json(p.w)}, {"residual_norm", residual_norm}};
}

Json to_json(const SpeedFit& fit) { return Json{{"c0", fit.c0}, {"c2", fit.c2}, {"c4", fit.c4}, {"terms", fit.terms}}; }

Json to_json(const StabilityReport& r)
{
    return Json{{"max_re", r.max_re},
                {"max_abs_re", r.max_abs_re},
                {"argmax_xi", r.argmax_xi},
                {"argmax_lambda", to_json(r.argmax_lambda)},
                {"grid", {{"points", r.grid_points}, {"min", r.grid_min}, {"max", r.grid_max}}},
                {"N", r.N},
                {"tol", r.tol},
                {"verdict", to_string(r.verdict)}};
}

Json to_json(const ReducedModel& m)
{
    Json j{{"a", m.a},
           {"xi", m.xi},
           {"k", m.k},
           {"N", m.N},
           {"B_num", to_json(m.B_num)},
           {"B_closed", to_json(m.B_closed)},
           {"B_inner", to_json(m.B_inner)},
           {"gram", to_json(m.gram)},
           {"cubic_num", complex_list(m.cubic_num)},
           {"cubic_closed_form", complex_list(m.cubic_closed)},
           {"interior_eigenvalues", complex_list(m.interior)},
           {"b_eigenvalues", complex_list(m.b_eigenvalues)},
           {"error_B", m.error_closed},
           {"error_B_transposed", m.error_closed_transposed},
           {"projector_deviation", m.projector_deviation},
           {"idempotency", m.idempotency},
           {"commutation", m.commutation},
           {"contour_vs_eigenbasis", nullptr},
           {"neumann_terms", m.neumann_terms},
           {"similarity_error", m.similarity_error},
           {"delta", m.delta},
           {"all_roots_real", m.all_roots_real}};
    if (m.contour_vs_eigenbasis) j["contour_vs_eigenbasis"] = *m.contour_vs_eigenbasis;
    return j;
}

Json to_json(const DiscriminantResult& d)
{
    return Json{{"delta", d.delta},
                {"delta_generic", d.delta_generic},
                {"leading", d.leading},
                {"roots", complex_list(d.roots)},
                {"max_imag", d.max_imag},
                {"scale", d.scale},
                {"all_roots_real", d.all_roots_real},
                {"consistent", d.consistent}};
}

Json to_json(const AppendixReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.derivatives)
        checks.push_back({{"name", c.name}, {"error", c.error}, {"error_coarse", c.error_coarse}, {"pass", c.pass}});
    return Json{{"derivatives", std::move(checks)},
                {"resolvent_error", r.resolvent_error},
                {"flat_action_error", r.flat_action_error},
                {"pass", r.pass}};
}

Json to_json(const GrowthRecord& g)
{
    Json j{{"d0", g.d0},
           {"max_distance", g.max_distance},
           {"growth_factor", nullptr},
           {"max_mean_drift", g.max_mean_drift},
           {"steps", g.steps},
           {"samples", g.series.size()}};
    if (g.growth_factor) j["growth_factor"] = *g.growth_factor;
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string manifest_hash(const Json& manifest)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(manifest.dump())));
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns, std::string hash) : columns_(columns.size())
{
    if (columns.empty()) throw ValidationError("CSV table needs at least one column");
    body_ = "# manifest_hash=" + hash + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) body_ += (i ? "," : "") + columns[i];
    body_ += "\n";
}

void CsvTable::row(std::span<const double> values)
{
    if (values.size() != columns_) throw ValidationError("CSV row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ",";
        body_ += format_number(values[i]);
    }
    body_ += "\n";
    ++rows_;
}

CsvTable spectrum_table(const StabilityReport& r, const std::string& hash)
{
    CsvTable t({"xi", "re", "im"}, hash);
    for (const auto& s : r.slices)
        for (const Complex& z : s.eigenvalues) t.row({s.xi, z.real(), z.imag()});
    return t;
}

CsvTable growth_table(const GrowthRecord& g, const std::string& hash)
{
    CsvTable t({"t", "d", "sup"}, hash);
    for (const auto& s : g.series) t.row({s.t, s.distance, s.sup});
    return t;
}

std::string spectrum_svg(const StabilityReport& r, const std::string& hash)
{
    constexpr double W = 640, H = 480, pad = 48;
    double re_max = 0.0, im_max = 0.0;
    for (const auto& s : r.slices)
        for (const Complex& z : s.eigenvalues) {
            re_max = std::max(re_max, std::abs(z.real()));
            im_max = std::max(im_max, std::abs(z.imag()));
        }
    // Real parts are normally at roundoff level; keep a visible band.
    re_max = std::max(re_max, 1e-12);
    im_max = std::max(im_max, 1e-12);

    auto px = [&](double re) { return pad + (re / re_max + 1.0) * 0.5 * (W - 2 * pad); };
    auto py = [&](double im) { return H - pad - (im / im_max + 1.0) * 0.5 * (H - 2 * pad); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<!-- manifest_hash=" + hash + " -->\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    out += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    out += "<line x1=\"" + format_number(px(0)) + "\" y1=\"" + format_number(pad) + "\" x2=\"" + format_number(px(0)) +
           "\" y2=\"" + format_number(H - pad) + "\" stroke=\"#888\"/>\n";
    out += "<line x1=\"" + format_number(pad) + "\" y1=\"" + format_number(py(0)) + "\" x2=\"" + format_number(W - pad) +
           "\" y2=\"" + format_number(py(0)) + "\" stroke=\"#888\"/>\n";
    out += "<text x=\"8\" y=\"20\" font-size=\"12\">Re in [-" + format_number(re_max) + ", " + format_number(re_max) +
           "], Im in [-" + format_number(im_max) + ", " + format_number(im_max) + "], verdict " +
           to_string(r.verdict) + "</text>\n";

    const double span = std::max(r.grid_max - r.grid_min, 1e-300);
    for (const auto& s : r.slices) {
        const double t = r.grid_points > 1 ? (s.xi - r.grid_min) / span : 0.5;
        const int red = static_cast<int>(std::lround(255 * t));
        char colour[8];
        std::snprintf(colour, sizeof colour, "#%02x30%02x", red, 255 - red);
        for (const Complex& z : s.eigenvalues)
            out += "<circle cx=\"" + format_number(px(z.real())) + "\" cy=\"" + format_number(py(z.imag())) +
                   "\" r=\"1.5\" fill=\"" + colour + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope fit needs two or more (x, y) pairs");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) throw ValidationError("slope fit needs positive data");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= double(x.size());
    my /= double(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0) throw ValidationError("slope fit needs distinct x values");
    return sxy / sxx;
}

} // namespace cdgsk
