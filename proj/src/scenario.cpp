#include "afrelay/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "afrelay/errors.hpp"
#include "afrelay/gga.hpp"

namespace afrelay {

using nlohmann::json;

std::string to_string(Track t)
{
    return t == Track::random ? "random" : "fixed";
}

Track track_from_string(const std::string& s)
{
    if (s == "random") {
        return Track::random;
    }
    if (s == "fixed") {
        return Track::fixed;
    }
    throw ConfigError("unknown track '" + s + "' (expected random or fixed)");
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double x)
{
    return 10.0 * std::log10(x);
}

std::vector<double> default_grid_db()
{
    std::vector<double> g;
    for (int db = -10; db <= 20; db += 2) {
        g.push_back(db);
    }
    return g;
}

void Scenario::validate() const
{
    auto finite = [](double v) { return std::isfinite(v); };
    if (links.empty()) {
        throw ConfigError("scenario '" + id + "': at least one link is required");
    }
    for (const auto& l : links) {
        if (l.m_s < 1 || l.m_d < 1 || l.m_i < 1 || l.m_v < 1) {
            throw ConfigError("scenario '" + id + "': fading orders must be >= 1");
        }
    }
    if (!finite(sinr_db) || !finite(inr_db)) {
        throw ConfigError("scenario '" + id + "': SINR and INR targets must be finite");
    }
    for (double r : {b_s, b_d, c_s, c_d}) {
        if (!(r > 0.0) || !finite(r)) {
            throw ConfigError("scenario '" + id + "': ratio constants must be positive");
        }
    }
    if (!(pathloss_beta > 0.0) || !finite(pathloss_beta)) {
        throw ConfigError("scenario '" + id + "': pathloss_beta must be positive");
    }
    if (!(power_product > 0.0) || !finite(power_product)) {
        throw ConfigError("scenario '" + id + "': power_product must be positive");
    }
    if (track == Track::random) {
        if (!(lambda_mean > 0.0) || !finite(lambda_mean) || !(disc_radius > 0.0) || !finite(disc_radius)) {
            throw ConfigError("scenario '" + id + "': lambda_mean and disc_radius must be positive");
        }
    } else if (interferer_count < 1 || !(interferer_distance >= 0.0) || !finite(interferer_distance)) {
        throw ConfigError("scenario '" + id + "': need interferer_count >= 1 and interferer_distance >= 0");
    }
    if (rates) {
        if (!thresholds_db.empty()) {
            throw ConfigError("scenario '" + id + "': give either thresholds_db or rates, not both");
        }
        if (rates->empty()) {
            throw ConfigError("scenario '" + id + "': rates must be nonempty");
        }
        for (std::size_t i = 0; i < rates->size(); ++i) {
            if (!((*rates)[i] > 0.0) || !finite((*rates)[i]) || (i > 0 && !((*rates)[i] > (*rates)[i - 1]))) {
                throw ConfigError("scenario '" + id + "': rates must be positive and ascending");
            }
        }
    } else {
        if (thresholds_db.empty()) {
            throw ConfigError("scenario '" + id + "': threshold grid is empty");
        }
        for (std::size_t i = 0; i < thresholds_db.size(); ++i) {
            if (!finite(thresholds_db[i]) || (i > 0 && !(thresholds_db[i] > thresholds_db[i - 1]))) {
                throw ConfigError("scenario '" + id + "': thresholds_db must be finite and ascending");
            }
        }
    }
    try {
        orders.validate();
        quad.validate();
        mc.validate();
    } catch (const DomainError& e) {
        throw ConfigError("scenario '" + id + "': " + e.what());
    }
}

std::vector<double> Scenario::thresholds() const
{
    std::vector<double> t;
    if (rates) {
        for (double r : *rates) {
            t.push_back(threshold_from_rate(r));
        }
    } else {
        for (double db : thresholds_db) {
            t.push_back(db_to_linear(db));
        }
    }
    return t;
}

HopCalibration calibrate_hop(double mean_interference, double target_sinr, double target_inr)
{
    if (!(mean_interference > 0.0) || !std::isfinite(mean_interference)) {
        throw DomainError("calibrate_hop: mean interference must be positive");
    }
    if (!(target_sinr > 0.0) || !(target_inr > 0.0) || !std::isfinite(target_sinr) || !std::isfinite(target_inr)) {
        throw DomainError("calibrate_hop: targets must be positive and finite");
    }
    HopCalibration c;
    c.noise_power = mean_interference / target_inr;
    c.signal_omega = target_sinr * (c.noise_power + mean_interference);
    return c;
}

// ---------------------------------------------------------------- JSON

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
        }
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where)
{
    auto it = j.find(key);
    if (it == j.end()) {
        return;
    }
    try {
        if constexpr (std::is_integral_v<T>) {
            if (!it->is_number_integer()) {
                throw ConfigError("");
            }
            if constexpr (std::is_unsigned_v<T>) {
                if (it->is_number_unsigned() || it->template get<long long>() >= 0) {
                    out = it->template get<T>();
                    return;
                }
                throw ConfigError("");
            }
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!it->is_number()) {
                throw ConfigError("");
            }
        }
        out = it->template get<T>();
    } catch (const std::exception&) {
        throw ConfigError(where + ": key '" + key + "' has the wrong type");
    }
}

json orders_json(const SeriesOrder& o)
{
    return {{"interference_terms", o.interference_terms},
            {"noise_terms", o.noise_terms},
            {"pdf_interference_terms", o.pdf_interference_terms},
            {"pdf_noise_terms", o.pdf_noise_terms}};
}

json quad_json(const QuadratureSpec& q)
{
    return {{"rel_tol", q.rel_tol},
            {"abs_tol", q.abs_tol},
            {"max_subdivisions", q.max_subdivisions},
            {"tail_cutoff_mass", q.tail_cutoff_mass}};
}

json mc_json(const McSpec& m)
{
    return {{"trials", m.trials}, {"seed", m.seed}, {"batch", m.batch}, {"threads", m.threads}};
}

}  // namespace

Scenario parse_scenario(const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    reject_unknown(j,
                   {"id", "track", "links", "sinr_db", "inr_db", "b_s", "b_d", "c_s", "c_d", "pathloss_beta",
                    "power_product", "lambda_mean", "disc_radius", "interferer_count", "interferer_distance",
                    "thresholds_db", "rates", "series_orders", "quadrature", "monte_carlo"},
                   "scenario");
    Scenario s;
    s.thresholds_db.clear();
    read(j, "id", s.id, "scenario");
    if (j.contains("track")) {
        std::string t;
        read(j, "track", t, "scenario");
        s.track = track_from_string(t);
    }
    if (j.contains("links")) {
        if (!j["links"].is_array()) {
            throw ConfigError("scenario: 'links' must be an array");
        }
        for (std::size_t i = 0; i < j["links"].size(); ++i) {
            const json& lj = j["links"][i];
            const std::string where = "links[" + std::to_string(i) + "]";
            reject_unknown(lj, {"m_s", "m_d", "m_i", "m_v"}, where);
            LinkFading l;
            read(lj, "m_s", l.m_s, where);
            read(lj, "m_d", l.m_d, where);
            read(lj, "m_i", l.m_i, where);
            read(lj, "m_v", l.m_v, where);
            s.links.push_back(l);
        }
    }
    read(j, "sinr_db", s.sinr_db, "scenario");
    read(j, "inr_db", s.inr_db, "scenario");
    read(j, "b_s", s.b_s, "scenario");
    read(j, "b_d", s.b_d, "scenario");
    read(j, "c_s", s.c_s, "scenario");
    read(j, "c_d", s.c_d, "scenario");
    read(j, "pathloss_beta", s.pathloss_beta, "scenario");
    read(j, "power_product", s.power_product, "scenario");
    read(j, "lambda_mean", s.lambda_mean, "scenario");
    read(j, "disc_radius", s.disc_radius, "scenario");
    read(j, "interferer_count", s.interferer_count, "scenario");
    read(j, "interferer_distance", s.interferer_distance, "scenario");
    if (j.contains("thresholds_db") && j.contains("rates")) {
        throw ConfigError("scenario: give either thresholds_db or rates, not both");
    }
    read(j, "thresholds_db", s.thresholds_db, "scenario");
    if (j.contains("rates")) {
        std::vector<double> r;
        read(j, "rates", r, "scenario");
        s.rates = r;
    } else if (!j.contains("thresholds_db")) {
        s.thresholds_db = default_grid_db();
    }
    if (j.contains("series_orders")) {
        const json& o = j["series_orders"];
        reject_unknown(o, {"interference_terms", "noise_terms", "pdf_interference_terms", "pdf_noise_terms"},
                       "series_orders");
        read(o, "interference_terms", s.orders.interference_terms, "series_orders");
        read(o, "noise_terms", s.orders.noise_terms, "series_orders");
        read(o, "pdf_interference_terms", s.orders.pdf_interference_terms, "series_orders");
        read(o, "pdf_noise_terms", s.orders.pdf_noise_terms, "series_orders");
    }
    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        reject_unknown(q, {"rel_tol", "abs_tol", "max_subdivisions", "tail_cutoff_mass"}, "quadrature");
        read(q, "rel_tol", s.quad.rel_tol, "quadrature");
        read(q, "abs_tol", s.quad.abs_tol, "quadrature");
        read(q, "max_subdivisions", s.quad.max_subdivisions, "quadrature");
        read(q, "tail_cutoff_mass", s.quad.tail_cutoff_mass, "quadrature");
    }
    if (j.contains("monte_carlo")) {
        const json& m = j["monte_carlo"];
        reject_unknown(m, {"trials", "seed", "batch", "threads"}, "monte_carlo");
        read(m, "trials", s.mc.trials, "monte_carlo");
        read(m, "seed", s.mc.seed, "monte_carlo");
        read(m, "batch", s.mc.batch, "monte_carlo");
        read(m, "threads", s.mc.threads, "monte_carlo");
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& s)
{
    json links = json::array();
    for (const auto& l : s.links) {
        links.push_back({{"m_s", l.m_s}, {"m_d", l.m_d}, {"m_i", l.m_i}, {"m_v", l.m_v}});
    }
    json j = {{"id", s.id},
              {"track", to_string(s.track)},
              {"links", links},
              {"sinr_db", s.sinr_db},
              {"inr_db", s.inr_db},
              {"b_s", s.b_s},
              {"b_d", s.b_d},
              {"c_s", s.c_s},
              {"c_d", s.c_d},
              {"pathloss_beta", s.pathloss_beta},
              {"power_product", s.power_product},
              {"lambda_mean", s.lambda_mean},
              {"disc_radius", s.disc_radius},
              {"interferer_count", s.interferer_count},
              {"interferer_distance", s.interferer_distance},
              {"series_orders", orders_json(s.orders)},
              {"quadrature", quad_json(s.quad)},
              {"monte_carlo", mc_json(s.mc)}};
    if (s.rates) {
        j["rates"] = *s.rates;
    } else {
        j["thresholds_db"] = s.thresholds_db;
    }
    return j.dump(2);
}

// ---------------------------------------------------------------- presets

std::vector<std::string> figure_names()
{
    std::vector<std::string> n;
    for (int i = 1; i <= 11; ++i) {
        n.push_back("fig" + std::to_string(i));
    }
    return n;
}

namespace {

std::string case_tag(const LinkFading& f)
{
    return "m" + std::to_string(f.m_s) + std::to_string(f.m_d) + std::to_string(f.m_i) + std::to_string(f.m_v);
}

Scenario base(const std::string& fig, Track track, double sinr_db, double inr_db, const LinkFading& f)
{
    Scenario s;
    s.track = track;
    s.id = fig + "_" + case_tag(f);
    s.links = {f, f};  // two relays with identical statistics
    s.sinr_db = sinr_db;
    s.inr_db = inr_db;
    s.thresholds_db = default_grid_db();
    return s;
}

}  // namespace

std::vector<Scenario> figure_preset(const std::string& name)
{
    const std::vector<LinkFading> interferer_sweep = {{4, 5, 1, 1}, {4, 5, 2, 3}, {4, 5, 6, 7}};
    const std::vector<LinkFading> nakagami_cases = {{1, 1, 1, 1}, {2, 3, 2, 3}, {4, 5, 6, 7}};
    struct Shape
    {
        Track track;
        double sinr_db;
        double inr_db;
        const std::vector<LinkFading>* cases;
        double beta = 3.0;
        double radius = 10.0;
    };
    static const std::map<std::string, int> index = {{"fig1", 1}, {"fig2", 2},  {"fig3", 3}, {"fig4", 4},
                                                     {"fig5", 5}, {"fig6", 6},  {"fig7", 7}, {"fig8", 8},
                                                     {"fig9", 9}, {"fig10", 10}, {"fig11", 11}};
    const auto it = index.find(name);
    if (it == index.end()) {
        throw ConfigError("unknown figure preset '" + name + "'");
    }
    std::vector<Scenario> out;
    if (it->second == 11) {
        for (double inr : {10.0, 15.0, 20.0}) {
            Scenario s = base(name, Track::fixed, 10.0, inr, {2, 3, 2, 3});
            s.id = name + "_inr" + std::to_string(static_cast<int>(inr));
            out.push_back(s);
        }
        return out;
    }
    Shape shape{};
    switch (it->second) {
    case 1: shape = {Track::random, 15, 0, &interferer_sweep}; break;
    case 2: shape = {Track::random, 15, 0, &nakagami_cases}; break;
    case 3: shape = {Track::random, 15, 20, &nakagami_cases}; break;
    case 4: shape = {Track::random, 20, 20, &nakagami_cases}; break;
    case 5: shape = {Track::random, 15, 0, &nakagami_cases, 5.0}; break;
    case 6: shape = {Track::random, 15, 0, &nakagami_cases, 3.0, 20.0}; break;
    case 7: shape = {Track::fixed, 15, 0, &interferer_sweep}; break;
    case 8: shape = {Track::fixed, 15, 0, &nakagami_cases}; break;
    case 9: shape = {Track::fixed, 15, 20, &nakagami_cases}; break;
    case 10: shape = {Track::fixed, 20, 20, &nakagami_cases}; break;
    default: break;
    }
    for (const auto& f : *shape.cases) {
        Scenario s = base(name, shape.track, shape.sinr_db, shape.inr_db, f);
        s.pathloss_beta = shape.beta;
        s.disc_radius = shape.radius;
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- system

SystemConfig build_system(const Scenario& s)
{
    s.validate();
    SystemConfig sys;
    sys.thresholds = s.thresholds();
    const double sinr = db_to_linear(s.sinr_db);
    const double inr = db_to_linear(s.inr_db);
    const PathLoss pl{s.pathloss_beta};

    // Fitted law per interferer fading order, shared by all hops that use it.
    std::map<int, std::pair<MomentTriple, GGDist>> fits;
    auto random_hop = [&](int signal_m, int interferer_m, double b, double c) {
        RandomField field;
        field.lambda_mean = s.lambda_mean;
        field.disc_radius = s.disc_radius;
        field.power_product = s.power_product;
        field.fading_m = interferer_m;
        field.pathloss = pl;
        auto it = fits.find(interferer_m);
        if (it == fits.end()) {
            const MomentTriple mt = aggregate_moments_random(field, s.quad);
            it = fits.emplace(interferer_m, std::make_pair(mt, fit_gga(mt).params)).first;
        }
        const HopCalibration cal = calibrate_hop(it->second.first.m1, sinr / b, inr / c);
        HopConfig hop;
        hop.signal_m = signal_m;
        hop.signal_omega = cal.signal_omega;
        hop.noise_power = cal.noise_power;
        hop.interference = RandomInterference{field, it->second.second};
        hop.validate();
        return hop;
    };
    auto fixed_hop = [&](int signal_m, int interferer_m, double b, double c) {
        FixedField field;
        field.pathloss = pl;
        field.interferers.assign(static_cast<std::size_t>(s.interferer_count),
                                 FixedInterferer{s.interferer_distance, s.power_product, interferer_m});
        const HopCalibration cal = calibrate_hop(field.mean_power(), sinr / b, inr / c);
        HopConfig hop;
        hop.signal_m = signal_m;
        hop.signal_omega = cal.signal_omega;
        hop.noise_power = cal.noise_power;
        hop.interference = field;
        hop.validate();
        return hop;
    };
    for (const auto& l : s.links) {
        RelayLink link;
        if (s.track == Track::random) {
            link.hop_sr = random_hop(l.m_s, l.m_i, s.b_s, s.c_s);
            link.hop_rd = random_hop(l.m_d, l.m_v, s.b_d, s.c_d);
        } else {
            link.hop_sr = fixed_hop(l.m_s, l.m_i, s.b_s, s.c_s);
            link.hop_rd = fixed_hop(l.m_d, l.m_v, s.b_d, s.c_d);
        }
        sys.links.push_back(link);
    }
    return sys;
}

// ---------------------------------------------------------------- run

namespace {

const std::vector<std::pair<Method, std::string>>& method_names()
{
    static const std::vector<std::pair<Method, std::string>> names = {
        {Method::gga_exact, "gga_exact"},
        {Method::fixed_exact, "fixed_exact"},
        {Method::lower_bound, "lower_bound"},
        {Method::asymptotic, "asymptotic"},
        {Method::closed_form_dominant, "closed_form_dominant"},
        {Method::rayleigh_closed_form, "rayleigh_closed_form"},
        {Method::rayleigh_highsinr, "rayleigh_highsinr"},
        {Method::mc, "mc"},
    };
    return names;
}

OutageMethod analytic_method(Method m, Track track)
{
    switch (m) {
    case Method::gga_exact:
        if (track != Track::random) {
            throw DomainError("gga_exact applies to the random track only");
        }
        return OutageMethod::exact;
    case Method::fixed_exact:
        if (track != Track::fixed) {
            throw DomainError("fixed_exact applies to the fixed track only");
        }
        return OutageMethod::exact;
    case Method::lower_bound: return OutageMethod::lower_bound;
    case Method::asymptotic: return OutageMethod::asymptotic;
    case Method::closed_form_dominant: return OutageMethod::closed_form_dominant;
    case Method::rayleigh_closed_form: return OutageMethod::rayleigh_closed_form;
    case Method::rayleigh_highsinr: return OutageMethod::rayleigh_highsinr;
    case Method::mc: break;
    }
    throw DomainError("not an analytic method");
}

bool neglects_noise(Method m)
{
    return m == Method::closed_form_dominant || m == Method::rayleigh_closed_form || m == Method::rayleigh_highsinr;
}

void append_warning(std::string& w, const std::string& msg)
{
    if (!w.empty()) {
        w += "; ";
    }
    w += msg;
}

std::string csv_field(const std::string& v)
{
    if (v.find_first_of(",\"\n\r") == std::string::npos) {
        return v;
    }
    std::string q = "\"";
    for (char ch : v) {
        q += ch;
        if (ch == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string to_string(Method m)
{
    for (const auto& [k, v] : method_names()) {
        if (k == m) {
            return v;
        }
    }
    return "unknown";
}

Method method_from_string(const std::string& s)
{
    for (const auto& [k, v] : method_names()) {
        if (v == s) {
            return k;
        }
    }
    throw ConfigError("unknown method '" + s + "'");
}

std::vector<Method> parse_methods(const std::string& list, Track track)
{
    std::vector<Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) {
            continue;
        }
        const Method m = item == "exact" ? (track == Track::random ? Method::gga_exact : Method::fixed_exact)
                                         : method_from_string(item);
        if (std::find(out.begin(), out.end(), m) == out.end()) {
            out.push_back(m);
        }
    }
    if (out.empty()) {
        throw ConfigError("no methods given");
    }
    return out;
}

std::vector<Method> default_methods(Track track)
{
    return {track == Track::random ? Method::gga_exact : Method::fixed_exact, Method::lower_bound,
            Method::asymptotic, Method::mc};
}

OutageCurve run(const Scenario& s, const std::vector<Method>& methods, const RunOptions& opts)
{
    OutageCurve curve;
    curve.methods = methods.size();
    const std::vector<double> thr = s.thresholds();
    std::vector<double> thr_db;
    for (std::size_t i = 0; i < thr.size(); ++i) {
        thr_db.push_back(s.rates ? linear_to_db(thr[i]) : s.thresholds_db[i]);
    }
    auto make_row = [&](Method m, std::size_t i) {
        CurveRow r;
        r.scenario_id = s.id;
        r.track = s.track;
        r.method = m;
        r.gamma_th_db = thr_db[i];
        return r;
    };

    SystemConfig sys;
    try {
        sys = build_system(s);
    } catch (const std::exception& e) {
        for (Method m : methods) {
            for (std::size_t i = 0; i < thr.size(); ++i) {
                CurveRow r = make_row(m, i);
                r.warnings = std::string("error: ") + e.what();
                curve.rows.push_back(r);
            }
        }
        curve.failed_methods = methods.size();
        return curve;
    }
    bool noisy = false;
    for (const auto& l : sys.links) {
        noisy = noisy || l.hop_sr.noise_power > 0.0 || l.hop_rd.noise_power > 0.0;
    }

    // One task per (analytic method, grid point); each writes its own slot.
    struct Task
    {
        Method method;
        std::size_t point;
    };
    std::vector<Task> tasks;
    std::vector<Method> analytic;
    for (Method m : methods) {
        if (m != Method::mc) {
            analytic.push_back(m);
            for (std::size_t i = 0; i < thr.size(); ++i) {
                tasks.push_back({m, i});
            }
        }
    }
    std::vector<CurveRow> slots(tasks.size());
    EvalOptions eval;
    eval.quad = s.quad;
    eval.source_orders = s.orders;
    eval.dest_orders = s.orders;
    auto do_task = [&](std::size_t k) {
        const Task& t = tasks[k];
        CurveRow r = make_row(t.method, t.point);
        try {
            const OutageMethod om = analytic_method(t.method, s.track);
            SystemConfig one = sys;
            one.thresholds = {thr[t.point]};
            const OutagePoint p = selection_outage(one, om, eval).front();
            r.outage = p.value;
            if (p.clamped) {
                append_warning(r.warnings, "series clamped to [0,1]");
            }
            if (neglects_noise(t.method) && noisy) {
                append_warning(r.warnings, "noise neglected");
            }
        } catch (const std::exception& e) {
            r.warnings = std::string("error: ") + e.what();
        }
        slots[k] = r;
    };
    unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
    if (threads <= 1) {
        for (std::size_t k = 0; k < tasks.size(); ++k) {
            do_task(k);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < tasks.size(); k = next++) {
                    do_task(k);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (Method m : analytic) {
        bool any_ok = false;
        for (const auto& r : slots) {
            any_ok = any_ok || (r.method == m && r.outage.has_value());
        }
        curve.failed_methods += any_ok ? 0 : 1;
    }
    curve.rows = std::move(slots);

    if (std::find(methods.begin(), methods.end(), Method::mc) != methods.end()) {
        try {
            SystemConfig mc_sys = sys;
            mc_sys.thresholds = thr;
            const std::vector<McEstimate> est = estimate_outage(mc_sys, s.mc);
            for (std::size_t i = 0; i < thr.size(); ++i) {
                CurveRow r = make_row(Method::mc, i);
                r.outage = est[i].outage;
                r.std_error = est[i].std_error;
                curve.rows.push_back(r);
            }
        } catch (const std::exception& e) {
            for (std::size_t i = 0; i < thr.size(); ++i) {
                CurveRow r = make_row(Method::mc, i);
                r.warnings = std::string("error: ") + e.what();
                curve.rows.push_back(r);
            }
            ++curve.failed_methods;
        }
    }

    std::stable_sort(curve.rows.begin(), curve.rows.end(), [](const CurveRow& a, const CurveRow& b) {
        const std::string ma = to_string(a.method);
        const std::string mb = to_string(b.method);
        if (ma != mb) {
            return ma < mb;
        }
        return a.gamma_th_db < b.gamma_th_db;
    });
    return curve;
}

void write_csv_header(std::ostream& os)
{
    os << "scenario_id,track,method,gamma_th_db,outage,stderr,warnings\n";
}

void write_csv(std::ostream& os, const OutageCurve& curve, bool header)
{
    if (header) {
        write_csv_header(os);
    }
    for (const auto& r : curve.rows) {
        os << csv_field(r.scenario_id) << ',' << to_string(r.track) << ',' << to_string(r.method) << ','
           << num(r.gamma_th_db) << ',' << (r.outage ? num(*r.outage) : "") << ','
           << (r.std_error ? num(*r.std_error) : "") << ',' << csv_field(r.warnings) << '\n';
    }
}

}  // namespace afrelay
