#include <doctest.h>

#include <cmath>
#include <sstream>

#include "afrelay/errors.hpp"
#include "afrelay/scenario.hpp"

using namespace afrelay;

TEST_CASE("calibration")
{
    HopCalibration c = calibrate_hop(2.0, 10.0, 1.0);
    CHECK(c.noise_power == doctest::Approx(2.0));
    CHECK(c.signal_omega == doctest::Approx(40.0));
    c = calibrate_hop(1.7, 5.0, 1.0);
    CHECK(c.noise_power == doctest::Approx(1.7));
    for (double ey : {0.01, 1.1, 37.0}) {
        for (double sinr : {0.1, 31.6, 1000.0}) {
            for (double inr : {1.0, 100.0}) {
                const HopCalibration k = calibrate_hop(ey, sinr, inr);
                CHECK(std::abs(k.signal_omega / (k.noise_power + ey) / sinr - 1.0) < 1e-12);
                CHECK(std::abs(ey / k.noise_power / inr - 1.0) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(calibrate_hop(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(calibrate_hop(1.0, -1.0, 1.0), DomainError);
}

TEST_CASE("presets")
{
    const auto fig2 = figure_preset("fig2");
    REQUIRE(fig2.size() == 3);
    CHECK(fig2[0].sinr_db == 15.0);
    CHECK(fig2[0].inr_db == 0.0);
    CHECK(fig2[0].lambda_mean == 50.0);
    CHECK(fig2[0].disc_radius == 10.0);
    CHECK(fig2[0].pathloss_beta == 3.0);
    CHECK(fig2[0].links.size() == 2);
    CHECK(fig2[0].b_d == 10.0);
    CHECK(figure_preset("fig5")[0].pathloss_beta == 5.0);
    CHECK(figure_preset("fig6")[0].disc_radius == 20.0);
    const auto fig11 = figure_preset("fig11");
    REQUIRE(fig11.size() == 3);
    CHECK(fig11[0].track == Track::fixed);
    CHECK(fig11[0].sinr_db == 10.0);
    CHECK(fig11[0].links[0] == LinkFading{2, 3, 2, 3});
    CHECK(fig11[2].inr_db == 20.0);
    CHECK(figure_preset("fig7")[0].track == Track::fixed);
    CHECK_THROWS_AS(figure_preset("fig12"), ConfigError);
    for (const auto& name : figure_names()) {
        for (const auto& s : figure_preset(name)) {
            CHECK_NOTHROW(s.validate());
        }
    }
}

TEST_CASE("fig2 system honors the ratio constants")
{
    const Scenario s = figure_preset("fig2")[1];
    const SystemConfig sys = build_system(s);
    const auto& l = sys.links[0];
    const double sinr = std::pow(10.0, 1.5);
    const MomentTriple mi = aggregate_moments_random(*std::get<RandomInterference>(l.hop_sr.interference).field);
    const MomentTriple mv = aggregate_moments_random(*std::get<RandomInterference>(l.hop_rd.interference).field);
    CHECK(l.hop_sr.signal_omega / (l.hop_sr.noise_power + mi.m1) == doctest::Approx(sinr));
    CHECK(l.hop_rd.signal_omega / (l.hop_rd.noise_power + mv.m1) == doctest::Approx(sinr / 10.0));
    CHECK(mi.m1 / l.hop_sr.noise_power == doctest::Approx(1.0));
    CHECK(sys.thresholds.size() == 16);
}

TEST_CASE("JSON round trip and strictness")
{
    for (const auto& name : figure_names()) {
        for (const auto& s : figure_preset(name)) {
            CHECK(parse_scenario(serialize_scenario(s)) == s);
        }
    }
    Scenario r = figure_preset("fig8")[0];
    r.thresholds_db.clear();
    r.rates = std::vector<double>{0.5, 1.0, 1.5};
    const Scenario back = parse_scenario(serialize_scenario(r));
    CHECK(back == r);
    CHECK(back.thresholds()[1] == doctest::Approx(3.0));

    CHECK_THROWS_AS(parse_scenario(R"({"links":[{"m_s":1}], "bogus": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"links":[{"m_s":1, "m_x":2}]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"links":[{"m_s":1}], "thresholds_db":[0], "rates":[1]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"links":[{"m_s":1}], "thresholds_db":[3, 1]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"links":[{"m_s":1}], "thresholds_db":[]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"links":[{"m_s":1}], "sinr_db":"high"})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"links":[{"m_s":1.5}]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"links":[]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"track":"grid","links":[{}]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("{not json"), ConfigError);
    const Scenario d = parse_scenario(R"({"links":[{"m_s":2,"m_d":3}]})");
    CHECK(d.thresholds_db == default_grid_db());
    CHECK(d.links[0].m_i == 1);
}

TEST_CASE("methods")
{
    CHECK(parse_methods("exact, lower_bound", Track::fixed) ==
          std::vector<Method>{Method::fixed_exact, Method::lower_bound});
    CHECK(parse_methods("exact,mc", Track::random) == std::vector<Method>{Method::gga_exact, Method::mc});
    CHECK_THROWS_AS(parse_methods("exact,foo", Track::random), ConfigError);
    CHECK_THROWS_AS(parse_methods(" , ", Track::random), ConfigError);
    for (Method m : {Method::gga_exact, Method::mc, Method::rayleigh_highsinr}) {
        CHECK(method_from_string(to_string(m)) == m);
    }
}

TEST_CASE("run: ordering, bounds and per-method errors")
{
    Scenario s = figure_preset("fig8")[1];
    s.thresholds_db = {-6, 0, 6};
    s.mc.trials = 2000;
    const OutageCurve c =
        run(s, {Method::mc, Method::lower_bound, Method::fixed_exact, Method::gga_exact, Method::rayleigh_highsinr});
    CHECK(c.failed_methods == 2);  // gga_exact on a fixed scenario, Rayleigh form with m = 2
    CHECK_FALSE(c.total_failure());
    for (std::size_t i = 1; i < c.rows.size(); ++i) {
        const auto& a = c.rows[i - 1];
        const auto& b = c.rows[i];
        CHECK((to_string(a.method) < to_string(b.method) ||
               (a.method == b.method && a.gamma_th_db < b.gamma_th_db)));
    }
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        const auto& r = c.rows[i];
        if (r.method == Method::gga_exact || r.method == Method::rayleigh_highsinr) {
            CHECK_FALSE(r.outage.has_value());
            CHECK(r.warnings.rfind("error:", 0) == 0);
        } else {
            REQUIRE(r.outage.has_value());
            CHECK(*r.outage >= 0.0);
            CHECK(*r.outage <= 1.0);
        }
        CHECK(r.std_error.has_value() == (r.method == Method::mc));
    }
    // bound below exact row by row
    std::vector<double> lb, ex;
    for (const auto& r : c.rows) {
        if (r.method == Method::lower_bound) {
            lb.push_back(*r.outage);
        }
        if (r.method == Method::fixed_exact) {
            ex.push_back(*r.outage);
        }
    }
    REQUIRE(lb.size() == ex.size());
    for (std::size_t i = 0; i < lb.size(); ++i) {
        CHECK(lb[i] <= ex[i] + 1e-12);
    }
    const OutageCurve bad = run(s, {Method::gga_exact});
    CHECK(bad.total_failure());
}

TEST_CASE("run: Monte Carlo CSV is deterministic")
{
    Scenario s = figure_preset("fig2")[1];
    s.mc.trials = 1000;
    s.mc.seed = 9;
    std::ostringstream a, b;
    write_csv(a, run(s, {Method::mc}));
    s.mc.threads = 3;
    write_csv(b, run(s, {Method::mc}));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("scenario_id,track,method,gamma_th_db,outage,stderr,warnings\n", 0) == 0);
}
