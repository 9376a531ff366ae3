#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "afrelay/endtoend.hpp"
#include "afrelay/montecarlo.hpp"

namespace afrelay {

enum class Track
{
    random,
    fixed,
};

std::string to_string(Track t);
Track track_from_string(const std::string& s);

/// Fading orders of one relay path: signal on both hops, interferers at the
/// relay and at the destination.
struct LinkFading
{
    int m_s = 1;
    int m_d = 1;
    int m_i = 1;
    int m_v = 1;

    bool operator==(const LinkFading&) const = default;
};

struct Scenario
{
    std::string id = "scenario";
    Track track = Track::random;
    std::vector<LinkFading> links;  ///< one per relay

    double sinr_db = 15.0;
    double inr_db = 0.0;
    // Per-hop SINR is sinr / b, per-hop INR is inr / c.
    double b_s = 1.0;
    double b_d = 10.0;
    double c_s = 1.0;
    double c_d = 1.0;

    double pathloss_beta = 3.0;
    double power_product = 1.0;

    // Random track.
    double lambda_mean = 50.0;
    double disc_radius = 10.0;
    // Fixed track.
    int interferer_count = 10;
    double interferer_distance = 2.0;

    /// Thresholds in dB; ignored when rates are given.
    std::vector<double> thresholds_db;
    /// Target rates (bit/s/Hz), threshold 2^{2R} - 1.
    std::optional<std::vector<double>> rates;

    SeriesOrder orders;
    QuadratureSpec quad;
    McSpec mc;

    void validate() const;
    /// Linear thresholds in the order given.
    std::vector<double> thresholds() const;

    bool operator==(const Scenario&) const = default;
};

double db_to_linear(double db);
double linear_to_db(double x);

/// The -10..20 dB grid in 2 dB steps.
std::vector<double> default_grid_db();

struct HopCalibration
{
    double signal_omega = 0.0;
    double noise_power = 0.0;
};

/// Signal power and noise power giving mean SINR Omega / (noise + E[Y]) and
/// mean INR E[Y] / noise equal to the targets (linear).
HopCalibration calibrate_hop(double mean_interference, double target_sinr, double target_inr);

/// JSON I/O. Unknown keys and ambiguous threshold specifications are rejected.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);

/// Names accepted by figure_preset.
std::vector<std::string> figure_names();
/// One scenario per curve family of the named figure.
std::vector<Scenario> figure_preset(const std::string& name);

/// Fully calibrated system. Random-track hops carry their fitted GG law.
SystemConfig build_system(const Scenario& s);

enum class Method
{
    gga_exact,
    fixed_exact,
    lower_bound,
    asymptotic,
    closed_form_dominant,
    rayleigh_closed_form,
    rayleigh_highsinr,
    mc,
};

std::string to_string(Method m);
Method method_from_string(const std::string& s);
/// Comma-separated list; "exact" picks the exact method of the track.
std::vector<Method> parse_methods(const std::string& list, Track track);
/// Exact, lower bound, asymptote and Monte Carlo for the scenario's track.
std::vector<Method> default_methods(Track track);

struct CurveRow
{
    std::string scenario_id;
    Track track = Track::random;
    Method method = Method::gga_exact;
    double gamma_th_db = 0.0;
    std::optional<double> outage;  ///< empty when the method failed
    std::optional<double> std_error;
    std::string warnings;
};

struct OutageCurve
{
    std::vector<CurveRow> rows;  ///< sorted by (method, gamma_th_db)
    std::size_t failed_methods = 0;
    std::size_t methods = 0;

    bool total_failure() const { return methods > 0 && failed_methods == methods; }
};

struct RunOptions
{
    /// Worker threads for analytic grid points; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Evaluates the methods over the threshold grid. A failing method yields
/// rows with an empty outage and the error in warnings.
OutageCurve run(const Scenario& s, const std::vector<Method>& methods, const RunOptions& opts = {});

void write_csv_header(std::ostream& os);
void write_csv(std::ostream& os, const OutageCurve& curve, bool header = true);

}  // namespace afrelay
