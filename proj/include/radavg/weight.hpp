#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace radavg {

struct WeightError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The computed tail integral came out nonpositive, which violates the
/// standing positivity assumption on radial weights.
struct NonpositiveTailError : WeightError {
    using WeightError::WeightError;
};

/// A radial weight w(r) on [0,1), integrable over the unit disc.
///
/// Families:
///   PowerLog(a,b)        w(s) = (1-s)^a * log(e/(1-s))^b, a > -1
///                        (a = -1 is allowed when b < -1, which keeps the
///                        weight integrable; this realizes purely
///                        logarithmic tails such as 1/log(e/(1-r)))
///   Monomial(c)          w(s) = s^c, c >= 0
///   OscillatingProduct   t*w(t) = base(t) on alternate tail-level bands;
///                        see oscillating_product() below
///   Tabulated            piecewise-constant density from (r, value) knots
///
/// Every family carries a nonnegative scale factor. Instances are immutable
/// and cheap to copy; all operations are pure.
class RadialWeight {
public:
    enum class Family { PowerLog, Monomial, OscillatingProduct, Tabulated };

    static RadialWeight power_log(double a, double b, double scale = 1.0);
    static RadialWeight monomial(double c, double scale = 1.0);
    static RadialWeight tabulated(std::vector<double> knots,
                                  std::vector<double> values);

    /// The two-sided construction behind the analytic-bounded /
    /// weak-unbounded example: radii r_n with base-tail(r_n) =
    /// base-tail(0) * K^{-n} split [0,1) into bands; the result vanishes on
    /// every odd band and equals base(t)/t on even bands. Beyond the last
    /// band resolvable in doubles the density falls back to
    /// K/(K+1) * base(t)/t, the limiting mean of the oscillation.
    static RadialWeight oscillating_product(const RadialWeight& base, double K);

    /// The identically-zero weight (valid only where a target-space weight
    /// may vanish; its tail() reports the nonpositive-tail error).
    static RadialWeight zero();

    /// Density at r. Domain error outside [0,1). May be +inf at r = 0 for
    /// oscillating products (the disc-area integral stays finite).
    double operator()(double r) const;

    /// Density with the boundary distance delta = 1-r supplied exactly
    /// (no domain check). Integrators pass delta from their substitution
    /// so the boundary behavior keeps full relative precision.
    double density(double r, double delta) const;

    /// Tail integral \int_r^1 w(s) ds. Uses the family's closed form when
    /// one exists, otherwise adaptive quadrature to 1e-10 relative.
    /// Reports NonpositiveTailError if the result is <= 0.
    double tail(double r) const;

    /// \int_r^1 s w(s) ds — the radial part of the disc measure of the
    /// annulus r <= |z| < 1 (up to the factor 2).
    double area_tail(double r) const;

    /// Moment \int_t^1 s^x w(s) ds, x >= 0, to 1e-10 relative.
    double moment(double t, double x) const;

    /// Moments for x = 0..x_max in one pass (shared quadrature nodes for
    /// families without closed forms). Used by kernel coefficient builds.
    std::vector<double> moment_table(double t, std::size_t x_max) const;

    /// Tail by direct quadrature of the density, bypassing closed forms;
    /// the independent route used to validate analytic tails.
    double tail_by_quadrature(double r, double rel_tol = 1e-10) const;

    Family family() const { return family_; }
    double scale() const { return scale_; }
    bool has_analytic_tail() const;
    bool is_zero() const;
    /// Density is strictly positive on (0,1).
    bool strictly_positive() const;
    /// Density discontinuities in (0,1), sorted.
    std::vector<double> breakpoints() const;

    // PowerLog / Monomial parameter access (family-checked).
    double param_a() const;
    double param_b() const;
    double param_c() const;

    // OscillatingProduct access.
    const RadialWeight& base() const;
    double oscillation_K() const;
    /// Band radii r_0 = 0 < r_1 < ...; density is nonzero on
    /// [r_{2n}, r_{2n+1}) and zero on [r_{2n+1}, r_{2n+2}).
    const std::vector<double>& level_radii() const;

    /// Key-value serialization: "family=powerlog,a=1,b=0,scale=1".
    /// multiline uses one pair per line (the config-file layout).
    std::string to_config(bool multiline = false) const;
    static RadialWeight from_config(const std::string& text);
    static RadialWeight tabulated_from_csv(const std::string& path);

    /// Default-constructs the constant weight 1.
    RadialWeight() = default;

    std::string describe() const;

private:

    double tail_closed(double r) const; // closed form; NaN if none
    void build_tabulated_cache();
    void build_oscillation(double K);

    Family family_ = Family::PowerLog;
    double scale_ = 1.0;
    double a_ = 0.0, b_ = 0.0; // PowerLog
    double c_ = 0.0;           // Monomial

    // Tabulated
    std::vector<double> knots_, vals_;
    std::vector<double> tail_at_knot_, area_tail_at_knot_;
    std::string csv_source_;

    // OscillatingProduct
    std::shared_ptr<const RadialWeight> base_;
    double K_ = 2.0;
    std::vector<double> levels_;
    std::vector<double> seg_tail_suffix_;      // of \int base(s)/s ds over on-bands
    std::vector<double> seg_area_tail_suffix_; // of \int base(s) ds over on-bands
};

/// Leftmost t in [0,1) with w.tail(t) <= target, by bisection on the
/// continuous nonincreasing tail. Absolute tolerance in r.
double tail_level_radius(const RadialWeight& w, double target,
                         double r_tol = 1e-13);

/// Max relative deviation between the closed-form tail and direct
/// quadrature of the density over the probe radii; 0 when the family has
/// no closed form.
double verify_analytic_tail(const RadialWeight& w,
                            const std::vector<double>& probes);

/// log(e/(1-r)) — the logarithmic factor of the PowerLog family.
double log_factor(double r);

} // namespace radavg
