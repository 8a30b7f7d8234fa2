#include "radavg/weight.hpp"
#include "radavg/ext_real.hpp"
#include "radavg/quadrature.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace radavg {

double log_factor(double r) { return 1.0 - std::log1p(-r); }

namespace {

void check_radius(double r) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::domain_error("radius must lie in [0,1)");
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Gauss-Legendre nodes/weights on [-1,1], generated once per order by
// Newton iteration on the Legendre recurrence.
const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<double, double>> nw(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nw[static_cast<std::size_t>(i)] = {-x, w};
        nw[static_cast<std::size_t>(n - 1 - i)] = {x, w};
    }
    return cache.emplace(n, std::move(nw)).first->second;
}

} // namespace

// ---------------------------------------------------------------------------
// construction

RadialWeight RadialWeight::power_log(double a, double b, double scale) {
    if (!(scale >= 0.0)) throw WeightError("power_log: scale must be >= 0");
    if (!(a > -1.0 || (a == -1.0 && b < -1.0)))
        throw WeightError("power_log: need a > -1, or a = -1 with b < -1");
    RadialWeight w;
    w.family_ = Family::PowerLog;
    w.a_ = a;
    w.b_ = b;
    w.scale_ = scale;
    return w;
}

RadialWeight RadialWeight::monomial(double c, double scale) {
    if (!(c >= 0.0)) throw WeightError("monomial: exponent must be >= 0");
    if (!(scale >= 0.0)) throw WeightError("monomial: scale must be >= 0");
    RadialWeight w;
    w.family_ = Family::Monomial;
    w.c_ = c;
    w.scale_ = scale;
    return w;
}

RadialWeight RadialWeight::zero() { return monomial(0.0, 0.0); }

RadialWeight RadialWeight::tabulated(std::vector<double> knots,
                                     std::vector<double> values) {
    if (knots.size() != values.size() || knots.empty())
        throw WeightError("tabulated: need matching nonempty knot/value lists");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i] >= 0.0 && knots[i] < 1.0))
            throw WeightError("tabulated: knots must lie in [0,1)");
        if (i > 0 && !(knots[i] > knots[i - 1]))
            throw WeightError("tabulated: knots must be strictly increasing");
        if (!(values[i] >= 0.0))
            throw WeightError("tabulated: values must be nonnegative");
    }
    const bool all_zero =
        std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
    if (!all_zero && values.back() == 0.0)
        throw WeightError("tabulated: a vanishing final band makes the tail "
                          "vanish before the boundary (unsupported)");
    RadialWeight w;
    w.family_ = Family::Tabulated;
    w.knots_ = std::move(knots);
    w.vals_ = std::move(values);
    w.build_tabulated_cache();
    return w;
}

void RadialWeight::build_tabulated_cache() {
    const std::size_t n = knots_.size();
    tail_at_knot_.assign(n, 0.0);
    area_tail_at_knot_.assign(n, 0.0);
    double t = 0.0, at = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        const double lo = knots_[i];
        const double hi = (i + 1 < n) ? knots_[i + 1] : 1.0;
        t += vals_[i] * (hi - lo);
        at += vals_[i] * 0.5 * (hi * hi - lo * lo);
        tail_at_knot_[i] = t;
        area_tail_at_knot_[i] = at;
    }
}

RadialWeight RadialWeight::oscillating_product(const RadialWeight& base,
                                               double K) {
    if (!(K > 1.0)) throw WeightError("oscillating_product: need K > 1");
    if (base.family_ == Family::OscillatingProduct)
        throw WeightError("oscillating_product: nested construction unsupported");
    RadialWeight w;
    w.family_ = Family::OscillatingProduct;
    w.base_ = std::make_shared<RadialWeight>(base);
    w.build_oscillation(K);
    return w;
}

void RadialWeight::build_oscillation(double K) {
    K_ = K;
    const RadialWeight& b = *base_;
    double wh0;
    try {
        wh0 = b.tail(0.0);
    } catch (const NonpositiveTailError&) {
        throw WeightError("oscillating_product: base tail at 0 must be positive");
    }
    if (!std::isfinite(wh0) || wh0 <= 0.0)
        throw WeightError("oscillating_product: base tail at 0 must be finite and positive");
    levels_ = {0.0};
    double target = wh0;
    for (int n = 1; n <= 400; ++n) {
        target /= K;
        const double r = tail_level_radius(b, target, 1e-16);
        if (r <= levels_.back()) continue;
        levels_.push_back(r);
        if (1.0 - r < 1e-15) break;
    }
    // Suffix integrals of the density over whole bands, from each band
    // start to 1. Band i spans [levels_[i], levels_[i+1]) and carries
    // density base(t)/t when i is even. The unresolved remainder beyond
    // the last stored radius is approximated by the limiting band density
    // K/(K+1) applied to the base weight.
    const std::size_t L = levels_.size();
    const double mean_factor = K_ / (K_ + 1.0);
    seg_tail_suffix_.assign(L + 1, 0.0);
    seg_area_tail_suffix_.assign(L + 1, 0.0);
    const double last = levels_.back();
    seg_tail_suffix_[L] = mean_factor * b.tail(last);
    seg_area_tail_suffix_[L] = mean_factor * b.area_tail(last);
    for (std::size_t i = L; i-- > 0;) {
        const double lo = levels_[i];
        const double hi = (i + 1 < L) ? levels_[i + 1] : 1.0;
        double seg_t = 0.0, seg_a = 0.0;
        if (i % 2 == 0) {
            if (i + 1 < L) {
                seg_t = integrate_finite(
                    [&b](double s, double d) {
                        return ext_div(b.density(s, d), s);
                    },
                    lo, hi, 1e-12);
                seg_a = b.tail(lo) - b.tail(hi);
            } else {
                // Final stored band: fold into the mean-density remainder.
                seg_t = 0.0;
                seg_a = 0.0;
            }
        }
        seg_tail_suffix_[i] = seg_t + seg_tail_suffix_[i + 1];
        seg_area_tail_suffix_[i] = seg_a + seg_area_tail_suffix_[i + 1];
    }
}

// ---------------------------------------------------------------------------
// evaluation

double RadialWeight::density(double r, double delta) const {
    switch (family_) {
        case Family::PowerLog: {
            // Evaluate from the boundary distance; 1-r carries no relative
            // precision near the boundary while delta does.
            const double L = 1.0 - std::log(delta);
            return scale_ * std::pow(delta, a_) * std::pow(L, b_);
        }
        case Family::Monomial:
            return scale_ * std::pow(r, c_);
        case Family::Tabulated: {
            auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
            const std::size_t idx =
                (it == knots_.begin()) ? 0 : static_cast<std::size_t>(it - knots_.begin() - 1);
            return vals_[idx];
        }
        case Family::OscillatingProduct: {
            auto it = std::upper_bound(levels_.begin(), levels_.end(), r);
            const std::size_t idx = static_cast<std::size_t>(it - levels_.begin()) - 1;
            if (idx + 1 >= levels_.size()) // beyond double resolution
                return scale_ * (K_ / (K_ + 1.0)) *
                       ext_div(base_->density(r, delta), r);
            if (idx % 2 != 0) return 0.0;
            return scale_ * ext_div(base_->density(r, delta), r);
        }
    }
    return 0.0;
}

double RadialWeight::operator()(double r) const {
    check_radius(r);
    return density(r, 1.0 - r);
}

namespace {

// Closed form of \int_r^1 (1-s)^a log(e/(1-s))^b ds where one exists;
// NaN otherwise.
double powerlog_tail_closed(double a, double b, double r) {
    const double om = 1.0 - r;
    if (b == 0.0) return std::pow(om, a + 1.0) / (a + 1.0);
    if (a == -1.0 && b < -1.0)
        return std::pow(log_factor(r), b + 1.0) / (-(b + 1.0));
    if (a > -1.0 && b > 0.0 && b == std::floor(b) && b < 60.0) {
        // I_k = ((1-r)^c L^k + k I_{k-1}) / c with c = a+1.
        const double c = a + 1.0;
        const double pc = std::pow(om, c);
        const double L = log_factor(r);
        double I = pc / c;
        double Lk = 1.0;
        for (int k = 1; k <= static_cast<int>(b); ++k) {
            Lk *= L;
            I = (pc * Lk + k * I) / c;
        }
        return I;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

double RadialWeight::tail_closed(double r) const {
    switch (family_) {
        case Family::PowerLog:
            return scale_ * powerlog_tail_closed(a_, b_, r);
        case Family::Monomial:
            // 1 - r^{c+1} without cancellation near the boundary
            return scale_ * -std::expm1((c_ + 1.0) * std::log1p(-(1.0 - r))) /
                   (c_ + 1.0);
        case Family::Tabulated: {
            auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
            if (it == knots_.begin())
                return vals_[0] * (knots_[0] - r) + tail_at_knot_[0];
            const std::size_t idx = static_cast<std::size_t>(it - knots_.begin()) - 1;
            const double hi = (idx + 1 < knots_.size()) ? knots_[idx + 1] : 1.0;
            const double partial = vals_[idx] * (hi - r);
            const double rest = (idx + 1 < knots_.size()) ? tail_at_knot_[idx + 1] : 0.0;
            return partial + rest;
        }
        case Family::OscillatingProduct: {
            auto it = std::upper_bound(levels_.begin(), levels_.end(), r);
            const std::size_t idx = static_cast<std::size_t>(it - levels_.begin()) - 1;
            const std::size_t L = levels_.size();
            if (idx + 1 >= L)
                return scale_ * (K_ / (K_ + 1.0)) * base_->tail(r);
            double partial = 0.0;
            if (idx % 2 == 0) {
                const double hi = levels_[idx + 1];
                partial = integrate_finite(
                    [this](double s, double d) {
                        return ext_div(base_->density(s, d), s);
                    },
                    r, hi, 1e-12);
            }
            return scale_ * (partial + seg_tail_suffix_[idx + 1]);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

bool RadialWeight::has_analytic_tail() const {
    switch (family_) {
        case Family::PowerLog:
            return b_ == 0.0 || a_ == -1.0 ||
                   (b_ > 0.0 && b_ == std::floor(b_) && b_ < 60.0);
        case Family::Monomial:
        case Family::Tabulated:
            return true;
        case Family::OscillatingProduct:
            return false;
    }
    return false;
}

double RadialWeight::tail_by_quadrature(double r, double rel_tol) const {
    check_radius(r);
    return integrate_improper(
        [this](double s, double d) { return density(s, d); }, r, rel_tol);
}

double RadialWeight::tail(double r) const {
    check_radius(r);
    double t = tail_closed(r);
    if (std::isnan(t)) t = tail_by_quadrature(r);
    if (!(t > 0.0) && !std::isinf(t))
        throw NonpositiveTailError("weight tail is nonpositive at r=" + fmt(r));
    return t;
}

double RadialWeight::area_tail(double r) const {
    check_radius(r);
    switch (family_) {
        case Family::Monomial:
            return scale_ * -std::expm1((c_ + 2.0) * std::log1p(-(1.0 - r))) /
                   (c_ + 2.0);
        case Family::Tabulated: {
            auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
            if (it == knots_.begin())
                return vals_[0] * 0.5 * (knots_[0] * knots_[0] - r * r) +
                       area_tail_at_knot_[0];
            const std::size_t idx = static_cast<std::size_t>(it - knots_.begin()) - 1;
            const double hi = (idx + 1 < knots_.size()) ? knots_[idx + 1] : 1.0;
            const double partial = vals_[idx] * 0.5 * (hi * hi - r * r);
            const double rest =
                (idx + 1 < knots_.size()) ? area_tail_at_knot_[idx + 1] : 0.0;
            return partial + rest;
        }
        case Family::OscillatingProduct: {
            auto it = std::upper_bound(levels_.begin(), levels_.end(), r);
            const std::size_t idx = static_cast<std::size_t>(it - levels_.begin()) - 1;
            const std::size_t L = levels_.size();
            if (idx + 1 >= L)
                return scale_ * (K_ / (K_ + 1.0)) * base_->area_tail(r);
            double partial = 0.0;
            if (idx % 2 == 0)
                partial = base_->tail(r) - base_->tail(levels_[idx + 1]);
            return scale_ * (partial + seg_area_tail_suffix_[idx + 1]);
        }
        case Family::PowerLog: {
            // s (1-s)^a L^b = (1-s)^a L^b - (1-s)^{a+1} L^b
            const double t1 = powerlog_tail_closed(a_, b_, r);
            const double t2 = powerlog_tail_closed(a_ + 1.0, b_, r);
            if (!std::isnan(t1) && !std::isnan(t2)) return scale_ * (t1 - t2);
            break;
        }
    }
    if (is_zero()) return 0.0;
    return integrate_improper(
        [this](double s, double d) { return s * density(s, d); }, r, 1e-10);
}

double RadialWeight::moment(double t, double x) const {
    check_radius(t);
    if (!(x >= 0.0)) throw std::domain_error("moment: need x >= 0");
    if (x == 0.0 && !is_zero()) return tail(t);
    if (x == 1.0) return area_tail(t);
    switch (family_) {
        case Family::Monomial: {
            const double e = x + c_ + 1.0;
            if (t == 0.0) return scale_ / e;
            return scale_ * -std::expm1(e * std::log1p(-(1.0 - t))) / e;
        }
        case Family::Tabulated: {
            const double e = x + 1.0;
            double acc = 0.0;
            const std::size_t n = knots_.size();
            for (std::size_t i = 0; i <= n; ++i) {
                const double lo = (i == 0) ? 0.0 : knots_[i - 1];
                const double hi = (i < n) ? knots_[i] : 1.0;
                const double v = vals_[i == 0 ? 0 : i - 1];
                const double a = std::max(lo, t), b = hi;
                if (b <= a || v == 0.0) continue;
                acc += v * (std::pow(b, e) - std::pow(a, e)) / e;
            }
            return acc;
        }
        case Family::OscillatingProduct: {
            if (x >= 1.0) {
                // s^x * base(s)/s = s^{x-1} base(s) on live bands.
                auto it = std::upper_bound(levels_.begin(), levels_.end(), t);
                const std::size_t idx = static_cast<std::size_t>(it - levels_.begin()) - 1;
                const std::size_t L = levels_.size();
                const double mean_factor = K_ / (K_ + 1.0);
                double acc = 0.0;
                for (std::size_t i = idx; i < L; ++i) {
                    if (i % 2 != 0) continue;
                    if (i + 1 >= L) break;
                    const double lo = std::max(levels_[i], t);
                    const double hi = levels_[i + 1];
                    if (hi <= lo) continue;
                    acc += base_->moment(lo, x - 1.0) - base_->moment(hi, x - 1.0);
                }
                const double beyond = std::max(levels_.back(), t);
                acc += mean_factor * base_->moment(beyond, x - 1.0);
                return scale_ * acc;
            }
            break;
        }
        case Family::PowerLog:
            break;
    }
    if (is_zero()) return 0.0;
    return integrate_improper(
        [this, x](double s, double d) { return std::pow(s, x) * density(s, d); },
        t, 1e-10);
}

std::vector<double> RadialWeight::moment_table(double t,
                                               std::size_t x_max) const {
    check_radius(t);
    std::vector<double> out(x_max + 1, 0.0);
    if (is_zero()) return out;
    switch (family_) {
        case Family::Monomial: {
            for (std::size_t x = 0; x <= x_max; ++x) {
                const double e = static_cast<double>(x) + c_ + 1.0;
                out[x] = scale_ * (1.0 - std::pow(t, e)) / e;
            }
            return out;
        }
        case Family::PowerLog: {
            if (b_ == 0.0 && t == 0.0) {
                // Beta-moment recurrence: m_x = x/(x+a+1) m_{x-1}.
                out[0] = scale_ / (a_ + 1.0);
                for (std::size_t x = 1; x <= x_max; ++x)
                    out[x] = out[x - 1] * static_cast<double>(x) /
                             (static_cast<double>(x) + a_ + 1.0);
                return out;
            }
            break;
        }
        case Family::Tabulated: {
            const std::size_t n = knots_.size();
            std::vector<double> lo(n + 1), hi(n + 1), v(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                lo[i] = std::max((i == 0) ? 0.0 : knots_[i - 1], t);
                hi[i] = (i < n) ? knots_[i] : 1.0;
                v[i] = vals_[i == 0 ? 0 : i - 1];
                if (hi[i] <= lo[i]) v[i] = 0.0;
            }
            std::vector<double> plo(n + 1, 1.0), phi(n + 1, 1.0);
            for (std::size_t i = 0; i <= n; ++i) {
                plo[i] = lo[i];
                phi[i] = hi[i];
            }
            for (std::size_t x = 0; x <= x_max; ++x) {
                const double e = static_cast<double>(x) + 1.0;
                double acc = 0.0;
                for (std::size_t i = 0; i <= n; ++i)
                    if (v[i] > 0.0) acc += v[i] * (phi[i] - plo[i]) / e;
                out[x] = acc;
                for (std::size_t i = 0; i <= n; ++i) {
                    plo[i] *= lo[i];
                    phi[i] *= hi[i];
                }
            }
            return out;
        }
        case Family::OscillatingProduct:
            break;
    }
    // Shared-node composite Gauss table: subdivide [t,1) dyadically toward
    // the boundary (with family breakpoints folded in) and accumulate all
    // powers at once.
    std::vector<double> bounds{t};
    for (double br : breakpoints())
        if (br > t && br < 1.0) bounds.push_back(br);
    double gap = 1.0 - t;
    for (int k = 1; k <= 60; ++k) {
        gap *= 0.5;
        if (gap < 1e-15) break; // below double resolution of 1-s
        bounds.push_back(1.0 - gap);
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    const auto& nw = gauss_legendre(24);
    std::vector<double> ns, ws;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double mid = 0.5 * (bounds[i] + bounds[i + 1]);
        const double half = 0.5 * (bounds[i + 1] - bounds[i]);
        if (half <= 0.0) continue;
        for (const auto& [xx, ww] : nw) {
            const double s = mid + half * xx;
            if (s >= 1.0) continue;
            const double f = density(s, 1.0 - s);
            if (f == 0.0 || !std::isfinite(f)) continue;
            ns.push_back(s);
            ws.push_back(ww * half * f);
        }
    }
    std::vector<double> p(ns.size(), 1.0);
    for (std::size_t x = 0; x <= x_max; ++x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            acc += ws[i] * p[i];
            p[i] *= ns[i];
        }
        out[x] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// queries

bool RadialWeight::is_zero() const {
    if (scale_ == 0.0) return true;
    if (family_ == Family::Tabulated)
        return std::all_of(vals_.begin(), vals_.end(),
                           [](double v) { return v == 0.0; });
    return false;
}

bool RadialWeight::strictly_positive() const {
    if (is_zero()) return false;
    switch (family_) {
        case Family::PowerLog:
        case Family::Monomial:
            return true;
        case Family::Tabulated:
            return std::all_of(vals_.begin(), vals_.end(),
                               [](double v) { return v > 0.0; });
        case Family::OscillatingProduct:
            return false;
    }
    return false;
}

std::vector<double> RadialWeight::breakpoints() const {
    switch (family_) {
        case Family::Tabulated: {
            std::vector<double> b;
            for (double k : knots_)
                if (k > 0.0) b.push_back(k);
            return b;
        }
        case Family::OscillatingProduct: {
            std::vector<double> b(levels_.begin() + 1, levels_.end());
            return b;
        }
        default:
            return {};
    }
}

double RadialWeight::param_a() const {
    if (family_ != Family::PowerLog) throw WeightError("param_a: not a PowerLog weight");
    return a_;
}
double RadialWeight::param_b() const {
    if (family_ != Family::PowerLog) throw WeightError("param_b: not a PowerLog weight");
    return b_;
}
double RadialWeight::param_c() const {
    if (family_ != Family::Monomial) throw WeightError("param_c: not a Monomial weight");
    return c_;
}

const RadialWeight& RadialWeight::base() const {
    if (!base_) throw WeightError("base: not an oscillating product");
    return *base_;
}
double RadialWeight::oscillation_K() const {
    if (family_ != Family::OscillatingProduct)
        throw WeightError("oscillation_K: not an oscillating product");
    return K_;
}
const std::vector<double>& RadialWeight::level_radii() const {
    if (family_ != Family::OscillatingProduct)
        throw WeightError("level_radii: not an oscillating product");
    return levels_;
}

// ---------------------------------------------------------------------------
// serialization

std::string RadialWeight::to_config(bool multiline) const {
    const char* sep = multiline ? "\n" : ",";
    std::ostringstream os;
    switch (family_) {
        case Family::PowerLog:
            os << "family=powerlog" << sep << "a=" << fmt(a_) << sep
               << "b=" << fmt(b_);
            break;
        case Family::Monomial:
            os << "family=monomial" << sep << "c=" << fmt(c_);
            break;
        case Family::Tabulated:
            os << "family=tabulated";
            if (!csv_source_.empty()) {
                os << sep << "csv=" << csv_source_;
            } else {
                os << sep << "samples=";
                for (std::size_t i = 0; i < knots_.size(); ++i) {
                    if (i) os << "|";
                    os << fmt(knots_[i]) << ":" << fmt(vals_[i]);
                }
            }
            break;
        case Family::OscillatingProduct: {
            os << "family=oscillating" << sep << "K=" << fmt(K_);
            std::string base_cfg = base_->to_config(false);
            std::istringstream is(base_cfg);
            std::string item;
            while (std::getline(is, item, ','))
                os << sep << "base." << item;
            break;
        }
    }
    if (scale_ != 1.0) os << sep << "scale=" << fmt(scale_);
    return os.str();
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::string item;
    auto flush = [&kv](std::string& s) {
        const auto eq = s.find('=');
        if (eq != std::string::npos) {
            std::string k = s.substr(0, eq);
            std::string v = s.substr(eq + 1);
            auto trim = [](std::string& t) {
                while (!t.empty() && std::isspace((unsigned char)t.front())) t.erase(t.begin());
                while (!t.empty() && std::isspace((unsigned char)t.back())) t.pop_back();
            };
            trim(k);
            trim(v);
            if (!k.empty()) kv[k] = v;
        }
        s.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ';' || c == '\n') {
            flush(item);
        } else {
            item.push_back(c);
        }
    }
    flush(item);
    return kv;
}

RadialWeight from_kv(const std::map<std::string, std::string>& kv,
                     const std::string& prefix);

RadialWeight from_kv(const std::map<std::string, std::string>& kv,
                     const std::string& prefix) {
    auto get = [&](const std::string& key) -> const std::string* {
        auto it = kv.find(prefix + key);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto get_num = [&](const std::string& key, double dflt) {
        const std::string* s = get(key);
        return s ? std::stod(*s) : dflt;
    };
    const std::string* fam = get("family");
    if (!fam) throw WeightError("weight config: missing family");
    const double scale = get_num("scale", 1.0);
    if (*fam == "powerlog")
        return RadialWeight::power_log(get_num("a", 0.0), get_num("b", 0.0), scale);
    if (*fam == "monomial")
        return RadialWeight::monomial(get_num("c", 0.0), scale);
    if (*fam == "oscillating") {
        if (!prefix.empty())
            throw WeightError("weight config: nested oscillating bases unsupported");
        RadialWeight base = from_kv(kv, "base.");
        return RadialWeight::oscillating_product(base, get_num("K", 2.0));
    }
    if (*fam == "tabulated") {
        if (const std::string* path = get("csv"))
            return RadialWeight::tabulated_from_csv(*path);
        const std::string* samples = get("samples");
        if (!samples) throw WeightError("tabulated config: need csv= or samples=");
        std::vector<double> ks, vs;
        std::istringstream is(*samples);
        std::string pair;
        while (std::getline(is, pair, '|')) {
            const auto colon = pair.find(':');
            if (colon == std::string::npos)
                throw WeightError("tabulated samples: expected r:value pairs");
            ks.push_back(std::stod(pair.substr(0, colon)));
            vs.push_back(std::stod(pair.substr(colon + 1)));
        }
        return RadialWeight::tabulated(std::move(ks), std::move(vs));
    }
    throw WeightError("weight config: unknown family '" + *fam + "'");
}

} // namespace

RadialWeight RadialWeight::from_config(const std::string& text) {
    return from_kv(parse_kv(text), "");
}

RadialWeight RadialWeight::tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw WeightError("cannot open weight CSV: " + path);
    std::vector<double> ks, vs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        double r, v;
        if (is >> r >> v) {
            ks.push_back(r);
            vs.push_back(v);
        }
    }
    RadialWeight w = tabulated(std::move(ks), std::move(vs));
    w.csv_source_ = path;
    return w;
}

std::string RadialWeight::describe() const {
    std::ostringstream os;
    switch (family_) {
        case Family::PowerLog:
            os << "powerlog(a=" << a_ << ", b=" << b_ << ")";
            break;
        case Family::Monomial:
            os << "monomial(c=" << c_ << ")";
            break;
        case Family::Tabulated:
            os << "tabulated(" << knots_.size() << " knots)";
            break;
        case Family::OscillatingProduct:
            os << "oscillating(K=" << K_ << ", base=" << base_->describe() << ")";
            break;
    }
    if (scale_ != 1.0) os << "*" << scale_;
    return os.str();
}

// ---------------------------------------------------------------------------
// helpers

double tail_level_radius(const RadialWeight& w, double target, double r_tol) {
    if (!(target > 0.0)) throw WeightError("tail_level_radius: target must be positive");
    if (w.tail(0.0) <= target) return 0.0;
    double lo = 0.0, hi = 1.0 - 1e-16;
    if (w.tail(hi) > target) return hi;
    for (int it = 0; it < 200 && hi - lo > r_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (w.tail(mid) <= target ? hi : lo) = mid;
    }
    return hi;
}

double verify_analytic_tail(const RadialWeight& w,
                            const std::vector<double>& probes) {
    if (!w.has_analytic_tail()) return 0.0;
    double worst = 0.0;
    for (double r : probes) {
        const double closed = w.tail(r);
        const double quad = w.tail_by_quadrature(r);
        worst = std::max(worst, std::abs(closed - quad) / std::max(closed, 1e-300));
    }
    return worst;
}

} // namespace radavg
