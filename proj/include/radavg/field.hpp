#pragma once

#include "radavg/grid.hpp"
#include "radavg/kernel.hpp"
#include "radavg/weight.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace radavg {

/// Axis-aligned polar rectangle with a nonnegative amplitude.
struct StepRect {
    double r_lo = 0.0, r_hi = 0.0;   // 0 <= r_lo <= r_hi < 1
    double th_lo = 0.0, th_hi = 0.0; // width <= 2 pi
    double amplitude = 0.0;
};

/// A function on the disc described on a polar grid. Step, extremal and
/// kernel kinds evaluate exactly off-grid; sampled fields interpolate
/// piecewise-constantly on their grid cells. Values are extended reals
/// embedded in complex (+inf real part); kernel images are genuinely
/// complex.
class RadialFunctionField {
public:
    enum class Kind { Sampled, StepFunction, ExtremalFr, KernelImage };

    static RadialFunctionField step(std::vector<StepRect> rects,
                                    PolarGrid grid);

    /// f_r(z) = (omega(|z|) / (|z| nu(|z|)))^{p'/p} for |z| >= r, else 0,
    /// with the 0*inf = 0 and x/0 = inf conventions applied pointwise.
    static RadialFunctionField extremal(RadialWeight omega, RadialWeight nu,
                                        double p, double r, PolarGrid grid);

    /// The N-th kernel derivative with base point a as a field.
    static RadialFunctionField kernel_image(KernelSeries series, int N,
                                            std::complex<double> a,
                                            PolarGrid grid);

    /// Values on the polar grid cells (radius-major), piecewise-constant
    /// interpolation off-grid.
    static RadialFunctionField sampled(PolarGrid grid,
                                       std::vector<double> values);

    /// Wraps an arbitrary evaluator (test helper); radial_symmetric marks
    /// fields whose value does not depend on the angle.
    static RadialFunctionField from_function(
        PolarGrid grid,
        std::function<std::complex<double>(double r, double th)> f,
        bool radial_symmetric);

    std::complex<double> value(double r, double th) const;
    double magnitude(double r, double th) const { return std::abs(value(r, th)); }

    Kind kind() const { return kind_; }
    const PolarGrid& grid() const { return grid_; }
    bool radial_symmetric() const { return radial_; }

    const std::vector<StepRect>& rects() const { return rects_; }

    // extremal parameters
    const RadialWeight& extremal_omega() const { return *omega_; }
    const RadialWeight& extremal_nu() const { return *nu_; }
    double extremal_p() const { return p_; }
    double extremal_r() const { return r_; }

    // kernel parameters
    const KernelSeries& series() const { return *series_; }
    int kernel_order() const { return N_; }
    std::complex<double> kernel_a() const { return a_; }

    /// Angular discontinuities of the field (step rectangles), sorted into
    /// [0, 2 pi).
    std::vector<double> angular_breaks() const;
    /// Radial discontinuities in (0,1), sorted.
    std::vector<double> radial_breaks() const;

    void to_csv(const std::string& path) const;

private:
    RadialFunctionField() = default;

    Kind kind_ = Kind::Sampled;
    PolarGrid grid_;
    bool radial_ = false;
    std::vector<StepRect> rects_;
    std::shared_ptr<const RadialWeight> omega_, nu_;
    double p_ = 2.0, r_ = 0.0;
    std::shared_ptr<const KernelSeries> series_;
    int N_ = 0;
    std::complex<double> a_{0.0, 0.0};
    std::vector<double> values_;
    std::function<std::complex<double>(double, double)> eval_;
};

} // namespace radavg
