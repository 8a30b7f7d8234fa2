#include "radavg/field.hpp"
#include "radavg/ext_real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace radavg {

namespace {

double wrap_angle(double th) {
    th = std::fmod(th, 2.0 * M_PI);
    if (th < 0.0) th += 2.0 * M_PI;
    return th;
}

bool angle_in(double th, double lo, double hi) {
    // [lo, hi] with width <= 2 pi, compared modulo 2 pi
    const double w = hi - lo;
    double d = wrap_angle(th - lo);
    return d <= w;
}

} // namespace

RadialFunctionField RadialFunctionField::step(std::vector<StepRect> rects,
                                              PolarGrid grid) {
    for (const auto& r : rects) {
        if (!(0.0 <= r.r_lo && r.r_lo <= r.r_hi && r.r_hi < 1.0))
            throw std::invalid_argument("step field: need 0 <= r_lo <= r_hi < 1");
        if (!(r.th_hi - r.th_lo >= 0.0 && r.th_hi - r.th_lo <= 2.0 * M_PI + 1e-12))
            throw std::invalid_argument("step field: angular width in [0, 2pi]");
        if (!(r.amplitude >= 0.0))
            throw std::invalid_argument("step field: amplitudes must be >= 0");
    }
    RadialFunctionField f;
    f.kind_ = Kind::StepFunction;
    f.grid_ = std::move(grid);
    f.rects_ = std::move(rects);
    bool radial = true;
    for (const auto& r : f.rects_)
        if (r.th_hi - r.th_lo < 2.0 * M_PI - 1e-12) radial = false;
    f.radial_ = radial;
    return f;
}

RadialFunctionField RadialFunctionField::extremal(RadialWeight omega,
                                                  RadialWeight nu, double p,
                                                  double r, PolarGrid grid) {
    if (!(p > 1.0)) throw std::domain_error("extremal field: need p > 1");
    if (!(r >= 0.0 && r < 1.0))
        throw std::domain_error("extremal field: need r in [0,1)");
    RadialFunctionField f;
    f.kind_ = Kind::ExtremalFr;
    f.grid_ = std::move(grid);
    f.radial_ = true;
    f.omega_ = std::make_shared<RadialWeight>(std::move(omega));
    f.nu_ = std::make_shared<RadialWeight>(std::move(nu));
    f.p_ = p;
    f.r_ = r;
    return f;
}

RadialFunctionField RadialFunctionField::kernel_image(KernelSeries series,
                                                      int N,
                                                      std::complex<double> a,
                                                      PolarGrid grid) {
    series.certified_remainder(std::abs(a), N);
    RadialFunctionField f;
    f.kind_ = Kind::KernelImage;
    f.grid_ = std::move(grid);
    f.series_ = std::make_shared<KernelSeries>(std::move(series));
    f.N_ = N;
    f.a_ = a;
    return f;
}

RadialFunctionField RadialFunctionField::sampled(PolarGrid grid,
                                                 std::vector<double> values) {
    const std::size_t want =
        grid.radial.size() * static_cast<std::size_t>(grid.angular);
    if (values.size() != want)
        throw std::invalid_argument("sampled field: value count must match grid");
    RadialFunctionField f;
    f.kind_ = Kind::Sampled;
    f.grid_ = std::move(grid);
    f.values_ = std::move(values);
    return f;
}

RadialFunctionField RadialFunctionField::from_function(
    PolarGrid grid, std::function<std::complex<double>(double, double)> fn,
    bool radial_symmetric) {
    RadialFunctionField f;
    f.kind_ = Kind::Sampled;
    f.grid_ = std::move(grid);
    f.eval_ = std::move(fn);
    f.radial_ = radial_symmetric;
    return f;
}

std::complex<double> RadialFunctionField::value(double r, double th) const {
    switch (kind_) {
        case Kind::StepFunction: {
            double acc = 0.0;
            for (const auto& rc : rects_)
                if (r >= rc.r_lo && r <= rc.r_hi &&
                    angle_in(th, rc.th_lo, rc.th_hi))
                    acc += rc.amplitude;
            return {acc, 0.0};
        }
        case Kind::ExtremalFr: {
            if (r < r_) return {0.0, 0.0};
            const double w = (*omega_)(r);
            const double m = ext_mul(r, (*nu_)(r));
            const double ratio = ext_div(w, m);
            const double pp = p_ / (p_ - 1.0);
            return {ext_pow(ratio, pp / p_), 0.0};
        }
        case Kind::KernelImage:
            return eval_kernel_derivative(*series_, N_, a_,
                                          std::polar(r, th));
        case Kind::Sampled: {
            if (eval_) return eval_(r, th);
            const auto& nodes = grid_.radial.nodes;
            auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
            const std::size_t ri =
                (it == nodes.begin())
                    ? 0
                    : static_cast<std::size_t>(it - nodes.begin()) - 1;
            const int ai = static_cast<int>(wrap_angle(th) / (2.0 * M_PI) *
                                            grid_.angular) %
                           grid_.angular;
            return {values_[ri * grid_.angular + ai], 0.0};
        }
    }
    return {0.0, 0.0};
}

std::vector<double> RadialFunctionField::angular_breaks() const {
    std::vector<double> b;
    if (kind_ == Kind::StepFunction) {
        for (const auto& rc : rects_) {
            b.push_back(wrap_angle(rc.th_lo));
            b.push_back(wrap_angle(rc.th_hi));
        }
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

std::vector<double> RadialFunctionField::radial_breaks() const {
    std::vector<double> b;
    switch (kind_) {
        case Kind::StepFunction:
            for (const auto& rc : rects_) {
                if (rc.r_lo > 0.0) b.push_back(rc.r_lo);
                if (rc.r_hi > 0.0) b.push_back(rc.r_hi);
            }
            break;
        case Kind::ExtremalFr: {
            if (r_ > 0.0) b.push_back(r_);
            auto nb = nu_->breakpoints();
            b.insert(b.end(), nb.begin(), nb.end());
            auto ob = omega_->breakpoints();
            b.insert(b.end(), ob.begin(), ob.end());
            break;
        }
        case Kind::Sampled:
            if (!eval_)
                b.insert(b.end(), grid_.radial.nodes.begin(),
                         grid_.radial.nodes.end());
            break;
        case Kind::KernelImage:
            break;
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

void RadialFunctionField::to_csv(const std::string& path) const {
    std::ofstream out(path);
    out << "r,theta,re,im\n";
    char buf[128];
    for (double r : grid_.radial.nodes)
        for (int k = 0; k < grid_.angular; ++k) {
            const double th = grid_.angle(k);
            const std::complex<double> v = value(r, th);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r, th,
                          v.real(), v.imag());
            out << buf;
        }
}

} // namespace radavg
