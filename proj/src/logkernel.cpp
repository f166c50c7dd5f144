#include "logsp/logkernel.hpp"

#include <fftw3.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <mutex>
#include <numbers>

#include "logsp/error.hpp"

namespace logsp {

const char* to_string(KernelKind kind) noexcept {
    switch (kind) {
        case KernelKind::log: return "log";
        case KernelKind::log1p: return "log1p";
        case KernelKind::log1pinv: return "log1pinv";
        case KernelKind::riesz: return "riesz";
    }
    return "?";
}

double kernel_value(KernelKind kind, double r) {
    switch (kind) {
        case KernelKind::log: return std::log(r);
        case KernelKind::log1p: return std::log1p(r);
        case KernelKind::log1pinv: return std::log1p(1.0 / r);
        case KernelKind::riesz: return 1.0 / r;
    }
    return 0.0;
}

namespace {

// int_0^R k(r) r dr in closed form.
double radial_moment(KernelKind kind, double R) {
    const double log_part = 0.5 * R * R * std::log(R) - 0.25 * R * R;
    const double log1p_part = 0.5 * (R * R - 1.0) * std::log1p(R) - 0.25 * R * R + 0.5 * R;
    switch (kind) {
        case KernelKind::log: return log_part;
        case KernelKind::log1p: return log1p_part;
        case KernelKind::log1pinv: return log1p_part - log_part;
        case KernelKind::riesz: return R;
    }
    return 0.0;
}

} // namespace

double cell_average(KernelKind kind, double h) {
    if (!(h > 0.0)) throw InvalidParameter("cell_average needs h > 0");
    // The square splits into 8 congruent triangles 0 <= theta <= pi/4,
    // 0 <= r <= (h/2) / cos(theta).
    auto integrand = [&](double theta) { return radial_moment(kind, 0.5 * h / std::cos(theta)); };
    double err = 0.0;
    const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, std::numbers::pi / 4.0, 10, 1e-13, &err);
    return 8.0 * integral / (h * h);
}

KernelTable::KernelTable(const GridSpec& grid, KernelKind kind)
    : grid_(grid), kind_(kind), values_(static_cast<std::size_t>(2 * grid.n() - 1) * (2 * grid.n() - 1)) {
    const int n = grid.n();
    const int w = width();
    const double h = grid.h();
    for (int di = -(n - 1); di <= n - 1; ++di) {
        for (int dj = -(n - 1); dj <= n - 1; ++dj) {
            const double r = h * std::sqrt(static_cast<double>(di * di + dj * dj));
            values_[static_cast<std::size_t>(di + n - 1) * w + (dj + n - 1)] =
                (di == 0 && dj == 0) ? cell_average(kind, h) : kernel_value(kind, r);
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwDeleter {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

} // namespace

struct ConvolutionPlan::Impl {
    GridSpec grid;
    KernelTable table;
    int padded;
    std::size_t real_count;
    std::size_t complex_count;
    FftwBuffer<fftw_complex> kernel_hat;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    Impl(const GridSpec& g, KernelKind kind, Padding padding)
        : grid(g),
          table(g, kind),
          padded(padding == Padding::free_space ? 2 * g.n() : g.n()),
          real_count(static_cast<std::size_t>(padded) * padded),
          complex_count(static_cast<std::size_t>(padded) * (padded / 2 + 1)),
          kernel_hat(fftw_buffer<fftw_complex>(complex_count)) {
        const int n = g.n();
        auto work = fftw_buffer<double>(real_count);
        std::fill_n(work.get(), real_count, 0.0);
        if (padding == Padding::free_space) {
            for (int di = -(n - 1); di <= n - 1; ++di)
                for (int dj = -(n - 1); dj <= n - 1; ++dj)
                    work[static_cast<std::size_t>((di + padded) % padded) * padded + (dj + padded) % padded] =
                        table.at(di, dj);
        } else {
            // Minimal-image wrap: the naive periodic convolution.
            auto wrap = [n](int m) { return m <= n / 2 ? m : m - n; };
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    work[static_cast<std::size_t>(a) * padded + b] = table.at(wrap(a), wrap(b));
        }
        auto spectrum = fftw_buffer<fftw_complex>(complex_count);
        {
            std::lock_guard lock(planner_mutex());
            forward = fftw_plan_dft_r2c_2d(padded, padded, work.get(), spectrum.get(), FFTW_ESTIMATE);
            backward = fftw_plan_dft_c2r_2d(padded, padded, spectrum.get(), work.get(), FFTW_ESTIMATE);
        }
        if (forward == nullptr || backward == nullptr) throw Error("FFTW failed to create a plan");
        fftw_execute_dft_r2c(forward, work.get(), kernel_hat.get());
    }

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (forward != nullptr) fftw_destroy_plan(forward);
        if (backward != nullptr) fftw_destroy_plan(backward);
    }
};

ConvolutionPlan::ConvolutionPlan(const GridSpec& grid, KernelKind kind, Padding padding)
    : impl_(std::make_unique<Impl>(grid, kind, padding)) {}
ConvolutionPlan::~ConvolutionPlan() = default;
ConvolutionPlan::ConvolutionPlan(ConvolutionPlan&&) noexcept = default;
ConvolutionPlan& ConvolutionPlan::operator=(ConvolutionPlan&&) noexcept = default;

const GridSpec& ConvolutionPlan::grid() const noexcept { return impl_->grid; }
KernelKind ConvolutionPlan::kind() const noexcept { return impl_->table.kind(); }
int ConvolutionPlan::padded_size() const noexcept { return impl_->padded; }
const KernelTable& ConvolutionPlan::table() const noexcept { return impl_->table; }

ScalarField ConvolutionPlan::convolve(const ScalarField& src) const {
    if (!(src.grid() == impl_->grid)) throw GridMismatch("convolution plan was built for a different grid");
    const int n = impl_->grid.n();
    const int P = impl_->padded;
    auto work = fftw_buffer<double>(impl_->real_count);
    auto spectrum = fftw_buffer<fftw_complex>(impl_->complex_count);
    std::fill_n(work.get(), impl_->real_count, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) work[static_cast<std::size_t>(i) * P + j] = src(i, j);

    fftw_execute_dft_r2c(impl_->forward, work.get(), spectrum.get());
    const fftw_complex* k = impl_->kernel_hat.get();
    for (std::size_t m = 0; m < impl_->complex_count; ++m) {
        const double re = spectrum[m][0] * k[m][0] - spectrum[m][1] * k[m][1];
        const double im = spectrum[m][0] * k[m][1] + spectrum[m][1] * k[m][0];
        spectrum[m][0] = re;
        spectrum[m][1] = im;
    }
    fftw_execute_dft_c2r(impl_->backward, spectrum.get(), work.get());

    const double scale = 1.0 / static_cast<double>(impl_->real_count);
    ScalarField out(impl_->grid);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = work[static_cast<std::size_t>(i) * P + j] * scale;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

ScalarField squared(const ScalarField& u) {
    ScalarField s(u.grid());
    for (std::size_t k = 0; k < u.size(); ++k) s[k] = u[k] * u[k];
    return s;
}

void require_plan_grid(const ConvolutionPlan& plan, const ScalarField& u) {
    if (!(plan.grid() == u.grid())) throw GridMismatch("convolution plan was built for a different grid");
}

} // namespace

ScalarField phi_u(const ScalarField& u, const ConvolutionPlan& plan) {
    require_plan_grid(plan, u);
    if (plan.kind() != KernelKind::log) throw InvalidParameter("phi_u needs a plan for the log kernel");
    ScalarField phi = plan.convolve(squared(u));
    phi *= u.grid().cell_area() / (2.0 * std::numbers::pi);
    return phi;
}

ScalarField phi_u_direct(const ScalarField& u, const KernelTable& log_table, kernels::Exec exec) {
    if (!(log_table.grid() == u.grid())) throw GridMismatch("kernel table was built for a different grid");
    if (log_table.kind() != KernelKind::log) throw InvalidParameter("phi_u_direct needs the log kernel table");
    const ScalarField rho = squared(u);
    ScalarField phi(u.grid());
    kernels::direct_convolve(u.grid().n(), log_table.values(), rho.values(), phi.values(), exec);
    phi *= u.grid().cell_area() / (2.0 * std::numbers::pi);
    return phi;
}

double bilinear(const KernelTable& table, const ScalarField& f, const ScalarField& g, kernels::Exec exec) {
    require_same_grid(f, g);
    if (!(table.grid() == f.grid())) throw GridMismatch("kernel table was built for a different grid");
    const double h2 = f.grid().cell_area();
    return h2 * h2 * kernels::direct_bilinear(f.grid().n(), table.values(), f.values(), g.values(), exec);
}

double bilinear(const ConvolutionPlan& plan, const ScalarField& f, const ScalarField& g) {
    require_same_grid(f, g);
    require_plan_grid(plan, f);
    const ScalarField kg = plan.convolve(g);
    const double h2 = f.grid().cell_area();
    return h2 * inner(f, kg);
}

double bilinear(KernelKind kind, const ScalarField& f, const ScalarField& g, BilinearMode mode) {
    if (mode == BilinearMode::fast) {
        if (kind != KernelKind::log) {
            throw InvalidParameter(std::string("no fast path for the ") + to_string(kind) + " kernel");
        }
        const ConvolutionPlan plan(f.grid(), kind);
        return bilinear(plan, f, g);
    }
    const KernelTable table(f.grid(), kind);
    return bilinear(table, f, g);
}

VEnergies v_energies(const ScalarField& u, const ConvolutionPlan& plan, int direct_limit) {
    require_plan_grid(plan, u);
    u.require_finite();
    const ScalarField rho = squared(u);
    VEnergies e;
    e.v0 = bilinear(plan, rho, rho);
    if (u.grid().n() <= direct_limit) {
        e.v1 = bilinear(KernelTable(u.grid(), KernelKind::log1p), rho, rho);
        e.v2 = bilinear(KernelTable(u.grid(), KernelKind::log1pinv), rho, rho);
    }
    return e;
}

HlsCheck hls_chain_check(const ScalarField& u) {
    u.require_finite();
    const ScalarField rho = squared(u);
    HlsCheck c;
    c.v2 = bilinear(KernelTable(u.grid(), KernelKind::log1pinv), rho, rho);
    c.riesz = bilinear(KernelTable(u.grid(), KernelKind::riesz), rho, rho);
    const double l83 = lp_norm(u, 8.0 / 3.0);
    c.l83_ratio = l83 > 0.0 ? c.riesz / std::pow(l83, 4) : 0.0;
    c.holds = c.v2 <= c.riesz;
    return c;
}

} // namespace logsp
