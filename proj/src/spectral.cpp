#include "kawahara/spectral.hpp"

#include "kawahara/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace kawahara {

int thread_count()
{
    static const int n = [] {
        const char* s = std::getenv("KAWAHARA_THREADS");
        int v = s ? std::atoi(s) : 1;
        return std::max(1, v);
    }();
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    std::size_t nw = std::min<std::size_t>(thread_count(), n);
    if (nw <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    // the exception of the lowest failing index is rethrown, as in the serial loop
    std::vector<std::exception_ptr> err(nw);
    std::vector<std::size_t> err_at(nw, n);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nw; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += nw) {
                try {
                    body(i);
                } catch (...) {
                    err[w] = std::current_exception();
                    err_at[w] = i;
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    std::size_t first = nw;
    for (std::size_t w = 0; w < nw; ++w)
        if (err[w] && (first == nw || err_at[w] < err_at[first])) first = w;
    if (first < nw) std::rethrow_exception(err[first]);
}

double smooth_step(double u)
{
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u);
    double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

Grid1D Grid1D::make(int n, double L, double origin)
{
    if (n < 8 || (n & (n - 1)) != 0)
        throw StructuralError("grid size must be a power of two >= 8, got " + std::to_string(n));
    if (!(L > 0.0)) throw StructuralError("grid length must be positive");
    return Grid1D{n, L, origin};
}

double Grid1D::wavenumber(int m) const
{
    int mm = m < n / 2 ? m : m - n;
    return 2.0 * pi * mm / L;
}

int Grid1D::index_of(double x) const
{
    long i = std::lround((x - origin) / dx());
    return int(std::clamp<long>(i, 0, n - 1));
}

Field1D Field1D::zeros(const Grid1D& g, Domain d)
{
    return Field1D{g, std::vector<cplx>(g.n), d};
}

Field1D Field1D::sample(const Grid1D& g, const std::function<cplx(double)>& f)
{
    Field1D out = zeros(g);
    for (int i = 0; i < g.n; ++i) out.values[i] = f(g.point(i));
    return out;
}

Field2D Field2D::zeros(const SpaceTimeGrid& g, Domain d)
{
    return Field2D{g, std::vector<cplx>(std::size_t(g.nt()) * g.nx()), d};
}

Field1D Field2D::slice(int it) const
{
    Field1D f{grid.space, std::vector<cplx>(row(it), row(it) + grid.nx()), domain};
    return f;
}

void Field2D::set_slice(int it, const Field1D& f)
{
    if (f.grid.n != grid.nx()) throw StructuralError("slice size mismatch");
    std::copy(f.values.begin(), f.values.end(), row(it));
}

namespace {

std::mutex plan_mutex;

fftw_plan get_plan(int n0, int n1, int sign)
{
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(n0, n1, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::size_t sz = std::size_t(n0) * std::max(n1, 1);
    fftw_complex* buf = fftw_alloc_complex(sz);
    fftw_plan p = n1 <= 0
        ? fftw_plan_dft_1d(n0, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_2d(n0, n1, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(key, p);
    return p;
}

void check_tag(Domain have, Domain want)
{
    if (have != want) throw StructuralError("field has the wrong domain tag for this transform");
}

}  // namespace

void fft_inplace(cplx* data, int n, int sign)
{
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(get_plan(n, 0, sign), p, p);
}

void fft2_inplace(cplx* data, int n0, int n1, int sign)
{
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(get_plan(n0, n1, sign), p, p);
}

Field1D forward_transform(const Field1D& f)
{
    check_tag(f.domain, Domain::physical);
    const auto& g = f.grid;
    if (int(f.values.size()) != g.n) throw StructuralError("field size does not match grid");
    Field1D out{g, f.values, Domain::frequency};
    fft_inplace(out.values.data(), g.n, FFTW_FORWARD);
    double dx = g.dx();
    for (int m = 0; m < g.n; ++m)
        out.values[m] *= dx * std::polar(1.0, -g.wavenumber(m) * g.origin);
    return out;
}

Field1D inverse_transform(const Field1D& f)
{
    check_tag(f.domain, Domain::frequency);
    const auto& g = f.grid;
    if (int(f.values.size()) != g.n) throw StructuralError("field size does not match grid");
    Field1D out{g, f.values, Domain::physical};
    for (int m = 0; m < g.n; ++m) out.values[m] *= std::polar(1.0, g.wavenumber(m) * g.origin);
    fft_inplace(out.values.data(), g.n, FFTW_BACKWARD);
    for (auto& v : out.values) v /= g.L;
    return out;
}

Field2D forward_transform(const Field2D& f)
{
    check_tag(f.domain, Domain::physical);
    const auto& g = f.grid;
    if (f.values.size() != std::size_t(g.nt()) * g.nx())
        throw StructuralError("field size does not match grid");
    Field2D out{g, f.values, Domain::frequency};
    fft2_inplace(out.values.data(), g.nt(), g.nx(), FFTW_FORWARD);
    double w = g.time.dx() * g.space.dx();
    std::vector<cplx> px(g.nx());
    for (int m = 0; m < g.nx(); ++m) px[m] = std::polar(1.0, -g.space.wavenumber(m) * g.space.origin);
    for (int a = 0; a < g.nt(); ++a) {
        cplx pt = w * std::polar(1.0, -g.time.wavenumber(a) * g.time.origin);
        cplx* r = out.row(a);
        for (int m = 0; m < g.nx(); ++m) r[m] *= pt * px[m];
    }
    return out;
}

Field2D inverse_transform(const Field2D& f)
{
    check_tag(f.domain, Domain::frequency);
    const auto& g = f.grid;
    if (f.values.size() != std::size_t(g.nt()) * g.nx())
        throw StructuralError("field size does not match grid");
    Field2D out{g, f.values, Domain::physical};
    std::vector<cplx> px(g.nx());
    for (int m = 0; m < g.nx(); ++m) px[m] = std::polar(1.0, g.space.wavenumber(m) * g.space.origin);
    double w = 1.0 / (g.time.L * g.space.L);
    for (int a = 0; a < g.nt(); ++a) {
        cplx pt = w * std::polar(1.0, g.time.wavenumber(a) * g.time.origin);
        cplx* r = out.row(a);
        for (int m = 0; m < g.nx(); ++m) r[m] *= pt * px[m];
    }
    fft2_inplace(out.values.data(), g.nt(), g.nx(), FFTW_BACKWARD);
    return out;
}

void forward_x_rows(Field2D& f)
{
    const auto& g = f.grid.space;
    std::vector<cplx> ph(g.n);
    for (int m = 0; m < g.n; ++m) ph[m] = g.dx() * std::polar(1.0, -g.wavenumber(m) * g.origin);
    for (int it = 0; it < f.grid.nt(); ++it) {
        cplx* r = f.row(it);
        fft_inplace(r, g.n, FFTW_FORWARD);
        for (int m = 0; m < g.n; ++m) r[m] *= ph[m];
    }
}

void inverse_x_rows(Field2D& f)
{
    const auto& g = f.grid.space;
    std::vector<cplx> ph(g.n);
    for (int m = 0; m < g.n; ++m) ph[m] = std::polar(1.0, g.wavenumber(m) * g.origin) / g.L;
    for (int it = 0; it < f.grid.nt(); ++it) {
        cplx* r = f.row(it);
        for (int m = 0; m < g.n; ++m) r[m] *= ph[m];
        fft_inplace(r, g.n, FFTW_BACKWARD);
    }
}

double eta0(double xi)
{
    double a = std::abs(xi);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return smooth_step(2.0 - a);
}

double chi(int k, double xi)
{
    if (k < 0) throw DomainError("dyadic index must be nonnegative");
    if (k == 0) return eta0(xi);
    return eta0(std::ldexp(xi, -k)) - eta0(std::ldexp(xi, -(k - 1)));
}

Field1D lp_project(const Field1D& f, int k)
{
    if (k < 0) throw DomainError("dyadic index must be nonnegative");
    bool phys = f.domain == Domain::physical;
    Field1D h = phys ? forward_transform(f) : f;
    for (int m = 0; m < h.grid.n; ++m) h.values[m] *= chi(k, h.grid.wavenumber(m));
    return phys ? inverse_transform(h) : h;
}

Field2D lp_project(const Field2D& f, int k)
{
    if (k < 0) throw DomainError("dyadic index must be nonnegative");
    bool phys = f.domain == Domain::physical;
    Field2D h = phys ? forward_transform(f) : f;
    const auto& gx = h.grid.space;
    for (int a = 0; a < h.grid.nt(); ++a)
        for (int m = 0; m < gx.n; ++m) h.at(a, m) *= chi(k, gx.wavenumber(m));
    return phys ? inverse_transform(h) : h;
}

Field2D modulation_project(const Field2D& f, int j)
{
    if (j < 0) throw DomainError("dyadic index must be nonnegative");
    bool phys = f.domain == Domain::physical;
    Field2D h = phys ? forward_transform(f) : f;
    const auto& gx = h.grid.space;
    const auto& gt = h.grid.time;
    for (int a = 0; a < gt.n; ++a) {
        double tau = gt.wavenumber(a);
        for (int m = 0; m < gx.n; ++m) {
            double xi = gx.wavenumber(m);
            h.at(a, m) *= chi(j, tau - std::pow(xi, 5));
        }
    }
    return phys ? inverse_transform(h) : h;
}

int max_modulation_index(const SpaceTimeGrid& g)
{
    double mx = 0.0;
    for (int a = 0; a < g.nt(); ++a)
        for (int m = 0; m < g.nx(); ++m)
            mx = std::max(mx, std::abs(g.time.wavenumber(a) - std::pow(g.space.wavenumber(m), 5)));
    int J = 0;
    while (std::ldexp(1.0, J) < mx) ++J;
    return J;
}

namespace {

cplx ik_pow(double xi, int k)
{
    cplx v = 1.0;
    for (int i = 0; i < k; ++i) v *= I * xi;
    return v;
}

}  // namespace

Field1D spectral_derivative(const Field1D& f, int k)
{
    Field1D h = forward_transform(f);
    int ny = h.grid.nyquist();
    for (int m = 0; m < h.grid.n; ++m) {
        if (m == ny && (k % 2)) h.values[m] = 0.0;
        else h.values[m] *= ik_pow(h.grid.wavenumber(m), k);
    }
    return inverse_transform(h);
}

cplx spectral_value_at(const Field1D& fh, double x, int k)
{
    if (fh.domain != Domain::frequency) throw StructuralError("spectral_value_at expects a spectrum");
    const auto& g = fh.grid;
    int ny = g.nyquist();
    cplx s = 0.0;
    for (int m = 0; m < g.n; ++m) {
        double xi = g.wavenumber(m);
        if (m == ny) {
            if (k % 2) continue;
            double sgn = (k / 2) % 2 ? -1.0 : 1.0;
            s += fh.values[m] * std::polar(1.0, xi * g.origin) * sgn * std::pow(std::abs(xi), k) *
                 std::cos(xi * (x - g.origin));
            continue;
        }
        s += fh.values[m] * ik_pow(xi, k) * std::polar(1.0, xi * x);
    }
    return s / g.L;
}

double spectral_tail_fraction(const Field1D& fh, double frac)
{
    const auto& g = fh.grid;
    double tot = 0.0, tail = 0.0;
    double cut = frac * (g.n / 2);
    for (int m = 0; m < g.n; ++m) {
        double e = std::norm(fh.values[m]);
        tot += e;
        int mm = m < g.n / 2 ? m : m - g.n;
        if (std::abs(mm) > cut) tail += e;
    }
    return tot > 0.0 ? tail / tot : 0.0;
}

}  // namespace kawahara
