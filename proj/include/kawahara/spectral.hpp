#pragma once

#include "kawahara/common.hpp"

#include <vector>

namespace kawahara {

enum class Domain { physical, frequency };

/// Uniform periodic grid x_i = origin + i*dx, i in [0,n).
/// Frequency-domain arrays are stored in FFT order: slot m holds the
/// wavenumber 2*pi*m/L for m < n/2 and 2*pi*(m-n)/L otherwise.
struct Grid1D {
    int n = 0;
    double L = 0.0;
    double origin = 0.0;

    static Grid1D make(int n, double L, double origin = 0.0);

    double dx() const { return L / n; }
    double point(int i) const { return origin + i * dx(); }
    double wavenumber(int m) const;
    double dxi() const { return 2.0 * pi / L; }
    int nyquist() const { return n / 2; }
    /// Index of the sample nearest to x (no wrap).
    int index_of(double x) const;
    bool operator==(const Grid1D&) const = default;
};

struct SpaceTimeGrid {
    Grid1D time;
    Grid1D space;
    int nt() const { return time.n; }
    int nx() const { return space.n; }
    bool operator==(const SpaceTimeGrid&) const = default;
};

struct Field1D {
    Grid1D grid;
    std::vector<cplx> values;
    Domain domain = Domain::physical;

    static Field1D zeros(const Grid1D& g, Domain d = Domain::physical);
    static Field1D sample(const Grid1D& g, const std::function<cplx(double)>& f);
};

/// Row-major (t, x) samples.
struct Field2D {
    SpaceTimeGrid grid;
    std::vector<cplx> values;
    Domain domain = Domain::physical;

    static Field2D zeros(const SpaceTimeGrid& g, Domain d = Domain::physical);

    cplx& at(int it, int ix) { return values[std::size_t(it) * grid.nx() + ix]; }
    const cplx& at(int it, int ix) const { return values[std::size_t(it) * grid.nx() + ix]; }
    cplx* row(int it) { return values.data() + std::size_t(it) * grid.nx(); }
    const cplx* row(int it) const { return values.data() + std::size_t(it) * grid.nx(); }

    Field1D slice(int it) const;
    void set_slice(int it, const Field1D& f);
};

struct DyadicBlock {
    int k = 0;
    int j = 0;
};

// Raw unnormalized FFTs on contiguous data (FFTW, cached plans).
void fft_inplace(cplx* data, int n, int sign);
void fft2_inplace(cplx* data, int n0, int n1, int sign);

/// f_hat(xi) = dx * sum_i f(x_i) e^{-i xi x_i}.
Field1D forward_transform(const Field1D& f);
/// f(x_i) = (1/L) sum_m f_hat(xi_m) e^{i xi_m x_i}.
Field1D inverse_transform(const Field1D& f);
Field2D forward_transform(const Field2D& f);
Field2D inverse_transform(const Field2D& f);

/// Row-wise transform in x only (each time slice), domain tag untouched.
void forward_x_rows(Field2D& f);
void inverse_x_rows(Field2D& f);

/// eta_0: 1 on [-1,1], 0 outside [-2,2].
double eta0(double xi);
/// chi_0 = eta_0; chi_k(xi) = eta_0(xi/2^k) - eta_0(xi/2^{k-1}).
double chi(int k, double xi);

Field1D lp_project(const Field1D& f, int k);
Field2D lp_project(const Field2D& f, int k);
/// Multiplies the space-time spectrum by chi_j(tau - xi^5).
Field2D modulation_project(const Field2D& f, int j);

/// Smallest j with chi-partition covering every |tau - xi^5| on the grid.
int max_modulation_index(const SpaceTimeGrid& g);

/// Spectral d^k/dx^k of a physical field, Nyquist zeroed for odd k.
Field1D spectral_derivative(const Field1D& f, int k);

/// Fourier interpolation of d^k f/dx^k at an arbitrary point.
cplx spectral_value_at(const Field1D& f_hat, double x, int k);

/// Energy fraction of the spectrum with |m| > frac*(n/2).
double spectral_tail_fraction(const Field1D& f_hat, double frac);

}  // namespace kawahara
