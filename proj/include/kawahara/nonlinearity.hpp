#pragma once

#include "kawahara/spectral.hpp"

#include <string>

namespace kawahara {

enum class NonlinearityKind { quadratic_nonlocal, cubic };

NonlinearityKind parse_kind(const std::string& s);
std::string to_string(NonlinearityKind k);

struct NonlinearDiagnostics {
    double aliasing_fraction = 0.0;
    bool warning = false;
};

/// quadratic_nonlocal: (1-d^2)^{1/2} d_x (u^2), symbol i xi <xi>.
/// cubic: d_x (u^3), symbol i xi. Input modes beyond the dealiasing cut
/// (n/3 for degree 2, n/4 for degree 3) are discarded before the product
/// and the product is truncated to the same band.
Field1D apply_F(const Field1D& u, NonlinearityKind kind, NonlinearDiagnostics* diag = nullptr);

/// Same on every row of a physical space-time field.
Field2D apply_F(const Field2D& u, NonlinearityKind kind);

/// (xi1+xi2)^5 - xi1^5 - xi2^5 in factored form.
double resonance_H(double xi1, double xi2);
double resonance_H_expanded(double xi1, double xi2);

/// (xi1+xi2+xi3)^5 - xi1^5 - xi2^5 - xi3^5 in factored form.
double resonance_G(double xi1, double xi2, double xi3);
double resonance_G_expanded(double xi1, double xi2, double xi3);

/// u_lam(t,x) = lam^2 u(lam^5 t, lam x) on the grid with lengths L/lam,
/// T/lam^5 and origins scaled likewise; samples map index to index.
Field2D scaling_map(const Field2D& u, double lam);
Field1D scaling_map(const Field1D& u, double lam);

}  // namespace kawahara
