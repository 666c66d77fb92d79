#pragma once

#include "dmimo/noise.hpp"
#include "dmimo/types.hpp"

namespace dmimo {

struct PowerVector
{
    RVector p; // W per AC

    int size() const { return static_cast<int>(p.size()); }
};

/// Normalized max-min problem: SINR_k = p_k / (f_k + sum_m R_km p_m),
/// subject to q^T p <= p_ap.
struct MpaInstance
{
    RMatrix R;
    RVector f;
    RVector q;
    double p_ap = 0.0;

    int size() const { return static_cast<int>(f.size()); }
};

void validate(const MpaInstance& inst);

PowerVector epa(int K, double p_ap);

/// Builds R, f and q from the estimated channels and the precoder.
MpaInstance build_mpa_instance(const CMatrix& h_hat, const CMatrix& g, const NoiseVector& noise, double p_ap);

/// Estimated SINRs of an allocation under the instance's normalized model.
RVector estimated_sinr(const MpaInstance& inst, const RVector& p);

struct PowerIterationOptions
{
    double tolerance = 1e-12;
    int max_iterations = 10000;
};

/// Max-min allocation from the dominant eigenvector w of the augmented
/// (K+1)x(K+1) matrix D = [[R, f], [q^T R / p_ap, q^T f / p_ap]]:
/// p_k = w_k / w_{K+1}. An exactly zero R uses the closed form.
PowerVector mpa_solve(const MpaInstance& inst, const PowerIterationOptions& options = {});

/// Random test instance: off-diagonal R ~ U(0, 0.5) (zero when
/// `zero_coupling`), f log-uniform on [1e-3, 1], q = 1, p_ap log-uniform on [0.1, 10].
MpaInstance random_instance(int K, Rng& rng, bool zero_coupling = false);

/// Independent check of mpa_solve: bisection on the common SINR target t,
/// each candidate solved by the fixed point p = t (R p + f) iterated from zero
/// (evaluated at iterates 2^m by doubling). `tol` is the
/// relative width of the final bracket.
PowerVector mpa_oracle(const MpaInstance& inst, double tol = 1e-12);

} // namespace dmimo
