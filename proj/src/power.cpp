#include "dmimo/power.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "dmimo/errors.hpp"
#include "dmimo/random.hpp"

namespace dmimo {

namespace {
constexpr int kShiftWarmup = 8;
}

void validate(const MpaInstance& inst)
{
    const Eigen::Index K = inst.f.size();
    if (K < 1)
        throw DomainError("MPA instance: K must be >= 1");
    if (inst.R.rows() != K || inst.R.cols() != K || inst.q.size() != K)
        throw DomainError("MPA instance: R must be KxK and f, q length K");
    if (!(inst.p_ap > 0.0) || !std::isfinite(inst.p_ap))
        throw DomainError("MPA instance: p_ap must be > 0");
    if (!inst.R.allFinite() || (inst.R.array() < 0.0).any())
        throw DomainError("MPA instance: R must be finite and nonnegative");
    if (!inst.R.diagonal().isZero(0.0))
        throw DomainError("MPA instance: R must have a zero diagonal");
    if (!inst.f.allFinite() || !(inst.f.array() > 0.0).all())
        throw DomainError("MPA instance: f must be positive");
    if (!inst.q.allFinite() || !(inst.q.array() > 0.0).all())
        throw DomainError("MPA instance: q must be positive");
}

PowerVector epa(int K, double p_ap)
{
    if (K < 1)
        throw DomainError("EPA: K must be >= 1");
    return {RVector::Constant(K, p_ap / K)};
}

MpaInstance build_mpa_instance(const CMatrix& h_hat, const CMatrix& g, const NoiseVector& noise, double p_ap)
{
    const Eigen::Index K = h_hat.rows();
    const RMatrix gain = h_hat.lazyProduct(g).cwiseAbs2();

    MpaInstance inst;
    inst.R.resize(K, K);
    inst.f.resize(K);
    inst.q = g.colwise().squaredNorm().transpose();
    inst.p_ap = p_ap;
    for (Eigen::Index k = 0; k < K; ++k)
    {
        const double signal = gain(k, k);
        if (!(signal > 0.0) || !std::isfinite(signal))
            throw NumericalError("MPA: degenerate estimated gain for AC " + std::to_string(k));
        inst.R.row(k) = gain.row(k) / signal;
        inst.R(k, k) = 0.0;
        inst.f[k] = noise.sigma_k2[k] / signal;
    }
    return inst;
}

RVector estimated_sinr(const MpaInstance& inst, const RVector& p)
{
    return p.array() / (inst.f + inst.R * p).array();
}

PowerVector mpa_solve(const MpaInstance& inst, const PowerIterationOptions& options)
{
    validate(inst);
    const Eigen::Index K = inst.size();

    // Decoupled ACs: every SINR equals p_k / f_k.
    if (inst.R.isZero(0.0))
        return {inst.f * (inst.p_ap / inst.q.dot(inst.f))};

    RMatrix D(K + 1, K + 1);
    D.topLeftCorner(K, K) = inst.R;
    D.topRightCorner(K, 1) = inst.f;
    D.bottomLeftCorner(1, K) = inst.q.transpose() * inst.R / inst.p_ap;
    D(K, K) = inst.q.dot(inst.f) / inst.p_ap;

    // Two ACs coupled mostly to each other give D an eigenvalue close to -rho
    // and plain iteration barely moves. Iterating on D + s*I with s ~ rho keeps
    // the eigenvectors and pushes that mode's ratio towards 0. The growth rate
    // of a few plain steps gives s; it is near rho even when iterates oscillate.
    RVector w = RVector::Ones(K + 1);
    int it = 0;
    double shift = 0.0;
    for (; it < kShiftWarmup && it < options.max_iterations; ++it)
    {
        RVector next = D * w;
        shift = next.cwiseAbs().maxCoeff() / w.cwiseAbs().maxCoeff();
        w = next / next.cwiseAbs().maxCoeff();
    }

    bool converged = false;
    for (; it < options.max_iterations; ++it)
    {
        RVector next = D * w + shift * w;
        Eigen::Index imax = 0;
        next.cwiseAbs().maxCoeff(&imax);
        next /= next[imax];
        const double delta = (next - w).cwiseAbs().maxCoeff();
        w = std::move(next);
        if (delta < options.tolerance)
        {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalError("MPA: power iteration did not converge after " + std::to_string(it) + " iterations");

    if (w[K] < 0.0)
        w = -w;
    if (!(w[K] > 0.0))
        throw NumericalError("MPA: dominant eigenvector has a zero budget component");

    RVector p = w.head(K) / w[K];
    for (Eigen::Index k = 0; k < K; ++k)
    {
        if (p[k] < -1e-9 * inst.p_ap)
            throw NumericalError("MPA: negative power " + std::to_string(p[k]) + " for AC " + std::to_string(k));
        if (p[k] < 0.0)
            p[k] = 0.0;
    }
    return {std::move(p)};
}

namespace {

// Smallest p with p = t (R p + f), iterated from zero. Iterate n is
// S_n = sum_{i<n} (tR)^i t f; doubling S_2n = S_n + (tR)^n S_n reaches iterate
// 2^m in m steps, which matters when t rho(R) is within 1e-6 of 1. The iterates
// increase monotonically, so exceeding the budget proves t infeasible.
std::optional<RVector> fixed_point(const MpaInstance& inst, double t)
{
    constexpr int kMaxDoublings = 64;
    RVector p = t * inst.f;
    RMatrix power = t * inst.R;
    for (int it = 0; it < kMaxDoublings; ++it)
    {
        RVector next = p + power * p;
        if (!(inst.q.dot(next) <= inst.p_ap))
            return std::nullopt;
        const double delta = (next - p).cwiseAbs().maxCoeff();
        p = std::move(next);
        if (delta <= 1e-15 * p.cwiseAbs().maxCoeff())
            return p;
        power = power * power;
    }
    return std::nullopt;
}

} // namespace

PowerVector mpa_oracle(const MpaInstance& inst, double tol)
{
    validate(inst);
    double lo = 0.0;
    double hi = inst.p_ap / inst.q.dot(inst.f); // p_k >= t f_k for any allocation reaching t
    RVector best = RVector::Zero(inst.size());
    while (hi - lo > tol * hi)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (auto p = fixed_point(inst, mid))
        {
            lo = mid;
            best = std::move(*p);
        }
        else
            hi = mid;
    }
    return {std::move(best)};
}

MpaInstance random_instance(int K, Rng& rng, bool zero_coupling)
{
    if (K < 1)
        throw DomainError("random_instance: K must be >= 1");
    MpaInstance inst;
    inst.R = RMatrix::Zero(K, K);
    inst.f.resize(K);
    inst.q = RVector::Ones(K);
    for (int k = 0; k < K; ++k)
    {
        for (int m = 0; m < K; ++m)
        {
            const double u = uniform01(rng); // drawn either way to keep streams aligned
            if (m != k && !zero_coupling)
                inst.R(k, m) = 0.5 * u;
        }
        inst.f[k] = std::pow(10.0, -3.0 * uniform01(rng));
    }
    inst.p_ap = std::pow(10.0, -1.0 + 2.0 * uniform01(rng));
    return inst;
}

} // namespace dmimo
