#pragma once

#include <vector>

#include "dmimo/channel.hpp"
#include "dmimo/types.hpp"

namespace dmimo {

struct Association
{
    std::vector<int> anchor;                   // AP index j_k per AC (0-based)
    std::vector<std::vector<int>> served_sets; // S_j per AP, ascending AC indices
};

struct ZfSolution
{
    CMatrix g;                     // N x K, unit-norm columns
    double condition_number = 1.0; // of H H^H
};

struct PrecodingMatrix
{
    CMatrix g; // M_TOT x K, column k is the beamformer of AC k
    double max_condition_number = 1.0;
};

// Diagnostic threshold on cond(H H^H); exceeding it never alters results.
inline constexpr double kIllConditionedThreshold = 1e12;

/// Anchor AP per AC: strongest large-scale gain, ties to the lowest index.
Association associate(const LargeScaleTable& table);
Association associate(const RMatrix& beta);

CVector mrt(const CRowVector& h);

/// Unit-norm columns of H^H (H H^H)^{-1}, computed through a thin QR of H^H.
ZfSolution zf(const CMatrix& H);

/// Precoder for a transmission mode and scheme. Under SAT each column is
/// confined to the antenna block of its anchor AP. For JT, CZF is ZF.
PrecodingMatrix build_precoder(Mode mode, Scheme scheme, const CMatrix& h_hat, const Association& assoc);

} // namespace dmimo
