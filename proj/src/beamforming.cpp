#include "dmimo/beamforming.hpp"

#include <limits>
#include <string>

#include "dmimo/errors.hpp"

namespace dmimo {

Association associate(const RMatrix& beta)
{
    const Eigen::Index K = beta.rows();
    const Eigen::Index J = beta.cols();
    Association a;
    a.anchor.resize(K);
    a.served_sets.assign(J, {});
    for (Eigen::Index k = 0; k < K; ++k)
    {
        Eigen::Index best = 0;
        // strict '>' keeps the lowest index on ties
        for (Eigen::Index j = 1; j < J; ++j)
            if (beta(k, j) > beta(k, best))
                best = j;
        a.anchor[k] = static_cast<int>(best);
        a.served_sets[best].push_back(static_cast<int>(k));
    }
    return a;
}

Association associate(const LargeScaleTable& table) { return associate(table.beta); }

CVector mrt(const CRowVector& h)
{
    const double norm = h.norm();
    if (!(norm > 0.0))
        throw PrecoderError("MRT: degenerate (zero) channel");
    return h.adjoint() / norm;
}

ZfSolution zf(const CMatrix& H)
{
    const Eigen::Index K = H.rows();
    const Eigen::Index N = H.cols();
    if (K > N)
        throw PrecoderError("ZF: cannot null " + std::to_string(K) + " users with " + std::to_string(N) + " antennas");

    // H^H = Q R  =>  H^H (H H^H)^{-1} = Q R^{-H}
    Eigen::HouseholderQR<CMatrix> qr(H.adjoint());
    const CMatrix R = qr.matrixQR().topRows(K).triangularView<Eigen::Upper>();
    CMatrix padded = CMatrix::Zero(N, K);
    padded.topRows(K) = R.adjoint().triangularView<Eigen::Lower>().solve(CMatrix::Identity(K, K));

    ZfSolution out;
    out.g = qr.householderQ() * padded;
    out.g.colwise().normalize();

    // cond(H H^H) from the spectrum of R^H R; diagnostic only
    const CMatrix gram = R.adjoint() * R;
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    out.condition_number = ev[0] > 0.0 ? ev[K - 1] / ev[0] : std::numeric_limits<double>::infinity();
    return out;
}

namespace {

void place_block(CMatrix& g, Eigen::Index row0, Eigen::Index col, const CVector& v) { g.block(row0, col, v.size(), 1) = v; }

} // namespace

PrecodingMatrix build_precoder(Mode mode, Scheme scheme, const CMatrix& h_hat, const Association& assoc)
{
    const Eigen::Index K = h_hat.rows();
    const Eigen::Index M_TOT = h_hat.cols();
    const Eigen::Index J = static_cast<Eigen::Index>(assoc.served_sets.size());
    if (J < 1 || M_TOT % J != 0)
        throw PrecoderError("precoder: association does not match the antenna count");
    const Eigen::Index M = M_TOT / J;

    PrecodingMatrix out;
    out.g = CMatrix::Zero(M_TOT, K);

    if (mode == Mode::JT)
    {
        if (scheme == Scheme::MRT)
        {
            for (Eigen::Index k = 0; k < K; ++k)
                out.g.col(k) = mrt(h_hat.row(k));
        }
        else
        {
            ZfSolution sol = zf(h_hat);
            out.g = std::move(sol.g);
            out.max_condition_number = sol.condition_number;
        }
        return out;
    }

    switch (scheme)
    {
    case Scheme::MRT:
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const Eigen::Index j = assoc.anchor[k];
            place_block(out.g, j * M, k, mrt(h_hat.block(k, j * M, 1, M)));
        }
        break;

    case Scheme::ZF:
        for (Eigen::Index j = 0; j < J; ++j)
        {
            const auto& served = assoc.served_sets[j];
            if (served.empty())
                continue;
            const auto n = static_cast<Eigen::Index>(served.size());
            if (M < n)
                throw PrecoderError("SAT-ZF: AP " + std::to_string(j) + " has " + std::to_string(M) +
                                    " antennas for " + std::to_string(n) + " served ACs");
            CMatrix Hs(n, M);
            for (Eigen::Index i = 0; i < n; ++i)
                Hs.row(i) = h_hat.block(served[i], j * M, 1, M);
            const ZfSolution sol = zf(Hs);
            out.max_condition_number = std::max(out.max_condition_number, sol.condition_number);
            for (Eigen::Index i = 0; i < n; ++i)
                place_block(out.g, j * M, served[i], sol.g.col(i));
        }
        break;

    case Scheme::CZF:
        for (Eigen::Index j = 0; j < J; ++j)
        {
            const auto& served = assoc.served_sets[j];
            if (served.empty())
                continue;
            if (M < K)
                throw PrecoderError("SAT-CZF: AP " + std::to_string(j) + " has " + std::to_string(M) +
                                    " antennas but must null all " + std::to_string(K) + " ACs");
            const ZfSolution sol = zf(h_hat.middleCols(j * M, M));
            out.max_condition_number = std::max(out.max_condition_number, sol.condition_number);
            for (int k : served)
                place_block(out.g, j * M, k, sol.g.col(k));
        }
        break;
    }
    return out;
}

} // namespace dmimo
