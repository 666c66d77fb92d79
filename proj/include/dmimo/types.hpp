#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace dmimo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Random stream used by every stochastic operation. Streams are always
/// supplied by the caller and never shared between concurrent drops.
using Rng = std::mt19937_64;

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance_2d(const Point3& a, const Point3& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double distance_3d(const Point3& a, const Point3& b)
{
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

enum class Mode { SAT, JT };
enum class Scheme { MRT, ZF, CZF };
enum class PowerRule { EPA, MPA };
enum class CsiMode { Perfect, Estimated };

} // namespace dmimo
